#pragma once

#include <cstddef>
#include <vector>

namespace flowcast {

// Row-major dense matrix of doubles.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double value = 0.0)
        : rows(r), cols(c), data(r * c, value) {}

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
    std::size_t size() const { return data.size(); }
};

enum class Activation { Tanh, Linear };

// One fully connected layer: out = activation(W * in + b).
struct DenseLayer {
    Matrix weights;            // out_dim x in_dim
    std::vector<double> bias;  // out_dim
    Activation activation = Activation::Linear;

    std::size_t in_dim() const { return weights.cols; }
    std::size_t out_dim() const { return weights.rows; }
};

std::vector<double> dense_forward(const DenseLayer& layer, const std::vector<double>& input);

/// Same as dense_forward but writes into a caller-provided buffer (resized as
/// needed); used on training hot paths to avoid per-sample allocation.
void dense_forward_into(const DenseLayer& layer, const std::vector<double>& input,
                        std::vector<double>& out);

/// Reverse step through one layer. `output` must be the activated result of
/// dense_forward(layer, input). Accumulates dL/dW into weight_grad and dL/db
/// into bias_grad (both must already have the layer's shape) and returns
/// dL/dinput.
std::vector<double> dense_backward(const DenseLayer& layer, const std::vector<double>& input,
                                   const std::vector<double>& output,
                                   const std::vector<double>& upstream, Matrix& weight_grad,
                                   std::vector<double>& bias_grad);

/// Mean squared error over component pairs. Throws std::invalid_argument on
/// empty or mismatched input.
double mse_loss(const std::vector<double>& pred, const std::vector<double>& target);

}  // namespace flowcast

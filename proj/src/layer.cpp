#include "flowcast/layer.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace flowcast {

void dense_forward_into(const DenseLayer& layer, const std::vector<double>& input,
                        std::vector<double>& out) {
    if (input.size() != layer.in_dim()) {
        throw std::invalid_argument("dense_forward: expected input of length " +
                                    std::to_string(layer.in_dim()) + ", got " +
                                    std::to_string(input.size()));
    }
    const std::size_t rows = layer.out_dim();
    const std::size_t cols = layer.in_dim();
    out.resize(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        double sum = layer.bias[i];
        const double* w = layer.weights.data.data() + i * cols;
        for (std::size_t j = 0; j < cols; ++j) sum += w[j] * input[j];
        out[i] = layer.activation == Activation::Tanh ? std::tanh(sum) : sum;
    }
}

std::vector<double> dense_forward(const DenseLayer& layer, const std::vector<double>& input) {
    std::vector<double> out;
    dense_forward_into(layer, input, out);
    return out;
}

std::vector<double> dense_backward(const DenseLayer& layer, const std::vector<double>& input,
                                   const std::vector<double>& output,
                                   const std::vector<double>& upstream, Matrix& weight_grad,
                                   std::vector<double>& bias_grad) {
    const std::size_t rows = layer.out_dim();
    const std::size_t cols = layer.in_dim();
    std::vector<double> dinput(cols, 0.0);
    for (std::size_t i = 0; i < rows; ++i) {
        // tanh'(s) = 1 - tanh(s)^2, recovered from the activated output
        const double delta = layer.activation == Activation::Tanh
                                 ? upstream[i] * (1.0 - output[i] * output[i])
                                 : upstream[i];
        bias_grad[i] += delta;
        double* wg = weight_grad.data.data() + i * cols;
        const double* w = layer.weights.data.data() + i * cols;
        for (std::size_t j = 0; j < cols; ++j) {
            wg[j] += delta * input[j];
            dinput[j] += w[j] * delta;
        }
    }
    return dinput;
}

double mse_loss(const std::vector<double>& pred, const std::vector<double>& target) {
    if (pred.empty() || pred.size() != target.size()) {
        throw std::invalid_argument("mse_loss: need equal nonempty vectors, got " +
                                    std::to_string(pred.size()) + " and " +
                                    std::to_string(target.size()));
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const double diff = pred[i] - target[i];
        sum += diff * diff;
    }
    return sum / static_cast<double>(pred.size());
}

}  // namespace flowcast

#include "flowcast/training.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "flowcast/errors.hpp"
#include "flowcast/rng.hpp"

namespace flowcast {

namespace {

LayerGradient zero_like(const DenseLayer& layer) {
    LayerGradient g;
    g.weights = Matrix(layer.out_dim(), layer.in_dim());
    g.bias.assign(layer.out_dim(), 0.0);
    return g;
}

// Forward pass that keeps every intermediate needed by the backward pass.
struct Trace {
    std::vector<std::vector<double>> block_in;   // input fed to each block
    std::vector<std::vector<double>> block_out;  // activated output z of each block
    std::vector<double> proj_out;                // output of the input projection
    std::vector<double> head_in;                 // input to the output projection
    std::vector<double> output;
};

void forward_traced(const Network& net, const std::vector<double>& x, Trace& tr) {
    const std::size_t n_blocks = net.blocks.size();
    tr.block_in.resize(n_blocks);
    tr.block_out.resize(n_blocks);
    dense_forward_into(net.input_projection, x, tr.proj_out);

    switch (net.config.topology) {
        case Topology::Plain: {
            const std::vector<double>* cur = &tr.proj_out;
            for (std::size_t b = 0; b < n_blocks; ++b) {
                tr.block_in[b] = *cur;
                dense_forward_into(net.blocks[b], tr.block_in[b], tr.block_out[b]);
                cur = &tr.block_out[b];
            }
            tr.head_in = *cur;
            break;
        }
        case Topology::Drn: {
            std::vector<double> a = tr.proj_out;
            for (std::size_t b = 0; b < n_blocks; ++b) {
                tr.block_in[b] = a;
                dense_forward_into(net.blocks[b], tr.block_in[b], tr.block_out[b]);
                for (std::size_t i = 0; i < a.size(); ++i) a[i] += tr.block_out[b][i];
            }
            tr.head_in = std::move(a);
            break;
        }
        case Topology::Didrn: {
            std::vector<double> in = tr.proj_out;
            for (std::size_t b = 0; b < n_blocks; ++b) {
                tr.block_in[b] = in;
                dense_forward_into(net.blocks[b], tr.block_in[b], tr.block_out[b]);
                for (std::size_t i = 0; i < in.size(); ++i) in[i] += tr.block_out[b][i];
            }
            tr.head_in = tr.block_out[n_blocks - 1];
            if (n_blocks >= 2) {
                for (std::size_t i = 0; i < tr.head_in.size(); ++i)
                    tr.head_in[i] += tr.block_out[n_blocks - 2][i];
            }
            break;
        }
    }
    dense_forward_into(net.output_projection, tr.head_in, tr.output);
}

// Accumulates one sample's gradients (unnormalized) into `grads`.
void backward_traced(const Network& net, const std::vector<double>& x, const Trace& tr,
                     const std::vector<double>& target, GradientSet& grads) {
    const std::size_t n_blocks = net.blocks.size();
    const std::size_t out_dim = tr.output.size();
    LayerGradient& head_grad = grads.layers[n_blocks + 1];
    LayerGradient& proj_grad = grads.layers[0];

    // d(mse)/d(output_j) = 2 (output_j - target_j) / out_dim
    std::vector<double> dout(out_dim);
    for (std::size_t j = 0; j < out_dim; ++j)
        dout[j] = 2.0 * (tr.output[j] - target[j]) / static_cast<double>(out_dim);

    std::vector<double> dhead = dense_backward(net.output_projection, tr.head_in, tr.output, dout,
                                               head_grad.weights, head_grad.bias);

    std::vector<double> dproj;
    switch (net.config.topology) {
        case Topology::Plain: {
            std::vector<double> d = std::move(dhead);
            for (std::size_t b = n_blocks; b-- > 0;) {
                LayerGradient& bg = grads.layers[1 + b];
                d = dense_backward(net.blocks[b], tr.block_in[b], tr.block_out[b], d, bg.weights,
                                   bg.bias);
            }
            dproj = std::move(d);
            break;
        }
        case Topology::Drn: {
            // a_b = z_b + a_{b-1}: the skip passes the gradient through
            // unchanged while the block path adds its own contribution.
            std::vector<double> da = std::move(dhead);
            for (std::size_t b = n_blocks; b-- > 0;) {
                LayerGradient& bg = grads.layers[1 + b];
                const std::vector<double> dthrough = dense_backward(
                    net.blocks[b], tr.block_in[b], tr.block_out[b], da, bg.weights, bg.bias);
                for (std::size_t i = 0; i < da.size(); ++i) da[i] += dthrough[i];
            }
            dproj = std::move(da);
            break;
        }
        case Topology::Didrn: {
            // d_in holds the gradient w.r.t. in_{b+1} when iteration b starts.
            // z_b collects gradient from the head (last two blocks) and from
            // the in_{b+1} = z_b + in_b addition.
            std::vector<double> d_in(tr.proj_out.size(), 0.0);
            std::vector<double> gz(tr.proj_out.size());
            for (std::size_t b = n_blocks; b-- > 0;) {
                gz = d_in;
                if (b + 1 == n_blocks) {
                    for (std::size_t i = 0; i < gz.size(); ++i) gz[i] += dhead[i];
                }
                if (n_blocks >= 2 && b + 2 == n_blocks) {
                    for (std::size_t i = 0; i < gz.size(); ++i) gz[i] += dhead[i];
                }
                LayerGradient& bg = grads.layers[1 + b];
                const std::vector<double> dthrough = dense_backward(
                    net.blocks[b], tr.block_in[b], tr.block_out[b], gz, bg.weights, bg.bias);
                for (std::size_t i = 0; i < d_in.size(); ++i) d_in[i] += dthrough[i];
            }
            dproj = std::move(d_in);
            break;
        }
    }

    dense_backward(net.input_projection, x, tr.proj_out, dproj, proj_grad.weights,
                   proj_grad.bias);
}

void check_shapes(const Network& net, const GradientSet& grads) {
    const std::size_t expected = net.blocks.size() + 2;
    if (grads.layers.size() != expected) {
        throw std::invalid_argument("gradient set has " + std::to_string(grads.layers.size()) +
                                    " layers, network has " + std::to_string(expected));
    }
    auto congruent = [](const DenseLayer& l, const LayerGradient& g) {
        return g.weights.rows == l.out_dim() && g.weights.cols == l.in_dim() &&
               g.bias.size() == l.out_dim();
    };
    bool ok = congruent(net.input_projection, grads.layers.front()) &&
              congruent(net.output_projection, grads.layers.back());
    for (std::size_t b = 0; ok && b < net.blocks.size(); ++b)
        ok = congruent(net.blocks[b], grads.layers[1 + b]);
    if (!ok) throw std::invalid_argument("gradient set is not shape-congruent with the network");
}

DenseLayer& layer_at(Network& net, std::size_t index) {
    if (index == 0) return net.input_projection;
    if (index <= net.blocks.size()) return net.blocks[index - 1];
    return net.output_projection;
}

bool all_finite(const LayerGradient& g) {
    for (double v : g.weights.data)
        if (!std::isfinite(v)) return false;
    for (double v : g.bias)
        if (!std::isfinite(v)) return false;
    return true;
}

bool all_finite(const DenseLayer& l) {
    for (double v : l.weights.data)
        if (!std::isfinite(v)) return false;
    for (double v : l.bias)
        if (!std::isfinite(v)) return false;
    return true;
}

}  // namespace

GradientSet make_zero_gradients(const Network& net) {
    GradientSet grads;
    grads.layers.reserve(net.blocks.size() + 2);
    grads.layers.push_back(zero_like(net.input_projection));
    for (const auto& block : net.blocks) grads.layers.push_back(zero_like(block));
    grads.layers.push_back(zero_like(net.output_projection));
    return grads;
}

GradientSet compute_gradients(const Network& net, const std::vector<std::vector<double>>& inputs,
                              const std::vector<std::vector<double>>& targets,
                              double* batch_loss) {
    if (inputs.empty() || inputs.size() != targets.size()) {
        throw std::invalid_argument("compute_gradients: need equal nonempty input/target batches");
    }
    GradientSet grads = make_zero_gradients(net);
    Trace trace;
    double loss_sum = 0.0;
    for (std::size_t k = 0; k < inputs.size(); ++k) {
        if (inputs[k].size() != net.config.input_dim) {
            throw std::invalid_argument("compute_gradients: sample " + std::to_string(k) +
                                        " has width " + std::to_string(inputs[k].size()) +
                                        ", network expects " +
                                        std::to_string(net.config.input_dim));
        }
        if (targets[k].size() != net.config.output_dim) {
            throw std::invalid_argument("compute_gradients: target " + std::to_string(k) +
                                        " has width " + std::to_string(targets[k].size()) +
                                        ", network expects " +
                                        std::to_string(net.config.output_dim));
        }
        forward_traced(net, inputs[k], trace);
        loss_sum += mse_loss(trace.output, targets[k]);
        backward_traced(net, inputs[k], trace, targets[k], grads);
    }
    const double inv = 1.0 / static_cast<double>(inputs.size());
    for (auto& layer : grads.layers) {
        for (auto& w : layer.weights.data) w *= inv;
        for (auto& b : layer.bias) b *= inv;
    }
    if (batch_loss != nullptr) *batch_loss = loss_sum * inv;
    return grads;
}

void optimizer_update(Network& net, const GradientSet& grads, OptimizerState& state) {
    check_shapes(net, grads);
    if (state.learning_rate <= 0.0) {
        throw std::invalid_argument("optimizer_update: learning_rate must be positive");
    }
    const std::size_t n_layers = grads.layers.size();
    for (std::size_t l = 0; l < n_layers; ++l) {
        if (!all_finite(grads.layers[l])) {
            throw NumericError("non-finite gradient in " + layer_name(net, l));
        }
    }

    if (state.algorithm == OptimizerKind::Sgd) {
        for (std::size_t l = 0; l < n_layers; ++l) {
            DenseLayer& layer = layer_at(net, l);
            const LayerGradient& g = grads.layers[l];
            for (std::size_t k = 0; k < layer.weights.data.size(); ++k)
                layer.weights.data[k] -= state.learning_rate * g.weights.data[k];
            for (std::size_t k = 0; k < layer.bias.size(); ++k)
                layer.bias[k] -= state.learning_rate * g.bias[k];
        }
        ++state.step;
    } else {
        if (state.first_moment.empty()) {
            state.first_moment = make_zero_gradients(net).layers;
            state.second_moment = make_zero_gradients(net).layers;
        }
        if (state.first_moment.size() != n_layers || state.second_moment.size() != n_layers) {
            throw std::invalid_argument("optimizer_update: moment buffers do not match network");
        }
        ++state.step;
        const double b1 = state.beta1;
        const double b2 = state.beta2;
        const double bc1 = 1.0 - std::pow(b1, static_cast<double>(state.step));
        const double bc2 = 1.0 - std::pow(b2, static_cast<double>(state.step));
        auto adam = [&](double& p, double g, double& m, double& v) {
            m = b1 * m + (1.0 - b1) * g;
            v = b2 * v + (1.0 - b2) * g * g;
            p -= state.learning_rate * (m / bc1) / (std::sqrt(v / bc2) + state.epsilon);
        };
        for (std::size_t l = 0; l < n_layers; ++l) {
            DenseLayer& layer = layer_at(net, l);
            const LayerGradient& g = grads.layers[l];
            LayerGradient& m = state.first_moment[l];
            LayerGradient& v = state.second_moment[l];
            for (std::size_t k = 0; k < layer.weights.data.size(); ++k)
                adam(layer.weights.data[k], g.weights.data[k], m.weights.data[k],
                     v.weights.data[k]);
            for (std::size_t k = 0; k < layer.bias.size(); ++k)
                adam(layer.bias[k], g.bias[k], m.bias[k], v.bias[k]);
        }
    }

    for (std::size_t l = 0; l < n_layers; ++l) {
        if (!all_finite(layer_at(net, l))) {
            throw NumericError("non-finite parameter after update in " + layer_name(net, l));
        }
    }
}

std::vector<double> train(Network& net, const SupervisedSet& data, std::size_t epochs,
                          std::size_t batch_size, OptimizerState& optimizer, std::uint64_t seed) {
    if (data.x.empty() || data.x.size() != data.y.size()) {
        throw std::invalid_argument("train: need equal nonempty feature/target sets");
    }
    if (batch_size == 0) throw std::invalid_argument("train: batch_size must be positive");
    if (net.config.output_dim != 1) {
        throw std::invalid_argument("train: scalar targets require output_dim == 1");
    }

    std::vector<double> history;
    history.reserve(epochs);
    if (epochs == 0) return history;

    const std::size_t n = data.x.size();
    Rng rng(seed);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<std::vector<double>> xb;
    std::vector<std::vector<double>> yb;

    for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
        shuffle_values(order, rng);
        double loss_sum = 0.0;
        std::size_t batch_index = 0;
        for (std::size_t begin = 0; begin < n; begin += batch_size, ++batch_index) {
            const std::size_t end = std::min(begin + batch_size, n);
            xb.clear();
            yb.clear();
            for (std::size_t k = begin; k < end; ++k) {
                xb.push_back(data.x[order[k]]);
                yb.push_back({data.y[order[k]]});
            }
            double batch_loss = 0.0;
            const GradientSet grads = compute_gradients(net, xb, yb, &batch_loss);
            if (!std::isfinite(batch_loss)) {
                throw NumericError("non-finite loss at epoch " + std::to_string(epoch) +
                                   ", batch " + std::to_string(batch_index));
            }
            optimizer_update(net, grads, optimizer);
            loss_sum += batch_loss * static_cast<double>(end - begin);
        }
        history.push_back(loss_sum / static_cast<double>(n));
    }
    return history;
}

}  // namespace flowcast

#include "flowcast/network.hpp"

#include <cmath>
#include <stdexcept>

#include "flowcast/rng.hpp"

namespace flowcast {

const char* topology_name(Topology t) {
    switch (t) {
        case Topology::Plain: return "plain";
        case Topology::Drn: return "drn";
        case Topology::Didrn: return "didrn";
    }
    return "unknown";
}

Topology topology_from_name(const std::string& name) {
    if (name == "plain") return Topology::Plain;
    if (name == "drn") return Topology::Drn;
    if (name == "didrn") return Topology::Didrn;
    throw std::invalid_argument("unknown topology '" + name + "' (expected plain, drn or didrn)");
}

namespace {

DenseLayer make_layer(std::size_t in_dim, std::size_t out_dim, Activation act, Rng& rng) {
    DenseLayer layer;
    layer.weights = Matrix(out_dim, in_dim);
    layer.bias.assign(out_dim, 0.0);
    layer.activation = act;
    const double bound = std::sqrt(6.0 / static_cast<double>(in_dim + out_dim));
    for (auto& w : layer.weights.data) w = rng.uniform(-bound, bound);
    return layer;
}

}  // namespace

Network init_network(const NetworkConfig& config, std::uint64_t seed) {
    if (config.input_dim == 0 || config.hidden_width == 0 || config.output_dim == 0) {
        throw std::invalid_argument("init_network: zero-width layer in config");
    }
    if (config.num_blocks == 0) {
        throw std::invalid_argument("init_network: num_blocks must be at least 1");
    }
    Rng rng(seed);
    Network net;
    net.config = config;
    net.input_projection =
        make_layer(config.input_dim, config.hidden_width, Activation::Linear, rng);
    net.blocks.reserve(config.num_blocks);
    for (std::size_t b = 0; b < config.num_blocks; ++b) {
        net.blocks.push_back(
            make_layer(config.hidden_width, config.hidden_width, Activation::Tanh, rng));
    }
    net.output_projection =
        make_layer(config.hidden_width, config.output_dim, Activation::Linear, rng);
    return net;
}

std::vector<double> forward_plain(const Network& net, const std::vector<double>& x) {
    std::vector<double> h = dense_forward(net.input_projection, x);
    for (const auto& block : net.blocks) h = dense_forward(block, h);
    return dense_forward(net.output_projection, h);
}

std::vector<double> forward_drn(const Network& net, const std::vector<double>& x) {
    std::vector<double> a = dense_forward(net.input_projection, x);
    for (const auto& block : net.blocks) {
        const std::vector<double> z = dense_forward(block, a);
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += z[i];
    }
    return dense_forward(net.output_projection, a);
}

std::vector<double> forward_didrn(const Network& net, const std::vector<double>& x) {
    std::vector<double> in = dense_forward(net.input_projection, x);
    std::vector<double> z_prev;
    std::vector<double> z;
    for (const auto& block : net.blocks) {
        z_prev = z;
        z = dense_forward(block, in);
        for (std::size_t i = 0; i < in.size(); ++i) in[i] += z[i];
    }
    std::vector<double> u = z;
    if (!z_prev.empty()) {
        for (std::size_t i = 0; i < u.size(); ++i) u[i] += z_prev[i];
    }
    return dense_forward(net.output_projection, u);
}

std::vector<double> forward(const Network& net, const std::vector<double>& x) {
    switch (net.config.topology) {
        case Topology::Plain: return forward_plain(net, x);
        case Topology::Drn: return forward_drn(net, x);
        case Topology::Didrn: return forward_didrn(net, x);
    }
    throw std::invalid_argument("forward: invalid topology tag");
}

std::string layer_name(const Network& net, std::size_t index) {
    if (index == 0) return "input_projection";
    if (index <= net.blocks.size()) return "block_" + std::to_string(index);
    return "output_projection";
}

}  // namespace flowcast

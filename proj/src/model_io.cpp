#include "flowcast/model_io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "flowcast/errors.hpp"

namespace flowcast {

namespace {

constexpr std::array<char, 8> kMagic = {'F', 'L', 'O', 'W', 'C', 'A', 'S', 'T'};
constexpr std::uint32_t kFormatVersion = 1;

void put_u32(std::ostream& out, std::uint32_t v) {
    char buf[4];
    for (int i = 0; i < 4; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    out.write(buf, 4);
}

void put_u64(std::ostream& out, std::uint64_t v) {
    char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    out.write(buf, 8);
}

void put_f64(std::ostream& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

std::uint32_t get_u32(std::istream& in) {
    unsigned char buf[4];
    if (!in.read(reinterpret_cast<char*>(buf), 4)) throw DataError("truncated model file");
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | buf[i];
    return v;
}

std::uint64_t get_u64(std::istream& in) {
    unsigned char buf[8];
    if (!in.read(reinterpret_cast<char*>(buf), 8)) throw DataError("truncated model file");
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | buf[i];
    return v;
}

double get_f64(std::istream& in) { return std::bit_cast<double>(get_u64(in)); }

void put_layer(std::ostream& out, const DenseLayer& layer) {
    put_u64(out, layer.out_dim());
    put_u64(out, layer.in_dim());
    for (double w : layer.weights.data) put_f64(out, w);
    for (double b : layer.bias) put_f64(out, b);
}

void get_layer(std::istream& in, DenseLayer& layer) {
    const std::uint64_t out_dim = get_u64(in);
    const std::uint64_t in_dim = get_u64(in);
    if (out_dim != layer.out_dim() || in_dim != layer.in_dim()) {
        throw DataError("model file layer shape " + std::to_string(out_dim) + "x" +
                        std::to_string(in_dim) + " does not match config " +
                        std::to_string(layer.out_dim()) + "x" + std::to_string(layer.in_dim()));
    }
    for (auto& w : layer.weights.data) w = get_f64(in);
    for (auto& b : layer.bias) b = get_f64(in);
}

}  // namespace

void save_network(const Network& net, std::ostream& out) {
    out.write(kMagic.data(), kMagic.size());
    put_u32(out, kFormatVersion);
    put_u32(out, static_cast<std::uint32_t>(net.config.topology));
    put_u64(out, net.config.input_dim);
    put_u64(out, net.config.hidden_width);
    put_u64(out, net.config.num_blocks);
    put_u64(out, net.config.output_dim);
    put_layer(out, net.input_projection);
    for (const auto& block : net.blocks) put_layer(out, block);
    put_layer(out, net.output_projection);
    if (!out) throw DataError("failed writing model stream");
}

void save_network(const Network& net, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open '" + path + "' for writing");
    save_network(net, out);
}

Network load_network(std::istream& in) {
    std::array<char, 8> magic{};
    if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
        throw DataError("not a flowcast model file (bad magic tag)");
    }
    const std::uint32_t version = get_u32(in);
    if (version != kFormatVersion) {
        throw DataError("unsupported model format version " + std::to_string(version));
    }
    const std::uint32_t topo = get_u32(in);
    if (topo > 2) throw DataError("model file has invalid topology tag");

    NetworkConfig config;
    config.topology = static_cast<Topology>(topo);
    config.input_dim = get_u64(in);
    config.hidden_width = get_u64(in);
    config.num_blocks = get_u64(in);
    config.output_dim = get_u64(in);
    if (config.input_dim == 0 || config.hidden_width == 0 || config.output_dim == 0 ||
        config.num_blocks == 0) {
        throw DataError("model file has zero-width layer dimensions");
    }

    // Shapes come from the config; activations follow the layer policy.
    Network net = init_network(config, 0);
    get_layer(in, net.input_projection);
    for (auto& block : net.blocks) get_layer(in, block);
    get_layer(in, net.output_projection);
    return net;
}

Network load_network(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path + "'");
    return load_network(in);
}

}  // namespace flowcast

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flowcast/layer.hpp"

namespace flowcast {

/// The three supported layer graphs.
///
///   Plain  - stacked layers, no skips.
///   Drn    - pre-add residual chain: each block's output is added to its
///            input before feeding the next block.
///   Didrn  - dual-skip stack: block inputs accumulate as in Drn, but the
///            head combines the outputs of the last two blocks instead of
///            the running sum.
enum class Topology { Plain, Drn, Didrn };

const char* topology_name(Topology t);
Topology topology_from_name(const std::string& name);  // throws std::invalid_argument

struct NetworkConfig {
    Topology topology = Topology::Didrn;
    std::size_t input_dim = 1;  // lag: number of previous differences fed per step
    std::size_t hidden_width = 32;
    std::size_t num_blocks = 16;
    std::size_t output_dim = 1;
};

/// Dense stack with linear projections bracketing the skip-carrying blocks.
/// Projections change dimension; every block maps hidden_width to
/// hidden_width so identity skips stay shape-valid.
struct Network {
    NetworkConfig config;
    DenseLayer input_projection;     // input_dim -> hidden_width, linear
    std::vector<DenseLayer> blocks;  // hidden_width -> hidden_width, tanh
    DenseLayer output_projection;    // hidden_width -> output_dim, linear
};

/// Glorot-uniform weights in +/- sqrt(6 / (fan_in + fan_out)), zero biases.
/// Pure function of (config, seed): the same pair always yields bit-identical
/// weights. Throws std::invalid_argument on any zero-width layer.
Network init_network(const NetworkConfig& config, std::uint64_t seed);

/// out = head(block_B(...block_1(proj(x))...))
std::vector<double> forward_plain(const Network& net, const std::vector<double>& x);

/// a_0 = proj(x); a_i = block_i(a_{i-1}) + a_{i-1}; out = head(a_B)
std::vector<double> forward_drn(const Network& net, const std::vector<double>& x);

/// in_1 = proj(x); z_i = block_i(in_i); in_{i+1} = z_i + in_i;
/// head input u = z_B + z_{B-1} (u = z_1 when there is a single block).
std::vector<double> forward_didrn(const Network& net, const std::vector<double>& x);

/// Dispatch on net.config.topology.
std::vector<double> forward(const Network& net, const std::vector<double>& x);

/// Human-readable name of the parameter group at `index` in the canonical
/// layer order: input_projection, block_1..block_B, output_projection.
std::string layer_name(const Network& net, std::size_t index);

}  // namespace flowcast

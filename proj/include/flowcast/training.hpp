#pragma once

#include <cstdint>
#include <vector>

#include "flowcast/network.hpp"
#include "flowcast/pipeline.hpp"

namespace flowcast {

struct LayerGradient {
    Matrix weights;
    std::vector<double> bias;
};

/// Per-layer gradients in the canonical order: input_projection,
/// block_1..block_B, output_projection. Shape-congruent with the network it
/// was computed for.
struct GradientSet {
    std::vector<LayerGradient> layers;
};

GradientSet make_zero_gradients(const Network& net);

enum class OptimizerKind { Sgd, Adam };

struct OptimizerState {
    OptimizerKind algorithm = OptimizerKind::Adam;
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    std::uint64_t step = 0;
    // Adam moments, sized on first update to mirror the network.
    std::vector<LayerGradient> first_moment;
    std::vector<LayerGradient> second_moment;
};

/// Gradients of the mean batch MSE with respect to every weight and bias,
/// propagated by hand through the configured topology (the gradient of each
/// skip addition fans out to both parents). Optionally reports the batch
/// loss via `batch_loss`.
GradientSet compute_gradients(const Network& net, const std::vector<std::vector<double>>& inputs,
                              const std::vector<std::vector<double>>& targets,
                              double* batch_loss = nullptr);

/// SGD: p <- p - lr * g.
/// Adam: bias-corrected first/second moment update with the stored
/// beta1/beta2/epsilon. Increments state.step by exactly 1.
/// Throws NumericError naming the layer on non-finite gradients or updates.
void optimizer_update(Network& net, const GradientSet& grads, OptimizerState& state);

/// Mini-batch training. Each epoch shuffles with a deterministic sequence
/// derived from `seed`, so identical calls produce bit-identical weights.
/// Returns the per-epoch mean training loss (exactly `epochs` entries;
/// epochs == 0 leaves the network untouched).
/// Throws NumericError naming epoch and batch if the loss goes non-finite.
std::vector<double> train(Network& net, const SupervisedSet& data, std::size_t epochs,
                          std::size_t batch_size, OptimizerState& optimizer, std::uint64_t seed);

}  // namespace flowcast

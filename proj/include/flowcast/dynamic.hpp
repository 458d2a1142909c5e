#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flowcast/metrics.hpp"
#include "flowcast/pipeline.hpp"
#include "flowcast/training.hpp"

namespace flowcast {

enum class WindowPolicy { Grow, Sliding };

/// Cadence and budget of the prediction/retrain loop.
struct DynamicConfig {
    std::size_t update_horizon = 144;  // prediction steps between retrains
    std::size_t retrain_epochs = 20;
    bool warm_start = true;  // keep current weights when retraining
    WindowPolicy window_policy = WindowPolicy::Grow;
    std::size_t window_len = 0;  // sliding only; must be >= update_horizon
};

/// Optimizer settings shared by the retrain cycles.
struct RetrainParams {
    std::size_t batch_size = 32;
    OptimizerKind optimizer = OptimizerKind::Adam;
    double learning_rate = 1e-3;
    std::uint64_t seed = 1;
};

struct CycleStats {
    std::size_t cycle = 0;
    std::size_t start_index = 0;  // first predicted flow index of the cycle
    std::size_t train_len = 0;    // raw points the predicting model was trained on
    MetricsReport metrics;
};

struct DynamicRunReport {
    std::vector<double> predictions;  // flows for indices [split_index, len)
    std::vector<CycleStats> cycles;
    std::size_t retrain_count = 0;
    MetricsReport overall;
};

/// Alternates prediction and retraining until the series is exhausted: each
/// cycle predicts update_horizon steps with the current model, then (if more
/// data remain) absorbs those observations into the training window, refits
/// the scaler on it, and retrains for retrain_epochs. A cold start
/// (warm_start = false) reinitializes the weights each retrain instead.
/// Deterministic for fixed seeds. `net` must be pre-trained on
/// [0, split_index) with `scaler` fitted on that same slice.
DynamicRunReport run_dynamic(Network net, ScalerParams scaler, const TimeSeries& series,
                             std::size_t split_index, const DynamicConfig& dyn,
                             const RetrainParams& retrain);

/// Control arm: one pass over the whole test segment, no retraining.
/// Equals run_dynamic with update_horizon >= test length bit for bit.
DynamicRunReport run_static(const Network& net, const ScalerParams& scaler,
                            const TimeSeries& series, std::size_t split_index);

/// Fits a fresh model on the first split_index points: builds the
/// differenced, framed, scaled training set and trains for `epochs`.
struct PretrainedModel {
    Network net;
    ScalerParams scaler;
    std::vector<double> loss_history;
};

PretrainedModel pretrain_model(const NetworkConfig& config, const TimeSeries& series,
                               std::size_t split_index, std::size_t epochs,
                               const RetrainParams& params);

/// CSV `cycle,start_index,rmse,mape,mae,train_len`.
void write_cycles_csv(const DynamicRunReport& report, const std::string& path);

}  // namespace flowcast

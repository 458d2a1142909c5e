#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "flowcast/network.hpp"
#include "flowcast/timeseries.hpp"

namespace flowcast {

/// D_i = R_{i+1} - R_i. Requires at least two points.
std::vector<double> difference(const std::vector<double>& values);
std::vector<double> difference(const TimeSeries& series);

/// R_hat_i = anchor + sum_{j<=i} d_hat_j. Exact inverse of difference():
/// invert_difference(R_1, difference(R)) reproduces R[2..] bit for bit.
std::vector<double> invert_difference(double anchor, const std::vector<double>& d_hat);

/// Supervised framing of a difference vector. Row i of x holds the lag
/// previous differences [D_{i-lag}, ..., D_{i-1}] with zero padding where the
/// index is negative; y equals D.
struct Framed {
    std::vector<std::vector<double>> x;
    std::vector<double> y;
};

Framed frame_supervised(const std::vector<double>& d, std::size_t lag);

/// Min/max of the training portion of a framed set. Feature and target
/// ranges are tracked separately and must both be non-degenerate.
struct ScalerParams {
    double x_min = 0.0;
    double x_max = 0.0;
    double y_min = 0.0;
    double y_max = 0.0;
};

/// Fits on the first `count` rows (all rows by default). Throws DataError
/// when either range is constant.
ScalerParams fit_scaler(const std::vector<std::vector<double>>& x_rows,
                        const std::vector<double>& y, std::size_t count = SIZE_MAX);

/// Affine map of [lo, hi] onto [-1, 1]: s = 2 (v - lo) / (hi - lo) - 1.
/// Values outside [lo, hi] pass through un-clamped so the map stays
/// invertible on test data.
double apply_scale(double v, double lo, double hi);

/// Inverse of apply_scale. Note a scaled value of exactly 0 maps back to the
/// range midpoint (lo + hi) / 2, which is zero only for a symmetric range.
double invert_scale(double s, double lo, double hi);

/// Framed pairs scaled into the training range, plus the scaler that
/// produced them. Training rows land in [-1, 1]; later rows may not.
struct SupervisedSet {
    std::vector<std::vector<double>> x;
    std::vector<double> y;
    ScalerParams scaler;
    std::size_t lag = 1;
};

/// Frames `d`, fits the scaler on the first train_rows rows, then scales
/// every row with it.
SupervisedSet build_supervised(const std::vector<double>& d, std::size_t lag,
                               std::size_t train_rows);

/// One-step-ahead prediction with observed anchors. For each step t in
/// [start_index, start_index + horizon):
///   - scale the lag observed differences ending at D_{t-1},
///   - run the network to get a scaled difference, unscale with the y range,
///   - add it to the observed flow at t.
/// Returns the predicted flows for indices start_index+1 .. start_index+horizon
/// in original units. Requires start_index >= 1 and every predicted index to
/// have an observed counterpart (start_index + horizon <= len - 1).
std::vector<double> predict_series(const Network& net, const TimeSeries& series,
                                   const ScalerParams& scaler, std::size_t start_index,
                                   std::size_t horizon);

/// CSV with header `timestamp,observed,predicted`; row k describes flow index
/// first_pred_index + k.
void write_predictions_csv(const TimeSeries& series, std::size_t first_pred_index,
                           const std::vector<double>& predictions, const std::string& path);

}  // namespace flowcast

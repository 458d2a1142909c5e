#include "flowcast/pipeline.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "flowcast/errors.hpp"
#include "flowcast/text.hpp"

namespace flowcast {

std::vector<double> difference(const std::vector<double>& values) {
    if (values.size() < 2) {
        throw std::invalid_argument("difference: need at least 2 points, got " +
                                    std::to_string(values.size()));
    }
    std::vector<double> d(values.size() - 1);
    for (std::size_t i = 0; i + 1 < values.size(); ++i) d[i] = values[i + 1] - values[i];
    return d;
}

std::vector<double> difference(const TimeSeries& series) { return difference(series.values); }

std::vector<double> invert_difference(double anchor, const std::vector<double>& d_hat) {
    std::vector<double> out;
    out.reserve(d_hat.size());
    double running = anchor;
    for (double d : d_hat) {
        running += d;
        out.push_back(running);
    }
    return out;
}

Framed frame_supervised(const std::vector<double>& d, std::size_t lag) {
    if (d.empty()) throw std::invalid_argument("frame_supervised: empty difference vector");
    if (lag == 0) throw std::invalid_argument("frame_supervised: lag must be positive");
    Framed framed;
    framed.x.assign(d.size(), std::vector<double>(lag, 0.0));
    framed.y = d;
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t k = 0; k < lag; ++k) {
            const std::int64_t j = static_cast<std::int64_t>(i) - static_cast<std::int64_t>(lag) +
                                   static_cast<std::int64_t>(k);
            if (j >= 0) framed.x[i][k] = d[static_cast<std::size_t>(j)];
        }
    }
    return framed;
}

ScalerParams fit_scaler(const std::vector<std::vector<double>>& x_rows,
                        const std::vector<double>& y, std::size_t count) {
    const std::size_t n = std::min({count, x_rows.size(), y.size()});
    if (n == 0) throw std::invalid_argument("fit_scaler: empty training slice");
    ScalerParams p;
    p.x_min = std::numeric_limits<double>::infinity();
    p.x_max = -std::numeric_limits<double>::infinity();
    p.y_min = std::numeric_limits<double>::infinity();
    p.y_max = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        for (double v : x_rows[i]) {
            p.x_min = std::min(p.x_min, v);
            p.x_max = std::max(p.x_max, v);
        }
        p.y_min = std::min(p.y_min, y[i]);
        p.y_max = std::max(p.y_max, y[i]);
    }
    if (!(p.x_max > p.x_min)) {
        throw DataError("fit_scaler: degenerate feature range (min == max == " +
                        format_double(p.x_min) + ")");
    }
    if (!(p.y_max > p.y_min)) {
        throw DataError("fit_scaler: degenerate target range (min == max == " +
                        format_double(p.y_min) + ")");
    }
    return p;
}

double apply_scale(double v, double lo, double hi) {
    if (!(hi > lo)) throw std::invalid_argument("apply_scale: range requires hi > lo");
    return 2.0 * (v - lo) / (hi - lo) - 1.0;
}

double invert_scale(double s, double lo, double hi) {
    if (!(hi > lo)) throw std::invalid_argument("invert_scale: range requires hi > lo");
    return lo + (s + 1.0) * 0.5 * (hi - lo);
}

SupervisedSet build_supervised(const std::vector<double>& d, std::size_t lag,
                               std::size_t train_rows) {
    Framed framed = frame_supervised(d, lag);
    if (train_rows == 0 || train_rows > framed.x.size()) {
        throw std::invalid_argument("build_supervised: train_rows " + std::to_string(train_rows) +
                                    " out of range for " + std::to_string(framed.x.size()) +
                                    " rows");
    }
    SupervisedSet set;
    set.scaler = fit_scaler(framed.x, framed.y, train_rows);
    set.lag = lag;
    set.x = std::move(framed.x);
    set.y = std::move(framed.y);
    for (auto& row : set.x) {
        for (auto& v : row) v = apply_scale(v, set.scaler.x_min, set.scaler.x_max);
    }
    for (auto& v : set.y) v = apply_scale(v, set.scaler.y_min, set.scaler.y_max);
    return set;
}

std::vector<double> predict_series(const Network& net, const TimeSeries& series,
                                   const ScalerParams& scaler, std::size_t start_index,
                                   std::size_t horizon) {
    if (net.config.output_dim != 1) {
        throw std::invalid_argument("predict_series: network must have output_dim == 1");
    }
    if (start_index < 1) {
        throw std::invalid_argument("predict_series: start_index must be >= 1");
    }
    if (horizon == 0) return {};
    const std::size_t n = series.values.size();
    if (n < 2 || start_index + horizon > n - 1) {
        throw std::invalid_argument("predict_series: horizon " + std::to_string(horizon) +
                                    " from start " + std::to_string(start_index) +
                                    " exceeds available anchors (series length " +
                                    std::to_string(n) + ")");
    }

    const std::size_t lag = net.config.input_dim;
    const auto& values = series.values;
    std::vector<double> input(lag);
    std::vector<double> predictions;
    predictions.reserve(horizon);
    for (std::size_t t = start_index; t < start_index + horizon; ++t) {
        // Lag observed differences ending at D_{t-1}, zero-padded like the
        // training framing.
        for (std::size_t k = 0; k < lag; ++k) {
            const std::int64_t j = static_cast<std::int64_t>(t) - static_cast<std::int64_t>(lag) +
                                   static_cast<std::int64_t>(k);
            const double raw = j >= 0 ? values[static_cast<std::size_t>(j) + 1] -
                                            values[static_cast<std::size_t>(j)]
                                      : 0.0;
            input[k] = apply_scale(raw, scaler.x_min, scaler.x_max);
        }
        const double scaled_pred = forward(net, input)[0];
        const double d_hat = invert_scale(scaled_pred, scaler.y_min, scaler.y_max);
        predictions.push_back(values[t] + d_hat);
    }
    return predictions;
}

void write_predictions_csv(const TimeSeries& series, std::size_t first_pred_index,
                           const std::vector<double>& predictions, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open '" + path + "' for writing");
    out << "timestamp,observed,predicted\n";
    for (std::size_t k = 0; k < predictions.size(); ++k) {
        const std::size_t idx = first_pred_index + k;
        out << format_iso8601(series.timestamp_at(idx)) << ',';
        if (idx < series.values.size()) out << format_double(series.values[idx]);
        out << ',' << format_double(predictions[k]) << '\n';
    }
    if (!out) throw DataError("failed writing '" + path + "'");
}

}  // namespace flowcast

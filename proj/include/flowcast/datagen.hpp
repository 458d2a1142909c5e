#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "flowcast/timeseries.hpp"

namespace flowcast {

/// Multiplies every value from at_index onward by `factor` (1.25 = +25%).
struct LevelShift {
    std::size_t at_index = 0;
    double factor = 1.0;
};

/// Synthetic traffic-flow profile: a base level with Gaussian morning and
/// evening peak bumps, a weekday/weekend weekly pattern, additive Gaussian
/// noise, and an optional level shift. Weekend days are days 5 and 6 of each
/// 7-day cycle counted from the start of the series.
struct SyntheticConfig {
    unsigned days = 61;
    unsigned interval_minutes = 10;
    double base_flow = 400.0;
    double morning_peak_amplitude = 600.0;
    double morning_peak_minute = 480.0;  // 08:00
    double evening_peak_amplitude = 500.0;
    double evening_peak_minute = 1080.0;  // 18:00
    double peak_std_minutes = 120.0;
    double weekend_factor = 0.7;  // in (0, 1]
    double noise_std = 30.0;
    std::optional<LevelShift> level_shift;
    std::uint64_t seed = 1;
    std::string detector_id = "synthetic";
};

/// Deterministic per (config, seed). Values are clamped at zero. Length is
/// days * (1440 / interval_minutes); throws DataError when interval_minutes
/// does not divide 1440.
TimeSeries generate(const SyntheticConfig& config);

/// Sum aggregates consecutive stride-length windows (complete windows only);
/// Subsample keeps every stride-th point. Either way the interval grows by
/// the stride factor.
enum class ResampleMode { Subsample, Sum };

TimeSeries resample(const TimeSeries& series, std::size_t stride, ResampleMode mode);

/// Reads `timestamp,flow` CSV with ISO-8601 timestamps. Timestamps must be
/// strictly increasing; violations are reported with their line number.
TimeSeries load_csv(const std::string& path);

/// Inverse of load_csv up to the detector id (taken from the file stem when
/// loading). Values round-trip exactly.
void write_csv(const TimeSeries& series, const std::string& path);

}  // namespace flowcast

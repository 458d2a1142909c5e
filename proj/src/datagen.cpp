#include "flowcast/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "flowcast/errors.hpp"
#include "flowcast/rng.hpp"
#include "flowcast/text.hpp"

namespace flowcast {

namespace {

double peak_bump(double minute_of_day, double center, double amplitude, double std_minutes) {
    const double d = minute_of_day - center;
    return amplitude * std::exp(-(d * d) / (2.0 * std_minutes * std_minutes));
}

}  // namespace

TimeSeries generate(const SyntheticConfig& config) {
    if (config.interval_minutes == 0 || 1440 % config.interval_minutes != 0) {
        throw DataError("generate: interval of " + std::to_string(config.interval_minutes) +
                        " minutes does not divide a day");
    }
    if (config.days == 0) throw DataError("generate: days must be positive");
    if (config.weekend_factor <= 0.0 || config.weekend_factor > 1.0) {
        throw DataError("generate: weekend_factor must be in (0, 1]");
    }
    if (config.noise_std < 0.0) throw DataError("generate: noise_std must be non-negative");

    const std::size_t per_day = 1440 / config.interval_minutes;
    const std::size_t length = static_cast<std::size_t>(config.days) * per_day;
    TimeSeries series;
    series.detector_id = config.detector_id;
    series.interval_minutes = config.interval_minutes;
    series.values.reserve(length);

    Rng rng(config.seed);
    for (std::size_t i = 0; i < length; ++i) {
        const double minute = static_cast<double>((i % per_day) * config.interval_minutes);
        const std::size_t day = i / per_day;
        double flow = config.base_flow +
                      peak_bump(minute, config.morning_peak_minute,
                                config.morning_peak_amplitude, config.peak_std_minutes) +
                      peak_bump(minute, config.evening_peak_minute,
                                config.evening_peak_amplitude, config.peak_std_minutes);
        if (day % 7 >= 5) flow *= config.weekend_factor;
        if (config.noise_std > 0.0) flow += rng.gaussian(0.0, config.noise_std);
        if (config.level_shift && i >= config.level_shift->at_index) {
            flow *= config.level_shift->factor;
        }
        series.values.push_back(std::max(flow, 0.0));
    }
    return series;
}

TimeSeries resample(const TimeSeries& series, std::size_t stride, ResampleMode mode) {
    if (stride < 1) throw std::invalid_argument("resample: stride must be >= 1");
    TimeSeries out;
    out.detector_id = series.detector_id;
    out.start_epoch_seconds = series.start_epoch_seconds;
    out.interval_minutes = series.interval_minutes * static_cast<unsigned>(stride);
    const std::size_t n = series.values.size();
    if (mode == ResampleMode::Subsample) {
        out.values.reserve((n + stride - 1) / stride);
        for (std::size_t i = 0; i < n; i += stride) out.values.push_back(series.values[i]);
    } else {
        out.values.reserve(n / stride);
        for (std::size_t begin = 0; begin + stride <= n; begin += stride) {
            double sum = 0.0;
            for (std::size_t k = 0; k < stride; ++k) sum += series.values[begin + k];
            out.values.push_back(sum);
        }
    }
    if (out.values.empty()) {
        throw DataError("resample: stride " + std::to_string(stride) +
                        " leaves no complete window in " + std::to_string(n) + " points");
    }
    return out;
}

TimeSeries load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");

    auto strip_cr = [](std::string& s) {
        if (!s.empty() && s.back() == '\r') s.pop_back();
    };

    std::string line;
    if (!std::getline(in, line)) throw DataError(path + ": empty file");
    strip_cr(line);
    if (line != "timestamp,flow") {
        throw DataError(path + ": line 1: expected header 'timestamp,flow', got '" + line + "'");
    }

    TimeSeries series;
    series.detector_id = std::filesystem::path(path).stem().string();
    std::vector<std::int64_t> timestamps;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
            throw DataError(path + ": line " + std::to_string(line_no) +
                            ": expected exactly 2 fields");
        }
        std::int64_t ts;
        try {
            ts = parse_iso8601(line.substr(0, comma));
        } catch (const DataError& e) {
            throw DataError(path + ": line " + std::to_string(line_no) + ": " + e.what());
        }
        double flow;
        if (!try_parse_double(std::string_view(line).substr(comma + 1), flow) ||
            !std::isfinite(flow)) {
            throw DataError(path + ": line " + std::to_string(line_no) + ": unparsable flow '" +
                            line.substr(comma + 1) + "'");
        }
        if (!timestamps.empty() && ts <= timestamps.back()) {
            throw DataError(path + ": line " + std::to_string(line_no) +
                            ": timestamp not strictly increasing");
        }
        timestamps.push_back(ts);
        series.values.push_back(flow);
    }
    if (series.values.empty()) throw DataError(path + ": no data rows");
    series.start_epoch_seconds = timestamps.front();
    if (timestamps.size() >= 2) {
        const std::int64_t step_seconds = timestamps[1] - timestamps[0];
        series.interval_minutes = static_cast<unsigned>(std::max<std::int64_t>(1, step_seconds / 60));
    }
    return series;
}

void write_csv(const TimeSeries& series, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open '" + path + "' for writing");
    out << "timestamp,flow\n";
    for (std::size_t i = 0; i < series.values.size(); ++i) {
        out << format_iso8601(series.timestamp_at(i)) << ',' << format_double(series.values[i])
            << '\n';
    }
    if (!out) throw DataError("failed writing '" + path + "'");
}

}  // namespace flowcast

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace flowcast {

/// Raw flow readings from one detector at a fixed sampling interval.
struct TimeSeries {
    std::string detector_id = "detector";
    unsigned interval_minutes = 10;
    std::int64_t start_epoch_seconds = 1370044800;  // 2013-06-01T00:00:00
    std::vector<double> values;                     // vehicles per interval

    std::int64_t timestamp_at(std::size_t index) const {
        return start_epoch_seconds +
               static_cast<std::int64_t>(index) * 60 * static_cast<std::int64_t>(interval_minutes);
    }
};

std::string format_iso8601(std::int64_t epoch_seconds);

/// Parses "YYYY-MM-DDTHH:MM:SS" (a space separator is also accepted).
/// Throws DataError on anything else.
std::int64_t parse_iso8601(const std::string& text);

}  // namespace flowcast

#pragma once

#include <cstddef>
#include <vector>

namespace flowcast {

/// How MAPE treats pairs whose true value is zero.
///   Skip    - drop the pair from the MAPE mean and count it.
///   Epsilon - divide by max(y, epsilon).
///   Error   - throw DataError on any zero truth.
enum class ZeroPolicy { Skip, Epsilon, Error };

struct MetricsReport {
    double rmse = 0.0;  // flow units
    double mape = 0.0;  // percent
    double mae = 0.0;   // flow units
    std::size_t n_used = 0;          // pairs contributing to MAPE
    std::size_t n_skipped_zero = 0;  // pairs dropped under Skip
};

/// rmse = sqrt(mean((pred - truth)^2)), mae = mean(|pred - truth|), both over
/// all pairs; mape = mean(|pred - truth| / truth) * 100 over the pairs the
/// zero policy admits (0 when none remain).
MetricsReport evaluate(const std::vector<double>& pred, const std::vector<double>& truth,
                       ZeroPolicy zero_policy = ZeroPolicy::Skip, double epsilon = 1e-8);

}  // namespace flowcast

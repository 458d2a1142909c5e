#include "flowcast/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "flowcast/errors.hpp"

namespace flowcast {

MetricsReport evaluate(const std::vector<double>& pred, const std::vector<double>& truth,
                       ZeroPolicy zero_policy, double epsilon) {
    if (pred.empty() || pred.size() != truth.size()) {
        throw std::invalid_argument("evaluate: need equal nonempty vectors, got " +
                                    std::to_string(pred.size()) + " and " +
                                    std::to_string(truth.size()));
    }
    const std::size_t n = pred.size();
    double sq_sum = 0.0;
    double abs_sum = 0.0;
    double pct_sum = 0.0;
    std::size_t used = 0;
    std::size_t skipped = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double err = pred[i] - truth[i];
        sq_sum += err * err;
        abs_sum += std::abs(err);
        if (truth[i] == 0.0) {
            switch (zero_policy) {
                case ZeroPolicy::Skip:
                    ++skipped;
                    continue;
                case ZeroPolicy::Epsilon: break;
                case ZeroPolicy::Error:
                    throw DataError("evaluate: zero truth value at index " + std::to_string(i));
            }
        }
        const double denom =
            zero_policy == ZeroPolicy::Epsilon ? std::max(truth[i], epsilon) : truth[i];
        pct_sum += std::abs(err) / denom;
        ++used;
    }
    MetricsReport report;
    report.rmse = std::sqrt(sq_sum / static_cast<double>(n));
    report.mae = abs_sum / static_cast<double>(n);
    report.mape = used > 0 ? pct_sum / static_cast<double>(used) * 100.0 : 0.0;
    report.n_used = used;
    report.n_skipped_zero = skipped;
    return report;
}

}  // namespace flowcast

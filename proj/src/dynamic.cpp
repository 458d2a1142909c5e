#include "flowcast/dynamic.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "flowcast/errors.hpp"
#include "flowcast/rng.hpp"
#include "flowcast/text.hpp"

namespace flowcast {

namespace {

void check_split(const TimeSeries& series, std::size_t split_index) {
    const std::size_t n = series.values.size();
    // split >= 2 so the first prediction step has an observed difference
    // behind it; split <= n - 1 so at least one test step remains.
    if (split_index < 2 || split_index + 1 > n) {
        throw std::invalid_argument("split_index " + std::to_string(split_index) +
                                    " out of range for series of length " + std::to_string(n));
    }
}

SupervisedSet supervised_slice(const TimeSeries& series, std::size_t begin, std::size_t end,
                               std::size_t lag) {
    const std::vector<double> slice(series.values.begin() + static_cast<std::ptrdiff_t>(begin),
                                    series.values.begin() + static_cast<std::ptrdiff_t>(end));
    const std::vector<double> d = difference(slice);
    return build_supervised(d, lag, d.size());
}

}  // namespace

DynamicRunReport run_dynamic(Network net, ScalerParams scaler, const TimeSeries& series,
                             std::size_t split_index, const DynamicConfig& dyn,
                             const RetrainParams& retrain) {
    check_split(series, split_index);
    if (dyn.update_horizon == 0) {
        throw std::invalid_argument("run_dynamic: update_horizon must be positive");
    }
    if (dyn.window_policy == WindowPolicy::Sliding &&
        dyn.window_len < std::max<std::size_t>(dyn.update_horizon, 2)) {
        throw std::invalid_argument("run_dynamic: sliding window_len must be >= update_horizon");
    }

    const std::size_t n = series.values.size();
    const std::size_t lag = net.config.input_dim;
    DynamicRunReport report;
    std::size_t cursor = split_index;
    std::size_t train_len = split_index;
    std::size_t cycle = 0;

    while (cursor < n) {
        const std::size_t steps = std::min(dyn.update_horizon, n - cursor);
        const std::vector<double> preds = predict_series(net, series, scaler, cursor - 1, steps);
        const std::vector<double> truth(series.values.begin() + static_cast<std::ptrdiff_t>(cursor),
                                        series.values.begin() +
                                            static_cast<std::ptrdiff_t>(cursor + steps));
        report.cycles.push_back({cycle, cursor, train_len, evaluate(preds, truth)});
        report.predictions.insert(report.predictions.end(), preds.begin(), preds.end());
        cursor += steps;

        if (cursor < n) {
            // Absorb the newly observed segment into the training window.
            std::size_t begin = 0;
            if (dyn.window_policy == WindowPolicy::Sliding && cursor > dyn.window_len) {
                begin = cursor - dyn.window_len;
            }
            const SupervisedSet sup = supervised_slice(series, begin, cursor, lag);
            if (!dyn.warm_start) {
                net = init_network(net.config, mix_seed(retrain.seed, cycle, 0));
            }
            OptimizerState opt;
            opt.algorithm = retrain.optimizer;
            opt.learning_rate = retrain.learning_rate;
            train(net, sup, dyn.retrain_epochs, retrain.batch_size, opt,
                  mix_seed(retrain.seed, cycle, 1));
            scaler = sup.scaler;
            train_len = cursor - begin;
            ++report.retrain_count;
        }
        ++cycle;
    }

    const std::vector<double> truth_all(series.values.begin() +
                                            static_cast<std::ptrdiff_t>(split_index),
                                        series.values.end());
    report.overall = evaluate(report.predictions, truth_all);
    return report;
}

DynamicRunReport run_static(const Network& net, const ScalerParams& scaler,
                            const TimeSeries& series, std::size_t split_index) {
    check_split(series, split_index);
    DynamicConfig one_shot;
    one_shot.update_horizon = series.values.size() - split_index;
    one_shot.retrain_epochs = 1;  // never reached
    RetrainParams unused;
    return run_dynamic(net, scaler, series, split_index, one_shot, unused);
}

PretrainedModel pretrain_model(const NetworkConfig& config, const TimeSeries& series,
                               std::size_t split_index, std::size_t epochs,
                               const RetrainParams& params) {
    check_split(series, split_index);
    PretrainedModel result;
    const SupervisedSet sup = supervised_slice(series, 0, split_index, config.input_dim);
    result.net = init_network(config, params.seed);
    OptimizerState opt;
    opt.algorithm = params.optimizer;
    opt.learning_rate = params.learning_rate;
    result.loss_history =
        train(result.net, sup, epochs, params.batch_size, opt, mix_seed(params.seed, 0, 2));
    result.scaler = sup.scaler;
    return result;
}

void write_cycles_csv(const DynamicRunReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open '" + path + "' for writing");
    out << "cycle,start_index,rmse,mape,mae,train_len\n";
    for (const auto& c : report.cycles) {
        out << c.cycle << ',' << c.start_index << ',' << format_double(c.metrics.rmse) << ','
            << format_double(c.metrics.mape) << ',' << format_double(c.metrics.mae) << ','
            << c.train_len << '\n';
    }
    if (!out) throw DataError("failed writing '" + path + "'");
}

}  // namespace flowcast

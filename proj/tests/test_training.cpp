#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "flowcast/errors.hpp"
#include "flowcast/network.hpp"
#include "flowcast/rng.hpp"
#include "flowcast/training.hpp"
#include "oracles.hpp"

using namespace flowcast;

TEST_CASE("compute_gradients is zero at an exact fit") {
    // identity chain reproduces its input, so (x=1, y=pred) has zero loss
    Network net = testutil::scalar_network(Topology::Didrn, {1.0, 1.0});
    const double pred = forward(net, {1.0})[0];
    double loss = -1.0;
    const GradientSet grads = compute_gradients(net, {{1.0}}, {{pred}}, &loss);
    CHECK(loss == 0.0);
    for (const auto& layer : grads.layers) {
        for (double g : layer.weights.data) CHECK(g == 0.0);
        for (double g : layer.bias) CHECK(g == 0.0);
    }
}

TEST_CASE("compute_gradients scalar chain: dL/dw = 2w") {
    // plain net, single block w = 3, identity projections, sample (1, 0):
    // loss = w^2 so the block gradient is 2w = 6
    Network net = testutil::scalar_network(Topology::Plain, {3.0});
    const GradientSet grads = compute_gradients(net, {{1.0}}, {{0.0}});
    CHECK(grads.layers[1].weights(0, 0) == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("compute_gradients matches finite differences across topologies") {
    const Topology topologies[] = {Topology::Plain, Topology::Drn, Topology::Didrn};
    for (Topology topology : topologies) {
        for (std::uint64_t seed = 1; seed <= 4; ++seed) {
            Rng pick(seed * 977);
            const std::size_t blocks = 1 + pick.next_below(4);
            const std::size_t width = 2 + pick.next_below(7);
            const std::size_t batch = 1 + pick.next_below(16);
            const std::size_t in_dim = 1 + pick.next_below(3);
            const std::size_t out_dim = 1 + pick.next_below(2);
            Network net =
                testutil::random_network(topology, in_dim, width, blocks, out_dim, seed);
            std::vector<std::vector<double>> inputs, targets;
            testutil::random_batch(batch, in_dim, out_dim, seed * 13 + 1, inputs, targets);

            const GradientSet analytic = compute_gradients(net, inputs, targets);
            const auto numeric = testutil::fd_gradients(net, inputs, targets);
            const auto flat = testutil::flatten_gradients(analytic);
            REQUIRE(flat.size() == numeric.size());
            CHECK(testutil::max_gradient_rel_err(flat, numeric) < 1e-5);
        }
    }
}

TEST_CASE("compute_gradients validates batch shapes") {
    Network net = testutil::scalar_network(Topology::Plain, {1.0});
    CHECK_THROWS_AS(compute_gradients(net, {}, {}), std::invalid_argument);
    CHECK_THROWS_AS(compute_gradients(net, {{1.0, 2.0}}, {{0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(compute_gradients(net, {{1.0}}, {{0.0, 0.0}}), std::invalid_argument);
}

TEST_CASE("optimizer_update SGD step") {
    Network net = testutil::scalar_network(Topology::Plain, {1.0});
    GradientSet grads = make_zero_gradients(net);
    grads.layers[1].weights(0, 0) = 2.0;
    OptimizerState state;
    state.algorithm = OptimizerKind::Sgd;
    state.learning_rate = 0.1;
    optimizer_update(net, grads, state);
    CHECK(net.blocks[0].weights(0, 0) == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(state.step == 1);
}

TEST_CASE("optimizer_update with zero gradients is the identity") {
    for (OptimizerKind kind : {OptimizerKind::Sgd, OptimizerKind::Adam}) {
        Network net = testutil::random_network(Topology::Drn, 2, 4, 2, 1, 9);
        const Network before = net;
        OptimizerState state;
        state.algorithm = kind;
        optimizer_update(net, make_zero_gradients(net), state);
        CHECK(net.input_projection.weights.data == before.input_projection.weights.data);
        for (std::size_t b = 0; b < net.blocks.size(); ++b) {
            CHECK(net.blocks[b].weights.data == before.blocks[b].weights.data);
            CHECK(net.blocks[b].bias == before.blocks[b].bias);
        }
        CHECK(net.output_projection.weights.data == before.output_projection.weights.data);
        CHECK(state.step == 1);
    }
}

TEST_CASE("optimizer_update Adam first step has magnitude ~ lr") {
    // Hand evaluation at t=1, g=1: m_hat = v_hat = 1, so the update is
    // lr / (1 + eps), i.e. just under lr.
    Network net = testutil::scalar_network(Topology::Plain, {1.0});
    GradientSet grads = make_zero_gradients(net);
    grads.layers[1].weights(0, 0) = 1.0;
    OptimizerState state;
    state.algorithm = OptimizerKind::Adam;
    state.learning_rate = 0.1;
    optimizer_update(net, grads, state);
    const double delta = 1.0 - net.blocks[0].weights(0, 0);
    CHECK(delta == doctest::Approx(0.1 / (1.0 + 1e-8)).epsilon(1e-12));
    CHECK(delta < 0.1);
    CHECK(state.step == 1);
}

TEST_CASE("optimizer_update rejects non-finite gradients naming the layer") {
    Network net = testutil::scalar_network(Topology::Plain, {1.0, 1.0});
    GradientSet grads = make_zero_gradients(net);
    grads.layers[2].weights(0, 0) = std::numeric_limits<double>::quiet_NaN();
    OptimizerState state;
    CHECK_THROWS_WITH_AS(optimizer_update(net, grads, state), doctest::Contains("block_2"),
                         NumericError);
}

TEST_CASE("optimizer_update rejects shape-incongruent gradients") {
    Network net = testutil::scalar_network(Topology::Plain, {1.0});
    Network bigger = testutil::scalar_network(Topology::Plain, {1.0, 1.0});
    OptimizerState state;
    CHECK_THROWS_AS(optimizer_update(net, make_zero_gradients(bigger), state),
                    std::invalid_argument);
}

namespace {

SupervisedSet linear_toy_data(std::size_t count, std::uint64_t seed) {
    // y = 0.5 x on (-1, 1); already in scale, so the scaler is a formality
    Rng rng(seed);
    SupervisedSet data;
    data.scaler = {-1.0, 1.0, -1.0, 1.0};
    for (std::size_t i = 0; i < count; ++i) {
        const double x = rng.uniform(-1.0, 1.0);
        data.x.push_back({x});
        data.y.push_back(0.5 * x);
    }
    return data;
}

}  // namespace

TEST_CASE("train with zero epochs returns the network unchanged") {
    Network net = testutil::random_network(Topology::Didrn, 1, 4, 2, 1, 21);
    const Network before = net;
    OptimizerState opt;
    const auto history = train(net, linear_toy_data(16, 3), 0, 4, opt, 77);
    CHECK(history.empty());
    CHECK(net.blocks[0].weights.data == before.blocks[0].weights.data);
    CHECK(opt.step == 0);
}

TEST_CASE("train is deterministic for a fixed seed") {
    const SupervisedSet data = linear_toy_data(64, 5);
    auto run = [&data]() {
        Network net = testutil::random_network(Topology::Didrn, 1, 4, 2, 1, 33);
        OptimizerState opt;
        train(net, data, 5, 8, opt, 123);
        return net;
    };
    const Network a = run();
    const Network b = run();
    CHECK(a.input_projection.weights.data == b.input_projection.weights.data);
    for (std::size_t i = 0; i < a.blocks.size(); ++i) {
        CHECK(a.blocks[i].weights.data == b.blocks[i].weights.data);
        CHECK(a.blocks[i].bias == b.blocks[i].bias);
    }
    CHECK(a.output_projection.weights.data == b.output_projection.weights.data);
}

TEST_CASE("train fits a linear map with a small didrn") {
    // A least-squares line through (x, 0.5 x) has zero residual, so the
    // target is reachable; check the network gets close.
    const SupervisedSet data = linear_toy_data(200, 11);
    double sum_xy = 0.0, sum_xx = 0.0;
    for (std::size_t i = 0; i < data.x.size(); ++i) {
        sum_xy += data.x[i][0] * data.y[i];
        sum_xx += data.x[i][0] * data.x[i][0];
    }
    const double slope = sum_xy / sum_xx;
    double residual = 0.0;
    for (std::size_t i = 0; i < data.x.size(); ++i) {
        const double r = data.y[i] - slope * data.x[i][0];
        residual += r * r;
    }
    REQUIRE(residual / static_cast<double>(data.x.size()) < 1e-20);

    Network net = testutil::random_network(Topology::Didrn, 1, 8, 4, 1, 1);
    OptimizerState opt;
    const auto history = train(net, data, 500, 16, opt, 9);
    REQUIRE(history.size() == 500);
    CHECK(history.back() < 1e-3);
}

TEST_CASE("train reports the epoch and batch when the loss explodes") {
    SupervisedSet data = linear_toy_data(8, 2);
    for (auto& row : data.x) row[0] *= 1e150;  // overflow through the linear projection
    for (auto& y : data.y) y *= 1e150;
    Network net = testutil::scalar_network(Topology::Plain, {2.0});
    OptimizerState opt;
    opt.algorithm = OptimizerKind::Sgd;
    opt.learning_rate = 1.0;
    CHECK_THROWS_WITH_AS(train(net, data, 3, 8, opt, 4), doctest::Contains("epoch"),
                         NumericError);
}

TEST_CASE("train validates arguments") {
    Network net = testutil::scalar_network(Topology::Plain, {1.0});
    OptimizerState opt;
    SupervisedSet empty;
    CHECK_THROWS_AS(train(net, empty, 1, 4, opt, 1), std::invalid_argument);
    CHECK_THROWS_AS(train(net, linear_toy_data(4, 1), 1, 0, opt, 1), std::invalid_argument);
}

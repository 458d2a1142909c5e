#include <doctest.h>

#include <sstream>

#include "flowcast/errors.hpp"
#include "flowcast/model_io.hpp"
#include "flowcast/rng.hpp"
#include "oracles.hpp"

using namespace flowcast;

namespace {

std::string to_bytes(const Network& net) {
    std::ostringstream out(std::ios::binary);
    save_network(net, out);
    return out.str();
}

}  // namespace

TEST_CASE("model round-trip is bit-exact") {
    for (Topology topology : {Topology::Plain, Topology::Drn, Topology::Didrn}) {
        const Network net = testutil::random_network(topology, 2, 5, 3, 1, 17);
        const std::string bytes = to_bytes(net);
        std::istringstream in(bytes, std::ios::binary);
        const Network loaded = load_network(in);

        CHECK(to_bytes(loaded) == bytes);
        CHECK(loaded.config.topology == topology);
        CHECK(loaded.blocks.size() == net.blocks.size());

        // identical forward outputs on probe inputs
        Rng rng(5);
        for (int probe = 0; probe < 100; ++probe) {
            std::vector<double> x(2);
            for (auto& v : x) v = rng.uniform(-2.0, 2.0);
            CHECK(forward(loaded, x) == forward(net, x));
        }
    }
}

TEST_CASE("load_network rejects a bad magic tag") {
    std::istringstream in("NOTAMODELxxxxxxxxxxxxxxxx", std::ios::binary);
    CHECK_THROWS_WITH_AS(load_network(in), doctest::Contains("magic"), DataError);
}

TEST_CASE("load_network rejects unsupported versions") {
    const Network net = testutil::random_network(Topology::Didrn, 1, 3, 2, 1, 1);
    std::string bytes = to_bytes(net);
    bytes[8] = 99;  // version field follows the 8-byte magic
    std::istringstream in(bytes, std::ios::binary);
    CHECK_THROWS_WITH_AS(load_network(in), doctest::Contains("version"), DataError);
}

TEST_CASE("load_network rejects truncated files") {
    const Network net = testutil::random_network(Topology::Didrn, 1, 3, 2, 1, 1);
    const std::string bytes = to_bytes(net);
    std::istringstream in(bytes.substr(0, bytes.size() / 2), std::ios::binary);
    CHECK_THROWS_WITH_AS(load_network(in), doctest::Contains("truncated"), DataError);
}

#pragma once

#include <iosfwd>
#include <string>

#include "flowcast/network.hpp"

namespace flowcast {

/// Versioned flat binary model file: magic tag, format version, the network
/// config, then every layer's weights (row-major) and bias in canonical
/// order, all as little-endian 64-bit floats. Round-trips are bit-exact.
void save_network(const Network& net, std::ostream& out);
void save_network(const Network& net, const std::string& path);

/// Throws DataError on a bad magic tag, unsupported version, inconsistent
/// shapes, or truncation.
Network load_network(std::istream& in);
Network load_network(const std::string& path);

}  // namespace flowcast

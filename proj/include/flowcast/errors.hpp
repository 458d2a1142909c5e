#pragma once

#include <stdexcept>

namespace flowcast {

// Malformed or degenerate input data: unreadable files, bad CSV rows,
// constant series that cannot be scaled, and the like.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Non-finite values encountered while training or updating a model.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace flowcast

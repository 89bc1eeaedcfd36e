#pragma once

#include <stdexcept>
#include <string>

namespace kicktop {

// Requested computation exceeds a configured size cap; caller should switch
// to an iterative path (e.g. time averaging instead of full diagonalization).
struct ResourceError : std::runtime_error {
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// Spectrum has (numerically) degenerate eigenphases, so quantities that
// require a nondegenerate spectrum are refused.
struct DegeneracyError : std::runtime_error {
  explicit DegeneracyError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace kicktop

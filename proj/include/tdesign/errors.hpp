#pragma once

#include <stdexcept>
#include <string>

namespace tdesign {

/// x_2 is (anti)parallel to x_1, so the meridian rotation is undefined.
/// Callers may permute the points and retry; no silent reordering happens here.
struct DegenerateGauge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Argument outside the admissible interval (beyond clamping slack).
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A vector that is supposed to be a unit vector is too far from unit norm.
struct NormError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Backtracking exhausted without producing a finite objective value.
struct LineSearchStall : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A matrix decomposition failed to converge.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed point-file input; `line` is 1-based.
struct FileFormatError : std::runtime_error {
  FileFormatError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line(line) {}
  int line;
};

}  // namespace tdesign

#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace meshopt {

using Index = std::int64_t;

template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;

/// Vertex coordinates of one element, one column per vertex.
template <typename Scalar, int N = Eigen::Dynamic>
using Points = Eigen::Matrix<Scalar, 3, N>;

using Vec3d = Vec3<double>;
using Points3d = Eigen::Matrix3Xd;

/// Per-vertex gradient, column-aligned with the coordinates it differentiates.
using GradVec = Eigen::Matrix3Xd;

// Error hierarchy. Everything derives from Error so callers can catch
// the whole family at a module boundary.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IndexError : Error {
  using Error::Error;
};

struct ArgumentError : Error {
  using Error::Error;
};

struct TopologyError : Error {
  using Error::Error;
};

/// A normalization divided by a vanishing norm.
struct SingularityError : Error {
  using Error::Error;
};

struct UnsupportedError : Error {
  using Error::Error;
};

/// Malformed input text; carries the 1-based line number.
struct ParseError : Error {
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line(line) {}
  std::size_t line;
};

/// Well-formed text with inconsistent contents (counts, indices).
struct FormatError : ParseError {
  using ParseError::ParseError;
};

/// Element-level failure re-thrown with the offending element index.
struct ElementError : SingularityError {
  ElementError(const std::string& what, Index element)
      : SingularityError("element " + std::to_string(element) + ": " + what), element(element) {}
  Index element;
};

}  // namespace meshopt

#pragma once

#include <stdexcept>
#include <string>

namespace treejacobi {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An exact division left a nonzero remainder.
struct DivisionError : Error {
  using Error::Error;
};

struct ArgumentError : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

/// A tree document parsed but violates a structural invariant.
struct ValidationError : Error {
  using Error::Error;
};

struct UnknownVertex : Error {
  using Error::Error;
};

/// A builder hit a degenerate value that its construction rules out.
struct ConstructionError : Error {
  using Error::Error;
};

struct SolveError : Error {
  using Error::Error;
};

struct PositivityError : Error {
  using Error::Error;
};

}  // namespace treejacobi

#pragma once

// Lets Eigen dense containers carry the exact scalar types. Only coefficient
// access and the algorithms in linalg.hpp are used on them; Eigen's floating
// point decompositions are never instantiated with these scalars.

#include <Eigen/Core>

#include "treejacobi/rational.hpp"

namespace Eigen {

template <>
struct NumTraits<treejacobi::Rational> : GenericNumTraits<treejacobi::Rational> {
  using Real = treejacobi::Rational;
  using NonInteger = treejacobi::Rational;
  using Literal = treejacobi::Rational;
  using Nested = treejacobi::Rational;

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 40,
    MulCost = 60
  };

  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<treejacobi::GaussianRational> : GenericNumTraits<treejacobi::GaussianRational> {
  using Real = treejacobi::Rational;
  using NonInteger = treejacobi::GaussianRational;
  using Literal = treejacobi::GaussianRational;
  using Nested = treejacobi::GaussianRational;

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 20,
    AddCost = 80,
    MulCost = 240
  };

  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace treejacobi {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RationalMatrix = Matrix<Rational>;
using RationalVector = Vector<Rational>;
using GaussianMatrix = Matrix<GaussianRational>;
using GaussianVector = Vector<GaussianRational>;

inline bool is_zero(const Rational& r) { return r.is_zero(); }
inline bool is_zero(const GaussianRational& g) { return g.is_zero(); }

}  // namespace treejacobi

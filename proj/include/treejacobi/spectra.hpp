#pragma once

#include <string>
#include <vector>

#include "treejacobi/eigen_support.hpp"
#include "treejacobi/roots.hpp"
#include "treejacobi/treepoly.hpp"

namespace treejacobi {

/// J_x = P_x J P_x as an exact symmetric matrix, rows in the document order
/// of Gamma_x. `tree` is Gamma_x itself (top = x).
struct TruncatedOperator {
  TreeTruncation tree;
  RationalMatrix matrix;

  static TruncatedOperator build(const TreeTruncation& t, Vertex x);
  static TruncatedOperator build(const TreeTruncation& t) { return build(t, t.top()); }
};

/// det(zI - J_x) by the cofactor recursion along the tree:
/// D_v = (z - beta_v) prod D_c - sum_c lambda_c^2 E_c prod_{c' != c} D_{c'}.
Poly char_poly(const TruncatedOperator& op);
/// Same polynomial from a dense Hessenberg reduction; independent of the
/// tree structure.
Poly char_poly_dense(const RationalMatrix& m);

struct SharedRootFactor {
  Vertex vertex = 0;  // t with children t_1 ... t_k
  Poly factor;        // prod_i monic(P_{t_i,t}) / monic(P_{t,t})
  RootSet roots;      // multiplicity = shared multiplicity - 1
};

struct SpectralDescription {
  Poly part_a_poly;  // P_{x,x'}
  RootSet part_a;
  std::vector<SharedRootFactor> part_b;

  /// monic(P_{x,x'}) times every part_b factor.
  Poly product() const;
};

SpectralDescription theorem2_spectrum(const PolyFamily& f, Vertex x);

struct SpectralIdentity {
  Poly char_poly;  // monic det(zI - J_x)
  Poly product;    // from the description
  bool identity = false;
  bool set_level = false;  // same distinct roots (fallback comparison)
};

/// DivisionError if a factor division is inexact.
SpectralIdentity spectral_identity(const PolyFamily& f, Vertex x);
inline bool verify_spectral_identity(const PolyFamily& f, Vertex x) { return spectral_identity(f, x).identity; }

struct WitnessCheck {
  Vertex vertex = 0;
  Vertex child_a = 0;
  Vertex child_b = 0;
  Poly modulus;  // square-free shared factor g; r ranges over its roots
  bool pass = false;
};

/// For every vertex t and pair of children sharing roots, the vector
/// u = lambda_b u_b(b) u_a on Gamma_a, -lambda_a u_a(a) u_b on Gamma_b, zero
/// elsewhere, checked to satisfy (J_x - z) u = 0 and u != 0 in Q[z]/(g).
/// Needs the full table.
std::vector<WitnessCheck> check_eigen_witnesses(const PolyFamily& f, Vertex x);

struct Inertia {
  long negative = 0;
  long zero = 0;
  long positive = 0;
};

/// Signs of the eigenvalues of J_x - alpha I by an LDL^T sweep along the
/// tree (O(#Gamma_x) exact operations).
Inertia tree_inertia(const TreeTruncation& t, Vertex x, const Rational& alpha);

/// Roots of char_poly in (-inf, 0), counted with multiplicity by Sturm
/// sequences.
long count_negative_eigenvalues(const TruncatedOperator& op);

/// Eigenvalues of J_x outside [-bound, bound], with multiplicity.
long count_outside(const Poly& char_poly, const Rational& bound);

}  // namespace treejacobi

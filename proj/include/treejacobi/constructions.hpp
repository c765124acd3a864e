#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "treejacobi/classical.hpp"
#include "treejacobi/solutions.hpp"
#include "treejacobi/tree.hpp"

namespace treejacobi {

// ---------------------------------------------------------------------------
// Non-essentially-selfadjoint matrix with a small-norm solution at z = i.

struct Theorem3Result {
  TreeTruncation tree;
  SolutionField v;              // v(x_0) = 1/2, satisfied on all of Gamma_{x_depth}
  std::vector<Rational> ledger;  // ||v on Gamma_{x_n}||^2, n = 0 ... depth
  std::vector<Rational> path_lambda;
  std::vector<Rational> side_lambda;  // lambda_{y_{n-1}}, n = 1 ... depth
};

/// Inductive build with beta = 0: lambda_{x_{n-1}} doubles from 1 until
/// |v(x_n)|^2 <= 2^{-n-2}; the side subtree below x_n is full binary with
/// lambda = 1 inside, its solution is rescaled so that lambda_y is a
/// positive rational, halved until the side norm is <= 2^{-n-2}. Then
/// ||v on Gamma_{x_n}||^2 <= 3/4 - 2^{-n-1} <= 1 - 2^{-n} for n >= 1.
Theorem3Result theorem3_build(int depth);

// ---------------------------------------------------------------------------
// Bounded homogeneous part plus a path perturbation.

enum class PathRule { decaying, growing };  // lambda_n = 2^{-n} or 2^n

/// lambda = 1/sqrt(d) off the path, 1/sqrt(d) + 2^{-n} (or 2^n) on it,
/// beta = 0. ArgumentError unless d >= 4 is a perfect square.
TreeTruncation remark2_build(int d, int depth, PathRule rule = PathRule::decaying);
/// The unperturbed part J_0.
TreeTruncation remark2_j0(int d, int depth);
/// The path part J_1 as a classical matrix with beta = 0.
ClassicalJacobi remark2_j1(PathRule rule, long cap);

/// Number of eigenvalues outside [-bound, bound], by two independent exact
/// routes: tree inertia of J -/+ bound, and Sturm counts over the factors
/// of the spectral factorization. `by_char_poly` is filled for small trees.
struct SpectralBound {
  long by_inertia = 0;
  long by_factors = 0;
  std::optional<long> by_char_poly;
  bool consistent() const { return by_inertia == by_factors && (!by_char_poly || *by_char_poly == by_inertia); }
};
SpectralBound spectral_bound(const TreeTruncation& t, const Rational& bound, std::size_t char_poly_limit = 80);

// ---------------------------------------------------------------------------
// Path with pendant vertices y_{n-1} below x_n.

enum class DecoratedMode { automatic, exact, surd };

/// lambda_{x_n} = lambda_n, beta_{x_n} = 0, beta_{y_{n-1}} = beta_n and
/// lambda_{y_{n-1}} = mu_n with mu_n^2 = 1 + beta_n^2. When some mu_n is
/// irrational the surd mode works with w(y) = v(y) / mu, for which every
/// identity only involves mu^2.
struct DecoratedResult {
  bool exact = true;
  std::optional<TreeTruncation> tree;  // exact mode only
  std::vector<Rational> mu2;            // n = 1 ... depth
  std::vector<GaussianRational> v;      // v(x_0) ... v(x_{depth+1}) at z = i
  std::vector<GaussianRational> w;      // v(y_{n-1}) / mu_n, n = 1 ... depth
  std::vector<GaussianRational> reduced_residuals;  // 2i v_n - (lambda_n v_{n+1} - beta_n v_n + lambda_{n-1} v_{n-1})
  std::vector<GaussianRational> eigen_residuals;    // full eigen-equation on x_0 ... x_depth and y_0 ...
  std::vector<bool> pendant_identity;               // |v(y_{n-1})|^2 == |v_n|^2
  bool pass() const;
};
DecoratedResult decorated_path_build(const ClassicalJacobi& j, int depth, DecoratedMode mode = DecoratedMode::automatic);

/// (lambda_n, -beta_n) of a classical matrix.
ClassicalJacobi negate_beta(const ClassicalJacobi& j);

// ---------------------------------------------------------------------------
// Positivity certificates.

struct VertexBalance {
  Vertex vertex = 0;
  Rational lhs;    // beta_x m(x)
  Rational rhs;    // lambda_x m(x') + sum lambda_y m(y); no parent term at the top
  Rational alpha;  // lambda_x m(x) / m(x'), zero at the top
  Rational gamma;  // lambda_x m(x') / m(x), zero at the top
};

struct PositivityVerdict {
  bool inequality = true;  // lhs >= rhs everywhere
  bool equality = true;    // lhs == rhs below the top
  std::optional<long> negative_eigenvalues;  // filled when the inequality holds
  std::vector<VertexBalance> balances;
  std::vector<std::string> failures;
  bool certified() const { return inequality && negative_eigenvalues == 0; }
};

PositivityVerdict positivity_check(const TreeTruncation& t, const std::map<Vertex, Rational>& m);

enum class CertificateMode { inequality, equality };

struct Certificate {
  TreeTruncation base;
  std::map<Vertex, Rational> m;
  CertificateMode mode = CertificateMode::equality;
  // Intermediate data of the construction.
  Rational epsilon;
  std::map<Vertex, Rational> regularized;  // f / f(x_0) for (epsilon I + U J U) f = delta_{x_0}
  std::vector<Rational> c;                 // side-mass coefficients c_n
  std::vector<Rational> equality_residuals;  // below the top, all zero when verified
};

/// Regularized solve, exact side solves, classical path correction and side
/// rescaling. ArgumentError unless J is positive definite on the truncation;
/// SolveError on a singular system; PositivityError if an entry is not > 0.
Certificate positivity_construct_m(const TreeTruncation& t, const PathSelection& path, int n_reg = 8);

// ---------------------------------------------------------------------------
// Real parameter with no nonzero solution.

struct Prop5Level {
  int k = 0;
  Rational v_y;        // interior solution value at y_k, scaled to P_{y_k,y_k}(0)
  Rational beta_y;     // chosen so that the recurrence at y_k forces v(x_{k+1}) = 0
  long interior_dimension = 0;    // solutions on Gamma_{y_k} minus y_k at z = 0
  long interior_negative = 0;     // negative eigenvalues of the blocks below y_k
};

struct Prop5Result {
  TreeTruncation tree;
  std::vector<Prop5Level> levels;
};

/// Binary tree with lambda = 1, beta = 4 inside each Gamma_{y_k} minus
/// y_k, lambda_{y_k} = 1 and lambda_{x_k} = 1, beta_{x_k} = 0 except
/// beta_{x_0}, which defaults to 1: with beta_{x_0} = 0 the leaves x_0 and
/// y_0 are twins and delta_{x_0} - delta_{y_0} is a kernel vector.
Prop5Result prop5_build(int depth, const Rational& beta_x0 = 1);

}  // namespace treejacobi

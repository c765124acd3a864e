#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "treejacobi/eigen_support.hpp"
#include "treejacobi/tree.hpp"

namespace treejacobi {

/// Vertex function on Gamma_{root} of `base` at spectral parameter z.
/// `above` is the value at root', which the eigen-equation at the root
/// needs; it is absent when the field stops at the root.
struct SolutionField {
  TreeTruncation base;
  Vertex root = 0;
  GaussianRational z;
  std::map<Vertex, GaussianRational> values;
  std::optional<GaussianRational> above;
  std::vector<Vertex> satisfied_at;

  const GaussianRational& at(Vertex v) const { return values.at(v); }

  /// lambda_v f(v') + beta_v f(v) + sum_c lambda_c f(c) - z f(v).
  GaussianRational residual(Vertex v) const;
  /// True when every residual over satisfied_at is exactly zero.
  bool satisfied() const;
  /// sum |f|^2 over Gamma_x (x defaults to the root).
  Rational norm2() const { return norm2(root); }
  Rational norm2(Vertex x) const;
};

/// P_{c,c}(z) / P_{c,c'}(z) for every c in Gamma_x, from the continued
/// fraction lambda_c / (z - beta_c - sum_d lambda_d r(d)). SolveError if a
/// denominator vanishes, which cannot happen off the real axis.
std::map<Vertex, GaussianRational> side_ratios(const TreeTruncation& t, Vertex x, const GaussianRational& z);

/// c_n(z) = sum over children y of x_n other than x_{n-1} of
/// lambda_y P_{y,y}(z) / P_{y,x_n}(z).
struct SideReduction {
  Vertex vertex = 0;
  GaussianRational effective;
};
SideReduction side_reduction(const TreeTruncation& t, const PathSelection& path, std::size_t n,
                             const GaussianRational& z);

struct SolutionPair {
  SolutionField v;  // v(x_0) = 1, v(x_1) = (z - beta_{x_0}) / lambda_{x_0}
  SolutionField u;  // u(x_0) = 0, u(x_1) = 1 / lambda_{x_0}
  PathSelection path;
};

/// Both fields live on Gamma_{x_N}, N = path length, and carry the value at
/// x_N' as `above`. v solves the eigen-equation everywhere, u everywhere but
/// x_0. ArgumentError for real z.
SolutionPair solve_pair(const TreeTruncation& t, const PathSelection& path, const GaussianRational& z);

/// Same as solve_pair(...).v with a different seed v(x_0).
SolutionField solve_v(const TreeTruncation& t, const PathSelection& path, const GaussianRational& z,
                      const GaussianRational& seed = 1);

/// v(x_n) u(x_{n+1}) - u(x_n) v(x_{n+1}); n may equal the path length, in
/// which case the `above` values are used.
GaussianRational wronskian(const SolutionPair& pair, std::size_t n);

/// Proportionality v(x_n) u(s) = u(x_n) v(s) on every side subtree.
bool check_side_proportionality(const SolutionPair& pair);

/// Dimension of { f on Gamma_x : eigen-equation at every vertex of Gamma_x
/// other than x } over Q(i), by exact elimination.
long uniqueness_dimension(const TreeTruncation& t, Vertex x, const GaussianRational& z);

/// Nullspace basis of the same system, one column per basis vector, rows
/// in the order of t.descendants(x).
GaussianMatrix interior_kernel(const TreeTruncation& t, Vertex x, const GaussianRational& z);

struct PositivityReport {
  bool real_positive = true;  // i^{-l(x)} v(x) real and > 0 everywhere
  bool step_inequality = true;
  std::vector<std::string> failures;
  bool pass() const { return real_positive && step_inequality; }
};

/// Sign structure of v at z = i for beta = 0 (ArgumentError otherwise):
/// i^{-l(x)} v(x) > 0 and lambda_{x_n} w(x_{n+1}) > lambda_{x_{n-1}} w(x_{n-1}).
PositivityReport lemma4_positivity(const TreeTruncation& t, const PathSelection& path);

/// Propagation of a real eigen-solution upward from f(x_0) = 1.
struct RealPropagation {
  std::optional<SolutionField> field;
  std::optional<Vertex> obstruction;
  bool by_elimination = false;  // decided by the linear-algebra fallback
  bool ok() const { return field.has_value(); }
};

/// Side subtrees are filled with f(x_n) P_{y,s}(r) / P_{y,x_n}(r). When
/// P_{y,x_n}(r) = 0 while f(x_n) != 0 no solution with f(x_0) = 1 exists
/// and y is reported. A 0/0 ratio leaves the side undetermined, so the
/// question is settled by elimination on Gamma_{x_n}. The path defaults to
/// the first-child chain below x.
RealPropagation propagate_real(const TreeTruncation& t, Vertex x, const Rational& r,
                               std::optional<PathSelection> path = std::nullopt);

/// Elimination oracle: does a solution on Gamma_x with f(x_0) = 1 exist?
bool real_solution_exists(const TreeTruncation& t, Vertex x, Vertex x0, const Rational& r);

/// Depth-parameterized generator for growth profiles.
using TreeGenerator = std::function<TreeTruncation(int depth)>;

struct GrowthRow {
  int depth = 0;
  Rational norm2;     // ||v on Gamma_{x_d}||^2
  Rational carleman;  // sum_{n <= d} 1 / lambda_{x_n}
};

/// Finite-depth profile. The verdicts are indicators only: a finite table
/// cannot decide square summability.
struct GrowthProfile {
  std::vector<GrowthRow> rows;
  bool norm_increasing = true;
  bool carleman_increasing = true;
  std::optional<Rational> norm_max;
};

GrowthProfile norm_growth_profile(const TreeGenerator& gen, const GaussianRational& z, const std::vector<int>& depths,
                                  const GaussianRational& seed = 1);

}  // namespace treejacobi

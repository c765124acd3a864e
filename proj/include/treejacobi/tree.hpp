#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "treejacobi/rational.hpp"

namespace treejacobi {

using Vertex = std::size_t;

/// One row of a tree description, before validation.
struct VertexSpec {
  std::string id;
  std::optional<std::string> parent;  // empty for the top
  int level = 0;
  Rational lambda;  // ignored for the top; see top_lambda
  Rational beta;
  bool cut = false;
};

/// Finite subtree Gamma_x of a one-ended tree with Jacobi coefficients.
///
/// Vertices are dense indices in document order; children keep the order in
/// which they appear. lambda(v) sits on the edge v -- v' and is defined for
/// the top as well. A vertex flagged `cut` had some of its children removed,
/// so the eigen-equation is not asserted there.
class TreeTruncation {
 public:
  /// Validates and builds; ValidationError names the offending vertex.
  static TreeTruncation build(const std::vector<VertexSpec>& vertices, const std::string& top,
                              const Rational& top_lambda);

  std::size_t size() const { return names_.size(); }
  Vertex top() const { return top_; }

  const std::string& name(Vertex v) const { return names_.at(v); }
  /// UnknownVertex when absent.
  Vertex index(const std::string& id) const;
  bool contains(const std::string& id) const { return ids_.count(id) != 0; }

  std::optional<Vertex> parent(Vertex v) const;
  const std::vector<Vertex>& children(Vertex v) const { return children_.at(v); }
  int level(Vertex v) const { return levels_.at(v); }
  const Rational& lambda(Vertex v) const { return lambdas_.at(v); }
  const Rational& beta(Vertex v) const { return betas_.at(v); }
  bool is_cut(Vertex v) const { return cut_.at(v); }
  bool is_leaf(Vertex v) const { return children_.at(v).empty(); }

  /// Children before parents; siblings in document order.
  std::vector<Vertex> post_order() const;
  /// Vertices of Gamma_x (x first, then a preorder walk).
  std::vector<Vertex> descendants(Vertex x) const;

  /// Gamma_x as its own truncation, top = x, inheriting coefficients.
  TreeTruncation subtree(Vertex x) const;

  /// Same shape with new coefficients.
  TreeTruncation with_coefficients(const std::vector<Rational>& lambda,
                                   const std::vector<Rational>& beta) const;

  std::vector<VertexSpec> specs() const;

  friend bool operator==(const TreeTruncation&, const TreeTruncation&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<std::optional<Vertex>> parents_;
  std::vector<std::vector<Vertex>> children_;
  std::vector<int> levels_;
  std::vector<Rational> lambdas_;
  std::vector<Rational> betas_;
  std::vector<bool> cut_;
  Vertex top_ = 0;
  std::unordered_map<std::string, Vertex> ids_;
};

/// x_0, x_1, ..., x_n with parent(x_k) = x_{k+1} and level(x_k) = k.
using PathSelection = std::vector<Vertex>;

/// Walks from a level-0 vertex up to the top.
PathSelection path_from(const TreeTruncation& t, Vertex x0);
/// The first-child chain from the top down to level 0.
PathSelection default_path(const TreeTruncation& t);
/// ArgumentError unless the path is a valid level-indexed chain in t.
void validate_path(const TreeTruncation& t, const PathSelection& path);
/// Parses a comma separated list of vertex ids.
PathSelection parse_path(const TreeTruncation& t, const std::string& ids);

// ---------------------------------------------------------------------------
// Generators

/// Where a generated vertex sits; coefficient rules are functions of this.
struct VertexInfo {
  int level = 0;
  int sibling = 0;          // position among its parent's children
  bool on_path = false;     // belongs to the first-child chain x_0 ... x_n
  int path_distance = 0;    // edges to the nearest path vertex
  bool top = false;
};

struct CoeffRule {
  std::function<Rational(const VertexInfo&)> lambda;
  std::function<Rational(const VertexInfo&)> beta;

  static CoeffRule constant(const Rational& lambda, const Rational& beta);
};

enum class ShapeKind { homogeneous, path, decorated_path };

struct Shape {
  ShapeKind kind = ShapeKind::homogeneous;
  int d = 2;
  int depth = 0;

  static Shape homogeneous(int d, int depth) { return {ShapeKind::homogeneous, d, depth}; }
  static Shape path(int depth) { return {ShapeKind::path, 1, depth}; }
  static Shape decorated_path(int depth) { return {ShapeKind::decorated_path, 2, depth}; }
};

/// Deterministic truncation. Path vertices are named x0 ... xN, pendant
/// vertices of the decorated path y0 ... y{N-1}, everything else
/// "<parent>.<sibling>". ArgumentError on a nonpositive lambda.
TreeTruncation generate(const Shape& shape, const CoeffRule& rule);

/// Rooted shape with every leaf on level 0; children[i] are subshapes.
struct TreeShape {
  std::vector<TreeShape> children;
  int height() const;
  int count() const;
  friend auto operator<=>(const TreeShape&, const TreeShape&) = default;
};

/// All shapes (up to reordering of children) with at most `max_vertices`
/// vertices.
std::vector<TreeShape> enumerate_shapes(int max_vertices);

TreeTruncation from_shape(const TreeShape& shape, const CoeffRule& rule);

struct RandomCoeffs {
  int max_den = 4;
  Rational lambda_max = 3;  // lambda in (0, lambda_max]
  Rational beta_bound = 3;  // beta in [-beta_bound, beta_bound]
  bool zero_beta = false;
};

Rational random_rational(std::mt19937_64& rng, const Rational& lo, const Rational& hi, int max_den);

/// Random shape with at most `max_vertices` vertices and all leaves on level
/// 0; every vertex above level 0 gets one to three children.
TreeShape random_shape(std::mt19937_64& rng, int max_vertices, int min_height = 0);
TreeTruncation random_tree(std::mt19937_64& rng, int max_vertices, const RandomCoeffs& coeffs = {},
                           int min_height = 0);
/// Path of the given depth (first-child chain) with a random side subtree
/// below roughly half of its vertices. Side subtrees may exceed
/// `side_budget` through their unary chains.
TreeShape random_spine_shape(std::mt19937_64& rng, int depth, int side_budget = 7);
/// New random coefficients on an existing shape.
TreeTruncation randomize_coefficients(const TreeTruncation& t, std::mt19937_64& rng,
                                      const RandomCoeffs& coeffs = {});

}  // namespace treejacobi

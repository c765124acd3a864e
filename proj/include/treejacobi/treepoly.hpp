#pragma once

#include <map>
#include <string>
#include <vector>

#include "treejacobi/poly.hpp"
#include "treejacobi/tree.hpp"

namespace treejacobi {

/// The polynomials P_{v,s}(z) on Gamma_x: for each v in Gamma_x the solution
/// of the eigen-equation on Gamma_v minus v, evaluated at s in Gamma_v and at
/// the parent v'. P_{v,v} is monic; P_{v,v'} then has leading coefficient
/// 1/lambda_v.
class PolyFamily {
 public:
  /// Bottom-up LCM recursion. `full_table` also stores P_{v,s} for every s
  /// strictly below v; otherwise only P_{v,v}, P_{v,v'} and the values at
  /// the children of v are kept.
  static PolyFamily compute(const TreeTruncation& t, Vertex x, bool full_table = true);
  static PolyFamily compute(const TreeTruncation& t, bool full_table = true) {
    return compute(t, t.top(), full_table);
  }

  const TreeTruncation& base() const { return tree_; }
  Vertex root() const { return root_; }
  bool full() const { return full_; }

  /// Gamma_x in post-order.
  const std::vector<Vertex>& vertices() const { return order_; }

  const Poly& diag(Vertex v) const { return diag_.at(v); }  // P_{v,v}
  const Poly& up(Vertex v) const { return up_.at(v); }      // P_{v,v'}
  /// P_{v,s} for s in Gamma_v or s = v'. Without the full table only s = v,
  /// s = v' and children of v are available (ArgumentError otherwise).
  const Poly& at(Vertex v, Vertex s) const;

 private:
  TreeTruncation tree_;
  Vertex root_ = 0;
  bool full_ = false;
  std::vector<Vertex> order_;
  std::map<Vertex, Poly> diag_, up_;
  std::map<Vertex, std::map<Vertex, Poly>> table_;  // v -> (s -> P_{v,s}), s strictly below v
};

/// Convenience: family on Gamma_x of t.
inline PolyFamily family(const TreeTruncation& t, Vertex x, bool full_table = true) {
  return PolyFamily::compute(t, x, full_table);
}

/// P_{x,y} rebuilt from diagonal ratios along the path y = y_0, ..., y_n = x:
/// prod_k P_{y_k,y_k}/P_{y_{k-1},y_k} times P_{y_0,y_0}.
Poly telescoped(const PolyFamily& f, Vertex x, Vertex y);

struct VertexCheck {
  Vertex vertex = 0;
  bool pass = true;
  std::string detail;  // empty on success
};

struct FamilyReport {
  std::vector<VertexCheck> entries;
  bool pass() const;
  std::vector<VertexCheck> failures() const;
};

/// Real simple roots of P_{v,v} and P_{v,v'}, strict interlacing, degree law
/// and the 1/lambda_v leading coefficient at every vertex.
FamilyReport check_interlacing(const PolyFamily& f);

/// P_{y,s} divides P_{v,s} for every child y of v and every stored s in
/// Gamma'_y. Longer chains follow by transitivity.
FamilyReport check_divisibility(const PolyFamily& f);

/// Table entries agree with the telescoping product (full table only).
FamilyReport check_telescoping(const PolyFamily& f);

}  // namespace treejacobi

#include "treejacobi/treepoly.hpp"

#include "treejacobi/errors.hpp"
#include "treejacobi/roots.hpp"

namespace treejacobi {

PolyFamily PolyFamily::compute(const TreeTruncation& t, Vertex x, bool full_table) {
  if (x >= t.size()) throw UnknownVertex("vertex index out of range");
  PolyFamily f;
  f.tree_ = t;
  f.root_ = x;
  f.full_ = full_table;

  // Post-order restricted to Gamma_x.
  std::vector<bool> inside(t.size(), false);
  for (Vertex v : t.descendants(x)) inside[v] = true;
  for (Vertex v : t.post_order()) {
    if (inside[v]) f.order_.push_back(v);
  }

  const Poly z = Poly::monomial(1, 1);
  for (Vertex v : f.order_) {
    const auto& kids = t.children(v);
    Poly pvv = Poly::constant(1);
    for (Vertex c : kids) pvv = lcm(pvv, f.up_.at(c));

    auto& row = f.table_[v];
    Poly rhs = (z - Poly::constant(t.beta(v))) * pvv;
    for (Vertex c : kids) {
      // P_{v,s} = (P_{v,v} / P_{c,v}) P_{c,s} for s in Gamma_c.
      const Poly q = exact_div(pvv, f.up_.at(c));
      Poly pvc = q * f.diag_.at(c);
      rhs -= t.lambda(c) * pvc;
      if (full_table) {
        for (const auto& [s, pcs] : f.table_.at(c)) row.emplace(s, q * pcs);
      }
      row.emplace(c, std::move(pvc));
    }
    f.diag_.emplace(v, std::move(pvv));
    f.up_.emplace(v, rhs / t.lambda(v));
  }
  return f;
}

const Poly& PolyFamily::at(Vertex v, Vertex s) const {
  if (s == v) return diag(v);
  if (tree_.parent(v) == s) return up(v);
  const auto row = table_.find(v);
  if (row != table_.end()) {
    const auto it = row->second.find(s);
    if (it != row->second.end()) return it->second;
  }
  throw ArgumentError("P_{" + tree_.name(v) + "," + tree_.name(s) + "} is not stored in this family");
}

Poly telescoped(const PolyFamily& f, Vertex x, Vertex y) {
  const auto& t = f.base();
  Poly acc = f.diag(y);
  for (Vertex cur = y; cur != x;) {
    const auto up = t.parent(cur);
    if (!up) throw ArgumentError("'" + t.name(y) + "' is not below '" + t.name(x) + "'");
    acc *= exact_div(f.diag(*up), f.up(cur));
    cur = *up;
  }
  return acc;
}

bool FamilyReport::pass() const {
  for (const auto& e : entries) {
    if (!e.pass) return false;
  }
  return true;
}

std::vector<VertexCheck> FamilyReport::failures() const {
  std::vector<VertexCheck> out;
  for (const auto& e : entries) {
    if (!e.pass) out.push_back(e);
  }
  return out;
}

FamilyReport check_interlacing(const PolyFamily& f) {
  FamilyReport r;
  const auto& t = f.base();
  for (Vertex v : f.vertices()) {
    VertexCheck c{v, true, {}};
    const Poly& d = f.diag(v);
    const Poly& u = f.up(v);
    auto fail = [&](const std::string& why) {
      c.pass = false;
      if (!c.detail.empty()) c.detail += "; ";
      c.detail += why;
    };
    if (!all_roots_real_simple(d)) fail("P_vv " + d.str() + " lacks real simple roots");
    if (!all_roots_real_simple(u)) fail("P_vv' " + u.str() + " lacks real simple roots");
    if (u.degree() != d.degree() + 1) {
      fail("degree law: deg P_vv' = " + std::to_string(u.degree()) + ", deg P_vv = " + std::to_string(d.degree()));
    }
    if (u.leading() != Rational(1) / t.lambda(v)) fail("leading coefficient of P_vv' is " + u.leading().str());
    if (c.pass && !strict_interlace(u, d)) fail("zeros of " + d.str() + " do not interlace those of " + u.str());
    r.entries.push_back(std::move(c));
  }
  return r;
}

FamilyReport check_divisibility(const PolyFamily& f) {
  FamilyReport r;
  const auto& t = f.base();
  for (Vertex v : f.vertices()) {
    VertexCheck c{v, true, {}};
    for (Vertex y : t.children(v)) {
      std::vector<Vertex> targets{y, v};
      if (f.full()) {
        for (Vertex s : t.descendants(y)) {
          if (s != y) targets.push_back(s);
        }
      }
      for (Vertex s : targets) {
        const Poly rem_ = divmod(f.at(v, s), f.at(y, s)).remainder;
        if (!rem_.is_zero()) {
          c.pass = false;
          c.detail += "P_{" + t.name(y) + "," + t.name(s) + "} leaves remainder " + rem_.str() + "; ";
        }
      }
    }
    r.entries.push_back(std::move(c));
  }
  return r;
}

FamilyReport check_telescoping(const PolyFamily& f) {
  FamilyReport r;
  if (!f.full()) throw ArgumentError("telescoping check needs the full table");
  const auto& t = f.base();
  for (Vertex v : f.vertices()) {
    VertexCheck c{v, true, {}};
    for (Vertex s : t.descendants(v)) {
      if (telescoped(f, v, s) != f.at(v, s)) {
        c.pass = false;
        c.detail += "mismatch at " + t.name(s) + "; ";
      }
    }
    r.entries.push_back(std::move(c));
  }
  return r;
}

}  // namespace treejacobi

#include "treejacobi/tree.hpp"

#include <algorithm>
#include <sstream>

#include "treejacobi/errors.hpp"

namespace treejacobi {

TreeTruncation TreeTruncation::build(const std::vector<VertexSpec>& vertices, const std::string& top,
                                     const Rational& top_lambda) {
  TreeTruncation t;
  const std::size_t n = vertices.size();
  if (n == 0) throw ValidationError("tree has no vertices");
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = vertices[i];
    if (!t.ids_.emplace(s.id, i).second) throw ValidationError("duplicate vertex '" + s.id + "'");
    t.names_.push_back(s.id);
  }
  const auto top_it = t.ids_.find(top);
  if (top_it == t.ids_.end()) throw ValidationError("top vertex '" + top + "' is not listed");
  t.top_ = top_it->second;
  if (top_lambda.sign() <= 0) throw ValidationError("top lambda must be positive at '" + top + "'");

  t.parents_.resize(n);
  t.children_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = vertices[i];
    if (s.level < 0) throw ValidationError("negative level at '" + s.id + "'");
    t.levels_.push_back(s.level);
    t.betas_.push_back(s.beta);
    t.cut_.push_back(s.cut);
    if (i == t.top_) {
      if (s.parent) throw ValidationError("top vertex '" + s.id + "' has a parent");
      t.lambdas_.push_back(top_lambda);
      continue;
    }
    if (!s.parent) throw ValidationError("vertex '" + s.id + "' has no parent but is not the top");
    const auto p = t.ids_.find(*s.parent);
    if (p == t.ids_.end()) {
      throw ValidationError("vertex '" + s.id + "' has unknown parent '" + *s.parent + "'");
    }
    if (s.lambda.sign() <= 0) throw ValidationError("nonpositive lambda at '" + s.id + "'");
    t.lambdas_.push_back(s.lambda);
    t.parents_[i] = p->second;
    t.children_[p->second].push_back(i);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (t.parents_[i] && t.levels_[*t.parents_[i]] != t.levels_[i] + 1) {
      throw ValidationError("level of '" + t.names_[i] + "' is not one below its parent's");
    }
    if (t.children_[i].empty() && t.levels_[i] > 0 && !t.cut_[i]) {
      throw ValidationError("leaf '" + t.names_[i] + "' above level 0 must be flagged cut");
    }
  }
  // Levels strictly increase along parent links and only the top lacks a
  // parent, so every vertex reaches the top: the structure is a tree.
  return t;
}

Vertex TreeTruncation::index(const std::string& id) const {
  const auto it = ids_.find(id);
  if (it == ids_.end()) throw UnknownVertex("unknown vertex '" + id + "'");
  return it->second;
}

std::optional<Vertex> TreeTruncation::parent(Vertex v) const { return parents_.at(v); }

std::vector<Vertex> TreeTruncation::post_order() const {
  std::vector<Vertex> order;
  order.reserve(size());
  std::vector<std::pair<Vertex, std::size_t>> stack{{top_, 0}};
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    if (next < children_[v].size()) {
      const Vertex c = children_[v][next++];
      stack.emplace_back(c, 0);
    } else {
      order.push_back(v);
      stack.pop_back();
    }
  }
  return order;
}

std::vector<Vertex> TreeTruncation::descendants(Vertex x) const {
  std::vector<Vertex> out;
  std::vector<Vertex> stack{x};
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    out.push_back(v);
    const auto& ch = children_.at(v);
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

std::vector<VertexSpec> TreeTruncation::specs() const {
  std::vector<VertexSpec> out;
  out.reserve(size());
  for (Vertex v = 0; v < size(); ++v) {
    VertexSpec s;
    s.id = names_[v];
    if (parents_[v]) s.parent = names_[*parents_[v]];
    s.level = levels_[v];
    s.lambda = lambdas_[v];
    s.beta = betas_[v];
    s.cut = cut_[v];
    out.push_back(std::move(s));
  }
  return out;
}

TreeTruncation TreeTruncation::subtree(Vertex x) const {
  if (x >= size()) throw UnknownVertex("vertex index out of range");
  auto members = descendants(x);
  std::sort(members.begin(), members.end());
  const auto all = specs();
  std::vector<VertexSpec> sub;
  sub.reserve(members.size());
  for (Vertex v : members) {
    sub.push_back(all[v]);
    if (v == x) sub.back().parent.reset();
  }
  return build(sub, names_[x], lambdas_[x]);
}

TreeTruncation TreeTruncation::with_coefficients(const std::vector<Rational>& lambda,
                                                 const std::vector<Rational>& beta) const {
  if (lambda.size() != size() || beta.size() != size()) {
    throw ArgumentError("coefficient vectors do not match the tree size");
  }
  auto s = specs();
  for (Vertex v = 0; v < size(); ++v) {
    s[v].lambda = lambda[v];
    s[v].beta = beta[v];
  }
  return build(s, names_[top_], lambda[top_]);
}

PathSelection path_from(const TreeTruncation& t, Vertex x0) {
  if (t.level(x0) != 0) throw ArgumentError("path must start on level 0 at '" + t.name(x0) + "'");
  PathSelection p{x0};
  while (auto up = t.parent(p.back())) p.push_back(*up);
  return p;
}

PathSelection default_path(const TreeTruncation& t) {
  Vertex v = t.top();
  while (!t.is_leaf(v)) v = t.children(v).front();
  if (t.level(v) != 0) throw ArgumentError("first-child chain ends above level 0 at '" + t.name(v) + "'");
  return path_from(t, v);
}

void validate_path(const TreeTruncation& t, const PathSelection& path) {
  if (path.empty()) throw ArgumentError("empty path");
  for (std::size_t k = 0; k < path.size(); ++k) {
    if (path[k] >= t.size()) throw ArgumentError("path vertex out of range");
    if (t.level(path[k]) != static_cast<int>(k)) {
      throw ArgumentError("path vertex '" + t.name(path[k]) + "' is not on level " + std::to_string(k));
    }
    if (k + 1 < path.size() && t.parent(path[k]) != path[k + 1]) {
      throw ArgumentError("'" + t.name(path[k + 1]) + "' is not the parent of '" + t.name(path[k]) + "'");
    }
  }
}

PathSelection parse_path(const TreeTruncation& t, const std::string& ids) {
  PathSelection p;
  std::stringstream ss(ids);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) p.push_back(t.index(item));
  }
  validate_path(t, p);
  return p;
}

// ---------------------------------------------------------------------------

CoeffRule CoeffRule::constant(const Rational& lambda, const Rational& beta) {
  return {[lambda](const VertexInfo&) { return lambda; }, [beta](const VertexInfo&) { return beta; }};
}

namespace {

struct Builder {
  const CoeffRule& rule;
  std::vector<VertexSpec> specs;

  void add(const std::string& id, const std::optional<std::string>& parent, const VertexInfo& info,
           bool cut) {
    const Rational l = rule.lambda(info);
    if (l.sign() <= 0) throw ArgumentError("coefficient rule gives nonpositive lambda at '" + id + "'");
    specs.push_back({id, parent, info.level, l, rule.beta(info), cut});
  }

  TreeTruncation finish() {
    const std::string top = specs.front().id;
    const Rational tl = specs.front().lambda;
    return TreeTruncation::build(specs, top, tl);
  }
};

// Off-path subtree: `d` children per vertex down to level 0.
void grow_full(Builder& b, const std::string& id, const std::string& parent, VertexInfo info, int d) {
  b.add(id, parent, info, false);
  if (info.level == 0) return;
  for (int j = 0; j < d; ++j) {
    VertexInfo ci{info.level - 1, j, false, info.path_distance + 1, false};
    grow_full(b, id + "." + std::to_string(j), id, ci, d);
  }
}

void grow_shape(Builder& b, const TreeShape& s, const std::string& id, const std::optional<std::string>& parent,
                VertexInfo info) {
  b.add(id, parent, info, false);
  for (std::size_t j = 0; j < s.children.size(); ++j) {
    const bool path_child = info.on_path && j == 0;
    VertexInfo ci{info.level - 1, static_cast<int>(j), path_child, path_child ? 0 : info.path_distance + 1,
                  false};
    const std::string cid = path_child ? "x" + std::to_string(ci.level) : id + "." + std::to_string(j);
    grow_shape(b, s.children[j], cid, id, ci);
  }
}

}  // namespace

TreeTruncation generate(const Shape& shape, const CoeffRule& rule) {
  if (shape.depth < 0) throw ArgumentError("depth must be nonnegative");
  if (shape.d < 1) throw ArgumentError("branching must be at least 1");
  Builder b{rule, {}};
  const int n = shape.depth;
  // Path vertices first, top down, so the top is the first document entry.
  for (int k = n; k >= 0; --k) {
    VertexInfo info{k, 0, true, 0, k == n};
    std::optional<std::string> parent;
    if (k < n) parent = "x" + std::to_string(k + 1);
    b.add("x" + std::to_string(k), parent, info, false);
  }
  for (int k = n; k >= 1; --k) {
    const std::string xk = "x" + std::to_string(k);
    if (shape.kind == ShapeKind::decorated_path) {
      VertexInfo info{k - 1, 1, false, 1, false};
      b.add("y" + std::to_string(k - 1), xk, info, k - 1 > 0);
    } else if (shape.kind == ShapeKind::homogeneous) {
      for (int j = 1; j < shape.d; ++j) {
        grow_full(b, xk + "." + std::to_string(j), xk, {k - 1, j, false, 1, false}, shape.d);
      }
    }
  }
  return b.finish();
}

int TreeShape::height() const {
  int h = 0;
  for (const auto& c : children) h = std::max(h, c.height() + 1);
  return h;
}

int TreeShape::count() const {
  int n = 1;
  for (const auto& c : children) n += c.count();
  return n;
}

namespace {

// Non-decreasing selections from `pool` whose vertex counts sum to `budget`.
void choose_children(const std::vector<TreeShape>& pool, std::size_t from, int budget,
                     std::vector<TreeShape>& current, std::vector<TreeShape>& out) {
  if (budget == 0) {
    if (!current.empty()) out.push_back(TreeShape{current});
    return;
  }
  for (std::size_t i = from; i < pool.size(); ++i) {
    const int c = pool[i].count();
    if (c > budget) continue;
    current.push_back(pool[i]);
    choose_children(pool, i, budget - c, current, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<TreeShape> enumerate_shapes(int max_vertices) {
  std::vector<TreeShape> all;
  if (max_vertices < 1) return all;
  std::vector<TreeShape> level{TreeShape{}};  // shapes of the current height
  while (!level.empty()) {
    all.insert(all.end(), level.begin(), level.end());
    std::vector<TreeShape> next;
    for (int n = 2; n <= max_vertices; ++n) {
      std::vector<TreeShape> current;
      choose_children(level, 0, n - 1, current, next);
    }
    level = std::move(next);
  }
  return all;
}

TreeTruncation from_shape(const TreeShape& shape, const CoeffRule& rule) {
  Builder b{rule, {}};
  const int h = shape.height();
  grow_shape(b, shape, "x" + std::to_string(h), std::nullopt, {h, 0, true, 0, true});
  return b.finish();
}

Rational random_rational(std::mt19937_64& rng, const Rational& lo, const Rational& hi, int max_den) {
  std::uniform_int_distribution<int> den(1, max_den);
  const int d = den(rng);
  mpz_class a = (lo * Rational(d)).num(), a_den = (lo * Rational(d)).den();
  mpz_class bnum = (hi * Rational(d)).num(), b_den = (hi * Rational(d)).den();
  mpz_class lo_n, hi_n;
  mpz_cdiv_q(lo_n.get_mpz_t(), a.get_mpz_t(), a_den.get_mpz_t());
  mpz_fdiv_q(hi_n.get_mpz_t(), bnum.get_mpz_t(), b_den.get_mpz_t());
  if (lo_n > hi_n) return lo;
  std::uniform_int_distribution<long> num(lo_n.get_si(), hi_n.get_si());
  return Rational(mpz_class(num(rng)), mpz_class(d));
}

namespace {

TreeShape grow_random(std::mt19937_64& rng, int level, int& budget) {
  TreeShape s;
  --budget;
  if (level == 0) return s;
  std::uniform_int_distribution<int> k(1, 3);
  const int n = k(rng);
  for (int j = 0; j < n; ++j) s.children.push_back(grow_random(rng, level - 1, budget));
  return s;
}

}  // namespace

TreeShape random_shape(std::mt19937_64& rng, int max_vertices, int min_height) {
  if (max_vertices < min_height + 1) throw ArgumentError("vertex budget below the requested height");
  const int max_height = std::max(min_height, std::min(4, max_vertices - 1));
  std::uniform_int_distribution<int> height(min_height, max_height);
  while (true) {
    int budget = max_vertices;
    TreeShape s = grow_random(rng, height(rng), budget);
    if (budget >= 0) return s;
  }
}

TreeShape random_spine_shape(std::mt19937_64& rng, int depth, int side_budget) {
  // Built bottom-up: the spine child stays first so default_path follows it.
  std::bernoulli_distribution branch(0.5);
  TreeShape s;
  for (int level = 1; level <= depth; ++level) {
    TreeShape up;
    up.children.push_back(std::move(s));
    if (branch(rng)) {
      // Side of height level-1: a unary chain ending in a small random shape.
      const int h = std::min(level - 1, 2);
      int budget = side_budget;
      TreeShape side = grow_random(rng, h, budget);
      for (int k = h; k < level - 1; ++k) {
        TreeShape chain;
        chain.children.push_back(std::move(side));
        side = std::move(chain);
      }
      up.children.push_back(std::move(side));
    }
    s = std::move(up);
  }
  return s;
}

TreeTruncation randomize_coefficients(const TreeTruncation& t, std::mt19937_64& rng, const RandomCoeffs& c) {
  std::vector<Rational> lambda(t.size()), beta(t.size());
  for (Vertex v = 0; v < t.size(); ++v) {
    do {
      lambda[v] = random_rational(rng, 0, c.lambda_max, c.max_den);
    } while (lambda[v].sign() <= 0);
    beta[v] = c.zero_beta ? Rational(0) : random_rational(rng, -c.beta_bound, c.beta_bound, c.max_den);
  }
  return t.with_coefficients(lambda, beta);
}

TreeTruncation random_tree(std::mt19937_64& rng, int max_vertices, const RandomCoeffs& coeffs, int min_height) {
  const TreeTruncation t = from_shape(random_shape(rng, max_vertices, min_height), CoeffRule::constant(1, 0));
  return randomize_coefficients(t, rng, coeffs);
}

}  // namespace treejacobi

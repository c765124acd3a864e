#include "treejacobi/solutions.hpp"

#include <unordered_map>

#include "treejacobi/errors.hpp"
#include "treejacobi/linalg.hpp"
#include "treejacobi/treepoly.hpp"

namespace treejacobi {

GaussianRational SolutionField::residual(Vertex v) const {
  GaussianRational r = (GaussianRational(base.beta(v)) - z) * values.at(v);
  if (v == root) {
    if (!above) throw ArgumentError("no value above the root of the field");
    r += GaussianRational(base.lambda(v)) * *above;
  } else {
    r += GaussianRational(base.lambda(v)) * values.at(*base.parent(v));
  }
  for (Vertex c : base.children(v)) r += GaussianRational(base.lambda(c)) * values.at(c);
  return r;
}

bool SolutionField::satisfied() const {
  for (Vertex v : satisfied_at) {
    if (!residual(v).is_zero()) return false;
  }
  return true;
}

Rational SolutionField::norm2(Vertex x) const {
  Rational acc(0);
  for (Vertex s : base.descendants(x)) acc += values.at(s).norm2();
  return acc;
}

std::map<Vertex, GaussianRational> side_ratios(const TreeTruncation& t, Vertex x, const GaussianRational& z) {
  std::map<Vertex, GaussianRational> r;
  const auto members = t.descendants(x);
  for (auto it = members.rbegin(); it != members.rend(); ++it) {  // reverse preorder: children first
    const Vertex c = *it;
    GaussianRational den = z - GaussianRational(t.beta(c));
    for (Vertex d : t.children(c)) den -= GaussianRational(t.lambda(d)) * r.at(d);
    if (den.is_zero()) throw SolveError("P_{c,c'} vanishes at z below '" + t.name(c) + "'");
    r[c] = GaussianRational(t.lambda(c)) / den;
  }
  return r;
}

namespace {

std::vector<Vertex> side_children(const TreeTruncation& t, const PathSelection& path, std::size_t n) {
  std::vector<Vertex> out;
  for (Vertex c : t.children(path[n])) {
    if (n == 0 || c != path[n - 1]) out.push_back(c);
  }
  return out;
}

// Path recurrence from (f(x_0), f(x_1)), side subtrees scaled from the path
// values by the ratios. f(x_1) may be absent, meaning it is computed from
// the equation at x_0.
SolutionField propagate(const TreeTruncation& t, const PathSelection& path, const GaussianRational& z,
                        const std::map<Vertex, GaussianRational>& ratio, const GaussianRational& f0,
                        std::optional<GaussianRational> f1) {
  const std::size_t n_top = path.size() - 1;
  SolutionField f{t, path.back(), z, {}, std::nullopt, {}};
  std::vector<GaussianRational> p{f0};
  std::vector<GaussianRational> c(path.size());
  for (std::size_t n = 0; n <= n_top; ++n) {
    for (Vertex y : side_children(t, path, n)) c[n] += GaussianRational(t.lambda(y)) * ratio.at(y);
  }
  for (std::size_t n = 0; n <= n_top; ++n) {
    GaussianRational next;
    if (n == 0 && f1) {
      next = *f1;
    } else {
      next = (z - GaussianRational(t.beta(path[n])) - c[n]) * p[n];
      if (n > 0) next -= GaussianRational(t.lambda(path[n - 1])) * p[n - 1];
      next /= GaussianRational(t.lambda(path[n]));
    }
    p.push_back(std::move(next));
  }
  for (std::size_t n = 0; n <= n_top; ++n) {
    f.values[path[n]] = p[n];
    for (Vertex y : side_children(t, path, n)) {
      for (Vertex s : t.descendants(y)) {  // preorder: parents are filled first
        const Vertex up = (s == y) ? path[n] : *t.parent(s);
        f.values[s] = f.values.at(up) * ratio.at(s);
      }
    }
  }
  f.above = p[n_top + 1];
  return f;
}

void require_nonreal(const GaussianRational& z) {
  if (z.is_real()) throw ArgumentError("z must have nonzero imaginary part; use propagate_real");
}

}  // namespace

SideReduction side_reduction(const TreeTruncation& t, const PathSelection& path, std::size_t n,
                             const GaussianRational& z) {
  validate_path(t, path);
  if (n >= path.size()) throw ArgumentError("path index out of range");
  SideReduction s{path[n], {}};
  for (Vertex y : side_children(t, path, n)) {
    s.effective += GaussianRational(t.lambda(y)) * side_ratios(t, y, z).at(y);
  }
  return s;
}

SolutionField solve_v(const TreeTruncation& t, const PathSelection& path, const GaussianRational& z,
                      const GaussianRational& seed) {
  require_nonreal(z);
  validate_path(t, path);
  const auto ratio = side_ratios(t, path.back(), z);
  auto v = propagate(t, path, z, ratio, seed, std::nullopt);
  v.satisfied_at = t.descendants(path.back());
  return v;
}

SolutionPair solve_pair(const TreeTruncation& t, const PathSelection& path, const GaussianRational& z) {
  require_nonreal(z);
  validate_path(t, path);
  const auto ratio = side_ratios(t, path.back(), z);
  SolutionPair pair{propagate(t, path, z, ratio, 1, std::nullopt),
                    propagate(t, path, z, ratio, 0, GaussianRational(Rational(1) / t.lambda(path[0]))), path};
  pair.v.satisfied_at = t.descendants(path.back());
  for (Vertex s : pair.v.satisfied_at) {
    if (s != path[0]) pair.u.satisfied_at.push_back(s);
  }
  return pair;
}

GaussianRational wronskian(const SolutionPair& pair, std::size_t n) {
  const auto& path = pair.path;
  if (n >= path.size()) throw ArgumentError("wronskian index beyond the path");
  auto next = [&](const SolutionField& f) { return n + 1 < path.size() ? f.at(path[n + 1]) : *f.above; };
  return pair.v.at(path[n]) * next(pair.u) - pair.u.at(path[n]) * next(pair.v);
}

bool check_side_proportionality(const SolutionPair& pair) {
  const auto& t = pair.v.base;
  for (std::size_t n = 0; n < pair.path.size(); ++n) {
    const Vertex xn = pair.path[n];
    for (Vertex y : side_children(t, pair.path, n)) {
      for (Vertex s : t.descendants(y)) {
        if (pair.v.at(xn) * pair.u.at(s) != pair.u.at(xn) * pair.v.at(s)) return false;
      }
    }
  }
  return true;
}

namespace {

// Rows: the eigen-equation at every s in Gamma_x minus x; columns follow
// t.descendants(x).
template <typename Scalar>
Matrix<Scalar> interior_system(const TreeTruncation& t, Vertex x, const Scalar& z) {
  const auto members = t.descendants(x);
  std::unordered_map<Vertex, Eigen::Index> col;
  for (std::size_t k = 0; k < members.size(); ++k) col[members[k]] = static_cast<Eigen::Index>(k);
  const auto n = static_cast<Eigen::Index>(members.size());
  Matrix<Scalar> m = Matrix<Scalar>::Zero(n > 0 ? n - 1 : 0, n);
  Eigen::Index row = 0;
  for (Vertex s : members) {
    if (s == x) continue;
    m(row, col.at(s)) = Scalar(t.beta(s)) - z;
    m(row, col.at(*t.parent(s))) = Scalar(t.lambda(s));
    for (Vertex c : t.children(s)) m(row, col.at(c)) = Scalar(t.lambda(c));
    ++row;
  }
  return m;
}

}  // namespace

GaussianMatrix interior_kernel(const TreeTruncation& t, Vertex x, const GaussianRational& z) {
  return nullspace(interior_system(t, x, z));
}

long uniqueness_dimension(const TreeTruncation& t, Vertex x, const GaussianRational& z) {
  const auto m = interior_system(t, x, z);
  return static_cast<long>(m.cols() - rank(m));
}

PositivityReport lemma4_positivity(const TreeTruncation& t, const PathSelection& path) {
  validate_path(t, path);
  for (Vertex s : t.descendants(path.back())) {
    if (!t.beta(s).is_zero()) throw ArgumentError("sign structure needs beta = 0, '" + t.name(s) + "' has " + t.beta(s).str());
  }
  const auto pair = solve_pair(t, path, GaussianRational::i());
  const auto& v = pair.v;
  PositivityReport rep;
  auto tilde = [](const GaussianRational& val, int level) { return i_pow(-level) * val; };
  for (const auto& [s, val] : v.values) {
    const auto w = tilde(val, t.level(s));
    if (!w.is_real() || w.re.sign() <= 0) {
      rep.real_positive = false;
      rep.failures.push_back("i^-l v at '" + t.name(s) + "' is " + w.str());
    }
  }
  const std::size_t top = path.size() - 1;
  for (std::size_t n = 0; n <= top; ++n) {
    const GaussianRational next = tilde(n < top ? v.at(path[n + 1]) : *v.above, static_cast<int>(n) + 1);
    const GaussianRational lhs = GaussianRational(t.lambda(path[n])) * next;
    const GaussianRational rhs =
        n == 0 ? GaussianRational(0) : GaussianRational(t.lambda(path[n - 1])) * tilde(v.at(path[n - 1]), static_cast<int>(n) - 1);
    const GaussianRational diff = lhs - rhs;
    if (!diff.is_real() || diff.re.sign() <= 0) {
      rep.step_inequality = false;
      rep.failures.push_back("step inequality fails at x_" + std::to_string(n));
    }
  }
  return rep;
}

bool real_solution_exists(const TreeTruncation& t, Vertex x, Vertex x0, const Rational& r) {
  const auto members = t.descendants(x);
  Eigen::Index row = -1;
  for (std::size_t k = 0; k < members.size(); ++k) {
    if (members[k] == x0) row = static_cast<Eigen::Index>(k);
  }
  if (row < 0) throw ArgumentError("'" + t.name(x0) + "' is not below '" + t.name(x) + "'");
  const RationalMatrix basis = nullspace(interior_system(t, x, r));
  for (Eigen::Index c = 0; c < basis.cols(); ++c) {
    if (!basis(row, c).is_zero()) return true;
  }
  return false;
}

namespace {

std::optional<SolutionField> field_by_elimination(const TreeTruncation& t, Vertex x, Vertex x0, const Rational& r) {
  const auto members = t.descendants(x);
  const RationalMatrix basis = nullspace(interior_system(t, x, r));
  Eigen::Index row = 0;
  while (members[static_cast<std::size_t>(row)] != x0) ++row;
  for (Eigen::Index c = 0; c < basis.cols(); ++c) {
    if (basis(row, c).is_zero()) continue;
    SolutionField f{t, x, GaussianRational(r), {}, std::nullopt, {}};
    const Rational scale = Rational(1) / basis(row, c);
    for (std::size_t k = 0; k < members.size(); ++k) {
      f.values[members[k]] = GaussianRational(basis(static_cast<Eigen::Index>(k), c) * scale);
      if (members[k] != x) f.satisfied_at.push_back(members[k]);
    }
    return f;
  }
  return std::nullopt;
}

}  // namespace

RealPropagation propagate_real(const TreeTruncation& t, Vertex x, const Rational& r,
                               std::optional<PathSelection> path) {
  if (!path) {
    Vertex v = x;
    while (!t.is_leaf(v)) v = t.children(v).front();
    path = path_from(t, v);
    while (path->back() != x) path->pop_back();
  }
  validate_path(t, *path);
  if (path->back() != x) throw ArgumentError("path must end at '" + t.name(x) + "'");
  const auto& p = *path;
  const auto fam = family(t, x);

  std::map<Vertex, Rational> f;
  f[p[0]] = 1;
  RealPropagation out;
  for (std::size_t n = 0; n < p.size(); ++n) {
    Rational side_sum(0);
    for (Vertex y : side_children(t, p, n)) {
      const Rational den = fam.up(y)(r);
      if (den.is_zero()) {
        if (!f.at(p[n]).is_zero()) {
          out.obstruction = y;
          return out;
        }
        // 0/0: the side block is singular and f(x_n) = 0, so the side is
        // not determined by the path. Decide by elimination.
        out.by_elimination = true;
        for (std::size_t m = n; m < p.size(); ++m) {
          if (!real_solution_exists(t, p[m], p[0], r)) {
            out.obstruction = p[m];
            return out;
          }
        }
        out.field = field_by_elimination(t, x, p[0], r);
        return out;
      }
      for (Vertex s : t.descendants(y)) f[s] = f.at(p[n]) * fam.at(y, s)(r) / den;
      side_sum += t.lambda(y) * f.at(y);
    }
    if (n + 1 < p.size()) {
      Rational next = (r - t.beta(p[n])) * f.at(p[n]) - side_sum;
      if (n > 0) next -= t.lambda(p[n - 1]) * f.at(p[n - 1]);
      f[p[n + 1]] = next / t.lambda(p[n]);
    }
  }
  SolutionField field{t, x, GaussianRational(r), {}, std::nullopt, {}};
  for (const auto& [v, val] : f) {
    field.values[v] = GaussianRational(val);
    if (v != x) field.satisfied_at.push_back(v);
  }
  out.field = std::move(field);
  return out;
}

GrowthProfile norm_growth_profile(const TreeGenerator& gen, const GaussianRational& z, const std::vector<int>& depths,
                                  const GaussianRational& seed) {
  require_nonreal(z);
  GrowthProfile prof;
  for (int d : depths) {
    const auto t = gen(d);
    const auto path = default_path(t);
    const auto v = solve_v(t, path, z, seed);
    GrowthRow row{d, v.norm2(), Rational(0)};
    for (Vertex xn : path) row.carleman += Rational(1) / t.lambda(xn);
    if (!prof.rows.empty()) {
      if (row.norm2 <= prof.rows.back().norm2) prof.norm_increasing = false;
      if (row.carleman <= prof.rows.back().carleman) prof.carleman_increasing = false;
    }
    if (!prof.norm_max || row.norm2 > *prof.norm_max) prof.norm_max = row.norm2;
    prof.rows.push_back(std::move(row));
  }
  return prof;
}

}  // namespace treejacobi

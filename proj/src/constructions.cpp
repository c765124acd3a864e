#include "treejacobi/constructions.hpp"

#include <functional>
#include <unordered_map>

#include "treejacobi/errors.hpp"
#include "treejacobi/linalg.hpp"
#include "treejacobi/spectra.hpp"
#include "treejacobi/treepoly.hpp"

namespace treejacobi {

namespace {

const GaussianRational I = GaussianRational::i();

std::string xname(long k) { return "x" + std::to_string(k); }
std::string yname(long k) { return "y" + std::to_string(k); }

// Full binary subtree of the given height below `root` (root excluded),
// named "<parent>.<j>".
void binary_below(std::vector<VertexSpec>& out, const std::string& root, int height, const Rational& lambda,
                  const Rational& beta) {
  if (height <= 0) return;
  for (int j = 0; j < 2; ++j) {
    const std::string id = root + "." + std::to_string(j);
    out.push_back({id, root, height - 1, lambda, beta, false});
    binary_below(out, id, height - 1, lambda, beta);
  }
}

}  // namespace

// ---------------------------------------------------------------------------

Theorem3Result theorem3_build(int depth) {
  if (depth < 1) throw ArgumentError("small-norm construction needs depth >= 1");
  const auto n_top = static_cast<std::size_t>(depth);
  std::vector<GaussianRational> pv{GaussianRational(Rational(1, 2))};
  std::vector<Rational> pl(n_top + 1), sl(n_top + 1);
  std::vector<GaussianRational> side_sum(n_top + 1);  // lambda_y v(y) at x_n
  std::vector<std::map<std::string, GaussianRational>> side_vals(n_top + 1);
  Theorem3Result res;
  res.ledger.push_back(pv[0].norm2());

  for (std::size_t n = 1; n <= n_top + 1; ++n) {
    // Equation at x_{n-1} solved for v(x_n); lambda_{x_{n-1}} is free.
    GaussianRational num = I * pv[n - 1] - side_sum[n - 1];
    if (n >= 2) num -= GaussianRational(pl[n - 2]) * pv[n - 2];
    if (num.is_zero()) throw ConstructionError("v(x_" + std::to_string(n) + ") is forced to vanish");
    const Rational budget = pow2(-static_cast<long>(n) - 2);
    Rational lam(1);
    while (num.norm2() / (lam * lam) > budget) lam *= 2;
    pl[n - 1] = lam;
    pv.push_back(num / GaussianRational(lam));
    if (n > n_top) break;

    // Side subtree y_{n-1}: full binary of height n-1, lambda = 1 inside.
    // r[h] = P_{c,c}(i) / P_{c,c'}(i) for an inner vertex of height h.
    const int h = static_cast<int>(n) - 1;
    std::vector<GaussianRational> r{GaussianRational(1) / I};
    for (int k = 1; k < h; ++k) r.push_back(GaussianRational(1) / (I - GaussianRational(2) * r.back()));
    const GaussianRational ny = h >= 1 ? I - GaussianRational(2) * r[static_cast<std::size_t>(h - 1)] : I;
    if (ny.is_zero()) throw ConstructionError("side solution cannot be attached at x_" + std::to_string(n));

    std::map<std::string, GaussianRational> w{{yname(h), GaussianRational(1)}};
    std::function<void(const std::string&, int)> fill = [&](const std::string& id, int height) {
      if (height == 0) return;
      for (int j = 0; j < 2; ++j) {
        const std::string c = id + "." + std::to_string(j);
        w[c] = w.at(id) * r[static_cast<std::size_t>(height - 1)];
        fill(c, height - 1);
      }
    };
    fill(yname(h), h);
    Rational wn(0);
    for (const auto& [id, val] : w) wn += val.norm2();

    // scale c = lambda_y v(x_n) / N_y keeps lambda_y real and positive.
    Rational ly(1);
    while (ly * ly * pv[n].norm2() / ny.norm2() * wn > budget) ly /= 2;
    sl[n] = ly;
    const GaussianRational c = GaussianRational(ly) * pv[n] / ny;
    Rational side_norm(0);
    for (auto& [id, val] : w) {
      val *= c;
      side_norm += val.norm2();
    }
    side_sum[n] = GaussianRational(ly) * w.at(yname(h));
    side_vals[n] = std::move(w);
    res.ledger.push_back(res.ledger.back() + pv[n].norm2() + side_norm);
  }

  std::vector<VertexSpec> specs;
  for (long k = depth; k >= 0; --k) {
    VertexSpec s{xname(k), k < depth ? std::optional<std::string>(xname(k + 1)) : std::nullopt, static_cast<int>(k),
                 pl[static_cast<std::size_t>(k)], 0, false};
    specs.push_back(std::move(s));
  }
  // Sides after the path so that x_{k-1} is the first child of x_k.
  for (long k = depth; k >= 1; --k) {
    const int h = static_cast<int>(k) - 1;
    specs.push_back({yname(h), xname(k), h, sl[static_cast<std::size_t>(k)], 0, false});
    binary_below(specs, yname(h), h, 1, 0);
  }
  res.tree = TreeTruncation::build(specs, xname(depth), pl[n_top]);
  const auto& t = res.tree;
  res.v = SolutionField{t, t.top(), I, {}, pv[n_top + 1], {}};
  for (std::size_t n = 0; n <= n_top; ++n) {
    res.v.values[t.index(xname(static_cast<long>(n)))] = pv[n];
    for (const auto& [id, val] : side_vals[n]) res.v.values[t.index(id)] = val;
  }
  res.v.satisfied_at = t.descendants(t.top());
  res.path_lambda = pl;
  res.side_lambda.assign(sl.begin() + 1, sl.end());
  return res;
}

// ---------------------------------------------------------------------------

namespace {

Rational inverse_sqrt(int d) {
  if (d < 4) throw ArgumentError("branching must be at least 4");
  const auto s = Rational(d).exact_sqrt();
  if (!s) throw ArgumentError("branching " + std::to_string(d) + " is not a perfect square");
  return Rational(1) / *s;
}

Rational path_term(PathRule rule, long n) { return rule == PathRule::decaying ? pow2(-n) : pow2(n); }

}  // namespace

TreeTruncation remark2_build(int d, int depth, PathRule rule) {
  const Rational base = inverse_sqrt(d);
  return generate(Shape::homogeneous(d, depth),
                  {[base, rule](const VertexInfo& v) { return v.on_path ? base + path_term(rule, v.level) : base; },
                   [](const VertexInfo&) { return Rational(0); }});
}

TreeTruncation remark2_j0(int d, int depth) {
  return generate(Shape::homogeneous(d, depth), CoeffRule::constant(inverse_sqrt(d), 0));
}

ClassicalJacobi remark2_j1(PathRule rule, long cap) {
  return {[rule](long n) { return path_term(rule, n); }, [](long) { return Rational(0); }, cap};
}

SpectralBound spectral_bound(const TreeTruncation& t, const Rational& bound, std::size_t char_poly_limit) {
  SpectralBound sb;
  sb.by_inertia = tree_inertia(t, t.top(), bound).positive + tree_inertia(t, t.top(), -bound).negative;
  const auto desc = theorem2_spectrum(family(t, t.top(), false), t.top());
  sb.by_factors = count_outside(desc.part_a_poly, bound);
  for (const auto& f : desc.part_b) sb.by_factors += count_outside(f.factor, bound);
  if (t.size() <= char_poly_limit) sb.by_char_poly = count_outside(char_poly(TruncatedOperator::build(t)), bound);
  return sb;
}

// ---------------------------------------------------------------------------

bool DecoratedResult::pass() const {
  for (const auto& r : reduced_residuals) {
    if (!r.is_zero()) return false;
  }
  for (const auto& r : eigen_residuals) {
    if (!r.is_zero()) return false;
  }
  for (bool b : pendant_identity) {
    if (!b) return false;
  }
  return true;
}

ClassicalJacobi negate_beta(const ClassicalJacobi& j) {
  return {j.lambda_rule, [b = j.beta_rule](long n) { return -b(n); }, j.cap};
}

DecoratedResult decorated_path_build(const ClassicalJacobi& j, int depth, DecoratedMode mode) {
  if (depth < 1) throw ArgumentError("decorated path needs depth >= 1");
  const auto n_top = static_cast<std::size_t>(depth);
  DecoratedResult res;
  std::vector<Rational> mu;
  for (long n = 1; n <= depth; ++n) {
    const Rational b = j.beta(n);
    res.mu2.push_back(Rational(1) + b * b);
    if (auto s = res.mu2.back().exact_sqrt()) {
      mu.push_back(*s);
    } else {
      res.exact = false;
    }
  }
  if (mode == DecoratedMode::exact && !res.exact) {
    throw ArgumentError("1 + beta_n^2 is not a rational square; exact mode impossible");
  }
  if (mode == DecoratedMode::surd) res.exact = false;

  // v along the path at z = i; w(y_{n-1}) = v(x_n) / (i - beta_n) is the
  // pendant value divided by mu_n.
  res.v.push_back(1);
  for (std::size_t n = 0; n <= n_top; ++n) {
    const long ln = static_cast<long>(n);
    GaussianRational num = I * res.v[n];
    if (n >= 1) {
      res.w.push_back(res.v[n] / (I - GaussianRational(j.beta(ln))));
      num -= GaussianRational(j.lambda(ln - 1)) * res.v[n - 1] + GaussianRational(res.mu2[n - 1]) * res.w.back();
    }
    res.v.push_back(num / GaussianRational(j.lambda(ln)));
  }
  for (std::size_t n = 1; n <= n_top; ++n) {
    const long ln = static_cast<long>(n);
    const GaussianRational rhs = GaussianRational(j.lambda(ln)) * res.v[n + 1] - GaussianRational(j.beta(ln)) * res.v[n] +
                                 GaussianRational(j.lambda(ln - 1)) * res.v[n - 1];
    res.reduced_residuals.push_back(GaussianRational(2) * I * res.v[n] - rhs);
    res.pendant_identity.push_back(res.mu2[n - 1] * res.w[n - 1].norm2() == res.v[n].norm2());
  }

  if (res.exact) {
    std::vector<VertexSpec> specs;
    for (long k = depth; k >= 0; --k) {
      specs.push_back({xname(k), k < depth ? std::optional<std::string>(xname(k + 1)) : std::nullopt,
                       static_cast<int>(k), j.lambda(k), 0, false});
    }
    for (long k = depth; k >= 1; --k) {
      specs.push_back({yname(k - 1), xname(k), static_cast<int>(k) - 1, mu[static_cast<std::size_t>(k - 1)],
                       j.beta(k), k - 1 > 0});
    }
    res.tree = TreeTruncation::build(specs, xname(depth), j.lambda(depth));
    const auto& t = *res.tree;
    SolutionField f{t, t.top(), I, {}, res.v[n_top + 1], {}};
    for (std::size_t n = 0; n <= n_top; ++n) {
      f.values[t.index(xname(static_cast<long>(n)))] = res.v[n];
      if (n >= 1) f.values[t.index(yname(static_cast<long>(n) - 1))] = GaussianRational(mu[n - 1]) * res.w[n - 1];
    }
    for (Vertex s : t.descendants(t.top())) res.eigen_residuals.push_back(f.residual(s));
  } else {
    // Scaled equations: at x_n the pendant enters as mu^2 w, at y the
    // equation is divided by mu.
    for (std::size_t n = 0; n <= n_top; ++n) {
      const long ln = static_cast<long>(n);
      GaussianRational r = GaussianRational(j.lambda(ln)) * res.v[n + 1] - I * res.v[n];
      if (n >= 1) r += GaussianRational(j.lambda(ln - 1)) * res.v[n - 1] + GaussianRational(res.mu2[n - 1]) * res.w[n - 1];
      res.eigen_residuals.push_back(r);
    }
    for (std::size_t n = 1; n <= n_top; ++n) {
      res.eigen_residuals.push_back(res.v[n] + (GaussianRational(j.beta(static_cast<long>(n))) - I) * res.w[n - 1]);
    }
  }
  return res;
}

// ---------------------------------------------------------------------------

PositivityVerdict positivity_check(const TreeTruncation& t, const std::map<Vertex, Rational>& m) {
  for (Vertex v = 0; v < t.size(); ++v) {
    const auto it = m.find(v);
    if (it == m.end() || it->second.sign() <= 0) throw ArgumentError("m must be positive at '" + t.name(v) + "'");
  }
  PositivityVerdict out;
  for (Vertex v = 0; v < t.size(); ++v) {
    VertexBalance b{v, t.beta(v) * m.at(v), Rational(0), Rational(0), Rational(0)};
    for (Vertex c : t.children(v)) b.rhs += t.lambda(c) * m.at(c);
    if (const auto p = t.parent(v)) {
      b.rhs += t.lambda(v) * m.at(*p);
      b.alpha = t.lambda(v) * m.at(v) / m.at(*p);
      b.gamma = t.lambda(v) * m.at(*p) / m.at(v);
      if (b.lhs != b.rhs) out.equality = false;
    }
    if (b.lhs < b.rhs) {
      out.inequality = false;
      out.failures.push_back("balance fails at '" + t.name(v) + "': " + b.lhs.str() + " < " + b.rhs.str());
    }
    out.balances.push_back(std::move(b));
  }
  if (out.inequality) out.negative_eigenvalues = tree_inertia(t, t.top(), 0).negative;
  return out;
}

namespace {

// Local index of Gamma_x in preorder.
struct LocalIndex {
  std::vector<Vertex> members;
  std::unordered_map<Vertex, Eigen::Index> at;
  LocalIndex(const TreeTruncation& t, Vertex x) : members(t.descendants(x)) {
    for (std::size_t k = 0; k < members.size(); ++k) at[members[k]] = static_cast<Eigen::Index>(k);
  }
};

// shift I + U J U on Gamma_x: beta + shift on the diagonal, -lambda off it.
RationalMatrix signed_block(const TreeTruncation& t, const LocalIndex& idx, const Rational& shift) {
  const auto n = static_cast<Eigen::Index>(idx.members.size());
  RationalMatrix a = RationalMatrix::Zero(n, n);
  for (Vertex v : idx.members) {
    const auto i = idx.at.at(v);
    a(i, i) = t.beta(v) + shift;
    for (Vertex c : t.children(v)) {
      const auto k = idx.at.at(c);
      a(i, k) = -t.lambda(c);
      a(k, i) = -t.lambda(c);
    }
  }
  return a;
}

}  // namespace

Certificate positivity_construct_m(const TreeTruncation& t, const PathSelection& path, int n_reg) {
  validate_path(t, path);
  if (path.back() != t.top()) throw ArgumentError("the path must end at the top of the truncation");
  if (n_reg < 1) throw ArgumentError("n_reg must be positive");
  const auto in = tree_inertia(t, t.top(), 0);
  if (in.negative != 0 || in.zero != 0) throw ArgumentError("the truncated matrix is not positive definite");

  Certificate cert{t, {}, CertificateMode::equality, Rational(1, n_reg), {}, {}, {}};

  // Regularized solve (epsilon I + U J U) f = delta_{x_0}; the matrix is an
  // M-matrix, so f > 0.
  {
    const LocalIndex idx(t, t.top());
    const auto a = signed_block(t, idx, cert.epsilon);
    RationalVector rhs = RationalVector::Zero(a.rows());
    rhs(idx.at.at(path[0])) = 1;
    const auto f = solve(a, rhs);
    if (!f) throw SolveError("regularized system is singular; choose a larger n_reg");
    const Rational f0 = (*f)(idx.at.at(path[0]));
    for (Vertex v : idx.members) {
      const Rational val = (*f)(idx.at.at(v)) / f0;
      if (val.sign() <= 0) throw PositivityError("regularized m is not positive at '" + t.name(v) + "'");
      cert.regularized[v] = val;
    }
  }

  // Side subtrees at epsilon = 0: K_y s = lambda_y e_y for unit m(x_n).
  std::map<Vertex, Rational> unit;  // side values per unit m(x_n)
  std::vector<Vertex> owner(t.size(), path[0]);
  for (std::size_t n = 0; n < path.size(); ++n) {
    Rational cn(0);
    for (Vertex y : t.children(path[n])) {
      if (n > 0 && y == path[n - 1]) continue;
      const LocalIndex idx(t, y);
      const auto k = signed_block(t, idx, 0);
      RationalVector rhs = RationalVector::Zero(k.rows());
      rhs(0) = t.lambda(y);
      const auto s = solve(k, rhs);
      if (!s) throw SolveError("side block below '" + t.name(y) + "' is singular");
      for (Vertex v : idx.members) {
        const Rational val = (*s)(idx.at.at(v));
        if (val.sign() <= 0) throw PositivityError("side solution is not positive at '" + t.name(v) + "'");
        unit[v] = val;
        owner[v] = path[n];
      }
      cn += t.lambda(y) * unit.at(y);
    }
    cert.c.push_back(cn);
  }

  // Classical correction along the path: diagonal beta_{x_n} - c_n.
  std::vector<Rational> pl, pb;
  for (std::size_t n = 0; n < path.size(); ++n) {
    pl.push_back(t.lambda(path[n]));
    pb.push_back(t.beta(path[n]) - cert.c[n]);
  }
  const auto mt = positivity_sign_vector(ClassicalJacobi::from_sequences(pl, pb), static_cast<long>(path.size()));
  for (std::size_t n = 0; n < path.size(); ++n) cert.m[path[n]] = mt[n];
  for (const auto& [v, val] : unit) cert.m[v] = cert.m.at(owner[v]) * val;

  for (Vertex v : t.descendants(t.top())) {
    if (v == t.top()) continue;
    Rational r = t.beta(v) * cert.m.at(v) - t.lambda(v) * cert.m.at(*t.parent(v));
    for (Vertex c : t.children(v)) r -= t.lambda(c) * cert.m.at(c);
    if (!r.is_zero()) throw ConstructionError("certificate equality fails at '" + t.name(v) + "'");
    cert.equality_residuals.push_back(std::move(r));
  }
  return cert;
}

// ---------------------------------------------------------------------------

Prop5Result prop5_build(int depth, const Rational& beta_x0) {
  if (depth < 2) throw ArgumentError("construction needs depth >= 2");
  std::vector<VertexSpec> specs;
  for (long k = depth; k >= 0; --k) {
    specs.push_back({xname(k), k < depth ? std::optional<std::string>(xname(k + 1)) : std::nullopt,
                     static_cast<int>(k), 1, k == 0 ? beta_x0 : Rational(0), false});
  }
  for (long k = depth; k >= 1; --k) {
    const int h = static_cast<int>(k) - 1;
    specs.push_back({yname(h), xname(k), h, 1, 0, false});
    binary_below(specs, yname(h), h, 1, 4);
  }
  auto t = TreeTruncation::build(specs, xname(depth), 1);

  Prop5Result res;
  std::vector<Rational> lambda(t.size()), beta(t.size());
  for (Vertex v = 0; v < t.size(); ++v) {
    lambda[v] = t.lambda(v);
    beta[v] = t.beta(v);
  }
  for (int k = 0; k < depth; ++k) {
    const Vertex y = t.index(yname(k));
    const auto fam = family(t, y, false);
    Prop5Level lv;
    lv.k = k;
    lv.v_y = fam.diag(y)(Rational(0));
    if (lv.v_y.is_zero()) throw ConstructionError("interior solution vanishes at '" + t.name(y) + "'");
    Rational s(0);
    for (Vertex c : t.children(y)) s += t.lambda(c) * fam.at(y, c)(Rational(0));
    lv.beta_y = -s / lv.v_y;
    beta[y] = lv.beta_y;
    lv.interior_dimension = uniqueness_dimension(t, y, GaussianRational(0));
    for (Vertex c : t.children(y)) lv.interior_negative += tree_inertia(t, c, 0).negative;
    res.levels.push_back(std::move(lv));
  }
  res.tree = t.with_coefficients(lambda, beta);
  return res;
}

}  // namespace treejacobi

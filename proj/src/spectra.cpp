#include "treejacobi/spectra.hpp"

#include "treejacobi/errors.hpp"

namespace treejacobi {

TruncatedOperator TruncatedOperator::build(const TreeTruncation& t, Vertex x) {
  TruncatedOperator op{t.subtree(x), {}};
  const auto& s = op.tree;
  const auto n = static_cast<Eigen::Index>(s.size());
  op.matrix = RationalMatrix::Zero(n, n);
  for (Vertex v = 0; v < s.size(); ++v) {
    const auto i = static_cast<Eigen::Index>(v);
    op.matrix(i, i) = s.beta(v);
    if (const auto p = s.parent(v)) {
      const auto j = static_cast<Eigen::Index>(*p);
      op.matrix(i, j) = s.lambda(v);
      op.matrix(j, i) = s.lambda(v);
    }
  }
  return op;
}

Poly char_poly(const TruncatedOperator& op) {
  const auto& t = op.tree;
  const Poly z = Poly::monomial(1, 1);
  std::vector<Poly> d(t.size()), e(t.size());  // D_v and E_v = prod_c D_c
  for (Vertex v : t.post_order()) {
    const auto& kids = t.children(v);
    const std::size_t k = kids.size();
    // prefix[i] = D_{c_0} ... D_{c_{i-1}}, suffix[i] = D_{c_i} ... D_{c_{k-1}}
    std::vector<Poly> prefix(k + 1, Poly::constant(1)), suffix(k + 1, Poly::constant(1));
    for (std::size_t i = 0; i < k; ++i) prefix[i + 1] = prefix[i] * d[kids[i]];
    for (std::size_t i = k; i-- > 0;) suffix[i] = suffix[i + 1] * d[kids[i]];
    e[v] = prefix[k];
    Poly dv = (z - Poly::constant(t.beta(v))) * e[v];
    for (std::size_t i = 0; i < k; ++i) {
      const Vertex c = kids[i];
      dv -= (t.lambda(c) * t.lambda(c)) * (e[c] * prefix[i] * suffix[i + 1]);
    }
    d[v] = std::move(dv);
  }
  return d[t.top()];
}

Poly char_poly_dense(const RationalMatrix& m) {
  // Hessenberg reduction by similarity, then the Hessenberg determinant
  // recurrence for det(zI - H).
  const Eigen::Index n = m.rows();
  RationalMatrix h = m;
  for (Eigen::Index col = 0; col + 2 < n; ++col) {
    Eigen::Index piv = col + 1;
    while (piv < n && h(piv, col).is_zero()) ++piv;
    if (piv == n) continue;
    if (piv != col + 1) {
      h.row(piv).swap(h.row(col + 1));
      h.col(piv).swap(h.col(col + 1));
    }
    const Rational inv = Rational(1) / h(col + 1, col);
    for (Eigen::Index r = col + 2; r < n; ++r) {
      if (h(r, col).is_zero()) continue;
      const Rational u = h(r, col) * inv;
      for (Eigen::Index c = 0; c < n; ++c) h(r, c) -= u * h(col + 1, c);
      for (Eigen::Index c = 0; c < n; ++c) h(c, col + 1) += u * h(c, r);
    }
  }
  std::vector<Poly> p(static_cast<std::size_t>(n) + 1);
  p[0] = Poly::constant(1);
  const Poly z = Poly::monomial(1, 1);
  for (Eigen::Index k = 1; k <= n; ++k) {
    Poly acc = (z - Poly::constant(h(k - 1, k - 1))) * p[static_cast<std::size_t>(k - 1)];
    Rational sub(1);
    for (Eigen::Index i = k - 1; i >= 1; --i) {
      sub *= h(i, i - 1);
      if (sub.is_zero()) break;
      acc -= (h(i - 1, k - 1) * sub) * p[static_cast<std::size_t>(i - 1)];
    }
    p[static_cast<std::size_t>(k)] = std::move(acc);
  }
  return p[static_cast<std::size_t>(n)];
}

Poly SpectralDescription::product() const {
  Poly acc = part_a_poly.monic();
  for (const auto& s : part_b) acc *= s.factor;
  return acc;
}

SpectralDescription theorem2_spectrum(const PolyFamily& f, Vertex x) {
  const auto& t = f.base();
  SpectralDescription out;
  out.part_a_poly = f.up(x);
  out.part_a = isolate_real_roots(out.part_a_poly);
  for (Vertex v : t.descendants(x)) {
    const auto& kids = t.children(v);
    if (t.level(v) < 1 || kids.size() < 2) continue;
    Poly prod = Poly::constant(1);
    for (Vertex c : kids) prod *= f.up(c).monic();
    Poly factor = exact_div(prod, f.diag(v));
    if (factor.degree() < 1) continue;
    SharedRootFactor s{v, factor, isolate_real_roots(factor)};
    out.part_b.push_back(std::move(s));
  }
  return out;
}

SpectralIdentity spectral_identity(const PolyFamily& f, Vertex x) {
  SpectralIdentity r;
  r.char_poly = char_poly(TruncatedOperator::build(f.base(), x)).monic();
  r.product = theorem2_spectrum(f, x).product();
  r.identity = r.char_poly == r.product;
  r.set_level = square_free_part(r.char_poly) == square_free_part(r.product);
  return r;
}

namespace {

Poly mod(const Poly& p, const Poly& g) { return rem(p, g); }

}  // namespace

std::vector<WitnessCheck> check_eigen_witnesses(const PolyFamily& f, Vertex x) {
  if (!f.full()) throw ArgumentError("eigenvector witnesses need the full table");
  const auto& t = f.base();
  const Poly z = Poly::monomial(1, 1);
  std::vector<WitnessCheck> out;
  const auto members = t.descendants(x);
  std::vector<bool> inside(t.size(), false);
  for (Vertex v : members) inside[v] = true;

  for (Vertex v : members) {
    const auto& kids = t.children(v);
    for (std::size_t i = 0; i < kids.size(); ++i) {
      for (std::size_t j = i + 1; j < kids.size(); ++j) {
        const Vertex a = kids[i], b = kids[j];
        const Poly g = square_free_part(gcd(f.up(a), f.up(b)));
        if (g.degree() < 1) continue;
        WitnessCheck w{v, a, b, g, false};

        std::vector<Poly> u(t.size());
        const Poly ca = mod(t.lambda(b) * f.diag(b), g);
        const Poly cb = mod(-(t.lambda(a) * f.diag(a)), g);
        for (Vertex s : t.descendants(a)) u[s] = mod(ca * f.at(a, s), g);
        for (Vertex s : t.descendants(b)) u[s] = mod(cb * f.at(b, s), g);

        bool ok = gcd(u[a], g).degree() == 0;  // u(a) is a unit: u != 0 at every root
        for (Vertex s : members) {
          Poly res = (Poly::constant(t.beta(s)) - z) * u[s];
          if (s != x) res += t.lambda(s) * u[*t.parent(s)];
          for (Vertex c : t.children(s)) res += t.lambda(c) * u[c];
          if (!mod(res, g).is_zero()) {
            ok = false;
            break;
          }
        }
        w.pass = ok;
        out.push_back(std::move(w));
      }
    }
  }
  return out;
}

Inertia tree_inertia(const TreeTruncation& t, Vertex x, const Rational& alpha) {
  const auto members = t.descendants(x);
  std::vector<bool> inside(t.size(), false);
  for (Vertex v : members) inside[v] = true;
  std::vector<Rational> a(t.size());
  std::vector<bool> detached(t.size(), false);  // edge to the parent eliminated

  for (Vertex v : t.post_order()) {
    if (!inside[v]) continue;
    std::optional<Vertex> zero_child;
    for (Vertex c : t.children(v)) {
      if (!detached[c] && a[c].is_zero()) {
        zero_child = c;
        break;
      }
    }
    if (zero_child) {
      // The block [[*, lambda], [lambda, 0]] has one eigenvalue of each sign
      // and absorbs every other coupling of v, including the one upward.
      a[*zero_child] = Rational(1);
      a[v] = Rational(-1);
      detached[v] = true;
      continue;
    }
    Rational val = t.beta(v) - alpha;
    for (Vertex c : t.children(v)) {
      if (!detached[c]) val -= t.lambda(c) * t.lambda(c) / a[c];
    }
    a[v] = std::move(val);
  }
  Inertia in;
  for (Vertex v : members) {
    const int s = a[v].sign();
    if (s > 0) {
      ++in.positive;
    } else if (s < 0) {
      ++in.negative;
    } else {
      ++in.zero;
    }
  }
  return in;
}

long count_negative_eigenvalues(const TruncatedOperator& op) {
  return count_real_roots(char_poly(op), std::nullopt, Rational(0));
}

long count_outside(const Poly& p, const Rational& bound) {
  return count_real_roots(p, std::nullopt, -bound) + count_real_roots(p, bound, std::nullopt);
}

}  // namespace treejacobi

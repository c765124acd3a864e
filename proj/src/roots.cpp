#include "treejacobi/roots.hpp"

#include <algorithm>

#include "treejacobi/errors.hpp"

namespace treejacobi {

namespace {

int count_changes(const std::vector<int>& signs) {
  int changes = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

// Point strictly inside (a, b) where s does not vanish. Tries the midpoint
// first and then finer rational grids; s has finitely many roots.
Rational non_root_split(const Poly& s, const Rational& a, const Rational& b) {
  for (long k = 2;; ++k) {
    for (long j = 1; j < k; ++j) {
      Rational m = a + (b - a) * Rational(j) / Rational(k);
      if (!s(m).is_zero()) return m;
    }
  }
}

struct SquareFreeData {
  Poly sqf;
  SturmChain chain;
  std::vector<Poly> factors;  // factors[k] has multiplicity k + 1
  std::vector<SturmChain> factor_chains;
};

SquareFreeData square_free_data(const Poly& p) {
  auto factors = square_free_decomposition(p);
  Poly sqf = Poly::constant(1);
  std::vector<SturmChain> chains;
  for (const auto& f : factors) {
    sqf *= f;
    chains.emplace_back(f);
  }
  SturmChain chain(sqf);
  return {std::move(sqf), std::move(chain), std::move(factors), std::move(chains)};
}

// Open interval (a, b) with non-root endpoints holding `cnt` roots.
void split(const SquareFreeData& d, const Rational& a, const Rational& b, int cnt,
           std::vector<RootInterval>& out) {
  if (cnt == 0) return;
  if (cnt == 1) {
    out.push_back({a, b, 1});
    return;
  }
  Rational m = non_root_split(d.sqf, a, b);
  const int left = d.chain.count(a, m);
  split(d, a, m, left, out);
  split(d, m, b, cnt - left, out);
}

void refine(const Poly& s, const SturmChain& chain, RootInterval& r, const Rational& width) {
  while (!r.exact() && r.width() > width) {
    Rational m = (r.lo + r.hi) / Rational(2);
    if (s(m).is_zero()) {
      r.lo = m;
      r.hi = m;
      return;
    }
    if (chain.count(r.lo, m) == 1) {
      r.hi = m;
    } else {
      r.lo = m;
    }
  }
}

}  // namespace

SturmChain::SturmChain(const Poly& p) {
  if (p.is_zero()) return;
  seq_.push_back(p);
  Poly d = p.derivative();
  while (!d.is_zero()) {
    seq_.push_back(d);
    Poly r = -rem(seq_[seq_.size() - 2], d);
    d = std::move(r);
  }
}

int SturmChain::sign_changes(const Rational& x) const {
  std::vector<int> signs;
  signs.reserve(seq_.size());
  for (const auto& q : seq_) signs.push_back(q(x).sign());
  return count_changes(signs);
}

int SturmChain::sign_changes_at_infinity(bool negative) const {
  std::vector<int> signs;
  signs.reserve(seq_.size());
  for (const auto& q : seq_) {
    int s = q.leading().sign();
    if (negative && q.degree() % 2 == 1) s = -s;
    signs.push_back(s);
  }
  return count_changes(signs);
}

int SturmChain::count(const Rational& a, const Rational& b) const {
  if (seq_.empty()) return 0;
  return sign_changes(a) - sign_changes(b);
}

int SturmChain::count_all() const {
  if (seq_.empty()) return 0;
  return sign_changes_at_infinity(true) - sign_changes_at_infinity(false);
}

long count_real_roots(const Poly& p, const std::optional<Rational>& a,
                      const std::optional<Rational>& b, bool with_multiplicity) {
  if (p.is_zero()) throw ArgumentError("root count of the zero polynomial");
  if (a && b && *a >= *b) return 0;
  const auto factors = square_free_decomposition(p);
  long total = 0;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    const Poly& f = factors[k];
    SturmChain chain(f);
    const int va = a ? chain.sign_changes(*a) : chain.sign_changes_at_infinity(true);
    const int vb = b ? chain.sign_changes(*b) : chain.sign_changes_at_infinity(false);
    long c = va - vb;
    if (b && f(*b).is_zero()) --c;
    total += with_multiplicity ? c * static_cast<long>(k + 1) : c;
  }
  return total;
}

long RootSet::total_multiplicity() const {
  long t = 0;
  for (const auto& r : roots) t += r.multiplicity;
  return t;
}

Rational default_root_width() { return pow2(-32); }

Rational root_bound(const Poly& p) {
  if (p.degree() < 1) return Rational(1);
  Rational m(0);
  const Rational& lead = p.leading();
  for (int k = 0; k < p.degree(); ++k) {
    Rational r = abs(p.coeff(static_cast<std::size_t>(k)) / lead);
    if (r > m) m = r;
  }
  const Rational target = m + Rational(1);
  long e = 0;
  while (pow2(e) < target) ++e;
  return pow2(e);
}

RootSet isolate_real_roots(const Poly& p, const std::optional<Rational>& width) {
  if (p.is_zero()) throw ArgumentError("root isolation of the zero polynomial");
  RootSet out;
  if (p.degree() < 1) return out;
  const SquareFreeData d = square_free_data(p);
  const Rational bound = root_bound(d.sqf);
  split(d, -bound, bound, d.chain.count_all(), out.roots);
  for (auto& r : out.roots) {
    if (width) refine(d.sqf, d.chain, r, *width);
    for (std::size_t k = 0; k < d.factors.size(); ++k) {
      const bool here = r.exact() ? d.factors[k](r.lo).is_zero()
                                  : d.factor_chains[k].count(r.lo, r.hi) > 0;
      if (here) {
        r.multiplicity = static_cast<int>(k + 1);
        break;
      }
    }
  }
  return out;
}

bool all_roots_real_simple(const Poly& p) {
  if (p.is_zero()) return false;
  if (p.degree() < 1) return true;
  if (gcd(p, p.derivative()).degree() > 0) return false;
  return SturmChain(p).count_all() == p.degree();
}

// |Cauchy index of q/p| = deg p forces deg p distinct real poles, all
// jumping the same way, so q changes sign exactly once between neighbours.
// The index is read off the signed remainder sequence of (p, q).
bool strict_interlace(const Poly& p, const Poly& q) {
  if (p.is_zero() || q.is_zero()) return false;
  if (p.degree() != q.degree() + 1) return false;
  std::vector<int> at_neg, at_pos;
  auto push = [&](const Poly& s) {
    const int lead = s.leading().sign();
    at_pos.push_back(lead);
    at_neg.push_back(s.degree() % 2 == 0 ? lead : -lead);
  };
  Poly a = p, b = q;
  while (!b.is_zero()) {
    push(a);
    Poly r = -rem(a, b);
    a = std::move(b);
    b = r.is_zero() ? Poly{} : r / abs(r.leading());  // positive rescaling keeps the signs
  }
  push(a);
  const int index = count_changes(at_neg) - count_changes(at_pos);
  return index == p.degree() || index == -p.degree();
}

bool strict_interlace_by_isolation(const Poly& p, const Poly& q) {
  if (p.is_zero() || q.is_zero()) return false;
  if (p.degree() != q.degree() + 1) return false;
  if (!all_roots_real_simple(p) || !all_roots_real_simple(q)) return false;
  if (gcd(p, q).degree() > 0) return false;
  if (q.degree() == 0) return true;

  const SturmChain pc(p), qc(q);
  auto roots = isolate_real_roots(p, std::nullopt).roots;
  // Shrink each p-interval until it holds no root of q; terminates since the
  // two polynomials share no root.
  for (auto& r : roots) {
    while (true) {
      if (r.exact()) {
        if (q(r.lo).is_zero()) return false;
        break;
      }
      if (!q(r.lo).is_zero() && !q(r.hi).is_zero() && qc.count(r.lo, r.hi) == 0) break;
      refine(p, pc, r, r.width() / Rational(2));
    }
  }
  for (std::size_t k = 0; k + 1 < roots.size(); ++k) {
    if (qc.count(roots[k].hi, roots[k + 1].lo) != 1) return false;
  }
  return true;
}

}  // namespace treejacobi

#include "treejacobi/classical.hpp"

#include "treejacobi/errors.hpp"
#include "treejacobi/spectra.hpp"

namespace treejacobi {

Rational ClassicalJacobi::lambda(long n) const {
  if (n < 0 || n > cap) throw ArgumentError("lambda index " + std::to_string(n) + " beyond the depth cap");
  Rational l = lambda_rule(n);
  if (l.sign() <= 0) throw ArgumentError("nonpositive lambda at index " + std::to_string(n));
  return l;
}

Rational ClassicalJacobi::beta(long n) const {
  if (n < 0 || n > cap) throw ArgumentError("beta index " + std::to_string(n) + " beyond the depth cap");
  return beta_rule(n);
}

ClassicalJacobi ClassicalJacobi::constant(const Rational& lambda, const Rational& beta, long cap) {
  return {[lambda](long) { return lambda; }, [beta](long) { return beta; }, cap};
}

ClassicalJacobi ClassicalJacobi::from_sequences(std::vector<Rational> lambda, std::vector<Rational> beta) {
  if (lambda.size() != beta.size() || lambda.empty()) throw ArgumentError("coefficient sequences must match");
  const long cap = static_cast<long>(lambda.size()) - 1;
  return {[l = std::move(lambda)](long n) { return l.at(static_cast<std::size_t>(n)); },
          [b = std::move(beta)](long n) { return b.at(static_cast<std::size_t>(n)); }, cap};
}

PQValues pq_values(const ClassicalJacobi& j, const Rational& x0, long n) {
  PQValues out;
  out.p.push_back(1);
  out.q.push_back(0);
  if (n >= 1) {
    out.p.push_back((x0 - j.beta(0)) / j.lambda(0));
    out.q.push_back(Rational(1) / j.lambda(0));
  }
  for (long m = 1; m < n; ++m) {
    const auto k = static_cast<std::size_t>(m);
    const Rational lm = j.lambda(m), lp = j.lambda(m - 1), b = j.beta(m);
    out.p.push_back(((x0 - b) * out.p[k] - lp * out.p[k - 1]) / lm);
    out.q.push_back(((x0 - b) * out.q[k] - lp * out.q[k - 1]) / lm);
  }
  return out;
}

std::vector<Poly> p_polys(const ClassicalJacobi& j, long n) {
  const Poly z = Poly::monomial(1, 1);
  std::vector<Poly> p{Poly::constant(1)};
  if (n >= 1) p.push_back((z - Poly::constant(j.beta(0))) / j.lambda(0));
  for (long m = 1; m < n; ++m) {
    const auto k = static_cast<std::size_t>(m);
    p.push_back(((z - Poly::constant(j.beta(m))) * p[k] - j.lambda(m - 1) * p[k - 1]) / j.lambda(m));
  }
  return p;
}

TreeTruncation path_tree(const ClassicalJacobi& j, long n) {
  std::vector<VertexSpec> specs;
  for (long k = n; k >= 0; --k) {
    VertexSpec s;
    s.id = "x" + std::to_string(k);
    if (k < n) s.parent = "x" + std::to_string(k + 1);
    s.level = static_cast<int>(k);
    s.lambda = j.lambda(k);
    s.beta = j.beta(k);
    specs.push_back(std::move(s));
  }
  return TreeTruncation::build(specs, "x" + std::to_string(n), j.lambda(n));
}

std::vector<Rational> pq_partial_sums(const ClassicalJacobi& j, const Rational& x0, long n) {
  const auto v = pq_values(j, x0, n);
  std::vector<Rational> sums;
  Rational acc(0);
  for (std::size_t k = 0; k < v.p.size(); ++k) {
    acc += v.p[k] * v.p[k] + v.q[k] * v.q[k];
    sums.push_back(acc);
  }
  return sums;
}

ProductRatioCheck product_ratio_check(const ClassicalJacobi& j, long n) {
  for (long m = 0; m <= n; ++m) {
    if (!j.beta(m).is_zero()) throw ArgumentError("product-ratio identity needs beta = 0");
  }
  const auto v = pq_values(j, 0, n);
  const Rational l0 = j.lambda(0);
  ProductRatioCheck r;
  Rational even(1), odd(1);  // running products for A_k and B_k
  for (long m = 1; m <= n; ++m) {
    const auto k = static_cast<std::size_t>(m);
    const Rational p2 = v.p[k] * v.p[k];
    const Rational q2 = l0 * l0 * v.q[k] * v.q[k];
    if (m >= 2) r.pq_sum += p2 + q2;
    if (m % 2 == 0) {
      even *= j.lambda(m - 2) / j.lambda(m - 1);
      if (!q2.is_zero() || p2 != even * even) r.holds = false;
      r.ratio_sum += even * even;
    } else {
      if (m >= 3) odd *= j.lambda(m - 2) / j.lambda(m - 1);
      if (!p2.is_zero() || q2 != odd * odd) r.holds = false;
      if (m >= 3) r.ratio_sum += odd * odd;
    }
  }
  if (r.pq_sum != r.ratio_sum) r.holds = false;
  return r;
}

ClassicalJacobi lemma5_family(const Rational& q, const Rational& a, long cap) {
  if (q <= Rational(1)) throw ArgumentError("explicit coefficient family needs q > 1");
  if (a.is_zero()) throw ArgumentError("explicit coefficient family needs a != 0");
  auto lam = [q](long n) { return pow(q, n / 2); };
  auto bet = [q, a](long n) {
    const long k = n / 2;
    if (n % 2 == 1) return a * pow(q, k);
    return (pow(q, k) + pow(q, k - 1)) / a;
  };
  return {lam, bet, cap};
}

std::vector<Rational> lemma5_kernel_residuals(const ClassicalJacobi& j, long n) {
  auto x = [](long m) -> Rational {
    if (m < 0 || m % 2 == 1) return 0;
    return (m / 2) % 2 == 0 ? 1 : -1;
  };
  std::vector<Rational> res;
  for (long m = 0; m <= n; ++m) {
    Rational r = j.lambda(m) * x(m + 1);
    if (m >= 1) r += j.lambda(m - 1) * x(m - 1);
    res.push_back(r);
  }
  return res;
}

std::vector<Rational> lemma5_even_residuals(const ClassicalJacobi& j, const Rational& x0, const Rational& x1,
                                            long n) {
  std::vector<Rational> x{x0, x1};
  for (long m = 1; m < n; ++m) {
    const auto k = static_cast<std::size_t>(m);
    x.push_back((j.beta(m) * x[k] - j.lambda(m - 1) * x[k - 1]) / j.lambda(m));
  }
  std::vector<Rational> res;
  for (long k = 1; 2 * k + 2 <= n; ++k) {
    const auto e = static_cast<std::size_t>(2 * k);
    res.push_back(j.lambda(2 * k) * x[e + 2] + j.lambda(2 * k - 2) * x[e - 2]);
  }
  return res;
}

std::vector<Rational> positivity_sign_vector(const ClassicalJacobi& j, long count) {
  if (count < 1) throw ArgumentError("sign vector needs at least one entry");
  if (count >= 2) {
    const auto op = TruncatedOperator::build(path_tree(j, count - 2));
    const Poly cp = char_poly(op);
    if (count_real_roots(cp, std::nullopt, Rational(0)) > 0 || cp(Rational(0)).is_zero()) {
      throw ArgumentError("leading block of the classical matrix is not positive definite");
    }
  }
  const auto v = pq_values(j, 0, count - 1);
  std::vector<Rational> m;
  for (long n = 0; n < count; ++n) {
    const Rational s = (n % 2 == 0 ? v.p[static_cast<std::size_t>(n)] : -v.p[static_cast<std::size_t>(n)]);
    if (s.sign() <= 0) {
      throw PositivityError("(-1)^n p_n(0) is not positive at n = " + std::to_string(n) +
                            " although the matrix is positive definite");
    }
    m.push_back(s);
  }
  return m;
}

}  // namespace treejacobi

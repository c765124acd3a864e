#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "treejacobi/classical.hpp"
#include "treejacobi/errors.hpp"

using namespace treejacobi;

namespace {

ClassicalJacobi random_jacobi(std::mt19937_64& rng, long cap, bool zero_beta = false) {
  std::vector<Rational> l, b;
  for (long k = 0; k <= cap; ++k) {
    l.push_back(random_rational(rng, Rational(1, 4), 3, 4));
    b.push_back(zero_beta ? Rational(0) : random_rational(rng, -3, 3, 4));
  }
  return ClassicalJacobi::from_sequences(l, b);
}

}  // namespace

TEST_CASE("pq_values period-4 pattern") {
  const auto j = ClassicalJacobi::constant(1, 0, 20);
  const auto v = pq_values(j, 0, 12);
  const int pattern[] = {1, 0, -1, 0};
  for (std::size_t n = 0; n <= 12; ++n) CHECK(v.p[n] == Rational(pattern[n % 4]));
  CHECK(v.q[1] == Rational(1));
  CHECK(v.q[2] == Rational(0));
  CHECK(v.q[3] == Rational(-1));
}

TEST_CASE("recursion residual and Wronskian of p and q") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const auto j = random_jacobi(rng, 15);
    const Rational x0 = random_rational(rng, -4, 4, 5);
    const auto v = pq_values(j, x0, 15);
    REQUIRE(v.p.size() == 16);
    for (long n = 0; n < 15; ++n) {
      const auto k = static_cast<std::size_t>(n);
      Rational res = j.lambda(n) * v.p[k + 1] + j.beta(n) * v.p[k] - x0 * v.p[k];
      if (n > 0) res += j.lambda(n - 1) * v.p[k - 1];
      CHECK(res.is_zero());
      CHECK(j.lambda(n) * (v.p[k] * v.q[k + 1] - v.q[k] * v.p[k + 1]) == Rational(1));
    }
    // Polynomials evaluate to the same values.
    const auto p = p_polys(j, 15);
    for (std::size_t k = 0; k <= 15; ++k) CHECK(p[k](x0) == v.p[k]);
    const auto sums = pq_partial_sums(j, x0, 15);
    CHECK(sums.back() == sums[14] + v.p[15] * v.p[15] + v.q[15] * v.q[15]);
  }
}

TEST_CASE("depth cap and positivity of lambda") {
  const auto j = ClassicalJacobi::constant(1, 0, 3);
  CHECK_THROWS_AS(j.lambda(4), ArgumentError);
  CHECK_THROWS_AS(pq_values(j, 0, 6), ArgumentError);
  const auto bad = ClassicalJacobi::from_sequences({1, 0}, {0, 0});
  CHECK_THROWS_AS(bad.lambda(1), ArgumentError);
}

TEST_CASE("explicit family coefficients") {
  const auto j = lemma5_family(2, 1, 6);
  CHECK(j.beta(1) == Rational(1));
  CHECK(j.beta(2) == Rational(3));
  CHECK(j.beta(3) == Rational(2));
  CHECK(j.beta(4) == Rational(6));
  CHECK(j.lambda(4) == Rational(4));
  CHECK(j.lambda(5) == Rational(4));
  CHECK_THROWS_AS(lemma5_family(1, 1, 6), ArgumentError);
  CHECK_THROWS_AS(lemma5_family(Rational(1, 2), 1, 6), ArgumentError);
  CHECK_THROWS_AS(lemma5_family(2, 0, 6), ArgumentError);
}

TEST_CASE("explicit family kernel vector of the beta-free matrix") {
  for (const auto& [q, a] : std::vector<std::pair<Rational, Rational>>{{2, 1}, {3, -2}, {Rational(5, 4), Rational(1, 3)}}) {
    const auto j = lemma5_family(q, a, 41);
    for (const auto& r : lemma5_kernel_residuals(j, 40)) CHECK(r.is_zero());
  }
}

TEST_CASE("explicit family even-index reduction for random seeds") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Rational q = random_rational(rng, Rational(9, 8), 4, 8);
    Rational a = random_rational(rng, -3, 3, 4);
    if (a.is_zero()) a = 1;
    const auto j = lemma5_family(q, a, 30);
    const auto res = lemma5_even_residuals(j, random_rational(rng, -5, 5, 7), random_rational(rng, -5, 5, 7), 30);
    CHECK(res.size() == 14);
    for (const auto& r : res) CHECK(r.is_zero());
  }
}

TEST_CASE("positivity sign vector") {
  const auto j = ClassicalJacobi::constant(1, 4, 20);
  for (long n = 1; n <= 13; ++n) {
    const auto m = positivity_sign_vector(j, n);
    CHECK(m.size() == static_cast<std::size_t>(n));
    for (const auto& x : m) CHECK(x.sign() > 0);
  }
  CHECK_THROWS_AS(positivity_sign_vector(ClassicalJacobi::constant(1, 0, 20), 6), ArgumentError);
  CHECK(positivity_sign_vector(ClassicalJacobi::constant(1, 0, 20), 1) == std::vector<Rational>{1});
}

TEST_CASE("product-ratio identity at beta = 0") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const auto j = random_jacobi(rng, 16, true);
    const auto r = product_ratio_check(j, 16);
    CHECK(r.holds);
    CHECK(r.pq_sum == r.ratio_sum);
  }
  // Constant lambda: every product is 1, so the sum counts the terms.
  const auto r = product_ratio_check(ClassicalJacobi::constant(1, 0, 10), 10);
  CHECK(r.holds);
  CHECK(r.pq_sum == Rational(9));
  CHECK_THROWS_AS(product_ratio_check(ClassicalJacobi::constant(1, 1, 10), 4), ArgumentError);
}

TEST_CASE("geometric lambda: partial sums of p^2 + q^2 at 0") {
  // Decaying lambda_n = 2^{-n}: p_{2k}(0)^2 grows like 4^k.
  const auto decay = ClassicalJacobi{[](long n) { return pow2(-n); }, [](long) { return Rational(0); }, 40};
  auto s = pq_partial_sums(decay, 0, 8);
  CHECK(s[8] > s[6] * 2);
  // Growing lambda_n = 2^n: the terms shrink geometrically.
  const auto grow = ClassicalJacobi{[](long n) { return pow2(n); }, [](long) { return Rational(0); }, 40};
  s = pq_partial_sums(grow, 0, 30);
  CHECK((s[30] - s[20]).to_double() < 1e-5);
  CHECK((s[30] - s[20]).to_double() > 1e-7);
}

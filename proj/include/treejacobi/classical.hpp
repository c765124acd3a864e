#pragma once

#include <functional>
#include <vector>

#include "treejacobi/poly.hpp"
#include "treejacobi/tree.hpp"

namespace treejacobi {

/// Classical Jacobi matrix x p_n = lambda_n p_{n+1} + beta_n p_n +
/// lambda_{n-1} p_{n-1}, with coefficient rules capped at `cap`.
struct ClassicalJacobi {
  std::function<Rational(long)> lambda_rule;
  std::function<Rational(long)> beta_rule;
  long cap = 0;

  /// ArgumentError beyond the cap or on a nonpositive lambda.
  Rational lambda(long n) const;
  Rational beta(long n) const;

  static ClassicalJacobi constant(const Rational& lambda, const Rational& beta, long cap);
  static ClassicalJacobi from_sequences(std::vector<Rational> lambda, std::vector<Rational> beta);
};

struct PQValues {
  std::vector<Rational> p;  // p_0 ... p_N
  std::vector<Rational> q;  // q_0 ... q_N
};

/// First and second kind values at x0: p_0 = 1, p_{-1} = 0; q_0 = 0,
/// q_1 = 1/lambda_0, both continued by the three-term recursion.
PQValues pq_values(const ClassicalJacobi& j, const Rational& x0, long n);

/// p_0(z) ... p_N(z) as polynomials.
std::vector<Poly> p_polys(const ClassicalJacobi& j, long n);

/// Path truncation x_0 ... x_N carrying lambda_n, beta_n.
TreeTruncation path_tree(const ClassicalJacobi& j, long n);

/// Partial sums S_N = sum_{n <= N} [p_n(x0)^2 + q_n(x0)^2] for N = 0 ... n.
std::vector<Rational> pq_partial_sums(const ClassicalJacobi& j, const Rational& x0, long n);

/// For beta = 0 at x0 = 0 the p/q values are the products of lambda ratios:
/// p_{2k}(0)^2 = (l_0 l_2 ... l_{2k-2} / l_1 l_3 ... l_{2k-1})^2,
/// lambda_0^2 q_{2k+1}(0)^2 = (l_1 ... l_{2k-1} / l_2 ... l_{2k})^2 and the
/// odd p / even q vanish. Checked term by term up to index n.
struct ProductRatioCheck {
  bool holds = true;
  Rational ratio_sum;  // sum of both squared products for k = 1 ... K
  Rational pq_sum;     // sum_{n=1}^{n} p_n(0)^2 + lambda_0^2 q_n(0)^2
};
ProductRatioCheck product_ratio_check(const ClassicalJacobi& j, long n);

/// lambda_{2n+1} = lambda_{2n} = q^n, beta_{2n+1} = a q^n,
/// beta_{2n} = (q^n + q^{n-1}) / a. The associated operator acts as
/// lambda_n x_{n+1} - beta_n x_n + lambda_{n-1} x_{n-1}.
ClassicalJacobi lemma5_family(const Rational& q, const Rational& a, long cap);

/// Residuals of J' x = lambda_n x_{n+1} + lambda_{n-1} x_{n-1} on
/// x_{2k-1} = 0, x_{2k} = (-1)^k, rows 0 ... n.
std::vector<Rational> lemma5_kernel_residuals(const ClassicalJacobi& j, long n);

/// Solves 0 = lambda_m x_{m+1} - beta_m x_m + lambda_{m-1} x_{m-1} (m >= 1)
/// from (x_0, x_1) and returns lambda_{2k} x_{2k+2} + lambda_{2k-2} x_{2k-2}
/// for every k >= 1 with 2k + 2 <= n.
std::vector<Rational> lemma5_even_residuals(const ClassicalJacobi& j, const Rational& x0, const Rational& x1,
                                            long n);

/// m_n = (-1)^n p_n(0), n = 0 ... count-1. Requires the leading
/// (count-1) x (count-1) block to be positive definite (ArgumentError
/// otherwise); PositivityError if a sign fails anyway.
std::vector<Rational> positivity_sign_vector(const ClassicalJacobi& j, long count);

}  // namespace treejacobi

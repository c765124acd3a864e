#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "treejacobi/rational.hpp"

namespace treejacobi {

/// Univariate polynomial in z with exact rational coefficients, lowest degree
/// first. The leading coefficient is nonzero unless the polynomial is zero.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs);
  Poly(std::initializer_list<Rational> coeffs) : Poly(std::vector<Rational>(coeffs)) {}

  static Poly constant(const Rational& c);
  /// c * z^k
  static Poly monomial(const Rational& c, std::size_t k);
  /// z - root
  static Poly linear(const Rational& root);

  /// "[c0, c1, ...]" with each coefficient in "p/q" form.
  static Poly parse(std::string_view text);
  std::string str() const;

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
  const Rational& leading() const;

  Poly monic() const;
  Poly derivative() const;

  template <typename S>
  S eval(const S& z) const {
    S acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      acc *= z;
      acc += S(*it);
    }
    return acc;
  }
  Rational operator()(const Rational& z) const { return eval(z); }
  GaussianRational operator()(const GaussianRational& z) const { return eval(z); }

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& s);
  Poly& operator/=(const Rational& s);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
  friend Poly operator/(Poly a, const Rational& s) { return a /= s; }
  friend Poly operator-(Poly a);

  friend bool operator==(const Poly& a, const Poly& b) = default;

 private:
  void trim();
  std::vector<Rational> c_;
};

struct DivMod {
  Poly quotient;
  Poly remainder;
};

DivMod divmod(const Poly& a, const Poly& b);
/// Quotient of a division that must be exact; DivisionError otherwise.
Poly exact_div(const Poly& a, const Poly& b);
Poly rem(const Poly& a, const Poly& b);

enum class PolyOp { add, sub, mul, exact_div, rem };
Poly poly_arith(const Poly& a, const Poly& b, PolyOp op);

struct GcdLcm {
  Poly gcd;
  Poly lcm;
};

/// Monic gcd and lcm of two nonzero polynomials (ArgumentError on zero).
GcdLcm poly_gcd_lcm(const Poly& a, const Poly& b);
/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);
Poly lcm(const Poly& a, const Poly& b);

bool divides(const Poly& d, const Poly& p);
Poly pow(const Poly& p, unsigned k);

/// Monic product of the distinct irreducible factors of p.
Poly square_free_part(const Poly& p);

/// Yun's decomposition: p = c * prod_k f[k]^(k+1) with each f[k] monic,
/// square-free and pairwise coprime. Trailing constant factors are dropped.
std::vector<Poly> square_free_decomposition(const Poly& p);

}  // namespace treejacobi

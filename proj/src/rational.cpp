#include "treejacobi/rational.hpp"

#include <cctype>

#include "treejacobi/errors.hpp"

namespace treejacobi {

namespace {

bool valid_integer(std::string_view s, bool allow_sign) {
  std::size_t i = 0;
  if (allow_sign && i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

mpz_class parse_integer(std::string_view s) {
  std::string t(s);
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  return mpz_class(t, 10);
}

}  // namespace

Rational::Rational(int num, int den) : Rational(mpz_class(num), mpz_class(den)) {}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw ArgumentError("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const std::string s = trim(text);
  const auto slash = s.find('/');
  if (slash == std::string::npos) {
    if (!valid_integer(s, true)) throw ParseError("malformed rational: '" + s + "'");
    return Rational(parse_integer(s), mpz_class(1));
  }
  const std::string_view p = std::string_view(s).substr(0, slash);
  const std::string_view q = std::string_view(s).substr(slash + 1);
  if (!valid_integer(p, true) || !valid_integer(q, false)) {
    throw ParseError("malformed rational: '" + s + "'");
  }
  const mpz_class den = parse_integer(q);
  if (den == 0) throw ParseError("zero denominator in '" + s + "'");
  return Rational(parse_integer(p), den);
}

std::string Rational::str() const {
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::optional<Rational> Rational::exact_sqrt() const {
  if (sign() < 0) return std::nullopt;
  const mpz_class n = v_.get_num();
  const mpz_class d = v_.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) {
    return std::nullopt;
  }
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  return Rational(rn, rd);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw ArgumentError("rational division by zero");
  v_ /= o.v_;
  return *this;
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

Rational pow2(long k) {
  mpz_class p(1);
  const unsigned long e = static_cast<unsigned long>(k < 0 ? -k : k);
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), e);
  return k >= 0 ? Rational(p, mpz_class(1)) : Rational(mpz_class(1), p);
}

Rational pow(const Rational& base, long exponent) {
  if (exponent < 0) return Rational(1) / pow(base, -exponent);
  Rational result(1), b = base;
  for (unsigned long e = static_cast<unsigned long>(exponent); e; e >>= 1) {
    if (e & 1UL) result *= b;
    b *= b;
  }
  return result;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  const Rational n = o.norm2();
  if (n.is_zero()) throw ArgumentError("gaussian rational division by zero");
  *this *= o.conj();
  re /= n;
  im /= n;
  return *this;
}

GaussianRational GaussianRational::parse(std::string_view text) {
  std::string s = trim(text);
  if (s.empty()) throw ParseError("empty gaussian rational");
  if (s.back() != 'i') return GaussianRational(Rational::parse(s));
  s.pop_back();
  // Split at the last sign that is not the leading one.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if (s[k] == '+' || s[k] == '-') {
      split = k;
      break;
    }
  }
  auto imag_part = [](std::string part) {
    if (part.empty() || part == "+") return Rational(1);
    if (part == "-") return Rational(-1);
    return Rational::parse(part);
  };
  if (split == std::string::npos) return {Rational(0), imag_part(s)};
  return {Rational::parse(s.substr(0, split)), imag_part(s.substr(split))};
}

std::string GaussianRational::str() const {
  const std::string sign = im.sign() < 0 ? "-" : "+";
  return re.str() + sign + abs(im).str() + "i";
}

GaussianRational i_pow(long k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {Rational(1), Rational(0)};
    case 1: return {Rational(0), Rational(1)};
    case 2: return {Rational(-1), Rational(0)};
    default: return {Rational(0), Rational(-1)};
  }
}

}  // namespace treejacobi

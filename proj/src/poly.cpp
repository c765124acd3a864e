#include "treejacobi/poly.hpp"

#include <algorithm>
#include <sstream>

#include "treejacobi/errors.hpp"

namespace treejacobi {

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::constant(const Rational& c) { return Poly(std::vector<Rational>{c}); }

Poly Poly::monomial(const Rational& c, std::size_t k) {
  std::vector<Rational> v(k + 1);
  v[k] = c;
  return Poly(std::move(v));
}

Poly Poly::linear(const Rational& root) { return Poly({-root, Rational(1)}); }

Poly Poly::parse(std::string_view text) {
  std::string s(text);
  const auto open = s.find('[');
  const auto close = s.rfind(']');
  if (open == std::string::npos || close == std::string::npos || close < open) {
    throw ParseError("polynomial must be a bracketed coefficient list: '" + s + "'");
  }
  std::vector<Rational> coeffs;
  std::string body = s.substr(open + 1, close - open - 1);
  if (body.find_first_not_of(" \t\n") == std::string::npos) return Poly();
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) coeffs.push_back(Rational::parse(item));
  return Poly(std::move(coeffs));
}

std::string Poly::str() const {
  std::string out = "[";
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (k) out += ", ";
    out += c_[k].str();
  }
  return out + "]";
}

const Rational& Poly::leading() const {
  if (c_.empty()) throw ArgumentError("leading coefficient of the zero polynomial");
  return c_.back();
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return *this / leading();
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly();
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * Rational(static_cast<long>(k));
  return Poly(std::move(d));
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  if (is_zero() || o.is_zero()) {
    c_.clear();
    return *this;
  }
  std::vector<Rational> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  trim();
  return *this;
}

Poly& Poly::operator*=(const Rational& s) {
  if (s.is_zero()) {
    c_.clear();
    return *this;
  }
  for (auto& c : c_) c *= s;
  return *this;
}

Poly& Poly::operator/=(const Rational& s) {
  for (auto& c : c_) c /= s;
  return *this;
}

Poly operator-(Poly a) {
  for (auto& c : a.c_) c = -c;
  return a;
}

DivMod divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw ArgumentError("polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly(), a};
  std::vector<Rational> r = a.coeffs();
  const auto& bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  std::vector<Rational> q(r.size() - db);
  const Rational inv_lead = Rational(1) / bc.back();
  for (std::size_t k = q.size(); k-- > 0;) {
    Rational f = r[k + db] * inv_lead;
    if (f.is_zero()) continue;
    for (std::size_t j = 0; j <= db; ++j) r[k + j] -= f * bc[j];
    q[k] = std::move(f);
  }
  r.resize(db);
  return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly exact_div(const Poly& a, const Poly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) {
    throw DivisionError("inexact polynomial division: " + a.str() + " / " + b.str() +
                        " leaves remainder " + r.str());
  }
  return q;
}

Poly rem(const Poly& a, const Poly& b) { return divmod(a, b).remainder; }

Poly poly_arith(const Poly& a, const Poly& b, PolyOp op) {
  switch (op) {
    case PolyOp::add: return a + b;
    case PolyOp::sub: return a - b;
    case PolyOp::mul: return a * b;
    case PolyOp::exact_div: return exact_div(a, b);
    case PolyOp::rem: return rem(a, b);
  }
  throw ArgumentError("unknown polynomial operation");
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a.monic(), y = b.monic();
  while (!y.is_zero()) {
    Poly r = rem(x, y).monic();
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

GcdLcm poly_gcd_lcm(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) throw ArgumentError("gcd/lcm of the zero polynomial");
  Poly g = gcd(a, b);
  Poly l = a.monic() * exact_div(b.monic(), g);
  return {std::move(g), std::move(l)};
}

Poly lcm(const Poly& a, const Poly& b) { return poly_gcd_lcm(a, b).lcm; }

bool divides(const Poly& d, const Poly& p) { return divmod(p, d).remainder.is_zero(); }

Poly pow(const Poly& p, unsigned k) {
  Poly r = Poly::constant(1);
  for (unsigned i = 0; i < k; ++i) r *= p;
  return r;
}

Poly square_free_part(const Poly& p) {
  if (p.degree() <= 0) return p.is_zero() ? p : Poly::constant(1);
  return exact_div(p.monic(), gcd(p, p.derivative()));
}

std::vector<Poly> square_free_decomposition(const Poly& p) {
  std::vector<Poly> out;
  if (p.degree() <= 0) return out;
  const Poly f = p.monic();
  const Poly fp = f.derivative();
  Poly a = gcd(f, fp);
  Poly b = exact_div(f, a);
  Poly d = exact_div(fp, a) - b.derivative();
  while (b.degree() > 0) {
    Poly g = gcd(b, d);
    out.push_back(g);
    b = exact_div(b, g);
    d = exact_div(d, g) - b.derivative();
  }
  while (!out.empty() && out.back().degree() == 0) out.pop_back();
  return out;
}

}  // namespace treejacobi

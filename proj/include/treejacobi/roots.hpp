#pragma once

#include <optional>
#include <vector>

#include "treejacobi/poly.hpp"

namespace treejacobi {

/// Sturm sequence p, p', -rem(p, p'), ... of a polynomial. Callers that need
/// counts at possible roots should build it on the square-free part.
class SturmChain {
 public:
  explicit SturmChain(const Poly& p);

  int sign_changes(const Rational& x) const;
  int sign_changes_at_infinity(bool negative) const;

  /// Distinct roots in (a, b]; a < b, both finite.
  int count(const Rational& a, const Rational& b) const;
  /// Distinct real roots.
  int count_all() const;

  const std::vector<Poly>& sequence() const { return seq_; }

 private:
  std::vector<Poly> seq_;
};

/// Distinct real roots of p strictly between a and b (nullopt = unbounded),
/// or the count with multiplicity when `with_multiplicity` is set.
long count_real_roots(const Poly& p, const std::optional<Rational>& a,
                      const std::optional<Rational>& b, bool with_multiplicity = true);

struct RootInterval {
  // Either lo == hi (the root itself) or an open interval (lo, hi) whose
  // endpoints are not roots.
  Rational lo;
  Rational hi;
  int multiplicity = 1;

  bool exact() const { return lo == hi; }
  Rational width() const { return hi - lo; }
  friend bool operator==(const RootInterval&, const RootInterval&) = default;
};

struct RootSet {
  std::vector<RootInterval> roots;

  std::size_t distinct() const { return roots.size(); }
  long total_multiplicity() const;
};

/// Default refinement width 2^-32.
Rational default_root_width();

/// Real roots of p with multiplicities. Intervals are refined until narrower
/// than `width` (no refinement if width is nullopt).
RootSet isolate_real_roots(const Poly& p, const std::optional<Rational>& width = default_root_width());

/// All roots real and simple (constants trivially qualify).
bool all_roots_real_simple(const Poly& p);

/// deg p = deg q + 1, both with real simple roots, and exactly one root of q
/// between each pair of consecutive roots of p.
bool strict_interlace(const Poly& p, const Poly& q);
/// Same verdict by isolating the roots of p; slow, kept as an oracle.
bool strict_interlace_by_isolation(const Poly& p, const Poly& q);

/// Cauchy bound rounded up to a power of two: every root has |r| < bound.
Rational root_bound(const Poly& p);

}  // namespace treejacobi

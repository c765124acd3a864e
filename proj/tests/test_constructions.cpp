#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "treejacobi/constructions.hpp"
#include "treejacobi/errors.hpp"
#include "treejacobi/spectra.hpp"

using namespace treejacobi;

namespace {

std::map<Vertex, Rational> constant_m(const TreeTruncation& t, const Rational& c = 1) {
  std::map<Vertex, Rational> m;
  for (Vertex v = 0; v < t.size(); ++v) m[v] = c;
  return m;
}

// Distance from a vertex to the nearest vertex named x<k>.
int path_distance(const TreeTruncation& t, Vertex v) {
  int d = 0;
  while (t.name(v)[0] != 'x') {
    v = *t.parent(v);
    ++d;
  }
  return d;
}

}  // namespace

TEST_CASE("small-norm solution construction") {
  for (int depth : {1, 2, 5, 8}) {
    const auto r = theorem3_build(depth);
    CHECK(r.v.satisfied());
    CHECK(r.v.satisfied_at.size() == r.tree.size());
    CHECK(r.ledger.size() == static_cast<std::size_t>(depth) + 1);
    for (int n = 1; n <= depth; ++n) {
      const Vertex xn = r.tree.index("x" + std::to_string(n));
      CHECK(r.v.norm2(xn) == r.ledger[static_cast<std::size_t>(n)]);
      CHECK(r.ledger[static_cast<std::size_t>(n)] <= Rational(1) - pow2(-n));
    }
    CHECK(r.v.norm2() <= Rational(1) - pow2(-depth));
    for (Vertex v = 0; v < r.tree.size(); ++v) {
      CHECK(r.tree.beta(v).is_zero());
      if (path_distance(r.tree, v) >= 2) CHECK(r.tree.lambda(v) == Rational(1));
    }
    // v is the unique solution up to scale: solve_pair reproduces it.
    const auto v = solve_v(r.tree, default_path(r.tree), GaussianRational::i(), Rational(1, 2));
    for (const auto& [s, val] : r.v.values) CHECK(v.at(s) == val);
  }
  CHECK(theorem3_build(1).v.norm2() <= Rational(1, 2));
  CHECK_THROWS_AS(theorem3_build(0), ArgumentError);
}

TEST_CASE("bounded part plus path perturbation") {
  const auto t = remark2_build(4, 4);
  for (Vertex v = 0; v < t.size(); ++v) {
    const auto& id = t.name(v);
    const bool on_path = id.find('.') == std::string::npos;
    if (on_path) {
      CHECK(t.lambda(v) == Rational(1, 2) + pow2(-t.level(v)));
    } else {
      CHECK(t.lambda(v) == Rational(1, 2));
    }
  }
  CHECK_THROWS_AS(remark2_build(5, 3), ArgumentError);
  CHECK_THROWS_AS(remark2_build(1, 3), ArgumentError);
  CHECK(remark2_build(9, 2).lambda(remark2_build(9, 2).index("x1.1")) == Rational(1, 3));
  for (int depth = 2; depth <= 4; ++depth) {
    const auto sb = spectral_bound(remark2_j0(4, depth), 2, 400);
    CHECK(sb.consistent());
    CHECK(sb.by_inertia == 0);
  }
  // A bound below the spectral radius is detected by all routes.
  const auto sb = spectral_bound(remark2_j0(4, 3), Rational(3, 2), 400);
  CHECK(sb.consistent());
  CHECK(sb.by_inertia > 0);
}

TEST_CASE("decorated path") {
  const auto j = ClassicalJacobi::constant(1, Rational(3, 4), 20);
  auto r = decorated_path_build(j, 6);
  CHECK(r.exact);
  REQUIRE(r.tree);
  CHECK(r.tree->lambda(r.tree->index("y0")) == Rational(5, 4));
  CHECK(r.pass());
  CHECK(r.eigen_residuals.size() == 13);

  r = decorated_path_build(ClassicalJacobi::constant(2, 0, 20), 5);
  CHECK(r.pass());
  CHECK(r.mu2[0] == Rational(1));

  const auto l5 = lemma5_family(2, 1, 12);
  CHECK_THROWS_AS(decorated_path_build(negate_beta(l5), 10, DecoratedMode::exact), ArgumentError);
  r = decorated_path_build(negate_beta(l5), 10);
  CHECK_FALSE(r.exact);
  CHECK_FALSE(r.tree);
  CHECK(r.pass());
  CHECK(r.reduced_residuals.size() == 10);

  // The surd bookkeeping agrees with the exact tree when both apply.
  const auto a = decorated_path_build(j, 6, DecoratedMode::exact);
  const auto b = decorated_path_build(j, 6, DecoratedMode::surd);
  CHECK(a.v == b.v);
  CHECK(b.pass());
}

TEST_CASE("positivity_check") {
  const auto h = generate(Shape::homogeneous(2, 3), CoeffRule::constant(1, 4));
  auto v = positivity_check(h, constant_m(h));
  CHECK(v.inequality);
  CHECK(v.certified());
  CHECK(v.negative_eigenvalues == 0);
  CHECK_FALSE(v.equality);

  const auto z = generate(Shape::homogeneous(2, 3), CoeffRule::constant(1, 0));
  v = positivity_check(z, constant_m(z));
  CHECK_FALSE(v.inequality);
  CHECK_FALSE(v.certified());
  CHECK_FALSE(v.negative_eigenvalues);

  // beta = 1 + #children gives equality below the top.
  const auto e = generate(Shape::homogeneous(2, 3), {[](const VertexInfo&) { return Rational(1); },
                                                     [](const VertexInfo& i) { return Rational(i.level > 0 ? 3 : 1); }});
  v = positivity_check(e, constant_m(e));
  CHECK(v.equality);
  CHECK(v.certified());
  for (const auto& b : v.balances) {
    if (b.vertex != e.top()) CHECK(b.alpha == Rational(1));
  }
  CHECK_THROWS_AS(positivity_check(e, constant_m(e, 0)), ArgumentError);
}

TEST_CASE("positivity_construct_m") {
  auto run = [](const TreeTruncation& t) {
    const auto c = positivity_construct_m(t, default_path(t));
    CHECK(c.mode == CertificateMode::equality);
    for (const auto& r : c.equality_residuals) CHECK(r.is_zero());
    for (const auto& [v, val] : c.m) CHECK(val.sign() > 0);
    CHECK(c.m.size() == t.size());
    const auto verdict = positivity_check(t, c.m);
    CHECK(verdict.equality);
    CHECK(verdict.certified());
    return c;
  };
  run(generate(Shape::path(3), CoeffRule::constant(1, 4)));
  run(generate(Shape::homogeneous(2, 4), CoeffRule::constant(1, 4)));

  // The equality star: m = 1 is recovered up to scale.
  const auto e = generate(Shape::homogeneous(2, 1), {[](const VertexInfo&) { return Rational(1); },
                                                     [](const VertexInfo& i) { return Rational(i.level > 0 ? 3 : 1); }});
  const auto c = run(e);
  for (const auto& [v, val] : c.m) CHECK(val == Rational(1));

  std::mt19937_64 rng(31);
  int built = 0;
  while (built < 20) {
    const auto t = random_tree(rng, 12, {.max_den = 3, .lambda_max = 2, .beta_bound = 6}, 2);
    const auto in = tree_inertia(t, t.top(), 0);
    if (in.negative != 0 || in.zero != 0) {
      CHECK_THROWS_AS(positivity_construct_m(t, default_path(t)), ArgumentError);
      continue;
    }
    run(t);
    ++built;
  }
}

TEST_CASE("real parameter without a solution") {
  for (int depth : {2, 3, 4}) {
    const auto r = prop5_build(depth);
    const auto& t = r.tree;
    for (const auto& lv : r.levels) {
      CHECK(lv.interior_dimension == 1);
      CHECK(lv.interior_negative == 0);
    }
    const auto prop = propagate_real(t, t.top(), 0);
    CHECK_FALSE(prop.ok());
    REQUIRE(prop.obstruction);
    CHECK(t.name(*prop.obstruction) == "y0");
    CHECK_FALSE(real_solution_exists(t, t.top(), t.index("x0"), 0));
    // The recurrence at each y_k forces v(x_{k+1}) = 0.
    for (int k = 1; k < depth; ++k) {
      const Vertex y = t.index("y" + std::to_string(k));
      const auto f = family(t, y, false);
      CHECK(f.up(y)(Rational(0)).is_zero());
    }
  }
  // Twin leaves: with beta_{x_0} = 0 a kernel vector survives.
  const auto lit = prop5_build(4, 0);
  const auto prop = propagate_real(lit.tree, lit.tree.top(), 0);
  CHECK(prop.ok());
  CHECK(prop.by_elimination);
  CHECK(prop.field->satisfied());

  // Generic real values: reported, no claim.
  const auto r = prop5_build(3);
  (void)propagate_real(r.tree, r.tree.top(), 1);
  CHECK_THROWS_AS(prop5_build(1), ArgumentError);
}

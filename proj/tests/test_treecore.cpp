#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "treejacobi/errors.hpp"
#include "treejacobi/tree_json.hpp"

using namespace treejacobi;

namespace {

const char* kStar = R"({"vertices":[
  {"id":"x","parent":null,"level":1,"beta":"0/1"},
  {"id":"a","parent":"x","level":0,"lambda":"1/1","beta":"0/1"},
  {"id":"b","parent":"x","level":0,"lambda":"1/1","beta":"0/1"}],
  "top":"x","top_lambda":"1/1"})";

void check_structure(const TreeTruncation& t) {
  for (Vertex v = 0; v < t.size(); ++v) {
    if (auto p = t.parent(v)) {
      const auto& ch = t.children(*p);
      CHECK(std::find(ch.begin(), ch.end(), v) != ch.end());
      CHECK(t.level(*p) == t.level(v) + 1);
    }
    std::size_t sum = 1;
    for (Vertex c : t.children(v)) sum += t.descendants(c).size();
    CHECK(t.descendants(v).size() == sum);
    CHECK(t.lambda(v).sign() > 0);
  }
}

}  // namespace

TEST_CASE("build_from_spec examples") {
  const auto single = build_from_spec_text(
      R"({"vertices":[{"id":"v","parent":null,"level":0,"beta":"0/1"}],"top":"v","top_lambda":"1/1"})");
  CHECK(single.size() == 1);
  CHECK(single.lambda(single.top()) == Rational(1));

  const auto star = build_from_spec_text(kStar);
  CHECK(star.size() == 3);
  CHECK(star.name(star.top()) == "x");
  REQUIRE(star.children(star.top()).size() == 2);
  CHECK(star.name(star.children(star.top())[0]) == "a");
  CHECK(star.name(star.children(star.top())[1]) == "b");

  const auto h = generate(Shape::homogeneous(2, 3), CoeffRule::constant(1, 0));
  CHECK(h.size() == 15);
  for (Vertex v = 0; v < h.size(); ++v) {
    CHECK(h.children(v).size() == (h.level(v) > 0 ? 2u : 0u));
  }
  check_structure(h);
}

TEST_CASE("build_from_spec rejects broken documents") {
  CHECK_THROWS_AS(build_from_spec_text("{"), ParseError);
  CHECK_THROWS_AS(build_from_spec_text(R"({"vertices":3,"top":"x"})"), ParseError);
  CHECK_THROWS_AS(build_from_spec_text(R"({"vertices":[{"id":"x","parent":null,"level":0,"beta":"1/0"}],
                                          "top":"x","top_lambda":"1/1"})"),
                  ParseError);
  // Nonpositive lambda.
  CHECK_THROWS_AS(build_from_spec_text(R"({"vertices":[
      {"id":"x","parent":null,"level":1,"beta":"0/1"},
      {"id":"a","parent":"x","level":0,"lambda":"0/1","beta":"0/1"}],"top":"x","top_lambda":"1/1"})"),
                  ValidationError);
  // Level inconsistency.
  CHECK_THROWS_AS(build_from_spec_text(R"({"vertices":[
      {"id":"x","parent":null,"level":2,"beta":"0/1"},
      {"id":"a","parent":"x","level":0,"lambda":"1/1","beta":"0/1"}],"top":"x","top_lambda":"1/1"})"),
                  ValidationError);
  // Unflagged leaf above level 0.
  CHECK_THROWS_AS(build_from_spec_text(R"({"vertices":[
      {"id":"x","parent":null,"level":2,"beta":"0/1"},
      {"id":"a","parent":"x","level":1,"lambda":"1/1","beta":"0/1"}],"top":"x","top_lambda":"1/1"})"),
                  ValidationError);
  CHECK_NOTHROW(build_from_spec_text(R"({"vertices":[
      {"id":"x","parent":null,"level":2,"beta":"0/1"},
      {"id":"a","parent":"x","level":1,"lambda":"1/1","beta":"0/1","cut":true}],"top":"x","top_lambda":"1/1"})"));
  // Two roots, unknown parent, duplicate id.
  CHECK_THROWS_AS(build_from_spec_text(R"({"vertices":[
      {"id":"x","parent":null,"level":0,"beta":"0/1"},
      {"id":"y","parent":null,"level":0,"lambda":"1/1","beta":"0/1"}],"top":"x","top_lambda":"1/1"})"),
                  ValidationError);
  CHECK_THROWS_AS(build_from_spec_text(R"({"vertices":[
      {"id":"x","parent":null,"level":1,"beta":"0/1"},
      {"id":"a","parent":"q","level":0,"lambda":"1/1","beta":"0/1"}],"top":"x","top_lambda":"1/1"})"),
                  ValidationError);
  CHECK_THROWS_AS(build_from_spec_text(R"({"vertices":[
      {"id":"x","parent":null,"level":1,"beta":"0/1"},
      {"id":"x","parent":"x","level":0,"lambda":"1/1","beta":"0/1"}],"top":"x","top_lambda":"1/1"})"),
                  ValidationError);
  try {
    build_from_spec_text(R"({"vertices":[
      {"id":"x","parent":null,"level":1,"beta":"0/1"},
      {"id":"bad","parent":"x","level":0,"lambda":"-1/2","beta":"0/1"}],"top":"x","top_lambda":"1/1"})");
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("bad") != std::string::npos);
  }
}

TEST_CASE("generate examples") {
  const auto p = generate(Shape::path(3), CoeffRule::constant(1, 0));
  CHECK(p.size() == 4);
  CHECK(default_path(p).size() == 4);

  const auto h = generate(Shape::homogeneous(2, 2), CoeffRule::constant(1, 4));
  CHECK(h.size() == 7);
  for (Vertex v = 0; v < h.size(); ++v) CHECK(h.beta(v) == Rational(4));

  const auto d = generate(Shape::decorated_path(2), CoeffRule::constant(1, 0));
  CHECK(d.size() == 5);
  const Vertex y0 = d.index("y0"), y1 = d.index("y1");
  CHECK(d.parent(y0) == d.index("x1"));
  CHECK(d.parent(y1) == d.index("x2"));
  CHECK(d.is_cut(y1));
  CHECK_FALSE(d.is_cut(y0));

  CoeffRule bad{[](const VertexInfo& i) { return Rational(i.level - 1); },
                [](const VertexInfo&) { return Rational(0); }};
  CHECK_THROWS_AS(generate(Shape::path(2), bad), ArgumentError);

  // Level-dependent rule reaches the path and the side vertices separately.
  CoeffRule lv{[](const VertexInfo& i) { return i.on_path ? Rational(i.level + 1) : Rational(1); },
               [](const VertexInfo&) { return Rational(0); }};
  const auto g = generate(Shape::homogeneous(3, 2), lv);
  CHECK(g.lambda(g.index("x1")) == Rational(2));
  CHECK(g.lambda(g.index("x2.1")) == Rational(1));
  CHECK(g.size() == 13);
}

TEST_CASE("subtree examples") {
  const auto star = build_from_spec_text(kStar);
  CHECK(star.subtree(star.top()) == star);
  const auto a = star.subtree(star.index("a"));
  CHECK(a.size() == 1);
  CHECK(a.lambda(a.top()) == Rational(1));
  CHECK_THROWS_AS(star.index("zz"), UnknownVertex);

  const auto h = generate(Shape::homogeneous(2, 3), CoeffRule::constant(1, 0));
  const auto s = h.subtree(h.index("x2"));
  CHECK(s.size() == 7);
  CHECK(s.name(s.top()) == "x2");
  check_structure(s);
}

TEST_CASE("serialization round-trips") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    const auto t = random_tree(rng, 12);
    check_structure(t);
    const auto text = serialize(t).dump();
    const auto back = build_from_spec_text(text);
    CHECK(back == t);
    CHECK(serialize(back).dump() == text);
  }
  const auto d = generate(Shape::decorated_path(3), CoeffRule::constant(Rational(5, 4), Rational(3, 4)));
  CHECK(build_from_spec(serialize(d)) == d);
}

TEST_CASE("shape enumeration") {
  // Size 4: the chain, the 3-star, and a root over a 2-star.
  const auto shapes = enumerate_shapes(6);
  std::vector<int> by_size(7, 0);
  for (const auto& s : shapes) {
    ++by_size[static_cast<std::size_t>(s.count())];
    const auto t = from_shape(s, CoeffRule::constant(1, 0));
    check_structure(t);
    for (Vertex v = 0; v < t.size(); ++v) {
      if (t.is_leaf(v)) CHECK(t.level(v) == 0);
    }
    CHECK(default_path(t).size() == static_cast<std::size_t>(s.height()) + 1);
  }
  CHECK(by_size[1] == 1);
  CHECK(by_size[2] == 1);
  CHECK(by_size[3] == 2);
  CHECK(by_size[4] == 3);
}

TEST_CASE("paths") {
  const auto h = generate(Shape::homogeneous(2, 3), CoeffRule::constant(1, 0));
  const auto p = parse_path(h, "x0,x1,x2,x3");
  CHECK(p == default_path(h));
  CHECK_THROWS_AS(parse_path(h, "x0,x2"), ArgumentError);
  CHECK_THROWS_AS(parse_path(h, "x1"), ArgumentError);
  const auto q = path_from(h, h.index("x3.1.0.1"));
  CHECK(q.size() == 4);
  CHECK(q.back() == h.top());
}

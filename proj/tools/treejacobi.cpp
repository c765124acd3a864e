// treejacobi: exact computations for Jacobi matrices on one-ended trees.
// Report JSON goes to stdout, a one-line summary to stderr.
// Exit codes: 0 all checks pass, 1 some check failed, 2 usage or input error.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "report.hpp"
#include "treejacobi/classical.hpp"
#include "treejacobi/constructions.hpp"
#include "treejacobi/errors.hpp"
#include "treejacobi/solutions.hpp"
#include "treejacobi/spectra.hpp"
#include "treejacobi/tree_json.hpp"
#include "treejacobi/treepoly.hpp"

using namespace treejacobi;
using namespace treejacobi::cli;

namespace {

// Input problems that should exit with code 2.
struct UsageError : Error {
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

TreeTruncation load_input(Report& rep, const std::string& path) {
  const std::string text = read_file(path);
  rep.add_input(text);
  return build_from_spec_text(text);
}

Vertex vertex_or_top(const TreeTruncation& t, const std::string& id) { return id.empty() ? t.top() : t.index(id); }

PathSelection path_or_default(const TreeTruncation& t, const std::string& ids) {
  return ids.empty() ? default_path(t) : parse_path(t, ids);
}

Json path_names(const TreeTruncation& t, const PathSelection& p) {
  Json out = Json::array();
  for (Vertex v : p) out.push_back(t.name(v));
  return out;
}

std::string summarize_failures(const FamilyReport& r, const TreeTruncation& t) {
  const auto f = r.failures();
  if (f.empty()) return std::to_string(r.entries.size()) + " vertices";
  return t.name(f.front().vertex) + ": " + f.front().detail + (f.size() > 1 ? " (+" + std::to_string(f.size() - 1) + ")" : "");
}

std::vector<int> parse_depths(const std::string& text) {
  std::vector<int> out;
  const auto dots = text.find("..");
  try {
    if (dots != std::string::npos) {
      const int a = std::stoi(text.substr(0, dots));
      const int b = std::stoi(text.substr(dots + 2));
      for (int d = a; d <= b; ++d) out.push_back(d);
    } else {
      std::stringstream ss(text);
      std::string item;
      while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    }
  } catch (const std::logic_error&) {
    throw UsageError("bad depth list '" + text + "'");
  }
  if (out.empty()) throw UsageError("empty depth list '" + text + "'");
  return out;
}

std::map<std::string, std::string> parse_params(const std::vector<std::string>& items) {
  std::map<std::string, std::string> out;
  for (const auto& s : items) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("parameter '" + s + "' is not key=value");
    out[s.substr(0, eq)] = s.substr(eq + 1);
  }
  return out;
}

std::string param(const std::map<std::string, std::string>& p, const std::string& key, const std::string& dflt) {
  const auto it = p.find(key);
  return it == p.end() ? dflt : it->second;
}

unsigned thread_cap() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TREEJACOBI_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(v));
  }
  return n;
}

// Runs independent items on up to thread_cap() workers; results keep their
// positions, so assembly order never depends on scheduling.
template <class T>
std::vector<T> run_items(const std::vector<std::function<T()>>& items) {
  std::vector<T> out(items.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < items.size(); k = next++) out[k] = items[k]();
  };
  const unsigned n = std::min<unsigned>(thread_cap(), static_cast<unsigned>(items.size()));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return out;
}

// ---------------------------------------------------------------------------
// Subcommands

struct Common {
  std::string tree;
  std::string at;
  bool full = false;
  std::uint64_t seed = 7;
};

void cmd_poly(Report& rep, const Common& c, const std::string& target) {
  const auto t = load_input(rep, c.tree);
  const Vertex x = vertex_or_top(t, c.at);
  const auto f = family(t, x, c.full || !target.empty());
  auto& res = rep.results();
  res["at"] = t.name(x);
  if (!target.empty()) {
    const Vertex s = t.index(target);
    res["target"] = target;
    res["poly"] = encode(f.at(x, s));
  }
  Json table = Json::array();
  for (Vertex v : f.vertices()) {
    Json row{{"vertex", t.name(v)}, {"diag", encode(f.diag(v))}, {"up", encode(f.up(v))}};
    if (c.full) {
      Json below = Json::object();
      for (Vertex s : t.descendants(v)) {
        if (s != v) below[t.name(s)] = encode(f.at(v, s));
      }
      row["below"] = std::move(below);
    }
    table.push_back(std::move(row));
  }
  res["table"] = std::move(table);
  const auto inter = check_interlacing(f);
  rep.check("interlacing", inter.pass(), summarize_failures(inter, t));
  const auto div = check_divisibility(f);
  rep.check("divisibility", div.pass(), summarize_failures(div, t));
}

void cmd_spectrum(Report& rep, const Common& c, bool verify) {
  const auto t = load_input(rep, c.tree);
  const Vertex x = vertex_or_top(t, c.at);
  const auto f = family(t, x, verify);
  const auto desc = theorem2_spectrum(f, x);
  const auto id = spectral_identity(f, x);
  auto& res = rep.results();
  res["at"] = t.name(x);
  res["part_a"] = {{"poly", encode(desc.part_a_poly)}, {"roots", encode(desc.part_a)}};
  Json b = Json::array();
  for (const auto& sf : desc.part_b) {
    b.push_back({{"vertex", t.name(sf.vertex)}, {"factor", encode(sf.factor)}, {"roots", encode(sf.roots)}});
  }
  res["part_b"] = std::move(b);
  res["char_poly"] = encode(id.char_poly);
  res["product"] = encode(id.product);
  res["identity"] = id.identity;
  if (verify) {
    rep.check("spectral_identity", id.identity, id.identity ? "" : "char_poly differs from the factor product");
    const auto ws = check_eigen_witnesses(f, x);
    long bad = 0;
    for (const auto& w : ws) bad += w.pass ? 0 : 1;
    rep.check("eigen_witnesses", bad == 0, std::to_string(ws.size()) + " witnesses, " + std::to_string(bad) + " failed");
  }
}

void values_json(Json& out, const SolutionField& f, const PathSelection& path, bool full) {
  const auto& t = f.base;
  Json on_path = Json::array();
  for (Vertex v : path) on_path.push_back(encode(f.at(v)));
  out["on_path"] = std::move(on_path);
  if (f.above) out["above"] = encode(*f.above);
  out["norm2"] = encode(f.norm2());
  out["satisfied"] = f.satisfied();
  if (full) {
    Json all = Json::object();
    for (const auto& [v, val] : f.values) all[t.name(v)] = encode(val);
    out["values"] = std::move(all);
  }
}

void cmd_solve(Report& rep, const Common& c, const std::string& z_text, const std::string& path_ids) {
  const auto t = load_input(rep, c.tree);
  const auto z = GaussianRational::parse(z_text);
  const auto path = path_or_default(t, path_ids);
  const auto pair = solve_pair(t, path, z);
  auto& res = rep.results();
  res["z"] = encode(z);
  res["path"] = path_names(t, path);
  values_json(res["v"], pair.v, path, c.full);
  values_json(res["u"], pair.u, path, c.full);
  rep.check("v_satisfied", pair.v.satisfied());
  rep.check("u_satisfied", pair.u.satisfied());
  rep.check("side_proportionality", check_side_proportionality(pair));
}

void cmd_wronskian(Report& rep, const Common& c, const std::string& z_text, const std::string& path_ids) {
  const auto t = load_input(rep, c.tree);
  const auto z = GaussianRational::parse(z_text);
  const auto path = path_or_default(t, path_ids);
  const auto pair = solve_pair(t, path, z);
  auto& res = rep.results();
  res["z"] = encode(z);
  res["path"] = path_names(t, path);
  Json rows = Json::array();
  long bad = 0;
  for (std::size_t n = 0; n < path.size(); ++n) {
    const auto w = wronskian(pair, n);
    const GaussianRational expect(Rational(1) / t.lambda(path[n]));
    if (w != expect) ++bad;
    rows.push_back({{"n", n}, {"vertex", t.name(path[n])}, {"wronskian", encode(w)}, {"expected", encode(expect)}});
  }
  res["rows"] = std::move(rows);
  rep.check("wronskian_identity", bad == 0, std::to_string(path.size()) + " positions, " + std::to_string(bad) + " mismatches");
}

CoeffRule path_rule(const std::string& name) {
  std::function<Rational(int)> f;
  if (name == "linear") {
    f = [](int n) { return Rational(n + 1); };
  } else if (name == "one") {
    f = [](int) { return Rational(1); };
  } else if (name == "double") {
    f = [](int n) { return pow2(n); };
  } else {
    throw UsageError("unknown path lambda rule '" + name + "'");
  }
  return {[f](const VertexInfo& v) { return v.on_path ? f(v.level) : Rational(1); },
          [](const VertexInfo&) { return Rational(0); }};
}

void cmd_growth(Report& rep, const std::string& generator, const std::string& depths_text, const std::string& z_text,
                const std::string& lambda_rule) {
  const auto depths = parse_depths(depths_text);
  const auto z = GaussianRational::parse(z_text);
  TreeGenerator gen;
  GaussianRational seed = 1;
  const bool is_t3 = generator == "theorem3";
  if (generator.rfind("homogeneous:", 0) == 0) {
    int d = 0;
    try {
      d = std::stoi(generator.substr(12));
    } catch (const std::logic_error&) {
      throw UsageError("bad generator '" + generator + "'");
    }
    if (d < 1) throw UsageError("bad generator '" + generator + "'");
    const auto rule = path_rule(lambda_rule);
    gen = [d, rule](int depth) { return generate(Shape::homogeneous(d, depth), rule); };
  } else if (generator == "path") {
    const auto rule = path_rule(lambda_rule);
    gen = [rule](int depth) { return generate(Shape::path(depth), rule); };
  } else if (generator == "decorated") {
    const auto rule = path_rule(lambda_rule);
    gen = [rule](int depth) { return generate(Shape::decorated_path(depth), rule); };
  } else if (is_t3) {
    gen = [](int depth) { return theorem3_build(depth).tree; };
    seed = GaussianRational(Rational(1, 2));
  } else {
    throw UsageError("unknown generator '" + generator + "'");
  }
  if (is_t3 && depths.front() < 1) throw UsageError("theorem3 depths start at 1");
  const auto prof = norm_growth_profile(gen, z, depths, seed);
  auto& res = rep.results();
  res["generator"] = generator;
  res["z"] = encode(z);
  res["seed_value"] = encode(seed);
  if (!is_t3) res["path_lambda"] = lambda_rule;
  Json rows = Json::array();
  for (const auto& r : prof.rows) {
    rows.push_back({{"depth", r.depth}, {"norm2", encode(r.norm2)}, {"carleman", encode(r.carleman)}});
  }
  res["rows"] = std::move(rows);
  res["norm_increasing"] = prof.norm_increasing;
  res["carleman_increasing"] = prof.carleman_increasing;
  if (prof.norm_max) res["norm_max"] = encode(*prof.norm_max);
  // The profile itself is an indicator; only the construction carries a bound.
  if (is_t3) rep.check("norm_bounded_by_1", *prof.norm_max <= Rational(1), prof.norm_max->str());
}

ClassicalJacobi classical_rule(const std::string& rule, const Rational& q, const Rational& a, const Rational& lambda,
                               const Rational& beta, long cap) {
  if (rule == "lemma5") return lemma5_family(q, a, cap);
  if (rule == "constant") return ClassicalJacobi::constant(lambda, beta, cap);
  if (rule == "decaying") return remark2_j1(PathRule::decaying, cap);
  if (rule == "growing") return remark2_j1(PathRule::growing, cap);
  throw UsageError("unknown rule '" + rule + "'");
}

struct ClassicalArgs {
  std::string rule = "lemma5";
  std::string q = "2", a = "1", lambda = "1", beta = "0", x0 = "0";
  long depth = 20;
  std::string report = "pq0";
};

void cmd_classical(Report& rep, const ClassicalArgs& ca, std::uint64_t seed) {
  if (ca.depth < 1) throw UsageError("--depth must be positive");
  const auto j = classical_rule(ca.rule, Rational::parse(ca.q), Rational::parse(ca.a), Rational::parse(ca.lambda),
                                Rational::parse(ca.beta), ca.depth + 2);
  const long n = ca.depth;
  const Rational x0 = Rational::parse(ca.x0);
  auto& res = rep.results();
  res["rule"] = ca.rule;
  res["depth"] = n;
  res["report"] = ca.report;
  Json coeffs = Json::array();
  for (long k = 0; k <= n; ++k) coeffs.push_back({{"lambda", encode(j.lambda(k))}, {"beta", encode(j.beta(k))}});
  res["coefficients"] = std::move(coeffs);

  auto all_zero = [](const std::vector<Rational>& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& r) { return r.is_zero(); });
  };
  auto list = [](const std::vector<Rational>& v) {
    Json out = Json::array();
    for (const auto& r : v) out.push_back(encode(r));
    return out;
  };

  if (ca.report == "pq0") {
    const auto pq = pq_values(j, x0, n);
    res["x0"] = encode(x0);
    res["p"] = list(pq.p);
    res["q"] = list(pq.q);
  } else if (ca.report == "polys") {
    Json ps = Json::array();
    for (const auto& p : p_polys(j, n)) ps.push_back(encode(p));
    res["polys"] = std::move(ps);
  } else if (ca.report == "sums") {
    res["x0"] = encode(x0);
    res["partial_sums"] = list(pq_partial_sums(j, x0, n));
  } else if (ca.report == "kernel") {
    if (ca.rule != "lemma5") throw UsageError("--report kernel needs --rule lemma5");
    const auto r = lemma5_kernel_residuals(j, n);
    res["residuals"] = list(r);
    rep.check("kernel_residuals_zero", all_zero(r));
  } else if (ca.report == "even") {
    if (ca.rule != "lemma5") throw UsageError("--report even needs --rule lemma5");
    std::mt19937_64 rng(seed);
    Json seeds = Json::array();
    long bad = 0;
    for (int k = 0; k < 10; ++k) {
      const auto a0 = random_rational(rng, -9, 9, 9);
      const auto a1 = random_rational(rng, -9, 9, 9);
      const auto r = lemma5_even_residuals(j, a0, a1, n);
      if (!all_zero(r)) ++bad;
      seeds.push_back({{"x0", encode(a0)}, {"x1", encode(a1)}, {"all_zero", all_zero(r)}});
    }
    res["seeds"] = std::move(seeds);
    rep.check("even_residuals_zero", bad == 0, std::to_string(bad) + " of 10 seeds with a nonzero residual");
  } else if (ca.report == "ratio") {
    const auto pr = product_ratio_check(j, n);
    res["ratio_sum"] = encode(pr.ratio_sum);
    res["pq_sum"] = encode(pr.pq_sum);
    rep.check("product_ratio", pr.holds);
  } else if (ca.report == "signs") {
    const auto m = positivity_sign_vector(j, n + 1);
    res["m"] = list(m);
    rep.check("sign_vector_positive",
              std::all_of(m.begin(), m.end(), [](const Rational& r) { return r.sign() > 0; }));
  } else {
    throw UsageError("unknown report '" + ca.report + "'");
  }
}

void write_spec(const std::string& out, const TreeTruncation& t) {
  if (out.empty()) return;
  std::ofstream f(out, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + out + "'");
  f << serialize(t).dump(2) << '\n';
}

Json rational_list(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& r : v) out.push_back(encode(r));
  return out;
}

void construct_theorem3(Report& rep, int depth, bool full, const std::string& out) {
  const auto r = theorem3_build(depth);
  auto& res = rep.results();
  res["vertices"] = r.tree.size();
  res["ledger"] = rational_list(r.ledger);
  res["path_lambda"] = rational_list(r.path_lambda);
  res["side_lambda"] = rational_list(r.side_lambda);
  res["norm2"] = encode(r.v.norm2());
  if (full) {
    Json vals = Json::object();
    for (const auto& [v, val] : r.v.values) vals[r.tree.name(v)] = encode(val);
    res["values"] = std::move(vals);
  }
  rep.check("eigen_equation", r.v.satisfied());
  long bad = 0;
  for (int n = 1; n <= depth; ++n) {
    if (r.ledger[static_cast<std::size_t>(n)] > Rational(1) - pow2(-n)) ++bad;
  }
  rep.check("norm_ledger", bad == 0, "n = 1.." + std::to_string(depth) + ", " + std::to_string(bad) + " violations");
  write_spec(out, r.tree);
}

void construct_remark2(Report& rep, int depth, const std::map<std::string, std::string>& p, const std::string& out) {
  const int d = std::stoi(param(p, "d", "4"));
  const std::string rule_name = param(p, "rule", "decaying");
  if (rule_name != "decaying" && rule_name != "growing") throw UsageError("rule must be decaying or growing");
  const PathRule rule = rule_name == "decaying" ? PathRule::decaying : PathRule::growing;
  const auto t = remark2_build(d, depth, rule);
  const auto sb = spectral_bound(remark2_j0(d, depth), 2);
  const auto sums = pq_partial_sums(remark2_j1(rule, 40), 0, 30);
  const Rational inc = sums[30] - sums[20];
  auto& res = rep.results();
  res["d"] = d;
  res["rule"] = rule_name;
  res["vertices"] = t.size();
  res["j0_outside_2"] = {{"by_inertia", sb.by_inertia}, {"by_factors", sb.by_factors}};
  if (sb.by_char_poly) res["j0_outside_2"]["by_char_poly"] = *sb.by_char_poly;
  res["j1_partial_sums"] = {{"S10", encode(sums[10])}, {"S20", encode(sums[20])}, {"S30", encode(sums[30])}};
  rep.check("j0_norm_at_most_2", sb.consistent() && sb.by_factors == 0);
  rep.check("j1_partial_sums_settle", inc < Rational(1, 1000000), "S30 - S20 = " + inc.str());
  write_spec(out, t);
}

void construct_decorated(Report& rep, int depth, const std::map<std::string, std::string>& p, const std::string& out) {
  const std::string family_name = param(p, "family", "constant");
  const long cap = depth + 2;
  ClassicalJacobi j;
  if (family_name == "constant") {
    j = ClassicalJacobi::constant(Rational::parse(param(p, "lambda", "1")), Rational::parse(param(p, "beta", "3/4")), cap);
  } else if (family_name == "lemma5") {
    j = negate_beta(lemma5_family(Rational::parse(param(p, "q", "2")), Rational::parse(param(p, "a", "1")), cap));
  } else {
    throw UsageError("family must be constant or lemma5");
  }
  const std::string mode_name = param(p, "mode", "automatic");
  DecoratedMode mode = DecoratedMode::automatic;
  if (mode_name == "exact") {
    mode = DecoratedMode::exact;
  } else if (mode_name == "surd") {
    mode = DecoratedMode::surd;
  } else if (mode_name != "automatic") {
    throw UsageError("mode must be automatic, exact or surd");
  }
  const auto r = decorated_path_build(j, depth, mode);
  auto& res = rep.results();
  res["family"] = family_name;
  res["exact"] = r.exact;
  res["mu2"] = rational_list(r.mu2);
  Json v = Json::array(), w = Json::array(), red = Json::array(), eig = Json::array();
  for (const auto& x : r.v) v.push_back(encode(x));
  for (const auto& x : r.w) w.push_back(encode(x));
  for (const auto& x : r.reduced_residuals) red.push_back(encode(x));
  for (const auto& x : r.eigen_residuals) eig.push_back(encode(x));
  res["v"] = std::move(v);
  res["w"] = std::move(w);
  res["reduced_residuals"] = std::move(red);
  res["eigen_residuals"] = std::move(eig);
  res["pendant_identity"] = r.pendant_identity;
  rep.check("decorated_identities", r.pass());
  if (r.tree) {
    write_spec(out, *r.tree);
  } else {
    res["tree_written"] = false;
  }
}

void construct_prop5(Report& rep, int depth, const std::map<std::string, std::string>& p, const std::string& out) {
  const auto r = prop5_build(depth, Rational::parse(param(p, "beta_x0", "1")));
  const Rational z = Rational::parse(param(p, "r", "0"));
  const auto& t = r.tree;
  auto& res = rep.results();
  res["vertices"] = t.size();
  Json levels = Json::array();
  for (const auto& lv : r.levels) {
    levels.push_back({{"k", lv.k},
                      {"v_y", encode(lv.v_y)},
                      {"beta_y", encode(lv.beta_y)},
                      {"interior_dimension", lv.interior_dimension},
                      {"interior_negative", lv.interior_negative}});
  }
  res["levels"] = std::move(levels);
  const auto prop = propagate_real(t, t.top(), z);
  const bool exists = real_solution_exists(t, t.top(), t.index("x0"), z);
  res["r"] = encode(z);
  res["obstruction"] = prop.obstruction ? Json(t.name(*prop.obstruction)) : Json(nullptr);
  res["by_elimination"] = prop.by_elimination;
  res["solution_exists"] = exists;
  rep.check("propagation_agrees_with_elimination", prop.ok() == exists);
  if (z.is_zero()) rep.check("no_solution_at_0", !exists);
  write_spec(out, t);
}

void cmd_construct(Report& rep, const std::string& example, int depth, const std::vector<std::string>& params,
                   bool full, const std::string& out) {
  const auto p = parse_params(params);
  rep.results()["example"] = example;
  rep.results()["depth"] = depth;
  try {
    if (example == "theorem3") {
      construct_theorem3(rep, depth, full, out);
    } else if (example == "remark2") {
      construct_remark2(rep, depth, p, out);
    } else if (example == "decorated") {
      construct_decorated(rep, depth, p, out);
    } else if (example == "prop5") {
      construct_prop5(rep, depth, p, out);
    } else {
      throw UsageError("unknown example '" + example + "'");
    }
  } catch (const std::logic_error& e) {  // std::stoi on a parameter
    throw UsageError(std::string("bad parameter: ") + e.what());
  }
}

// verify-all: every item returns its own results and checks.
struct Item {
  std::string key;
  Json result = Json::object();
  std::vector<Check> checks;
};

void cmd_verify_all(Report& rep, const Common& c, const std::string& z_text) {
  const auto t = load_input(rep, c.tree);
  const auto z = GaussianRational::parse(z_text);
  const Vertex x = vertex_or_top(t, c.at);
  const auto sub = t.subtree(x);
  const auto path = default_path(sub);

  // All randomness is drawn here, before any work is dispatched.
  std::mt19937_64 rng(c.seed);
  std::vector<Rational> alphas, reals;
  for (int k = 0; k < 5; ++k) alphas.push_back(random_rational(rng, -4, 4, 5));
  for (int k = 0; k < 5; ++k) reals.push_back(random_rational(rng, -4, 4, 5));
  const bool zero_beta = [&] {
    for (Vertex v = 0; v < sub.size(); ++v) {
      if (!sub.beta(v).is_zero()) return false;
    }
    return true;
  }();

  std::vector<std::function<Item()>> items;
  items.push_back([&] {
    Item it{"family"};
    const auto f = family(sub, sub.top(), false);
    const auto inter = check_interlacing(f);
    const auto div = check_divisibility(f);
    it.checks.push_back({"interlacing", inter.pass(), summarize_failures(inter, sub)});
    it.checks.push_back({"divisibility", div.pass(), summarize_failures(div, sub)});
    return it;
  });
  items.push_back([&] {
    Item it{"telescoping"};
    const auto f = family(sub, sub.top(), true);
    const auto tel = check_telescoping(f);
    it.checks.push_back({"telescoping", tel.pass(), summarize_failures(tel, sub)});
    return it;
  });
  items.push_back([&] {
    Item it{"spectrum"};
    const auto f = family(sub, sub.top(), true);
    const auto id = spectral_identity(f, sub.top());
    it.result["char_poly"] = encode(id.char_poly);
    it.checks.push_back({"spectral_identity", id.identity, ""});
    const auto ws = check_eigen_witnesses(f, sub.top());
    long bad = 0;
    for (const auto& w : ws) bad += w.pass ? 0 : 1;
    it.checks.push_back({"eigen_witnesses", bad == 0, std::to_string(ws.size()) + " witnesses"});
    long inertia_bad = 0;
    Json counts = Json::array();
    for (const auto& a : alphas) {
      const long below = count_real_roots(id.char_poly, std::nullopt, a);
      const auto in = tree_inertia(sub, sub.top(), a);
      if (in.negative != below) ++inertia_bad;
      counts.push_back({{"alpha", encode(a)}, {"below", below}});
    }
    it.result["eigenvalues_below"] = std::move(counts);
    it.checks.push_back({"inertia_vs_sturm", inertia_bad == 0, std::to_string(alphas.size()) + " shifts"});
    return it;
  });
  items.push_back([&] {
    Item it{"solutions"};
    it.result["path"] = path_names(sub, path);
    if (z.is_real()) {
      it.checks.push_back({"wronskian_identity", true, "z is real", true});
      return it;
    }
    const auto pair = solve_pair(sub, path, z);
    long bad = 0;
    for (std::size_t n = 0; n < path.size(); ++n) {
      if (wronskian(pair, n) != GaussianRational(Rational(1) / sub.lambda(path[n]))) ++bad;
    }
    it.checks.push_back({"wronskian_identity", bad == 0, std::to_string(path.size()) + " positions"});
    it.checks.push_back({"side_proportionality", check_side_proportionality(pair), ""});
    const long dim = uniqueness_dimension(sub, sub.top(), z);
    it.result["uniqueness_dimension"] = dim;
    it.checks.push_back({"uniqueness_dimension_1", dim == 1, "dimension " + std::to_string(dim)});
    return it;
  });
  items.push_back([&] {
    Item it{"real_propagation"};
    Json rows = Json::array();
    long bad = 0;
    for (const auto& r : reals) {
      const auto prop = propagate_real(sub, sub.top(), r, path);
      const bool exists = real_solution_exists(sub, sub.top(), path.front(), r);
      if (prop.ok() != exists) ++bad;
      rows.push_back({{"r", encode(r)},
                      {"solution", prop.ok()},
                      {"obstruction", prop.obstruction ? Json(sub.name(*prop.obstruction)) : Json(nullptr)}});
    }
    it.result["rows"] = std::move(rows);
    it.checks.push_back({"propagation_vs_elimination", bad == 0, std::to_string(reals.size()) + " values"});
    return it;
  });
  items.push_back([&] {
    Item it{"positivity"};
    if (zero_beta) {
      const auto l4 = lemma4_positivity(sub, path);
      it.checks.push_back({"sign_structure", l4.pass(), l4.failures.empty() ? "" : l4.failures.front()});
    } else {
      it.checks.push_back({"sign_structure", true, "beta is not identically 0", true});
    }
    const auto in = tree_inertia(sub, sub.top(), 0);
    it.result["inertia_at_0"] = {{"negative", in.negative}, {"zero", in.zero}, {"positive", in.positive}};
    if (in.negative == 0 && in.zero == 0) {
      const auto cert = positivity_construct_m(sub, path);
      const auto verdict = positivity_check(sub, cert.m);
      if (c.full) {
        Json m = Json::object();
        for (const auto& [v, val] : cert.m) m[sub.name(v)] = encode(val);
        it.result["certificate"] = std::move(m);
      }
      it.checks.push_back({"positivity_certificate", verdict.certified(), ""});
    } else {
      it.checks.push_back({"positivity_certificate", true, "J is not positive definite", true});
    }
    return it;
  });

  const auto done = run_items<Item>(items);
  auto& res = rep.results();
  res["at"] = t.name(x);
  res["vertices"] = sub.size();
  res["z"] = encode(z);
  res["seed"] = c.seed;
  for (const auto& it : done) {
    res[it.key] = it.result;
    rep.append(it.checks);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations for Jacobi matrices on one-ended trees"};
  app.require_subcommand(1);

  Common c;
  std::string target, z_text = "0/1+1/1i", path_ids, generator = "homogeneous:2", depths = "3..15", lambda_rule = "linear";
  std::string example, out;
  std::vector<std::string> params;
  int depth = 4;
  bool verify = false;
  ClassicalArgs ca;

  auto tree_opts = [&](CLI::App* s) {
    s->add_option("--tree", c.tree, "tree description JSON")->required();
    s->add_option("--at", c.at, "root of the subtree (default: top)");
    s->add_flag("--full", c.full, "include complete tables");
  };
  auto* poly = app.add_subcommand("poly", "P-family table");
  tree_opts(poly);
  poly->add_option("--target", target, "single entry P_{at,target}");
  auto* spectrum = app.add_subcommand("spectrum", "spectral factorization and characteristic polynomial");
  tree_opts(spectrum);
  spectrum->add_flag("--verify", verify, "check the identity and eigenvector witnesses");
  auto* solve = app.add_subcommand("solve", "solution pair v, u");
  auto* wr = app.add_subcommand("wronskian", "Wronskian along a path");
  for (auto* s : {solve, wr}) {
    s->add_option("--tree", c.tree, "tree description JSON")->required();
    s->add_option("--z", z_text, "Gaussian rational a/b+c/di");
    s->add_option("--path", path_ids, "x0,x1,... (default: first-child chain)");
    s->add_flag("--full", c.full, "include values at every vertex");
  }
  auto* growth = app.add_subcommand("growth", "norm growth profile");
  growth->add_option("--generator", generator, "homogeneous:d, path, decorated or theorem3");
  growth->add_option("--depths", depths, "a..b or a,b,c");
  growth->add_option("--z", z_text, "Gaussian rational a/b+c/di");
  growth->add_option("--path-lambda", lambda_rule, "linear (n+1), one or double (2^n)");
  auto* classical = app.add_subcommand("classical", "classical Jacobi matrices");
  classical->add_option("--rule", ca.rule, "lemma5, constant, decaying or growing");
  classical->add_option("--q", ca.q);
  classical->add_option("--a", ca.a);
  classical->add_option("--lambda", ca.lambda);
  classical->add_option("--beta", ca.beta);
  classical->add_option("--x0", ca.x0, "evaluation point");
  classical->add_option("--depth", ca.depth);
  classical->add_option("--report", ca.report, "pq0, polys, sums, kernel, even, ratio or signs");
  classical->add_option("--seed", c.seed, "seed for randomized checks");
  auto* construct = app.add_subcommand("construct", "explicit constructions");
  construct->add_option("--example", example, "theorem3, remark2, decorated or prop5")->required();
  construct->add_option("--depth", depth);
  construct->add_option("--params", params, "key=value ...");
  construct->add_option("--out", out, "write the tree description here");
  construct->add_flag("--full", c.full, "include all solution values");
  auto* verify_all = app.add_subcommand("verify-all", "full property suite on one tree");
  tree_opts(verify_all);
  verify_all->add_option("--seed", c.seed, "seed for randomized checks");
  verify_all->add_option("--z", z_text, "Gaussian rational a/b+c/di");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "treejacobi: " << e.what() << "\n" << app.help();
    return 2;
  }

  auto* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  std::vector<std::string> args(argv + 1, argv + argc);
  Report rep(name, args);
  try {
    if (sub == poly) {
      cmd_poly(rep, c, target);
    } else if (sub == spectrum) {
      cmd_spectrum(rep, c, verify);
    } else if (sub == solve) {
      cmd_solve(rep, c, z_text, path_ids);
    } else if (sub == wr) {
      cmd_wronskian(rep, c, z_text, path_ids);
    } else if (sub == growth) {
      cmd_growth(rep, generator, depths, z_text, lambda_rule);
    } else if (sub == classical) {
      cmd_classical(rep, ca, c.seed);
    } else if (sub == construct) {
      if (depth < 1) throw UsageError("--depth must be positive");
      cmd_construct(rep, example, depth, params, c.full, out);
    } else {
      cmd_verify_all(rep, c, z_text);
    }
  } catch (const UsageError& e) {
    std::cerr << "treejacobi " << name << ": " << e.what() << "\n" << sub->help();
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "treejacobi " << name << ": " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "treejacobi " << name << ": " << e.what() << "\n";
    return 2;
  } catch (const UnknownVertex& e) {
    std::cerr << "treejacobi " << name << ": " << e.what() << "\n";
    return 2;
  } catch (const ArgumentError& e) {
    std::cerr << "treejacobi " << name << ": " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    // A computation refused (singular solve, rejected sign vector): a check failure.
    rep.check("computation", false, e.what());
  }

  std::cout << rep.to_json().dump(2) << '\n';
  std::cerr << "treejacobi " << name << ": " << rep.checks().size() << " checks, " << rep.failed() << " failed\n";
  for (const auto& ch : rep.checks()) {
    if (!ch.pass) std::cerr << "  FAIL " << ch.name << (ch.detail.empty() ? "" : ": " + ch.detail) << "\n";
  }
  return rep.failed() == 0 ? 0 : 1;
}

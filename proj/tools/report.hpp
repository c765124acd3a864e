#pragma once

// Report assembly for the command-line front end. Every mathematical value is
// written as an exact "p/q" or "a/b+c/di" string; counts stay integers.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "treejacobi/poly.hpp"
#include "treejacobi/roots.hpp"
#include "treejacobi/tree.hpp"

namespace treejacobi::cli {

using Json = nlohmann::ordered_json;

// FNV-1a, 64 bit.
class Digest {
 public:
  void add(std::string_view bytes) {
    for (unsigned char c : bytes) {
      h_ ^= c;
      h_ *= 0x100000001b3ULL;
    }
    // Field separator so ("ab","c") and ("a","bc") differ.
    h_ ^= 0xff;
    h_ *= 0x100000001b3ULL;
  }
  std::string hex() const {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 0; i < 16; ++i) s[15 - i] = digits[(h_ >> (4 * i)) & 0xf];
    return "fnv1a64:" + s;
  }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

inline Json encode(const Rational& r) { return r.str(); }
inline Json encode(const GaussianRational& g) { return g.str(); }

inline Json encode(const Poly& p) {
  Json coeffs = Json::array();
  for (const auto& c : p.coeffs()) coeffs.push_back(c.str());
  return coeffs;
}

inline Json encode(const RootSet& rs) {
  Json out = Json::array();
  for (const auto& r : rs.roots) {
    out.push_back({{"lo", r.lo.str()}, {"hi", r.hi.str()}, {"multiplicity", r.multiplicity}});
  }
  return out;
}

struct Check {
  std::string name;
  bool pass = true;
  std::string detail;
  bool skipped = false;
};

class Report {
 public:
  Report(std::string command, std::vector<std::string> argv) : command_(std::move(command)), argv_(std::move(argv)) {
    for (const auto& a : argv_) digest_.add(a);
  }

  void add_input(std::string_view bytes) { digest_.add(bytes); }
  Json& results() { return results_; }
  void check(const std::string& name, bool pass, std::string detail = {}) {
    checks_.push_back({name, pass, std::move(detail), false});
  }
  void skip(const std::string& name, std::string reason) { checks_.push_back({name, true, std::move(reason), true}); }
  void append(const std::vector<Check>& cs) { checks_.insert(checks_.end(), cs.begin(), cs.end()); }

  long failed() const {
    long n = 0;
    for (const auto& c : checks_) n += c.pass ? 0 : 1;
    return n;
  }
  const std::vector<Check>& checks() const { return checks_; }

  Json to_json() const {
    Json cs = Json::array();
    for (const auto& c : checks_) {
      Json j{{"name", c.name}, {"pass", c.pass}};
      if (c.skipped) j["skipped"] = true;
      if (!c.detail.empty()) j["detail"] = c.detail;
      cs.push_back(std::move(j));
    }
    const long f = failed();
    return Json{{"tool", "treejacobi"},
                {"command", command_},
                {"argv", argv_},
                {"inputs_digest", digest_.hex()},
                {"results", results_.is_null() ? Json::object() : results_},
                {"checks", std::move(cs)},
                {"summary",
                 {{"checks", static_cast<long>(checks_.size())},
                  {"failed", f},
                  {"status", f == 0 ? "pass" : "fail"}}}};
  }

 private:
  std::string command_;
  std::vector<std::string> argv_;
  Digest digest_;
  Json results_ = Json::object();
  std::vector<Check> checks_;
};

}  // namespace treejacobi::cli

#include "treejacobi/tree_json.hpp"

#include <fstream>
#include <sstream>

#include "treejacobi/errors.hpp"

namespace treejacobi {

namespace {

Rational rational_field(const Json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing \"" + key + "\"");
  if (it->is_string()) return Rational::parse(it->get<std::string>());
  if (it->is_number_integer()) return Rational(it->get<long>());
  throw ParseError(where + ": \"" + key + "\" must be a \"p/q\" string");
}

std::string string_field(const Json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) throw ParseError(where + ": \"" + key + "\" must be a string");
  return it->get<std::string>();
}

}  // namespace

TreeTruncation build_from_spec(const Json& doc) {
  if (!doc.is_object()) throw ParseError("tree document must be a JSON object");
  const auto verts = doc.find("vertices");
  if (verts == doc.end() || !verts->is_array()) throw ParseError("\"vertices\" must be an array");
  const std::string top = string_field(doc, "top", "document");

  std::vector<VertexSpec> specs;
  std::optional<Rational> top_lambda_inline;
  for (const auto& v : *verts) {
    if (!v.is_object()) throw ParseError("vertex entries must be objects");
    VertexSpec s;
    s.id = string_field(v, "id", "vertex");
    const std::string where = "vertex '" + s.id + "'";
    const auto p = v.find("parent");
    if (p != v.end() && !p->is_null()) {
      if (!p->is_string()) throw ParseError(where + ": \"parent\" must be a string or null");
      s.parent = p->get<std::string>();
    }
    const auto lvl = v.find("level");
    if (lvl == v.end() || !lvl->is_number_integer()) throw ParseError(where + ": \"level\" must be an integer");
    s.level = lvl->get<int>();
    s.beta = rational_field(v, "beta", where);
    if (v.contains("lambda")) {
      s.lambda = rational_field(v, "lambda", where);
      if (s.id == top) top_lambda_inline = s.lambda;
    } else if (s.id != top) {
      throw ParseError(where + ": missing \"lambda\"");
    }
    if (const auto c = v.find("cut"); c != v.end()) {
      if (!c->is_boolean()) throw ParseError(where + ": \"cut\" must be a boolean");
      s.cut = c->get<bool>();
    }
    specs.push_back(std::move(s));
  }

  Rational top_lambda;
  if (doc.contains("top_lambda")) {
    top_lambda = rational_field(doc, "top_lambda", "document");
    if (top_lambda_inline && *top_lambda_inline != top_lambda) {
      throw ValidationError("top vertex '" + top + "' has two different lambda values");
    }
  } else if (top_lambda_inline) {
    top_lambda = *top_lambda_inline;
  } else {
    throw ParseError("document: missing \"top_lambda\"");
  }
  return TreeTruncation::build(specs, top, top_lambda);
}

TreeTruncation build_from_spec_text(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return build_from_spec(doc);
}

TreeTruncation load_tree(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return build_from_spec_text(ss.str());
}

Json serialize(const TreeTruncation& t) {
  Json verts = Json::array();
  for (Vertex v = 0; v < t.size(); ++v) {
    Json e;
    e["id"] = t.name(v);
    if (const auto p = t.parent(v)) {
      e["parent"] = t.name(*p);
    } else {
      e["parent"] = nullptr;
    }
    e["level"] = t.level(v);
    if (v != t.top()) e["lambda"] = t.lambda(v).str();
    e["beta"] = t.beta(v).str();
    if (t.is_cut(v)) e["cut"] = true;
    verts.push_back(std::move(e));
  }
  Json doc;
  doc["vertices"] = std::move(verts);
  doc["top"] = t.name(t.top());
  doc["top_lambda"] = t.lambda(t.top()).str();
  return doc;
}

}  // namespace treejacobi

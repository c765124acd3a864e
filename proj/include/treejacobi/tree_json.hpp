#pragma once

// Tree description documents:
//   {"vertices":[{"id":"x","parent":null,"level":1,"beta":"0/1"},
//                {"id":"a","parent":"x","level":0,"lambda":"1/1","beta":"0/1"}, ...],
//    "top":"x","top_lambda":"1/1"}
// The top's lambda lives in "top_lambda". "cut": true marks a vertex whose
// children were truncated away.

#include <string>
#include <string_view>

#include "json.hpp"
#include "treejacobi/tree.hpp"

namespace treejacobi {

using Json = nlohmann::ordered_json;

/// ParseError on a malformed document, ValidationError on a broken tree.
TreeTruncation build_from_spec(const Json& doc);
TreeTruncation build_from_spec_text(std::string_view text);
TreeTruncation load_tree(const std::string& path);

Json serialize(const TreeTruncation& t);

}  // namespace treejacobi

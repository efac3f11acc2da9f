//
// sfiles2 - Copyright 2026 The sfiles2 Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sfiles/graph_json.h"

#include <algorithm>
#include <initializer_list>

#include <json.hpp>

namespace sfiles {
namespace {
using nlohmann::json;

std::string line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

void check_keys(const json &object, const std::string &where,
                std::initializer_list<std::string_view> allowed,
                const JsonLoadOptions &options,
                std::vector<std::string> *warnings) {
  for (const auto &[key, _]: object.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) != allowed.end())
      continue;
    if (options.strict)
      throw SchemaError(where + "/" + key, "unknown key");
    if (warnings != nullptr)
      warnings->push_back(where + "/" + key + ": unknown key ignored");
  }
}

const json &require(const json &object, const std::string &where,
                    const char *key) {
  auto it = object.find(key);
  if (it == object.end())
    throw SchemaError(where, std::string("missing key '") + key + "'");
  return *it;
}

std::string require_string(const json &value, const std::string &where) {
  if (!value.is_string())
    throw SchemaError(where, "expected a string");
  return value.get<std::string>();
}

std::optional<std::string> optional_string(const json &object,
                                           const std::string &where,
                                           const char *key) {
  auto it = object.find(key);
  if (it == object.end() || it->is_null())
    return std::nullopt;
  return require_string(*it, where + "/" + key);
}

NodeRef parse_ref(const std::string &name, const std::string &where) {
  try {
    return NodeRef::parse(name);
  } catch (const GraphError &e) {
    throw SchemaError(where, e.what());
  }
}
}  // namespace

FlowsheetGraph load_json(std::string_view text, const JsonLoadOptions &options,
                         std::vector<std::string> *warnings) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error &e) {
    const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    throw SchemaError(line_col(text, byte), "malformed JSON");
  }

  if (!doc.is_object())
    throw SchemaError("/", "document must be an object");
  check_keys(doc, "", { "nodes", "edges" }, options, warnings);

  const json &nodes = require(doc, "/", "nodes");
  const json &edges = require(doc, "/", "edges");
  if (!nodes.is_array())
    throw SchemaError("/nodes", "expected an array");
  if (!edges.is_array())
    throw SchemaError("/edges", "expected an array");

  FlowsheetGraph graph;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string where = "/nodes/" + std::to_string(i);
    const json &node = nodes[i];
    if (!node.is_object())
      throw SchemaError(where, "expected an object");
    check_keys(node, where, { "name", "ctrl" }, options, warnings);

    const NodeRef ref = parse_ref(
        require_string(require(node, where, "name"), where + "/name"),
        where + "/name");
    NodeAttr attr;
    attr.ctrl_code = optional_string(node, where, "ctrl");
    graph.add_node(ref, std::move(attr));
  }

  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string where = "/edges/" + std::to_string(i);
    const json &edge = edges[i];
    if (!edge.is_object())
      throw SchemaError(where, "expected an object");
    check_keys(edge, where, { "src", "dst", "kind", "tag" }, options,
               warnings);

    const NodeRef src = parse_ref(
        require_string(require(edge, where, "src"), where + "/src"),
        where + "/src");
    const NodeRef dst = parse_ref(
        require_string(require(edge, where, "dst"), where + "/dst"),
        where + "/dst");

    EdgeAttr attr;
    const std::string kind =
        require_string(require(edge, where, "kind"), where + "/kind");
    if (auto k = edge_kind_from(kind)) {
      attr.kind = *k;
    } else {
      throw SchemaError(where + "/kind", "unknown edge kind '" + kind + "'");
    }
    if (auto tag = optional_string(edge, where, "tag")) {
      attr.tag = stream_tag_from(*tag);
      if (!attr.tag)
        throw SchemaError(where + "/tag", "unknown stream tag '" + *tag + "'");
    }
    graph.add_edge(src, dst, attr);
  }
  return graph;
}

std::string save_json(const FlowsheetGraph &graph) {
  std::vector<std::pair<std::string, const NodeAttr *>> nodes;
  for (const auto &[ref, attr]: graph.nodes())
    nodes.emplace_back(ref.name(), &attr);
  std::sort(nodes.begin(), nodes.end(),
            [](const auto &a, const auto &b) { return a.first < b.first; });

  std::vector<Edge> edges = graph.edges();
  std::sort(edges.begin(), edges.end(), canonical_edge_less);

  json doc = json::object();
  doc["nodes"] = json::array();
  for (const auto &[name, attr]: nodes) {
    doc["nodes"].push_back({
        { "name", name },
        { "ctrl", attr->ctrl_code ? json(*attr->ctrl_code) : json(nullptr) },
    });
  }
  doc["edges"] = json::array();
  for (const auto &e: edges) {
    doc["edges"].push_back({
        { "src", e.src.name() },
        { "dst", e.dst.name() },
        { "kind", to_string(e.attr.kind) },
        { "tag", e.attr.tag ? json(std::string(to_string(*e.attr.tag)))
                            : json(nullptr) },
    });
  }
  return doc.dump(2) + "\n";
}

}  // namespace sfiles

//
// sfiles2 - Copyright 2026 The sfiles2 Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "fixtures.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "sfiles/canon.h"
#include "sfiles/graph_json.h"

namespace sfiles::testing {

std::string fixture_path(std::string_view name) {
  return std::string(SFILES_FIXTURE_DIR) + "/" + std::string(name) + ".json";
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

FlowsheetGraph load_fixture(std::string_view name) {
  return load_json(read_file(fixture_path(name)));
}

std::vector<std::string> fixture_names() {
  std::vector<std::string> names;
  for (const auto &entry:
       std::filesystem::directory_iterator(SFILES_FIXTURE_DIR)) {
    const auto path = entry.path();
    if (path.extension() == ".json" && path.stem() != "expected")
      names.push_back(path.stem().string());
  }
  std::sort(names.begin(), names.end());
  return names;
}

FlowsheetGraph strip_tags(const FlowsheetGraph &graph) {
  FlowsheetGraph out;
  for (const auto &[ref, attr]: graph.nodes())
    out.add_node(ref, attr);
  for (const Edge &e: graph.edges())
    out.add_edge(e.src, e.dst, EdgeAttr { e.attr.kind, std::nullopt });
  return out;
}

std::vector<ExpectedCase> expected_cases() {
  const auto doc = nlohmann::json::parse(
      read_file(std::string(SFILES_FIXTURE_DIR) + "/expected.json"));
  std::vector<ExpectedCase> cases;
  for (const auto &item: doc.at("cases")) {
    ExpectedCase c;
    c.name = item.at("name");
    c.fixture = item.at("fixture");
    c.strip_tags = item.at("strip_tags");
    c.notation = item.at("notation") == "numbered" ? Notation::kNumbered
                                                   : Notation::kGeneralized;
    c.style = item.at("style") == "legacy" ? ConvergingStyle::kLegacyBackward
                                           : ConvergingStyle::kInsertion;
    if (item.contains("tree_limit"))
      c.tree_limit = item.at("tree_limit").get<std::size_t>();
    c.expected = item.at("expected");
    if (item.contains("source"))
      c.source = item.at("source").get<std::string>();
    cases.push_back(std::move(c));
  }
  return cases;
}

std::string render(const ExpectedCase &c) {
  FlowsheetGraph graph = load_fixture(c.fixture);
  if (c.strip_tags)
    graph = strip_tags(graph);
  const EmissionPlan plan = traverse(graph, rank_graph(graph));
  return emit(graph, plan, { c.notation, c.style, c.tree_limit });
}

}  // namespace sfiles::testing

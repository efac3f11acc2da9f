//
// sfiles2 - Copyright 2026 The sfiles2 Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SFILES_ENCODE_H_
#define SFILES_ENCODE_H_

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sfiles/canon.h"
#include "sfiles/graph.h"

namespace sfiles {

enum class Notation {
  // Equipment numbers stripped; the standard form.
  kGeneralized,
  // Node names keep their `-number` (and `/slot`) suffix.
  kNumbered,
};

enum class ConvergingStyle {
  // `<&|...&|` insertion after the merge node.
  kInsertion,
  // Original backward notation `[<(b)<(a)]`; only linear inlet chains.
  kLegacyBackward,
};

class EncodeError: public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class EdgeRole {
  kTree,
  // Any material connection to a node already written in the same train, or a
  // second connection into an earlier train. Written `#` ... `<#`.
  kRecycle,
  // The one connection of an inlet train into an earlier train. Written `&`.
  kConverging,
};

struct PlannedEdge {
  NodeRef src;
  NodeRef dst;
  std::optional<StreamTag> tag;
  EdgeRole role = EdgeRole::kTree;
};

// One depth-first tree hanging off the virtual start node.
struct TraversalTree {
  NodeRef root;
  std::vector<NodeRef> preorder;
  // Index into EmissionPlan::edges of the converging connection, if any.
  std::optional<std::size_t> merge_edge;
};

struct EmissionPlan {
  std::vector<TraversalTree> trees;
  // Material edges in discovery order.
  std::vector<PlannedEdge> edges;
  // Signal edges among planned nodes, in canonical edge order.
  std::vector<Edge> signals;

  // Marker numbers of the default rendering, keyed by index into `edges`,
  // index into `signals`, and equipment (category, number) respectively.
  std::map<std::size_t, int> recycle_ids;
  std::map<std::size_t, int> signal_ids;
  std::map<std::pair<std::string, int>, int> hex_group_ids;
};

struct EmitOptions {
  Notation notation = Notation::kGeneralized;
  ConvergingStyle converging = ConvergingStyle::kInsertion;
  // Render only the first k trees of the plan.
  std::optional<std::size_t> tree_limit;
};

/**
 * Depth-first traversal from a virtual node linked to every material inlet
 * (in-degree 0) of each component, components in rank-table order. A
 * component left partly unvisited (cycle processes) is restarted from its
 * lowest-ranked unvisited node that has an outlet stream. Children are taken
 * already-visited first, then by ascending rank.
 */
EmissionPlan traverse(const FlowsheetGraph &graph, const RankTable &ranks);

// Renders a plan. Throws EncodeError for plans the requested style cannot
// express (legacy notation of a non-linear inlet branch, >99 recycles).
std::string emit(const FlowsheetGraph &graph, const EmissionPlan &plan,
                 const EmitOptions &options = {});

// rank_graph -> traverse -> emit.
std::string encode(const FlowsheetGraph &graph,
                   Notation notation = Notation::kGeneralized);

// Strips `-number` and `/slot` suffixes inside node parentheses.
std::string generalize(std::string_view numbered);

}  // namespace sfiles

#endif  // SFILES_ENCODE_H_

//
// sfiles2 - Copyright 2026 The sfiles2 Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SFILES_CANON_H_
#define SFILES_CANON_H_

#include <cstddef>
#include <map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sfiles/graph.h"

namespace sfiles {

using MorganValue = boost::multiprecision::cpp_int;

struct MorganOptions {
  // Stop after this many consecutive updates without a new distinct value.
  int stagnation_window = 3;
  // Hard cap on updates; 0 means 2 * |V|.
  int max_iterations = 0;
};

/**
 * Converged Morgan refinement of one component.
 *
 * `value` holds the node values of the update that first reached the largest
 * number of distinct values (`val_set`). `classes` groups nodes of equal value
 * in ascending value order, which is the preliminary rank order.
 */
struct MorganState {
  std::map<NodeRef, MorganValue> value;
  std::size_t val_set = 0;
  int iteration = 0;
  std::vector<std::vector<NodeRef>> classes;
};

/**
 * Morgan extended-connectivity iteration. All nodes start at 1; each update
 * replaces a value by the sum over the undirected neighbourhood (in- and
 * out-neighbours, each counted once). Every edge in `component` is used, so
 * callers strip signal edges first.
 */
MorganState morgan_iterate(const FlowsheetGraph &component,
                           const MorganOptions &options = {});

/**
 * Turns the Morgan classes into a strict total order. Within a class:
 *
 *   1. control < product < raw material < everything else;
 *   2. descendants reachable over material edges: raw materials with more
 *      come first, other units with fewer come first, products and control
 *      units skip this rule;
 *   3. neighbourhood signature: successor labels and stream tags, then
 *      predecessor labels and tags, then the node's own label;
 *   4. remaining ties are refined by the ranks of neighbours and, as a last
 *      resort, by the numbered names.
 *
 * Labels never contain equipment numbers, so rules 1-3 depend only on the
 * structure.
 */
std::vector<NodeRef> break_ties(const FlowsheetGraph &component,
                                const std::vector<std::vector<NodeRef>> &classes);

struct RankTable {
  // Rank within the node's component, 1..n.
  std::map<NodeRef, int> rank;
  // Components in emission order, each listed by ascending rank.
  std::vector<std::vector<NodeRef>> subgraph_order;

  int of(const NodeRef &ref) const { return rank.at(ref); }
};

/**
 * Ranks every material component separately and orders the components by
 * descending size. Equal-size components are ordered by their standalone
 * generalized strings.
 */
RankTable rank_graph(const FlowsheetGraph &graph);

}  // namespace sfiles

#endif  // SFILES_CANON_H_

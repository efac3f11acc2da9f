//
// sfiles2 - Copyright 2026 The sfiles2 Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SFILES_GRAPH_H_
#define SFILES_GRAPH_H_

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sfiles {

enum class GraphErrc {
  kInvalidName,
  kDuplicateNode,
  kUnknownNode,
  kCtrlMismatch,
  kDuplicateEdge,
  kSelfLoop,
  kEdgeIntoRaw,
  kEdgeOutOfProduct,
  kTagOnSignal,
};

std::string_view errc_name(GraphErrc code);

class GraphError: public std::runtime_error {
public:
  GraphError(GraphErrc code, const std::string &what)
      : std::runtime_error(what), code_(code) { }

  GraphErrc code() const noexcept { return code_; }

private:
  GraphErrc code_;
};

/**
 * Identity of a unit operation node: `category-number` or, for the stream
 * slots of a split multi-stream heat exchanger, `hex-number/sub`.
 *
 * Ordering is by category, then numerically by number and sub index. This is
 * the order used to break ties that survive every structural criterion.
 */
struct NodeRef {
  std::string category;
  int number = 1;
  std::optional<int> sub;

  std::string name() const;

  // Throws GraphError(kInvalidName) when the text is not a valid node name.
  static NodeRef parse(std::string_view name);

  friend bool operator==(const NodeRef &, const NodeRef &) = default;
  friend std::strong_ordering operator<=>(const NodeRef &a, const NodeRef &b);
};

inline constexpr std::string_view kHexCategory = "hex";
inline constexpr std::string_view kControlCategory = "C";
inline constexpr std::string_view kRawCategory = "raw";
inline constexpr std::string_view kProductCategory = "prod";

// True when `category` is a syntactically valid abbreviation (letters only).
bool valid_category(std::string_view category);
// True when `code` is a valid instrument letter code (uppercase letters).
bool valid_ctrl_code(std::string_view code);

enum class EdgeKind { kMaterial, kSignal };

// Column port of a stream.
enum class StreamTag { kBin, kTin, kBout, kTout };

std::string_view to_string(EdgeKind kind);
std::string_view to_string(StreamTag tag);
std::optional<EdgeKind> edge_kind_from(std::string_view text);
std::optional<StreamTag> stream_tag_from(std::string_view text);

struct NodeAttr {
  std::optional<std::string> ctrl_code;

  friend bool operator==(const NodeAttr &, const NodeAttr &) = default;
};

struct EdgeAttr {
  EdgeKind kind = EdgeKind::kMaterial;
  std::optional<StreamTag> tag;

  static EdgeAttr material(std::optional<StreamTag> tag = std::nullopt) {
    return { EdgeKind::kMaterial, tag };
  }
  static EdgeAttr signal() { return { EdgeKind::kSignal, std::nullopt }; }

  friend bool operator==(const EdgeAttr &, const EdgeAttr &) = default;
};

struct Edge {
  NodeRef src;
  NodeRef dst;
  EdgeAttr attr;

  bool is_material() const { return attr.kind == EdgeKind::kMaterial; }
  bool is_signal() const { return attr.kind == EdgeKind::kSignal; }

  friend bool operator==(const Edge &, const Edge &) = default;
};

// Canonical edge order: (src name, dst name, kind name, tag name).
bool canonical_edge_less(const Edge &a, const Edge &b);

/**
 * Directed flowsheet multigraph of unit operations with material and signal
 * edges.
 *
 * Hard invariants enforced on every mutation:
 *   - node names are unique, and a heat exchanger number is used either by one
 *     plain node or by sub-indexed stream slots, never both;
 *   - ctrl_code is present iff the category is "C";
 *   - at most one edge per (src, dst, kind), no self loops;
 *   - no material edge enters a "raw" node or leaves a "prod" node;
 *   - signal edges carry no stream tag.
 *
 * Nodes iterate in NodeRef order; edges keep insertion order.
 */
class FlowsheetGraph {
public:
  FlowsheetGraph() = default;

  void add_node(const NodeRef &ref, NodeAttr attr = {});
  void add_node(std::string_view name, NodeAttr attr = {}) {
    add_node(NodeRef::parse(name), std::move(attr));
  }

  void add_edge(const NodeRef &src, const NodeRef &dst, EdgeAttr attr = {});
  void add_edge(std::string_view src, std::string_view dst,
                EdgeAttr attr = {}) {
    add_edge(NodeRef::parse(src), NodeRef::parse(dst), attr);
  }

  bool contains(const NodeRef &ref) const { return nodes_.contains(ref); }
  const NodeAttr &attr(const NodeRef &ref) const;

  const std::map<NodeRef, NodeAttr> &nodes() const { return nodes_; }
  const std::vector<Edge> &edges() const { return edges_; }

  std::size_t num_nodes() const { return nodes_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  bool empty() const { return nodes_.empty(); }

  bool has_edge(const NodeRef &src, const NodeRef &dst, EdgeKind kind) const;

  std::size_t in_degree(const NodeRef &ref, EdgeKind kind) const;
  std::size_t out_degree(const NodeRef &ref, EdgeKind kind) const;

  // Copy holding only the given nodes and the edges among them.
  FlowsheetGraph subgraph(const std::vector<NodeRef> &keep) const;
  // Copy without signal edges.
  FlowsheetGraph without_signals() const;

  // Node set and edge multiset equality, independent of insertion order.
  friend bool operator==(const FlowsheetGraph &a, const FlowsheetGraph &b);

private:
  std::map<NodeRef, NodeAttr> nodes_;
  std::vector<Edge> edges_;
};

/**
 * Groups nodes into physical equipment: all `hex-k/i` slots of one heat
 * exchanger share the key ("hex", k) and are ordered by slot index. Every other
 * node forms a singleton group under its own (category, number).
 */
std::map<std::pair<std::string, int>, std::vector<NodeRef>>
equipment_groups(const FlowsheetGraph &graph);

// True when `ref` is a slot of a heat exchanger with at least two slots.
bool in_multi_slot_group(const FlowsheetGraph &graph, const NodeRef &ref);

/**
 * Weakly connected components over material edges, each sorted by NodeRef.
 * Components are listed in order of their smallest node.
 */
std::vector<std::vector<NodeRef>>
material_components(const FlowsheetGraph &graph);

}  // namespace sfiles

#endif  // SFILES_GRAPH_H_

//
// sfiles2 - Copyright 2026 The sfiles2 Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sfiles/graph.h"

#include <algorithm>
#include <charconv>
#include <set>
#include <tuple>

namespace sfiles {
namespace {
std::optional<int> parse_positive(std::string_view text) {
  if (text.empty() || text.size() > 9)
    return std::nullopt;
  if (text.size() > 1 && text.front() == '0')
    return std::nullopt;

  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                   value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value <= 0)
    return std::nullopt;
  return value;
}

[[noreturn]] void invalid_name(std::string_view name, std::string_view why) {
  throw GraphError(GraphErrc::kInvalidName,
                   "invalid node name '" + std::string(name)
                       + "': " + std::string(why));
}
}  // namespace

std::string_view errc_name(GraphErrc code) {
  switch (code) {
  case GraphErrc::kInvalidName:
    return "invalid-name";
  case GraphErrc::kDuplicateNode:
    return "duplicate-node";
  case GraphErrc::kUnknownNode:
    return "unknown-node";
  case GraphErrc::kCtrlMismatch:
    return "ctrl-mismatch";
  case GraphErrc::kDuplicateEdge:
    return "duplicate-edge";
  case GraphErrc::kSelfLoop:
    return "self-loop";
  case GraphErrc::kEdgeIntoRaw:
    return "edge-into-raw";
  case GraphErrc::kEdgeOutOfProduct:
    return "edge-out-of-product";
  case GraphErrc::kTagOnSignal:
    return "tag-on-signal";
  }
  return "unknown";
}

bool valid_category(std::string_view category) {
  return !category.empty()
         && std::all_of(category.begin(), category.end(), [](char c) {
              return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
            });
}

bool valid_ctrl_code(std::string_view code) {
  return !code.empty() && std::all_of(code.begin(), code.end(), [](char c) {
    return c >= 'A' && c <= 'Z';
  });
}

std::string NodeRef::name() const {
  std::string out = category + '-' + std::to_string(number);
  if (sub)
    out += '/' + std::to_string(*sub);
  return out;
}

NodeRef NodeRef::parse(std::string_view name) {
  const auto dash = name.rfind('-');
  if (dash == std::string_view::npos)
    invalid_name(name, "missing '-number' suffix");

  NodeRef ref;
  ref.category = std::string(name.substr(0, dash));
  if (!valid_category(ref.category))
    invalid_name(name, "category must be letters only");

  std::string_view rest = name.substr(dash + 1);
  std::string_view sub_text;
  if (const auto slash = rest.find('/'); slash != std::string_view::npos) {
    sub_text = rest.substr(slash + 1);
    rest = rest.substr(0, slash);
    if (ref.category != kHexCategory)
      invalid_name(name, "only heat exchangers carry a '/sub' index");
  }

  const auto number = parse_positive(rest);
  if (!number)
    invalid_name(name, "number must be a positive integer");
  ref.number = *number;

  if (!sub_text.empty() || name.find('/') != std::string_view::npos) {
    const auto sub = parse_positive(sub_text);
    if (!sub)
      invalid_name(name, "sub index must be a positive integer");
    ref.sub = *sub;
  }
  return ref;
}

std::strong_ordering operator<=>(const NodeRef &a, const NodeRef &b) {
  if (auto c = a.category <=> b.category; c != 0)
    return c;
  if (auto c = a.number <=> b.number; c != 0)
    return c;
  // A plain node sorts before any sub-indexed one.
  return a.sub.value_or(0) <=> b.sub.value_or(0);
}

std::string_view to_string(EdgeKind kind) {
  return kind == EdgeKind::kMaterial ? "material" : "signal";
}

std::string_view to_string(StreamTag tag) {
  switch (tag) {
  case StreamTag::kBin:
    return "bin";
  case StreamTag::kTin:
    return "tin";
  case StreamTag::kBout:
    return "bout";
  case StreamTag::kTout:
    return "tout";
  }
  return "";
}

std::optional<EdgeKind> edge_kind_from(std::string_view text) {
  if (text == "material")
    return EdgeKind::kMaterial;
  if (text == "signal")
    return EdgeKind::kSignal;
  return std::nullopt;
}

std::optional<StreamTag> stream_tag_from(std::string_view text) {
  if (text == "bin")
    return StreamTag::kBin;
  if (text == "tin")
    return StreamTag::kTin;
  if (text == "bout")
    return StreamTag::kBout;
  if (text == "tout")
    return StreamTag::kTout;
  return std::nullopt;
}

bool canonical_edge_less(const Edge &a, const Edge &b) {
  auto key = [](const Edge &e) {
    return std::make_tuple(e.src.name(), e.dst.name(),
                           std::string(to_string(e.attr.kind)),
                           e.attr.tag ? std::string(to_string(*e.attr.tag))
                                      : std::string());
  };
  return key(a) < key(b);
}

void FlowsheetGraph::add_node(const NodeRef &ref, NodeAttr attr) {
  if (!valid_category(ref.category) || ref.number <= 0
      || (ref.sub && *ref.sub <= 0))
    invalid_name(ref.name(), "malformed reference");
  if (ref.sub && ref.category != kHexCategory)
    invalid_name(ref.name(), "only heat exchangers carry a '/sub' index");
  if (nodes_.contains(ref))
    throw GraphError(GraphErrc::kDuplicateNode,
                     "duplicate node '" + ref.name() + "'");

  // hex-k and hex-k/i cannot coexist: the equipment number would be ambiguous.
  for (const auto &[other, _]: nodes_) {
    if (other.category == ref.category && other.number == ref.number
        && other.sub.has_value() != ref.sub.has_value())
      throw GraphError(GraphErrc::kDuplicateNode,
                       "node '" + ref.name() + "' clashes with '"
                           + other.name() + "'");
  }

  const bool is_control = ref.category == kControlCategory;
  if (is_control != attr.ctrl_code.has_value())
    throw GraphError(GraphErrc::kCtrlMismatch,
                     is_control ? "control node '" + ref.name()
                                      + "' requires a letter code"
                                : "node '" + ref.name()
                                      + "' is not a control unit but has a "
                                        "letter code");
  if (attr.ctrl_code && !valid_ctrl_code(*attr.ctrl_code))
    throw GraphError(GraphErrc::kCtrlMismatch,
                     "letter code '" + *attr.ctrl_code + "' of '" + ref.name()
                         + "' must be uppercase letters");

  nodes_.emplace(ref, std::move(attr));
}

void FlowsheetGraph::add_edge(const NodeRef &src, const NodeRef &dst,
                              EdgeAttr attr) {
  for (const auto *ref: { &src, &dst }) {
    if (!contains(*ref))
      throw GraphError(GraphErrc::kUnknownNode,
                       "edge endpoint '" + ref->name() + "' does not exist");
  }
  if (src == dst)
    throw GraphError(GraphErrc::kSelfLoop,
                     "self loop on '" + src.name() + "'");
  if (attr.kind == EdgeKind::kSignal && attr.tag)
    throw GraphError(GraphErrc::kTagOnSignal,
                     "signal edge " + src.name() + " -> " + dst.name()
                         + " cannot carry a stream tag");
  if (has_edge(src, dst, attr.kind))
    throw GraphError(GraphErrc::kDuplicateEdge,
                     "duplicate " + std::string(to_string(attr.kind))
                         + " edge " + src.name() + " -> " + dst.name());
  if (attr.kind == EdgeKind::kMaterial) {
    if (dst.category == kRawCategory)
      throw GraphError(GraphErrc::kEdgeIntoRaw,
                       "material edge into raw material node '" + dst.name()
                           + "'");
    if (src.category == kProductCategory)
      throw GraphError(GraphErrc::kEdgeOutOfProduct,
                       "material edge out of product node '" + src.name()
                           + "'");
  }
  edges_.push_back({ src, dst, attr });
}

const NodeAttr &FlowsheetGraph::attr(const NodeRef &ref) const {
  auto it = nodes_.find(ref);
  if (it == nodes_.end())
    throw GraphError(GraphErrc::kUnknownNode,
                     "unknown node '" + ref.name() + "'");
  return it->second;
}

bool FlowsheetGraph::has_edge(const NodeRef &src, const NodeRef &dst,
                              EdgeKind kind) const {
  return std::any_of(edges_.begin(), edges_.end(), [&](const Edge &e) {
    return e.attr.kind == kind && e.src == src && e.dst == dst;
  });
}

std::size_t FlowsheetGraph::in_degree(const NodeRef &ref,
                                      EdgeKind kind) const {
  return std::count_if(edges_.begin(), edges_.end(), [&](const Edge &e) {
    return e.attr.kind == kind && e.dst == ref;
  });
}

std::size_t FlowsheetGraph::out_degree(const NodeRef &ref,
                                       EdgeKind kind) const {
  return std::count_if(edges_.begin(), edges_.end(), [&](const Edge &e) {
    return e.attr.kind == kind && e.src == ref;
  });
}

FlowsheetGraph FlowsheetGraph::subgraph(const std::vector<NodeRef> &keep) const {
  FlowsheetGraph out;
  const std::set<NodeRef> kept(keep.begin(), keep.end());
  for (const auto &[ref, attr]: nodes_) {
    if (kept.contains(ref))
      out.nodes_.emplace(ref, attr);
  }
  for (const auto &e: edges_) {
    if (kept.contains(e.src) && kept.contains(e.dst))
      out.edges_.push_back(e);
  }
  return out;
}

FlowsheetGraph FlowsheetGraph::without_signals() const {
  FlowsheetGraph out;
  out.nodes_ = nodes_;
  std::copy_if(edges_.begin(), edges_.end(), std::back_inserter(out.edges_),
               [](const Edge &e) { return e.is_material(); });
  return out;
}

bool operator==(const FlowsheetGraph &a, const FlowsheetGraph &b) {
  if (a.nodes_ != b.nodes_ || a.edges_.size() != b.edges_.size())
    return false;

  auto sorted = [](std::vector<Edge> edges) {
    std::sort(edges.begin(), edges.end(), canonical_edge_less);
    return edges;
  };
  return sorted(a.edges_) == sorted(b.edges_);
}

std::map<std::pair<std::string, int>, std::vector<NodeRef>>
equipment_groups(const FlowsheetGraph &graph) {
  std::map<std::pair<std::string, int>, std::vector<NodeRef>> groups;
  // NodeRef order already sorts slots of one equipment by sub index.
  for (const auto &[ref, _]: graph.nodes())
    groups[{ ref.category, ref.number }].push_back(ref);
  return groups;
}

bool in_multi_slot_group(const FlowsheetGraph &graph, const NodeRef &ref) {
  if (!ref.sub)
    return false;
  return std::count_if(graph.nodes().begin(), graph.nodes().end(),
                       [&](const auto &entry) {
                         return entry.first.category == ref.category
                                && entry.first.number == ref.number;
                       })
         >= 2;
}

std::vector<std::vector<NodeRef>>
material_components(const FlowsheetGraph &graph) {
  std::vector<NodeRef> refs;
  std::map<NodeRef, std::size_t> index;
  for (const auto &[ref, _]: graph.nodes()) {
    index.emplace(ref, refs.size());
    refs.push_back(ref);
  }

  std::vector<std::size_t> parent(refs.size());
  for (std::size_t i = 0; i < parent.size(); ++i)
    parent[i] = i;
  auto find = [&](std::size_t i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  };
  for (const auto &e: graph.edges()) {
    if (!e.is_material())
      continue;
    auto a = find(index.at(e.src)), b = find(index.at(e.dst));
    if (a != b)
      parent[std::max(a, b)] = std::min(a, b);
  }

  // Roots are the smallest index of each set because unions keep the minimum.
  std::map<std::size_t, std::vector<NodeRef>> by_root;
  for (std::size_t i = 0; i < refs.size(); ++i)
    by_root[find(i)].push_back(refs[i]);

  std::vector<std::vector<NodeRef>> out;
  out.reserve(by_root.size());
  for (auto &[_, members]: by_root)
    out.push_back(std::move(members));
  return out;
}

}  // namespace sfiles

//
// sfiles2 - Copyright 2026 The sfiles2 Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sfiles/encode.h"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

namespace sfiles {
namespace {
class Traversal {
public:
  Traversal(const FlowsheetGraph &graph, const RankTable &ranks)
      : graph_(graph), ranks_(ranks) {
    for (const auto &e: graph.edges()) {
      if (e.is_material() && ranks.rank.contains(e.src)
          && ranks.rank.contains(e.dst))
        out_[e.src].push_back(&e);
    }
    for (auto &[_, edges]: out_) {
      std::sort(edges.begin(), edges.end(), [&](const Edge *a, const Edge *b) {
        return ranks_.of(a->dst) < ranks_.of(b->dst);
      });
    }
  }

  EmissionPlan run() {
    for (const auto &component: ranks_.subgraph_order) {
      // `component` is listed by ascending rank.
      for (const auto &ref: component) {
        if (graph_.in_degree(ref, EdgeKind::kMaterial) == 0
            && !tree_of_.contains(ref))
          grow_tree(ref);
      }
      for (;;) {
        std::optional<NodeRef> start;
        for (const auto &ref: component) {
          if (tree_of_.contains(ref))
            continue;
          if (out_.contains(ref)) {
            start = ref;
            break;
          }
          if (!start)
            start = ref;
        }
        if (!start)
          break;
        grow_tree(*start);
      }
    }

    for (const auto &e: graph_.edges()) {
      if (e.is_signal() && tree_of_.contains(e.src)
          && tree_of_.contains(e.dst))
        plan_.signals.push_back(e);
    }
    std::sort(plan_.signals.begin(), plan_.signals.end(), canonical_edge_less);
    return std::move(plan_);
  }

private:
  void grow_tree(const NodeRef &root) {
    plan_.trees.push_back({ root, {}, std::nullopt });
    visit(root, plan_.trees.size() - 1);
  }

  void visit(const NodeRef &u, std::size_t tree) {
    tree_of_.emplace(u, tree);
    plan_.trees[tree].preorder.push_back(u);

    auto it = out_.find(u);
    if (it == out_.end())
      return;
    const std::vector<const Edge *> &edges = it->second;

    // Connections to nodes already written come first.
    std::vector<const Edge *> fresh;
    for (const Edge *e: edges) {
      if (tree_of_.contains(e->dst))
        classify(*e, tree);
      else
        fresh.push_back(e);
    }
    for (const Edge *e: fresh) {
      if (tree_of_.contains(e->dst)) {
        classify(*e, tree);
        continue;
      }
      plan_.edges.push_back({ e->src, e->dst, e->attr.tag, EdgeRole::kTree });
      visit(e->dst, tree);
    }
  }

  void classify(const Edge &e, std::size_t tree) {
    EdgeRole role = EdgeRole::kRecycle;
    if (tree_of_.at(e.dst) != tree && !plan_.trees[tree].merge_edge) {
      role = EdgeRole::kConverging;
      plan_.trees[tree].merge_edge = plan_.edges.size();
    }
    plan_.edges.push_back({ e.src, e.dst, e.attr.tag, role });
  }

  const FlowsheetGraph &graph_;
  const RankTable &ranks_;
  std::map<NodeRef, std::vector<const Edge *>> out_;
  std::map<NodeRef, std::size_t> tree_of_;
  EmissionPlan plan_;
};

enum class ItemKind {
  kNode,
  kGroupTag,
  kCtrlTag,
  kStreamTag,
  kRecycleIn,
  kRecycleOut,
  kSignalOut,
  kSignalIn,
  kConnector,
  kBranchOpen,
  kBranchClose,
  kConvOpen,
  kConvClose,
  kTrainSep,
  kBackwardNode,
};

struct Item {
  ItemKind kind;
  const NodeRef *node = nullptr;
  std::size_t index = 0;
  std::optional<StreamTag> tag;
};

// Positions every marker of a plan without committing to marker numbers.
class Layout {
public:
  Layout(const FlowsheetGraph &graph, const EmissionPlan &plan,
         const EmitOptions &options)
      : graph_(graph), plan_(plan), options_(options) {
    const std::size_t trees =
        std::min(plan.trees.size(),
                 options.tree_limit.value_or(plan.trees.size()));
    for (std::size_t t = 0; t < trees; ++t) {
      for (const auto &ref: plan.trees[t].preorder)
        active_.emplace(ref, t);
    }
    for (std::size_t i = 0; i < plan.edges.size(); ++i) {
      const PlannedEdge &e = plan.edges[i];
      if (!active_.contains(e.src) || !active_.contains(e.dst))
        continue;
      switch (e.role) {
      case EdgeRole::kTree:
        children_[e.src].push_back(i);
        break;
      case EdgeRole::kRecycle:
        recycle_in_[e.dst].push_back(i);
        recycle_out_[e.src].push_back(i);
        break;
      case EdgeRole::kConverging:
        connector_[e.src] = i;
        converging_into_[e.dst].push_back(active_.at(e.src));
        break;
      }
    }
    for (std::size_t t = 0; t < trees; ++t) {
      if (!plan.trees[t].merge_edge)
        top_level_.push_back(t);
    }
  }

  std::vector<Item> build() {
    // First pass fixes node positions, second places signal markers by the
    // position of their partner node.
    std::vector<Item> items = pass();
    std::map<NodeRef, std::size_t> position;
    for (const Item &item: items) {
      if (item.kind == ItemKind::kNode)
        position.emplace(*item.node, position.size());
    }
    for (std::size_t i = 0; i < plan_.signals.size(); ++i) {
      const Edge &s = plan_.signals[i];
      if (!active_.contains(s.src) || !active_.contains(s.dst))
        continue;
      signal_out_[s.src].push_back(i);
      signal_in_[s.dst].push_back(i);
    }
    for (auto *lists: { &signal_out_, &signal_in_ }) {
      const bool outgoing = lists == &signal_out_;
      for (auto &[_, list]: *lists) {
        std::sort(list.begin(), list.end(), [&](std::size_t a, std::size_t b) {
          const Edge &ea = plan_.signals[a], &eb = plan_.signals[b];
          return position.at(outgoing ? ea.dst : ea.src)
                 < position.at(outgoing ? eb.dst : eb.src);
        });
      }
    }
    return pass();
  }

private:
  std::vector<Item> pass() {
    items_.clear();
    for (std::size_t i = 0; i < top_level_.size(); ++i) {
      if (i > 0)
        items_.push_back({ ItemKind::kTrainSep });
      write_node(plan_.trees[top_level_[i]].root);
    }
    return std::move(items_);
  }

  template <class Map>
  static const std::vector<std::size_t> &lookup(const Map &map,
                                                const NodeRef &ref) {
    static const std::vector<std::size_t> kEmpty;
    auto it = map.find(ref);
    return it == map.end() ? kEmpty : it->second;
  }

  void write_node(const NodeRef &u) {
    const NodeRef *ref = &graph_.nodes().find(u)->first;
    items_.push_back({ ItemKind::kNode, ref });
    if (in_multi_slot_group(graph_, u))
      items_.push_back({ ItemKind::kGroupTag, ref });
    if (graph_.attr(u).ctrl_code)
      items_.push_back({ ItemKind::kCtrlTag, ref });

    for (std::size_t e: lookup(recycle_in_, u))
      items_.push_back({ ItemKind::kRecycleIn, nullptr, e });
    for (std::size_t e: lookup(recycle_out_, u)) {
      push_tag(plan_.edges[e].tag);
      items_.push_back({ ItemKind::kRecycleOut, nullptr, e });
    }
    for (std::size_t s: lookup(signal_out_, u))
      items_.push_back({ ItemKind::kSignalOut, nullptr, s });
    for (std::size_t s: lookup(signal_in_, u))
      items_.push_back({ ItemKind::kSignalIn, nullptr, s });

    if (auto it = connector_.find(u); it != connector_.end()) {
      push_tag(plan_.edges[it->second].tag);
      items_.push_back({ ItemKind::kConnector, nullptr, it->second });
    }

    for (std::size_t t: lookup(converging_into_, u)) {
      if (options_.converging == ConvergingStyle::kLegacyBackward) {
        write_backward(t);
      } else {
        items_.push_back({ ItemKind::kConvOpen });
        write_node(plan_.trees[t].root);
        items_.push_back({ ItemKind::kConvClose });
      }
    }

    const auto &children = lookup(children_, u);
    for (std::size_t i = 0; i < children.size(); ++i) {
      const bool last = i + 1 == children.size();
      const PlannedEdge &e = plan_.edges[children[i]];
      if (!last)
        items_.push_back({ ItemKind::kBranchOpen });
      push_tag(e.tag);
      write_node(e.dst);
      if (!last)
        items_.push_back({ ItemKind::kBranchClose });
    }
  }

  // `[<(b)<(a)]` for an inlet chain a -> b feeding the merge node.
  void write_backward(std::size_t t) {
    const TraversalTree &tree = plan_.trees[t];
    const PlannedEdge &merge = plan_.edges[*tree.merge_edge];
    auto fail = [&](const std::string &why) {
      throw EncodeError("inlet branch from '" + tree.root.name()
                        + "' cannot use backward notation: " + why);
    };
    if (merge.tag)
      fail("tagged connection");

    std::vector<const NodeRef *> chain;
    for (const auto &ref: tree.preorder) {
      const auto &kids = lookup(children_, ref);
      if (kids.size() > 1)
        fail("it branches");
      if (!lookup(recycle_in_, ref).empty() || !lookup(recycle_out_, ref).empty()
          || !lookup(signal_out_, ref).empty() || !lookup(signal_in_, ref).empty()
          || !lookup(converging_into_, ref).empty()
          || in_multi_slot_group(graph_, ref) || graph_.attr(ref).ctrl_code)
        fail("it carries markers");
      if (!kids.empty() && plan_.edges[kids.front()].tag)
        fail("tagged connection");
      chain.push_back(&graph_.nodes().find(ref)->first);
    }
    if (*chain.back() != merge.src)
      fail("the connection does not leave its last unit");

    items_.push_back({ ItemKind::kBranchOpen });
    for (auto it = chain.rbegin(); it != chain.rend(); ++it)
      items_.push_back({ ItemKind::kBackwardNode, *it });
    items_.push_back({ ItemKind::kBranchClose });
  }

  void push_tag(const std::optional<StreamTag> &tag) {
    if (tag)
      items_.push_back({ ItemKind::kStreamTag, nullptr, 0, tag });
  }

  const FlowsheetGraph &graph_;
  const EmissionPlan &plan_;
  const EmitOptions &options_;

  std::map<NodeRef, std::size_t> active_;
  std::map<NodeRef, std::vector<std::size_t>> children_;
  std::map<NodeRef, std::vector<std::size_t>> recycle_in_, recycle_out_;
  std::map<NodeRef, std::vector<std::size_t>> signal_out_, signal_in_;
  std::map<NodeRef, std::size_t> connector_;
  std::map<NodeRef, std::vector<std::size_t>> converging_into_;
  std::vector<std::size_t> top_level_;
  std::vector<Item> items_;
};

struct MarkerIds {
  std::map<std::size_t, int> recycle;
  std::map<std::size_t, int> signal;
  std::map<std::pair<std::string, int>, int> group;
};

MarkerIds number_markers(const std::vector<Item> &items) {
  MarkerIds ids;
  for (const Item &item: items) {
    switch (item.kind) {
    case ItemKind::kRecycleIn:
      ids.recycle.try_emplace(item.index,
                              static_cast<int>(ids.recycle.size()) + 1);
      break;
    case ItemKind::kSignalOut:
      ids.signal.try_emplace(item.index,
                             static_cast<int>(ids.signal.size()) + 1);
      break;
    case ItemKind::kGroupTag:
      ids.group.try_emplace({ item.node->category, item.node->number },
                            static_cast<int>(ids.group.size()) + 1);
      break;
    default:
      break;
    }
  }
  return ids;
}

std::string recycle_digits(int id) {
  if (id < 10)
    return std::to_string(id);
  if (id < 100)
    return "%" + std::to_string(id);
  throw EncodeError("more than 99 recycle connections");
}

std::string node_text(const NodeRef &ref, Notation notation) {
  return notation == Notation::kNumbered ? ref.name() : ref.category;
}
}  // namespace

EmissionPlan traverse(const FlowsheetGraph &graph, const RankTable &ranks) {
  EmissionPlan plan = Traversal(graph, ranks).run();

  const EmitOptions defaults;
  const MarkerIds ids =
      number_markers(Layout(graph, plan, defaults).build());
  plan.recycle_ids = ids.recycle;
  plan.signal_ids = ids.signal;
  plan.hex_group_ids = ids.group;
  return plan;
}

std::string emit(const FlowsheetGraph &graph, const EmissionPlan &plan,
                 const EmitOptions &options) {
  const std::vector<Item> items = Layout(graph, plan, options).build();
  const MarkerIds ids = number_markers(items);

  std::string out;
  for (const Item &item: items) {
    switch (item.kind) {
    case ItemKind::kNode:
      out += "(" + node_text(*item.node, options.notation) + ")";
      break;
    case ItemKind::kBackwardNode:
      out += "<(" + node_text(*item.node, options.notation) + ")";
      break;
    case ItemKind::kGroupTag:
      out += "{"
             + std::to_string(
                 ids.group.at({ item.node->category, item.node->number }))
             + "}";
      break;
    case ItemKind::kCtrlTag:
      out += "{" + *graph.attr(*item.node).ctrl_code + "}";
      break;
    case ItemKind::kStreamTag:
      out += "{" + std::string(to_string(*item.tag)) + "}";
      break;
    case ItemKind::kRecycleIn:
      out += "<" + recycle_digits(ids.recycle.at(item.index));
      break;
    case ItemKind::kRecycleOut:
      out += recycle_digits(ids.recycle.at(item.index));
      break;
    case ItemKind::kSignalOut:
      out += "_" + std::to_string(ids.signal.at(item.index));
      break;
    case ItemKind::kSignalIn:
      out += "<_" + std::to_string(ids.signal.at(item.index));
      break;
    case ItemKind::kConnector:
      out += "&";
      break;
    case ItemKind::kBranchOpen:
      out += "[";
      break;
    case ItemKind::kBranchClose:
      out += "]";
      break;
    case ItemKind::kConvOpen:
      out += "<&|";
      break;
    case ItemKind::kConvClose:
      out += "|";
      break;
    case ItemKind::kTrainSep:
      out += "n|";
      break;
    }
  }
  return out;
}

std::string encode(const FlowsheetGraph &graph, Notation notation) {
  const RankTable ranks = rank_graph(graph);
  const EmissionPlan plan = traverse(graph, ranks);
  return emit(graph, plan, { notation });
}

std::string generalize(std::string_view numbered) {
  std::string out;
  out.reserve(numbered.size());
  std::size_t i = 0;
  while (i < numbered.size()) {
    const char c = numbered[i];
    if (c != '(') {
      out += c;
      ++i;
      continue;
    }
    const std::size_t close = numbered.find(')', i);
    if (close == std::string_view::npos) {
      out.append(numbered.substr(i));
      break;
    }
    std::string_view name = numbered.substr(i + 1, close - i - 1);
    if (const auto dash = name.rfind('-'); dash != std::string_view::npos) {
      const std::string_view suffix = name.substr(dash + 1);
      const bool numeric =
          !suffix.empty() && std::isdigit(static_cast<unsigned char>(suffix[0]))
          && std::all_of(suffix.begin(), suffix.end(), [](char d) {
               return std::isdigit(static_cast<unsigned char>(d)) || d == '/';
             });
      if (numeric)
        name = name.substr(0, dash);
    }
    out += '(';
    out.append(name);
    out += ')';
    i = close + 1;
  }
  return out;
}

}  // namespace sfiles

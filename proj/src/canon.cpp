//
// sfiles2 - Copyright 2026 The sfiles2 Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sfiles/canon.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <tuple>
#include <utility>

#include "sfiles/encode.h"

namespace sfiles {
namespace {
// Ordering of stream tags inside neighbourhood signatures. Inlets rank bottom
// before top, outlets top before bottom.
int tag_key(const std::optional<StreamTag> &tag) {
  if (!tag)
    return 0;
  switch (*tag) {
  case StreamTag::kBin:
    return 1;
  case StreamTag::kTin:
    return 2;
  case StreamTag::kTout:
    return 3;
  case StreamTag::kBout:
    return 4;
  }
  return 0;
}

int category_priority(const NodeRef &ref) {
  if (ref.category == kControlCategory)
    return 0;
  if (ref.category == kProductCategory)
    return 1;
  if (ref.category == kRawCategory)
    return 2;
  return 3;
}

// Index-based view of one component.
struct Indexed {
  std::vector<NodeRef> refs;
  std::map<NodeRef, std::size_t> index;
  std::vector<std::string> label;
  // (neighbour, tag key) over material edges.
  std::vector<std::vector<std::pair<std::size_t, int>>> out, in;
  std::vector<std::vector<std::size_t>> sig_out, sig_in;
  // Slot mates of the same heat exchanger inside this component.
  std::vector<std::vector<std::size_t>> mates;

  Indexed(const FlowsheetGraph &component, const FlowsheetGraph &context) {
    for (const auto &[ref, attr]: component.nodes()) {
      index.emplace(ref, refs.size());
      refs.push_back(ref);

      std::string l = ref.category;
      if (attr.ctrl_code)
        l += "{" + *attr.ctrl_code + "}";
      if (in_multi_slot_group(context, ref))
        l += "{*}";
      label.push_back(std::move(l));
    }

    const std::size_t n = refs.size();
    out.resize(n);
    in.resize(n);
    sig_out.resize(n);
    sig_in.resize(n);
    mates.resize(n);
    for (const auto &e: component.edges()) {
      const std::size_t s = index.at(e.src), d = index.at(e.dst);
      if (e.is_material()) {
        out[s].emplace_back(d, tag_key(e.attr.tag));
        in[d].emplace_back(s, tag_key(e.attr.tag));
      } else {
        sig_out[s].push_back(d);
        sig_in[d].push_back(s);
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j && refs[i].sub && refs[j].sub
            && refs[i].category == refs[j].category
            && refs[i].number == refs[j].number)
          mates[i].push_back(j);
      }
    }
  }

  std::size_t size() const { return refs.size(); }

  // Nodes reachable over directed material edges, excluding the start.
  std::size_t descendants(std::size_t start) const {
    std::vector<bool> seen(size(), false);
    std::vector<std::size_t> stack { start };
    seen[start] = true;
    std::size_t count = 0;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (const auto &[v, _]: out[u]) {
        if (!seen[v]) {
          seen[v] = true;
          ++count;
          stack.push_back(v);
        }
      }
    }
    return count;
  }
};

using Signature = std::tuple<std::vector<std::pair<std::string, int>>,
                             std::vector<std::pair<std::string, int>>,
                             std::string>;

Signature neighbourhood_signature(const Indexed &g, std::size_t v) {
  Signature sig;
  auto &[outs, ins, own] = sig;
  for (const auto &[u, tag]: g.out[v])
    outs.emplace_back(g.label[u], tag);
  for (const auto &[u, tag]: g.in[v])
    ins.emplace_back(g.label[u], tag);
  std::sort(outs.begin(), outs.end());
  std::sort(ins.begin(), ins.end());
  own = g.label[v];
  return sig;
}

using Partition = std::vector<std::vector<std::size_t>>;

// Splits every cell by `key`, keeping the order of the cells and ordering the
// parts of a split cell by ascending key. Returns true if anything split.
template <class KeyFn>
bool split_cells(Partition &cells, KeyFn key) {
  Partition next;
  next.reserve(cells.size());
  for (auto &cell: cells) {
    if (cell.size() == 1) {
      next.push_back(std::move(cell));
      continue;
    }
    using Key = decltype(key(cell.front()));
    std::vector<std::pair<Key, std::size_t>> keyed;
    keyed.reserve(cell.size());
    for (std::size_t v: cell)
      keyed.emplace_back(key(v), v);
    std::stable_sort(keyed.begin(), keyed.end(),
                     [](const auto &a, const auto &b) {
                       return a.first < b.first;
                     });
    std::size_t begin = 0;
    for (std::size_t i = 1; i <= keyed.size(); ++i) {
      if (i == keyed.size() || keyed[i].first != keyed[begin].first) {
        std::vector<std::size_t> part;
        for (std::size_t j = begin; j < i; ++j)
          part.push_back(keyed[j].second);
        next.push_back(std::move(part));
        begin = i;
      }
    }
  }
  const bool changed = next.size() != cells.size();
  cells = std::move(next);
  return changed;
}

std::vector<std::size_t> cell_of(const Partition &cells, std::size_t n) {
  std::vector<std::size_t> at(n);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (std::size_t v: cells[c])
      at[v] = c;
  }
  return at;
}

// Equitable refinement by the cells of neighbours. Signal links are only
// consulted once the material structure has nothing left to split.
void refine(const Indexed &g, Partition &cells) {
  auto material_key = [&](const std::vector<std::size_t> &at, std::size_t v) {
    std::vector<std::pair<std::size_t, int>> outs, ins;
    for (const auto &[u, tag]: g.out[v])
      outs.emplace_back(at[u], tag);
    for (const auto &[u, tag]: g.in[v])
      ins.emplace_back(at[u], tag);
    std::vector<std::size_t> mates;
    for (std::size_t u: g.mates[v])
      mates.push_back(at[u]);
    std::sort(outs.begin(), outs.end());
    std::sort(ins.begin(), ins.end());
    std::sort(mates.begin(), mates.end());
    return std::make_tuple(outs, ins, mates);
  };
  auto signal_key = [&](const std::vector<std::size_t> &at, std::size_t v) {
    std::vector<std::size_t> outs, ins;
    for (std::size_t u: g.sig_out[v])
      outs.push_back(at[u]);
    for (std::size_t u: g.sig_in[v])
      ins.push_back(at[u]);
    std::sort(outs.begin(), outs.end());
    std::sort(ins.begin(), ins.end());
    return std::make_pair(outs, ins);
  };

  for (bool with_signals: { false, true }) {
    for (;;) {
      const auto at = cell_of(cells, g.size());
      const bool changed = split_cells(cells, [&](std::size_t v) {
        return std::make_pair(material_key(at, v),
                              with_signals ? signal_key(at, v)
                                           : decltype(signal_key(at, v)) {});
      });
      if (!changed)
        break;
    }
  }
}

std::vector<NodeRef> break_ties_in(const FlowsheetGraph &component,
                                   const FlowsheetGraph &context,
                                   const std::vector<std::vector<NodeRef>> &classes) {
  const Indexed g(component, context);

  Partition cells;
  for (const auto &cls: classes) {
    std::vector<std::size_t> cell;
    for (const auto &ref: cls)
      cell.push_back(g.index.at(ref));
    cells.push_back(std::move(cell));
  }

  split_cells(cells, [&](std::size_t v) {
    const NodeRef &ref = g.refs[v];
    const int priority = category_priority(ref);
    long successors = 0;
    if (ref.category == kRawCategory)
      successors = -static_cast<long>(g.descendants(v));
    else if (priority == 3)
      successors = static_cast<long>(g.descendants(v));
    return std::make_tuple(priority, successors, neighbourhood_signature(g, v));
  });

  refine(g, cells);

  // Individualize the lowest-numbered node of the first non-trivial cell.
  for (;;) {
    auto it = std::find_if(cells.begin(), cells.end(),
                           [](const auto &c) { return c.size() > 1; });
    if (it == cells.end())
      break;
    auto pick = std::min_element(it->begin(), it->end(),
                                 [&](std::size_t a, std::size_t b) {
                                   return g.refs[a] < g.refs[b];
                                 });
    const std::size_t chosen = *pick;
    it->erase(pick);
    cells.insert(it, std::vector<std::size_t> { chosen });
    refine(g, cells);
  }

  std::vector<NodeRef> order;
  order.reserve(g.size());
  for (const auto &cell: cells)
    order.push_back(g.refs[cell.front()]);
  return order;
}
}  // namespace

MorganState morgan_iterate(const FlowsheetGraph &component,
                           const MorganOptions &options) {
  std::vector<NodeRef> refs;
  std::map<NodeRef, std::size_t> index;
  for (const auto &[ref, _]: component.nodes()) {
    index.emplace(ref, refs.size());
    refs.push_back(ref);
  }
  const std::size_t n = refs.size();

  std::vector<std::set<std::size_t>> neighbours(n);
  for (const auto &e: component.edges()) {
    const std::size_t s = index.at(e.src), d = index.at(e.dst);
    neighbours[s].insert(d);
    neighbours[d].insert(s);
  }

  auto distinct = [](std::vector<MorganValue> values) {
    std::sort(values.begin(), values.end());
    return static_cast<std::size_t>(
        std::unique(values.begin(), values.end()) - values.begin());
  };

  std::vector<MorganValue> values(n, MorganValue(1));
  std::vector<MorganValue> best = values;
  std::size_t best_count = n == 0 ? 0 : 1;

  const int cap = options.max_iterations > 0 ? options.max_iterations
                                             : static_cast<int>(2 * n);
  int iteration = 0, stagnant = 0;
  while (iteration < cap && stagnant < options.stagnation_window) {
    std::vector<MorganValue> next(n, MorganValue(0));
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t u: neighbours[v])
        next[v] += values[u];
    }
    values = std::move(next);
    ++iteration;

    const std::size_t count = distinct(values);
    if (count > best_count) {
      best = values;
      best_count = count;
      stagnant = 0;
    } else {
      ++stagnant;
    }
  }

  MorganState state;
  state.val_set = best_count;
  state.iteration = iteration;
  std::map<MorganValue, std::vector<NodeRef>> by_value;
  for (std::size_t v = 0; v < n; ++v) {
    state.value.emplace(refs[v], best[v]);
    by_value[best[v]].push_back(refs[v]);
  }
  for (auto &[_, members]: by_value)
    state.classes.push_back(std::move(members));
  return state;
}

std::vector<NodeRef> break_ties(const FlowsheetGraph &component,
                                const std::vector<std::vector<NodeRef>> &classes) {
  return break_ties_in(component, component, classes);
}

RankTable rank_graph(const FlowsheetGraph &graph) {
  const FlowsheetGraph material = graph.without_signals();

  RankTable table;
  std::vector<std::vector<NodeRef>> components;
  for (const auto &members: material_components(graph)) {
    const MorganState morgan = morgan_iterate(material.subgraph(members));
    std::vector<NodeRef> order =
        break_ties_in(graph.subgraph(members), graph, morgan.classes);
    for (std::size_t i = 0; i < order.size(); ++i)
      table.rank[order[i]] = static_cast<int>(i) + 1;
    components.push_back(std::move(order));
  }

  // Standalone strings are only needed to separate equal-size components.
  std::map<std::size_t, std::size_t> size_count;
  for (const auto &c: components)
    ++size_count[c.size()];

  struct Keyed {
    std::size_t size;
    std::string text;
    NodeRef smallest;
    std::vector<NodeRef> order;
  };
  std::vector<Keyed> keyed;
  for (auto &order: components) {
    Keyed k { order.size(), {}, *std::min_element(order.begin(), order.end()),
              {} };
    if (size_count[order.size()] > 1) {
      RankTable single;
      single.rank = table.rank;
      single.subgraph_order = { order };
      k.text = emit(graph, traverse(graph, single));
    }
    k.order = std::move(order);
    keyed.push_back(std::move(k));
  }
  std::sort(keyed.begin(), keyed.end(), [](const Keyed &a, const Keyed &b) {
    if (a.size != b.size)
      return a.size > b.size;
    if (a.text != b.text)
      return a.text < b.text;
    return a.smallest < b.smallest;
  });
  for (auto &k: keyed)
    table.subgraph_order.push_back(std::move(k.order));
  return table;
}

}  // namespace sfiles

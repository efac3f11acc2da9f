//
// sfiles2 - Copyright 2026 The sfiles2 Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <random>
#include <regex>

#include <gtest/gtest.h>

#include "sfiles/canon.h"
#include "sfiles/encode.h"
#include "sfiles/parse.h"
#include "support/fixtures.h"
#include "support/generators.h"

namespace sfiles {
namespace {

std::vector<std::string> names_of(const std::vector<NodeRef> &refs) {
  std::vector<std::string> out;
  for (const auto &r: refs)
    out.push_back(r.name());
  return out;
}

FlowsheetGraph recycle_ladder(int units, int min_gap) {
  FlowsheetGraph g;
  g.add_node("raw-1");
  g.add_node("prod-1");
  for (int i = 1; i <= units; ++i)
    g.add_node("mix-" + std::to_string(i));
  g.add_edge("raw-1", "mix-1");
  for (int i = 1; i < units; ++i)
    g.add_edge("mix-" + std::to_string(i), "mix-" + std::to_string(i + 1));
  g.add_edge("mix-" + std::to_string(units), "prod-1");
  for (int i = 1; i <= units; ++i) {
    for (int j = 1; j + min_gap <= i; ++j)
      g.add_edge("mix-" + std::to_string(i), "mix-" + std::to_string(j));
  }
  return g;
}

TEST(EncodeTest, ReferenceStrings) {
  for (const auto &c: testing::expected_cases())
    EXPECT_EQ(testing::render(c), c.expected) << c.name;
}

TEST(EncodeTest, TrivialGraphs) {
  FlowsheetGraph g;
  EXPECT_EQ(encode(g), "");
  g.add_node("raw-1");
  g.add_node("prod-1");
  g.add_edge("raw-1", "prod-1");
  EXPECT_EQ(encode(g), "(raw)(prod)");
  EXPECT_EQ(encode(g, Notation::kNumbered), "(raw-1)(prod-1)");
}

TEST(EncodeTest, NumberedModeGeneralizesToGeneralizedMode) {
  for (const auto &name: testing::fixture_names()) {
    const FlowsheetGraph g = testing::load_fixture(name);
    EXPECT_EQ(generalize(encode(g, Notation::kNumbered)), encode(g)) << name;
  }
  std::mt19937_64 rng(21);
  for (int i = 0; i < 100; ++i) {
    const FlowsheetGraph g = testing::random_flowsheet(rng);
    EXPECT_EQ(generalize(encode(g, Notation::kNumbered)), encode(g));
  }
}

TEST(EncodeTest, GeneralizeStripsOnlyNodeSuffixes) {
  EXPECT_EQ(generalize("(raw-1)(hex-12/3){1}(prod-2)<%10"),
            "(raw)(hex){1}(prod)<%10");
}

TEST(EncodeTest, NumberedNamesAppearOnce) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 100; ++i) {
    const FlowsheetGraph g = testing::random_flowsheet(rng);
    const std::string s = encode(g, Notation::kNumbered);
    for (const auto &[ref, _]: g.nodes()) {
      const std::string token = "(" + ref.name() + ")";
      const auto first = s.find(token);
      ASSERT_NE(first, std::string::npos) << s;
      EXPECT_EQ(s.find(token, first + 1), std::string::npos) << s;
    }
  }
}

TEST(EncodeTest, MarkersAndBracketsBalance) {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 200; ++i) {
    const FlowsheetGraph g = testing::random_flowsheet(rng);
    const std::string s = encode(g);
    const TokenizeResult lexed = tokenize(s);
    ASSERT_TRUE(lexed.ok()) << s;
    int branch = 0, conv = 0;
    std::map<int, int> recycles, signals;
    for (const Token &t: lexed.tokens) {
      switch (t.kind) {
      case TokenKind::kBranchOpen: ++branch; break;
      case TokenKind::kBranchClose: --branch; break;
      case TokenKind::kConvOpen: ++conv; break;
      case TokenKind::kConvClose: --conv; break;
      case TokenKind::kRecycleOut: ++recycles[t.number]; break;
      case TokenKind::kRecycleIn: --recycles[t.number]; break;
      case TokenKind::kSignalOut: ++signals[t.number]; break;
      case TokenKind::kSignalIn: --signals[t.number]; break;
      default: break;
      }
      ASSERT_GE(branch, 0) << s;
      ASSERT_GE(conv, 0) << s;
    }
    EXPECT_EQ(branch, 0) << s;
    EXPECT_EQ(conv, 0) << s;
    for (const auto &[id, balance]: recycles)
      EXPECT_EQ(balance, 0) << s << " recycle " << id;
    for (const auto &[id, balance]: signals)
      EXPECT_EQ(balance, 0) << s << " signal " << id;
  }
}

TEST(EncodeTest, MarkerIdsFollowFirstAppearance) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 200; ++i) {
    const std::string s = encode(testing::random_flowsheet(rng));
    const TokenizeResult lexed = tokenize(s);
    int next_recycle = 1, next_signal = 1;
    std::set<int> recycles, signals;
    for (const Token &t: lexed.tokens) {
      if (t.kind == TokenKind::kRecycleIn && recycles.insert(t.number).second)
        EXPECT_EQ(t.number, next_recycle++) << s;
      if (t.kind == TokenKind::kSignalOut && signals.insert(t.number).second)
        EXPECT_EQ(t.number, next_signal++) << s;
    }
  }
}

TEST(EncodeTest, Fig1bTraversal) {
  const FlowsheetGraph g = testing::load_fixture("fig1b");
  const EmissionPlan plan = traverse(g, rank_graph(g));
  ASSERT_EQ(plan.trees.size(), 2u);
  EXPECT_EQ(names_of(plan.trees[0].preorder),
            (std::vector<std::string> { "raw-1", "hex-1", "r-1", "mix-1", "v-1",
                                        "dist-1", "prod-1", "splt-1",
                                        "prod-2" }));
  EXPECT_EQ(names_of(plan.trees[1].preorder),
            (std::vector<std::string> { "raw-2", "pp-1" }));
  ASSERT_TRUE(plan.trees[1].merge_edge);
  const PlannedEdge &merge = plan.edges[*plan.trees[1].merge_edge];
  EXPECT_EQ(merge.src.name(), "pp-1");
  EXPECT_EQ(merge.dst.name(), "r-1");
  EXPECT_EQ(merge.role, EdgeRole::kConverging);

  const auto recycle = std::find_if(
      plan.edges.begin(), plan.edges.end(),
      [](const PlannedEdge &e) { return e.role == EdgeRole::kRecycle; });
  ASSERT_NE(recycle, plan.edges.end());
  EXPECT_EQ(recycle->src.name(), "splt-1");
  EXPECT_EQ(recycle->dst.name(), "mix-1");
}

TEST(EncodeTest, CycleProcessStartsAtLowestRankedUnit) {
  const FlowsheetGraph g = testing::load_fixture("fig6");
  const EmissionPlan plan = traverse(g, rank_graph(g));
  ASSERT_EQ(plan.trees.size(), 2u);
  EXPECT_EQ(plan.trees[1].root.name(), "hex-2");
  EXPECT_EQ(names_of(plan.trees[1].preorder),
            (std::vector<std::string> { "hex-2", "comp-1", "hex-1/3", "v-1" }));
  const auto recycle = std::find_if(
      plan.edges.begin(), plan.edges.end(),
      [](const PlannedEdge &e) { return e.role == EdgeRole::kRecycle; });
  ASSERT_NE(recycle, plan.edges.end());
  EXPECT_EQ(recycle->src.name(), "v-1");
  EXPECT_EQ(recycle->dst.name(), "hex-2");
}

TEST(EncodeTest, TwoDigitRecycles) {
  const FlowsheetGraph g = recycle_ladder(6, 2);
  const std::string s = encode(g);
  EXPECT_NE(s.find("%10"), std::string::npos) << s;
  EXPECT_NE(s.find("<%10"), std::string::npos) << s;
  const ParseResult back = parse_sfiles(s);
  ASSERT_TRUE(back.ok()) << s;
  EXPECT_EQ(encode(*back.graph), s);
}

TEST(EncodeTest, MoreThanNinetyNineRecyclesThrows) {
  EXPECT_THROW(encode(recycle_ladder(16, 2)), EncodeError);
}

TEST(EncodeTest, LegacyStyleRejectsBranchedInlets) {
  const FlowsheetGraph g = testing::load_fixture("appendix");
  const EmissionPlan plan = traverse(g, rank_graph(g));
  EXPECT_THROW(emit(g, plan, { Notation::kGeneralized,
                               ConvergingStyle::kLegacyBackward }),
               EncodeError);
}

TEST(EncodeTest, SeveralConvergingGroupsIntoOneUnit) {
  FlowsheetGraph g;
  for (const char *n: { "raw-1", "raw-2", "raw-3", "pp-1", "v-1", "mix-1",
                        "prod-1" })
    g.add_node(n);
  g.add_edge("raw-1", "mix-1");
  g.add_edge("raw-2", "pp-1");
  g.add_edge("pp-1", "mix-1");
  g.add_edge("raw-3", "v-1");
  g.add_edge("v-1", "mix-1");
  g.add_edge("mix-1", "prod-1");
  const std::string s = encode(g);
  EXPECT_EQ(std::count(s.begin(), s.end(), '&'), 4) << s;
  std::size_t groups = 0;
  for (auto at = s.find("<&|"); at != std::string::npos; at = s.find("<&|", at + 1))
    ++groups;
  EXPECT_EQ(groups, 2u) << s;
  const ParseResult back = parse_sfiles(s);
  ASSERT_TRUE(back.ok()) << s;
  EXPECT_EQ(encode(*back.graph), s);
}

TEST(EncodeTest, SignalsOnlyAddMarkers) {
  for (const auto &name: testing::fixture_names()) {
    const FlowsheetGraph g = testing::load_fixture(name);
    const std::string with = encode(g);
    const std::string without = encode(g.without_signals());
    EXPECT_EQ(std::regex_replace(with, std::regex("<?_[0-9]+"), ""), without)
        << name;
  }
}

TEST(EncodeTest, TreeLimitRendersPrefix) {
  const FlowsheetGraph g = testing::load_fixture("fig1b");
  const EmissionPlan plan = traverse(g, rank_graph(g));
  EXPECT_EQ(emit(g, plan, { Notation::kGeneralized,
                            ConvergingStyle::kInsertion, 0 }),
            "");
}

}  // namespace
}  // namespace sfiles

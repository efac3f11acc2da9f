//
// sfiles2 - Copyright 2026 The sfiles2 Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SFILES_TESTS_FIXTURES_H_
#define SFILES_TESTS_FIXTURES_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sfiles/encode.h"
#include "sfiles/graph.h"

namespace sfiles::testing {

std::string fixture_path(std::string_view name);
std::string read_file(const std::string &path);

// tests/fixtures/<name>.json
FlowsheetGraph load_fixture(std::string_view name);

// Names of all graph fixtures, sorted.
std::vector<std::string> fixture_names();

FlowsheetGraph strip_tags(const FlowsheetGraph &graph);

// One expected rendering from tests/fixtures/expected.json.
struct ExpectedCase {
  std::string name;
  std::string fixture;
  bool strip_tags = false;
  Notation notation = Notation::kGeneralized;
  ConvergingStyle style = ConvergingStyle::kInsertion;
  std::optional<std::size_t> tree_limit;
  std::string expected;
  // Listing as printed, when it differs from `expected`.
  std::optional<std::string> source;
};

std::vector<ExpectedCase> expected_cases();

// Encodes the case's fixture with the case's options.
std::string render(const ExpectedCase &c);

}  // namespace sfiles::testing

#endif  // SFILES_TESTS_FIXTURES_H_

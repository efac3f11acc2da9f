//
// sfiles2 - Copyright 2026 The sfiles2 Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SFILES_VALIDATE_H_
#define SFILES_VALIDATE_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sfiles/graph.h"
#include "sfiles/parse.h"

namespace sfiles {

// Typical degree of a unit operation: exact, a lower bound, or unspecified.
struct DegreeSpec {
  enum class Kind { kExact, kAtLeast, kAny };

  Kind kind = Kind::kAny;
  int value = 0;

  static constexpr DegreeSpec exact(int v) { return { Kind::kExact, v }; }
  static constexpr DegreeSpec at_least(int v) { return { Kind::kAtLeast, v }; }
  static constexpr DegreeSpec any() { return {}; }

  bool admits(int degree) const;
  // "1", ">=2" or "-".
  std::string to_string() const;
};

struct UnitOp {
  std::string_view abbreviation;
  std::string_view name;
  std::string_view ontology_term;
  DegreeSpec in;
  DegreeSpec out;
  // Term added on top of the base ontology.
  bool extension = false;
};

inline constexpr std::string_view kUnknownCategory = "X";

class UnitOpRegistry {
public:
  // The built-in table of unit operations.
  static const UnitOpRegistry &standard();

  const std::vector<UnitOp> &entries() const { return entries_; }
  const UnitOp *find(std::string_view abbreviation) const;
  bool contains(std::string_view abbreviation) const {
    return find(abbreviation) != nullptr;
  }

  // Array of objects, one per entry, in table order.
  std::string to_json() const;

private:
  explicit UnitOpRegistry(std::vector<UnitOp> entries);

  std::vector<UnitOp> entries_;
};

namespace diag {
inline constexpr std::string_view kUnknownUnit = "unknown-unit";
inline constexpr std::string_view kInDegree = "atypical-in-degree";
inline constexpr std::string_view kOutDegree = "atypical-out-degree";
}  // namespace diag

struct ValidationIssue {
  Severity severity = Severity::kWarning;
  std::string code;
  NodeRef node;
  std::string message;
};

// Degrees used for the typical-degree check. Signal connections and the
// material link of a mounted control unit (one without material outlet) are
// ignored, except on the control unit itself.
int checked_in_degree(const FlowsheetGraph &graph, const NodeRef &ref);
int checked_out_degree(const FlowsheetGraph &graph, const NodeRef &ref);

/**
 * Soft check against the registry. Degree deviations are always warnings.
 * Unknown categories are errors when `strict`, otherwise warnings and the
 * unit is checked as `X`.
 */
std::vector<ValidationIssue> check_graph(const FlowsheetGraph &graph,
                                         const UnitOpRegistry &registry,
                                         bool strict = true);

bool has_errors(const std::vector<ValidationIssue> &issues);

}  // namespace sfiles

#endif  // SFILES_VALIDATE_H_

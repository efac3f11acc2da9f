//
// sfiles2 - Copyright 2026 The sfiles2 Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sfiles/validate.h"

#include <algorithm>
#include <set>

#include <json.hpp>

namespace sfiles {
namespace {
constexpr DegreeSpec E(int v) {
  return DegreeSpec::exact(v);
}

constexpr DegreeSpec GE(int v) {
  return DegreeSpec::at_least(v);
}

std::vector<UnitOp> standard_entries() {
  return {
    { "abs", "Absorption", "AbsorptionColumn", E(2), E(2) },
    { "blwr", "Blower", "Blower", E(1), E(1), true },
    { "centr", "Centrifugation", "CentrifugationUnit", E(1), E(2) },
    { "comp", "Compressor", "Compressor", E(1), E(1), true },
    { "cond", "Condenser (incl. splitting)", "Condenser", E(1), E(2) },
    { "C", "Control unit", "Control", GE(1), GE(0) },
    { "cycl", "Cyclone", "Cyclone", E(1), E(2) },
    { "dist", "Distillation (incl. reboiler and condenser)",
      "DistillationSystem", GE(1), GE(2) },
    { "egclean", "Electrical gas cleaning", "ElectricalGasCleaningUnit", E(1),
      E(2) },
    { "expand", "Expander", "Expander", E(1), E(1), true },
    { "extr", "Extraction", "ExtractionUnit", E(2), E(2) },
    { "flash", "Flash", "FlashUnit", E(1), GE(2) },
    { "gfil", "Gas filtration", "GasFilter", E(1), E(2) },
    { "hcycl", "Hydrocyclone", "Hydrocyclone", E(1), E(2) },
    { "hex", "Heat exchanger", "HeatExchanger", GE(1), GE(1) },
    { "lfil", "Liquid filtration", "LiquidFilter", E(1), E(2) },
    { "mix", "Mixing", "MixingUnit", GE(1), E(1) },
    { "orif", "Orifice plate", "OrificePlate", E(1), E(1), true },
    { "pipe", "Pipe", "Pipe", E(1), E(1), true },
    { "pp", "Pump", "Pump", E(1), E(1), true },
    { "prod", "Product stream", "OutputProduct", E(1), E(0) },
    { "r", "Reactor", "ChemicalReactor", GE(1), GE(1) },
    { "raw", "Raw material", "RawMaterial", E(0), E(1) },
    { "reb", "Reboiler (incl. splitting)", "Reboiler", E(1), E(2) },
    { "rect", "Rectification (incl. reboiler and condenser)",
      "RectificationSystem", GE(1), GE(2) },
    { "scrub", "Scrubbing", "Scrubber", E(2), E(2) },
    { "sep", "Separation (no further sub-specification)", "SeparationUnit",
      GE(1), GE(2) },
    { "splt", "Splitting", "SplittingUnit", E(1), GE(2) },
    { "strip", "Stripping", "StrippingSystem", E(2), E(2), true },
    { "tank", "Storage", "StorageUnit", GE(0), GE(1), true },
    { "v", "Valve", "Valve", E(1), E(1), true },
    { kUnknownCategory, "Unknown unit operation", "-", DegreeSpec::any(),
      DegreeSpec::any() },
  };
}

bool is_mounted_control(const FlowsheetGraph &graph, const NodeRef &ref) {
  return ref.category == kControlCategory
         && graph.out_degree(ref, EdgeKind::kMaterial) == 0;
}

nlohmann::json degree_json(const DegreeSpec &spec) {
  switch (spec.kind) {
  case DegreeSpec::Kind::kExact:
    return { { "exact", spec.value } };
  case DegreeSpec::Kind::kAtLeast:
    return { { "at_least", spec.value } };
  case DegreeSpec::Kind::kAny:
    break;
  }
  return nullptr;
}
}  // namespace

bool DegreeSpec::admits(int degree) const {
  switch (kind) {
  case Kind::kExact:
    return degree == value;
  case Kind::kAtLeast:
    return degree >= value;
  case Kind::kAny:
    break;
  }
  return true;
}

std::string DegreeSpec::to_string() const {
  switch (kind) {
  case Kind::kExact:
    return std::to_string(value);
  case Kind::kAtLeast:
    return ">=" + std::to_string(value);
  case Kind::kAny:
    break;
  }
  return "-";
}

UnitOpRegistry::UnitOpRegistry(std::vector<UnitOp> entries)
    : entries_(std::move(entries)) { }

const UnitOpRegistry &UnitOpRegistry::standard() {
  static const UnitOpRegistry registry(standard_entries());
  return registry;
}

const UnitOp *UnitOpRegistry::find(std::string_view abbreviation) const {
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [&](const UnitOp &op) {
                           return op.abbreviation == abbreviation;
                         });
  return it == entries_.end() ? nullptr : &*it;
}

std::string UnitOpRegistry::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const UnitOp &op: entries_) {
    out.push_back({
        { "abbreviation", op.abbreviation },
        { "name", op.name },
        { "ontology_term", op.ontology_term },
        { "extension", op.extension },
        { "in_degree", degree_json(op.in) },
        { "out_degree", degree_json(op.out) },
    });
  }
  return out.dump(2) + "\n";
}

int checked_in_degree(const FlowsheetGraph &graph, const NodeRef &ref) {
  const bool control = ref.category == kControlCategory;
  int n = 0;
  for (const Edge &e: graph.edges()) {
    if (e.dst != ref)
      continue;
    if (control || (e.is_material() && !is_mounted_control(graph, e.src)))
      ++n;
  }
  return n;
}

int checked_out_degree(const FlowsheetGraph &graph, const NodeRef &ref) {
  const bool control = ref.category == kControlCategory;
  int n = 0;
  for (const Edge &e: graph.edges()) {
    if (e.src != ref)
      continue;
    if (control || (e.is_material() && !is_mounted_control(graph, e.dst)))
      ++n;
  }
  return n;
}

std::vector<ValidationIssue> check_graph(const FlowsheetGraph &graph,
                                         const UnitOpRegistry &registry,
                                         bool strict) {
  std::vector<ValidationIssue> issues;
  for (const auto &[ref, attr]: graph.nodes()) {
    const UnitOp *op = registry.find(ref.category);
    if (!op) {
      issues.push_back({ strict ? Severity::kError : Severity::kWarning,
                         std::string(diag::kUnknownUnit), ref,
                         ref.name() + ": unknown unit operation '"
                             + ref.category + "'"
                             + (strict ? "" : ", checked as X") });
      if (strict)
        continue;
      op = registry.find(kUnknownCategory);
      if (!op)
        continue;
    }

    const int in = checked_in_degree(graph, ref);
    const int out = checked_out_degree(graph, ref);
    if (!op->in.admits(in))
      issues.push_back({ Severity::kWarning, std::string(diag::kInDegree), ref,
                         ref.name() + ": in-degree " + std::to_string(in)
                             + ", expected " + op->in.to_string() });
    if (!op->out.admits(out))
      issues.push_back({ Severity::kWarning, std::string(diag::kOutDegree),
                         ref,
                         ref.name() + ": out-degree " + std::to_string(out)
                             + ", expected " + op->out.to_string() });
  }
  return issues;
}

bool has_errors(const std::vector<ValidationIssue> &issues) {
  return std::any_of(issues.begin(), issues.end(),
                     [](const ValidationIssue &i) {
                       return i.severity == Severity::kError;
                     });
}

}  // namespace sfiles

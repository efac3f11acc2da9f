//
// sfiles2 - Copyright 2026 The sfiles2 Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SFILES_GRAPH_JSON_H_
#define SFILES_GRAPH_JSON_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sfiles/graph.h"

namespace sfiles {

// Malformed or schema-violating graph document. `where` is "line:col" for
// syntax errors or a JSON pointer such as "/edges/3/kind" for schema errors.
class SchemaError: public std::runtime_error {
public:
  SchemaError(std::string where, const std::string &what)
      : std::runtime_error(where + ": " + what), where_(std::move(where)) { }

  const std::string &where() const noexcept { return where_; }

private:
  std::string where_;
};

struct JsonLoadOptions {
  // Reject unknown object keys instead of warning about them.
  bool strict = true;
};

/**
 * Reads a graph document:
 *
 *   {"nodes": [{"name": "C-1", "ctrl": "FC"}, ...],
 *    "edges": [{"src": "raw-1", "dst": "C-1", "kind": "material",
 *               "tag": null}, ...]}
 *
 * Throws SchemaError on syntax or schema problems and GraphError when the
 * document describes a graph that violates the model invariants. Non-fatal
 * findings (unknown keys in lenient mode) are appended to `warnings`.
 */
FlowsheetGraph load_json(std::string_view text,
                         const JsonLoadOptions &options = {},
                         std::vector<std::string> *warnings = nullptr);

// Canonical document: nodes sorted by name, edges by (src, dst, kind), keys
// sorted, two-space indentation, trailing newline.
std::string save_json(const FlowsheetGraph &graph);

}  // namespace sfiles

#endif  // SFILES_GRAPH_JSON_H_

//
// sfiles2 - Copyright 2026 The sfiles2 Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SFILES_PARSE_H_
#define SFILES_PARSE_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sfiles/graph.h"

namespace sfiles {

// Half-open byte range [begin, end) in the input.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const Span &, const Span &) = default;
};

enum class TokenKind {
  kNode,           // (name)
  kBranchOpen,     // [
  kBranchClose,    // ]
  kConvOpen,       // <&|
  kConvConnector,  // &
  kConvClose,      // |
  kTrainSep,       // n|
  kBraceTag,       // {text}
  kRecycleOut,     // 1 or %12
  kRecycleIn,      // <1 or <%12
  kSignalOut,      // _1
  kSignalIn,       // <_1
};

std::string_view to_string(TokenKind kind);

struct Token {
  TokenKind kind;
  // Node name or brace content without delimiters; empty otherwise.
  std::string text;
  // Marker number for recycle and signal tokens.
  int number = 0;
  Span span;
};

enum class Severity { kError, kWarning };

// Stable diagnostic codes.
namespace diag {
inline constexpr std::string_view kIllegalChar = "illegal-character";
inline constexpr std::string_view kUnterminatedNode = "unterminated-node";
inline constexpr std::string_view kUnterminatedBrace = "unterminated-brace";
inline constexpr std::string_view kBadNodeName = "bad-node-name";
inline constexpr std::string_view kBadNumber = "bad-marker-number";
inline constexpr std::string_view kUnclosedBranch = "unclosed-branch";
inline constexpr std::string_view kUnexpectedClose = "unexpected-close";
inline constexpr std::string_view kEmptyTrain = "empty-train";
inline constexpr std::string_view kUnclosedConverging = "unclosed-converging";
inline constexpr std::string_view kConnectorOutside = "connector-outside-group";
inline constexpr std::string_view kDuplicateConnector = "duplicate-connector";
inline constexpr std::string_view kMissingConnector = "missing-connector";
inline constexpr std::string_view kMarkWithoutNode = "mark-without-node";
inline constexpr std::string_view kDanglingRecycleIn = "dangling-recycle-target";
inline constexpr std::string_view kUnclosedRecycle = "unclosed-recycle";
inline constexpr std::string_view kDuplicateMarker = "duplicate-marker";
inline constexpr std::string_view kUnclosedSignal = "unclosed-signal";
inline constexpr std::string_view kUnknownTag = "unknown-tag";
inline constexpr std::string_view kMisplacedTag = "misplaced-tag";
inline constexpr std::string_view kDuplicateTag = "duplicate-tag";
inline constexpr std::string_view kMissingCtrlCode = "missing-ctrl-code";
inline constexpr std::string_view kInvariant = "graph-invariant";
inline constexpr std::string_view kNumbering = "inconsistent-numbering";
}  // namespace diag

struct Diagnostic {
  Severity severity = Severity::kError;
  std::string code;
  std::string message;
  Span span;
};

struct TokenizeResult {
  std::vector<Token> tokens;
  // At most one error; lexing stops there.
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return diagnostics.empty(); }
};

// Greedy longest-match lexer. Token spans are contiguous and cover the input.
TokenizeResult tokenize(std::string_view text);

struct ParseOptions {
  // Unknown brace content is an error rather than an ignored warning.
  bool strict = true;
};

struct ParseResult {
  std::optional<FlowsheetGraph> graph;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return graph.has_value(); }
  const Diagnostic *first_error() const;
};

/**
 * Rebuilds the flowsheet graph from a token stream. Units are numbered per
 * category in order of occurrence; all slots of one grouped heat exchanger
 * share the number of its first slot. Numbered input keeps its own numbers
 * when they are complete and consistent.
 */
ParseResult parse(std::span<const Token> tokens,
                  const ParseOptions &options = {});

// tokenize + parse.
ParseResult parse_sfiles(std::string_view text,
                         const ParseOptions &options = {});

// Renders diagnostics as `code: message` lines with a caret under the span.
std::string format_diagnostics(std::string_view text,
                               const std::vector<Diagnostic> &diagnostics);

struct RoundtripReport {
  bool ok = true;
  std::string encoded;
  std::vector<std::string> problems;
};

/**
 * Encodes, parses back and re-encodes. Passes when the re-encoding is
 * identical and the reconstruction matches the input in per-category node
 * counts, control codes, edge kinds and stream tag counts.
 */
RoundtripReport roundtrip_check(const FlowsheetGraph &graph);

}  // namespace sfiles

#endif  // SFILES_PARSE_H_

//
// sfiles2 - Copyright 2026 The sfiles2 Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sfiles/parse.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <tuple>

#include "sfiles/encode.h"

namespace sfiles {
namespace {
bool is_digit(char c) {
  return c >= '0' && c <= '9';
}

bool all_digits(std::string_view text) {
  return !text.empty() && std::all_of(text.begin(), text.end(), is_digit);
}

int to_int(std::string_view digits) {
  int value = 0;
  for (char c: digits)
    value = value * 10 + (c - '0');
  return value;
}

Diagnostic error(std::string_view code, std::string message, Span span) {
  return { Severity::kError, std::string(code), std::move(message), span };
}

class Lexer {
public:
  explicit Lexer(std::string_view text): text_(text) { }

  TokenizeResult run() {
    while (pos_ < text_.size() && result_.ok())
      next();
    return std::move(result_);
  }

private:
  void next() {
    const std::size_t start = pos_;
    const char c = text_[pos_];
    switch (c) {
    case '(':
      delimited(')', TokenKind::kNode, diag::kUnterminatedNode, "node");
      return;
    case '{':
      delimited('}', TokenKind::kBraceTag, diag::kUnterminatedBrace, "brace");
      return;
    case '[':
      single(TokenKind::kBranchOpen);
      return;
    case ']':
      single(TokenKind::kBranchClose);
      return;
    case '&':
      single(TokenKind::kConvConnector);
      return;
    case '|':
      single(TokenKind::kConvClose);
      return;
    case 'n':
      if (peek(1) == '|') {
        emit(TokenKind::kTrainSep, start, start + 2);
        return;
      }
      break;
    case '<':
      if (peek(1) == '&' && peek(2) == '|') {
        emit(TokenKind::kConvOpen, start, start + 3);
        return;
      }
      if (peek(1) == '_') {
        digit_run(TokenKind::kSignalIn, start, start + 2);
        return;
      }
      if (peek(1) == '%') {
        two_digits(TokenKind::kRecycleIn, start, start + 2);
        return;
      }
      if (is_digit(peek(1))) {
        emit(TokenKind::kRecycleIn, start, start + 2, to_int(text_.substr(start + 1, 1)));
        return;
      }
      break;
    case '%':
      two_digits(TokenKind::kRecycleOut, start, start + 1);
      return;
    case '_':
      digit_run(TokenKind::kSignalOut, start, start + 1);
      return;
    default:
      if (is_digit(c)) {
        emit(TokenKind::kRecycleOut, start, start + 1, c - '0');
        return;
      }
      break;
    }
    fail(diag::kIllegalChar,
         "unexpected character '" + std::string(1, c) + "'",
         { start, start + 1 });
  }

  char peek(std::size_t ahead) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void single(TokenKind kind) { emit(kind, pos_, pos_ + 1); }

  void delimited(char close, TokenKind kind, std::string_view code,
                 const char *what) {
    const std::size_t start = pos_;
    std::size_t i = start + 1;
    while (i < text_.size() && text_[i] != close) {
      if (std::string_view("()[]{}<>&|").find(text_[i]) != std::string_view::npos
          || std::isspace(static_cast<unsigned char>(text_[i])))
        break;
      ++i;
    }
    if (i >= text_.size() || text_[i] != close) {
      fail(code, std::string("unterminated ") + what, { start, i });
      return;
    }
    Token token { kind, std::string(text_.substr(start + 1, i - start - 1)),
                  0, { start, i + 1 } };
    result_.tokens.push_back(std::move(token));
    pos_ = i + 1;
  }

  void digit_run(TokenKind kind, std::size_t start, std::size_t digits_at) {
    std::size_t i = digits_at;
    while (i < text_.size() && is_digit(text_[i]))
      ++i;
    if (i == digits_at || i - digits_at > 6) {
      fail(diag::kBadNumber, "expected a signal number", { start, std::max(i, digits_at) });
      return;
    }
    emit(kind, start, i, to_int(text_.substr(digits_at, i - digits_at)));
  }

  void two_digits(TokenKind kind, std::size_t start, std::size_t digits_at) {
    std::size_t end = digits_at;
    while (end < digits_at + 2 && end < text_.size() && is_digit(text_[end]))
      ++end;
    if (end != digits_at + 2) {
      fail(diag::kBadNumber, "'%' must be followed by exactly two digits",
           { start, std::max(end, digits_at) });
      return;
    }
    emit(kind, start, digits_at + 2, to_int(text_.substr(digits_at, 2)));
  }

  void emit(TokenKind kind, std::size_t begin, std::size_t end,
            int number = 0) {
    result_.tokens.push_back({ kind, {}, number, { begin, end } });
    pos_ = end;
  }

  void fail(std::string_view code, std::string message, Span span) {
    result_.diagnostics.push_back(error(code, std::move(message), span));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  TokenizeResult result_;
};

struct Stop { };

class Parser {
public:
  Parser(std::span<const Token> tokens, const ParseOptions &options)
      : tokens_(tokens), options_(options) { }

  ParseResult run() {
    try {
      for (const Token &token: tokens_)
        step(token);
      finish();
      result_.graph = build();
    } catch (const Stop &) {
      result_.graph.reset();
    }
    return std::move(result_);
  }

private:
  struct PNode {
    std::string category;
    std::optional<int> number;
    std::optional<int> sub;
    std::optional<std::string> ctrl;
    std::optional<int> group;
    Span span;
  };

  struct PEdge {
    std::size_t src;
    std::size_t dst;
    EdgeAttr attr;
    Span span;
  };

  struct Frame {
    bool converging;
    std::size_t saved;
    std::optional<std::size_t> connector;
    std::size_t nodes_at_open;
    Span open;
  };

  struct OpenMarker {
    std::size_t node;
    bool target_side;
    std::optional<StreamTag> tag;
    Span span;
  };

  struct PendingTag {
    StreamTag tag;
    Span span;
  };

  [[noreturn]] void fail(std::string_view code, std::string message,
                         Span span) {
    result_.diagnostics.push_back(error(code, std::move(message), span));
    throw Stop {};
  }

  void warn(std::string_view code, std::string message, Span span) {
    result_.diagnostics.push_back(
        { Severity::kWarning, std::string(code), std::move(message), span });
  }

  std::size_t need_current(const Token &token) {
    if (!current_)
      fail(diag::kMarkWithoutNode,
           "'" + std::string(to_string(token.kind))
               + "' must follow a unit operation",
           token.span);
    return *current_;
  }

  void no_pending_tag() {
    if (pending_)
      fail(diag::kMisplacedTag,
           "stream tag must directly precede the connection it labels",
           pending_->span);
  }

  std::optional<StreamTag> take_tag() {
    std::optional<StreamTag> tag;
    if (pending_)
      tag = pending_->tag;
    pending_.reset();
    return tag;
  }

  void step(const Token &token) {
    switch (token.kind) {
    case TokenKind::kNode:
      node(token);
      break;
    case TokenKind::kBraceTag:
      brace(token);
      break;
    case TokenKind::kRecycleIn:
    case TokenKind::kRecycleOut:
      marker(token, recycles_, EdgeKind::kMaterial);
      break;
    case TokenKind::kSignalIn:
    case TokenKind::kSignalOut:
      marker(token, signals_, EdgeKind::kSignal);
      break;
    case TokenKind::kBranchOpen: {
      const std::size_t from = need_current(token);
      no_pending_tag();
      stack_.push_back({ false, from, std::nullopt, nodes_.size(), token.span });
      break;
    }
    case TokenKind::kBranchClose: {
      no_pending_tag();
      if (stack_.empty() || stack_.back().converging)
        fail(diag::kUnexpectedClose,
             stack_.empty() ? "']' without an open branch"
                            : "']' inside a converging group; expected '|'",
             token.span);
      close_frame(token);
      break;
    }
    case TokenKind::kConvOpen: {
      const std::size_t merge = need_current(token);
      no_pending_tag();
      stack_.push_back({ true, merge, std::nullopt, nodes_.size(), token.span });
      current_.reset();
      break;
    }
    case TokenKind::kConvConnector: {
      auto frame = std::find_if(stack_.rbegin(), stack_.rend(),
                                [](const Frame &f) { return f.converging; });
      if (frame == stack_.rend())
        fail(diag::kConnectorOutside,
             "'&' is only valid inside a '<&|...|' group", token.span);
      const std::size_t from = need_current(token);
      if (frame->connector)
        fail(diag::kDuplicateConnector,
             "converging group already has a connecting unit", token.span);
      frame->connector = from;
      add_edge(from, frame->saved, EdgeAttr::material(take_tag()), token.span);
      break;
    }
    case TokenKind::kConvClose: {
      no_pending_tag();
      if (stack_.empty())
        fail(diag::kUnexpectedClose, "'|' without an open converging group",
             token.span);
      if (!stack_.back().converging)
        fail(diag::kUnclosedBranch, "branch not closed before '|'",
             stack_.back().open);
      if (!stack_.back().connector)
        fail(diag::kMissingConnector,
             "converging group has no '&' marking its connecting unit",
             stack_.back().open);
      close_frame(token);
      break;
    }
    case TokenKind::kTrainSep:
      no_pending_tag();
      if (!stack_.empty())
        unclosed(stack_.back());
      if (nodes_.size() == train_start_)
        fail(diag::kEmptyTrain, "empty mass train", token.span);
      current_.reset();
      train_start_ = nodes_.size();
      last_separator_ = token.span;
      break;
    }
  }

  void close_frame(const Token &token) {
    const Frame frame = stack_.back();
    if (nodes_.size() == frame.nodes_at_open)
      fail(diag::kEmptyTrain, "empty group", { frame.open.begin, token.span.end });
    stack_.pop_back();
    current_ = frame.saved;
  }

  [[noreturn]] void unclosed(const Frame &frame) {
    if (frame.converging)
      fail(diag::kUnclosedConverging, "unclosed converging group", frame.open);
    fail(diag::kUnclosedBranch, "unclosed branch", frame.open);
  }

  void node(const Token &token) {
    PNode n;
    n.span = token.span;
    if (token.text.find('-') != std::string::npos) {
      try {
        NodeRef ref = NodeRef::parse(token.text);
        n.category = std::move(ref.category);
        n.number = ref.number;
        n.sub = ref.sub;
      } catch (const GraphError &e) {
        fail(diag::kBadNodeName, e.what(), token.span);
      }
    } else if (valid_category(token.text)) {
      n.category = token.text;
    } else {
      fail(diag::kBadNodeName, "invalid unit name '" + token.text + "'",
           token.span);
    }

    nodes_.push_back(std::move(n));
    const std::size_t id = nodes_.size() - 1;
    if (current_) {
      add_edge(*current_, id, EdgeAttr::material(take_tag()), token.span);
    } else {
      no_pending_tag();
    }
    current_ = id;
  }

  void brace(const Token &token) {
    const std::size_t at = need_current(token);
    PNode &n = nodes_[at];
    const std::string &text = token.text;

    if (auto tag = stream_tag_from(text)) {
      if (pending_)
        fail(diag::kDuplicateTag, "two stream tags on one connection",
             token.span);
      pending_ = PendingTag { *tag, token.span };
      return;
    }
    no_pending_tag();
    if (all_digits(text)) {
      if (n.category != kHexCategory)
        fail(diag::kMisplacedTag,
             "equipment group number on a non heat exchanger unit",
             token.span);
      if (n.group)
        fail(diag::kDuplicateTag, "unit already has an equipment group",
             token.span);
      if (text.size() > 6)
        fail(diag::kBadNumber, "equipment group number too large", token.span);
      n.group = to_int(text);
      return;
    }
    if (n.category == kControlCategory && valid_ctrl_code(text)) {
      if (n.ctrl)
        fail(diag::kDuplicateTag, "control unit already has a letter code",
             token.span);
      n.ctrl = text;
      return;
    }
    if (options_.strict)
      fail(diag::kUnknownTag, "unknown tag '{" + text + "}'", token.span);
    warn(diag::kUnknownTag, "ignored unknown tag '{" + text + "}'",
         token.span);
  }

  void marker(const Token &token, std::map<int, OpenMarker> &open,
              EdgeKind kind) {
    const std::size_t at = need_current(token);
    const bool target_side = token.kind == TokenKind::kRecycleIn
                             || token.kind == TokenKind::kSignalIn;
    std::optional<StreamTag> tag;
    if (kind == EdgeKind::kMaterial && !target_side)
      tag = take_tag();
    else
      no_pending_tag();

    auto it = open.find(token.number);
    if (it == open.end()) {
      open.emplace(token.number, OpenMarker { at, target_side, tag, token.span });
      return;
    }
    if (it->second.target_side == target_side)
      fail(diag::kDuplicateMarker,
           "marker " + std::to_string(token.number) + " is already open",
           token.span);

    const OpenMarker other = it->second;
    open.erase(it);
    const std::size_t src = target_side ? other.node : at;
    const std::size_t dst = target_side ? at : other.node;
    EdgeAttr attr { kind, target_side ? other.tag : tag };
    add_edge(src, dst, attr, token.span);
  }

  void add_edge(std::size_t src, std::size_t dst, EdgeAttr attr, Span span) {
    edges_.push_back({ src, dst, attr, span });
  }

  void finish() {
    no_pending_tag();
    if (!stack_.empty())
      unclosed(stack_.back());
    if (!nodes_.empty() && nodes_.size() == train_start_)
      fail(diag::kEmptyTrain, "empty mass train after separator",
           last_separator_);

    auto report_open = [&](const std::map<int, OpenMarker> &open, bool signal) {
      if (open.empty())
        return;
      const auto first = std::min_element(
          open.begin(), open.end(), [](const auto &a, const auto &b) {
            return a.second.span.begin < b.second.span.begin;
          });
      const OpenMarker &m = first->second;
      const std::string id = std::to_string(first->first);
      if (signal)
        fail(diag::kUnclosedSignal, "signal " + id + " has no partner", m.span);
      if (m.target_side)
        fail(diag::kDanglingRecycleIn,
             "recycle target <" + id + " is never closed", m.span);
      fail(diag::kUnclosedRecycle, "recycle " + id + " is never closed",
           m.span);
    };
    report_open(recycles_, false);
    report_open(signals_, true);

    for (const PNode &n: nodes_) {
      if (n.category == kControlCategory && !n.ctrl)
        fail(diag::kMissingCtrlCode, "control unit needs a letter code tag",
             n.span);
    }
  }

  std::optional<std::vector<NodeRef>> explicit_names() const {
    std::vector<NodeRef> refs;
    for (const PNode &n: nodes_) {
      if (!n.number)
        return std::nullopt;
      refs.push_back({ n.category, *n.number, n.sub });
    }

    std::set<NodeRef> seen;
    std::set<std::pair<std::string, int>> plain, slotted;
    for (const NodeRef &r: refs) {
      if (!seen.insert(r).second)
        return std::nullopt;
      (r.sub ? slotted : plain).insert({ r.category, r.number });
    }
    for (const auto &key: plain) {
      if (slotted.contains(key))
        return std::nullopt;
    }

    // A `{k}` group must coincide with one heat exchanger number.
    std::map<int, int> number_of_group;
    std::map<int, std::optional<int>> group_of_number;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const PNode &n = nodes_[i];
      if (n.category != kHexCategory)
        continue;
      if (n.group && !n.sub)
        return std::nullopt;
      if (!n.sub)
        continue;
      auto [g, g_new] = number_of_group.try_emplace(n.group.value_or(-1),
                                                    *n.number);
      if (n.group && g->second != *n.number)
        return std::nullopt;
      auto [k, k_new] = group_of_number.try_emplace(*n.number, n.group);
      if (k->second != n.group)
        return std::nullopt;
    }
    return refs;
  }

  std::vector<NodeRef> occurrence_names() const {
    std::map<std::string, int> counter;
    std::map<int, int> group_number, group_slots;
    std::vector<NodeRef> refs;
    for (const PNode &n: nodes_) {
      if (n.group) {
        auto [it, fresh] = group_number.try_emplace(*n.group, 0);
        if (fresh)
          it->second = ++counter[n.category];
        refs.push_back({ n.category, it->second, ++group_slots[*n.group] });
      } else {
        refs.push_back({ n.category, ++counter[n.category], std::nullopt });
      }
    }
    return refs;
  }

  FlowsheetGraph build() {
    std::vector<NodeRef> refs;
    const bool any_number = std::any_of(nodes_.begin(), nodes_.end(),
                                        [](const PNode &n) {
                                          return n.number.has_value();
                                        });
    if (auto names = explicit_names()) {
      refs = std::move(*names);
    } else {
      if (any_number)
        warn(diag::kNumbering,
             "unit numbers are incomplete or inconsistent; renumbered by "
             "occurrence",
             nodes_.front().span);
      refs = occurrence_names();
    }

    FlowsheetGraph graph;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      try {
        graph.add_node(refs[i], NodeAttr { nodes_[i].ctrl });
      } catch (const GraphError &e) {
        fail(diag::kInvariant, e.what(), nodes_[i].span);
      }
    }
    for (const PEdge &e: edges_) {
      try {
        graph.add_edge(refs[e.src], refs[e.dst], e.attr);
      } catch (const GraphError &err) {
        fail(diag::kInvariant, err.what(), e.span);
      }
    }
    return graph;
  }

  std::span<const Token> tokens_;
  const ParseOptions &options_;
  ParseResult result_;

  std::vector<PNode> nodes_;
  std::vector<PEdge> edges_;
  std::optional<std::size_t> current_;
  std::optional<PendingTag> pending_;
  std::vector<Frame> stack_;
  std::map<int, OpenMarker> recycles_, signals_;
  std::size_t train_start_ = 0;
  Span last_separator_;
};
}  // namespace

std::string_view to_string(TokenKind kind) {
  switch (kind) {
  case TokenKind::kNode:
    return "(unit)";
  case TokenKind::kBranchOpen:
    return "[";
  case TokenKind::kBranchClose:
    return "]";
  case TokenKind::kConvOpen:
    return "<&|";
  case TokenKind::kConvConnector:
    return "&";
  case TokenKind::kConvClose:
    return "|";
  case TokenKind::kTrainSep:
    return "n|";
  case TokenKind::kBraceTag:
    return "{tag}";
  case TokenKind::kRecycleOut:
    return "#";
  case TokenKind::kRecycleIn:
    return "<#";
  case TokenKind::kSignalOut:
    return "_#";
  case TokenKind::kSignalIn:
    return "<_#";
  }
  return "?";
}

const Diagnostic *ParseResult::first_error() const {
  for (const Diagnostic &d: diagnostics) {
    if (d.severity == Severity::kError)
      return &d;
  }
  return nullptr;
}

TokenizeResult tokenize(std::string_view text) {
  return Lexer(text).run();
}

ParseResult parse(std::span<const Token> tokens, const ParseOptions &options) {
  return Parser(tokens, options).run();
}

ParseResult parse_sfiles(std::string_view text, const ParseOptions &options) {
  TokenizeResult lexed = tokenize(text);
  if (!lexed.ok()) {
    ParseResult result;
    result.diagnostics = std::move(lexed.diagnostics);
    return result;
  }
  return parse(lexed.tokens, options);
}

std::string format_diagnostics(std::string_view text,
                               const std::vector<Diagnostic> &diagnostics) {
  std::string out;
  for (const Diagnostic &d: diagnostics) {
    out += d.severity == Severity::kError ? "error" : "warning";
    out += "[" + d.code + "] at " + std::to_string(d.span.begin) + ": "
           + d.message + "\n";
    out += "  ";
    out.append(text);
    out += "\n  ";
    const std::size_t begin = std::min(d.span.begin, text.size());
    const std::size_t width = std::max<std::size_t>(
        1, std::min(d.span.end, text.size()) - std::min(begin, d.span.end));
    out.append(begin, ' ');
    out.append(width, '^');
    out += "\n";
  }
  return out;
}

namespace {
struct Summary {
  std::map<std::string, int> categories;
  std::multiset<std::string> ctrl_codes;
  std::multiset<std::string> tags;
  std::multiset<std::size_t> group_sizes;
  std::size_t material = 0;
  std::size_t signal = 0;

  explicit Summary(const FlowsheetGraph &g) {
    for (const auto &[ref, attr]: g.nodes()) {
      ++categories[ref.category];
      if (attr.ctrl_code)
        ctrl_codes.insert(*attr.ctrl_code);
    }
    for (const auto &e: g.edges()) {
      (e.is_material() ? material : signal) += 1;
      if (e.attr.tag)
        tags.insert(std::string(to_string(*e.attr.tag)));
    }
    for (const auto &[_, members]: equipment_groups(g)) {
      if (members.size() > 1)
        group_sizes.insert(members.size());
    }
  }

  friend bool operator==(const Summary &, const Summary &) = default;
};
}  // namespace

RoundtripReport roundtrip_check(const FlowsheetGraph &graph) {
  RoundtripReport report;
  try {
    report.encoded = encode(graph);
  } catch (const std::exception &e) {
    report.ok = false;
    report.problems.push_back(std::string("encode failed: ") + e.what());
    return report;
  }

  const ParseResult parsed = parse_sfiles(report.encoded);
  if (!parsed.ok()) {
    report.ok = false;
    report.problems.push_back("encoded string does not parse:\n"
                              + format_diagnostics(report.encoded,
                                                   parsed.diagnostics));
    return report;
  }

  const std::string again = encode(*parsed.graph);
  if (again != report.encoded) {
    report.ok = false;
    report.problems.push_back("re-encoding differs: " + again);
  }
  const Summary before(graph), after(*parsed.graph);
  if (before.categories != after.categories)
    report.problems.push_back("unit counts per category differ");
  if (before.ctrl_codes != after.ctrl_codes)
    report.problems.push_back("control letter codes differ");
  if (before.tags != after.tags)
    report.problems.push_back("stream tags differ");
  if (before.material != after.material || before.signal != after.signal)
    report.problems.push_back("edge counts differ");
  if (before.group_sizes != after.group_sizes)
    report.problems.push_back("heat exchanger groups differ");
  report.ok = report.problems.empty();
  return report;
}

}  // namespace sfiles

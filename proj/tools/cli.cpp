//
// sfiles2 - Copyright 2026 The sfiles2 Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "cli.h"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sfiles/encode.h"
#include "sfiles/graph_json.h"
#include "sfiles/parse.h"
#include "sfiles/validate.h"

namespace sfiles::cli {
namespace {
using json = nlohmann::json;

struct Config {
  std::vector<std::string> inputs;
  std::string file;
  bool numbered = false;
  bool generalized = false;
  bool strict = false;
  bool lenient = false;
  std::string format = "text";

  bool json_output() const { return format == "json"; }
  Notation notation() const {
    return numbered ? Notation::kNumbered : Notation::kGeneralized;
  }
  bool is_strict() const { return !lenient; }
};

// Keeps the first failure code of a batch.
class ExitCode {
public:
  void fail(int code) {
    if (code_ == kOk)
      code_ = code;
  }
  int value() const { return code_; }

private:
  int code_ = kOk;
};

std::optional<std::string> read_source(const std::string &path,
                                       std::istream &in, std::ostream &err) {
  std::ostringstream buffer;
  if (path == "-") {
    buffer << in.rdbuf();
    return buffer.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    err << path << ": cannot open file\n";
    return std::nullopt;
  }
  buffer << file.rdbuf();
  return buffer.str();
}

std::vector<std::string> split_lines(const std::string &text) {
  std::vector<std::string> lines;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) {
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

// Strings given on the command line, else lines of --file, else stdin lines.
std::optional<std::vector<std::string>> string_inputs(const Config &config,
                                                      std::istream &in,
                                                      std::ostream &err) {
  std::vector<std::string> strings = config.inputs;
  if (!config.file.empty() || strings.empty()) {
    auto text = read_source(config.file.empty() ? "-" : config.file, in, err);
    if (!text)
      return std::nullopt;
    auto lines = split_lines(*text);
    strings.insert(strings.end(), lines.begin(), lines.end());
  }
  return strings;
}

void print_issues(const std::string &where,
                  const std::vector<ValidationIssue> &issues,
                  std::ostream &err) {
  for (const ValidationIssue &i: issues) {
    err << where << ": "
        << (i.severity == Severity::kError ? "error" : "warning") << "["
        << i.code << "]: " << i.message << "\n";
  }
}

std::vector<ValidationIssue> unknown_units(const FlowsheetGraph &graph,
                                           bool strict) {
  std::vector<ValidationIssue> issues =
      check_graph(graph, UnitOpRegistry::standard(), strict);
  std::erase_if(issues, [](const ValidationIssue &i) {
    return i.code != diag::kUnknownUnit;
  });
  return issues;
}

// Loads a graph document, reporting failures on `err`.
std::optional<FlowsheetGraph> load_graph(const std::string &path,
                                         const Config &config,
                                         std::istream &in, std::ostream &err,
                                         ExitCode &exit,
                                         std::string *reason = nullptr) {
  auto text = read_source(path, in, err);
  if (!text) {
    exit.fail(kSchemaError);
    if (reason)
      *reason = "cannot open file";
    return std::nullopt;
  }
  try {
    std::vector<std::string> warnings;
    FlowsheetGraph graph =
        load_json(*text, { config.is_strict() }, &warnings);
    for (const std::string &w: warnings)
      err << path << ": warning: " << w << "\n";
    return graph;
  } catch (const SchemaError &e) {
    err << path << ": schema error at " << e.what() << "\n";
    exit.fail(kSchemaError);
    if (reason)
      *reason = std::string("schema error at ") + e.what();
  } catch (const GraphError &e) {
    err << path << ": invariant violation: " << e.what() << "\n";
    exit.fail(kInvariantError);
    if (reason)
      *reason = std::string("invariant violation: ") + e.what();
  }
  return std::nullopt;
}

std::optional<FlowsheetGraph> parse_string(const std::string &text,
                                           const Config &config,
                                           std::ostream &err) {
  ParseResult result = parse_sfiles(text, { config.is_strict() });
  if (!result.diagnostics.empty())
    err << format_diagnostics(text, result.diagnostics);
  if (!result.ok())
    return std::nullopt;
  const auto issues = unknown_units(*result.graph, config.is_strict());
  print_issues(text, issues, err);
  if (has_errors(issues))
    return std::nullopt;
  return std::move(result.graph);
}

int cmd_encode(const Config &config, std::istream &in, std::ostream &out,
               std::ostream &err) {
  std::vector<std::string> paths = config.inputs;
  if (paths.empty())
    paths.push_back("-");

  ExitCode exit;
  json report = json::array();
  for (const std::string &path: paths) {
    auto graph = load_graph(path, config, in, err, exit);
    if (!graph)
      continue;
    const auto issues = unknown_units(*graph, config.is_strict());
    print_issues(path, issues, err);
    if (has_errors(issues)) {
      exit.fail(kSchemaError);
      continue;
    }
    try {
      const std::string text = encode(*graph, config.notation());
      if (config.json_output())
        report.push_back({ { "input", path }, { "sfiles", text } });
      else
        out << text << "\n";
    } catch (const EncodeError &e) {
      err << path << ": " << e.what() << "\n";
      exit.fail(kInvariantError);
    }
  }
  if (config.json_output())
    out << report.dump(2) << "\n";
  return exit.value();
}

int cmd_decode(const Config &config, std::istream &in, std::ostream &out,
               std::ostream &err) {
  auto strings = string_inputs(config, in, err);
  if (!strings)
    return kSchemaError;

  ExitCode exit;
  std::vector<json> docs;
  for (const std::string &text: *strings) {
    auto graph = parse_string(text, config, err);
    if (!graph) {
      exit.fail(kParseError);
      continue;
    }
    docs.push_back(json::parse(save_json(*graph)));
  }
  if (docs.size() == 1 && strings->size() == 1 && !config.json_output())
    out << docs.front().dump(2) << "\n";
  else if (!docs.empty() || config.json_output())
    out << json(docs).dump(2) << "\n";
  return exit.value();
}

int cmd_canon(const Config &config, std::istream &in, std::ostream &out,
              std::ostream &err) {
  auto strings = string_inputs(config, in, err);
  if (!strings)
    return kSchemaError;

  ExitCode exit;
  json report = json::array();
  for (const std::string &text: *strings) {
    auto graph = parse_string(text, config, err);
    if (!graph) {
      exit.fail(kParseError);
      continue;
    }
    try {
      const std::string canonical = encode(*graph, config.notation());
      if (config.json_output())
        report.push_back({ { "input", text }, { "sfiles", canonical } });
      else
        out << canonical << "\n";
    } catch (const EncodeError &e) {
      err << text << ": " << e.what() << "\n";
      exit.fail(kInvariantError);
    }
  }
  if (config.json_output())
    out << report.dump(2) << "\n";
  return exit.value();
}

int cmd_check(const Config &config, std::istream &in, std::ostream &out,
              std::ostream &err) {
  struct Row {
    std::string path;
    bool ok;
    std::string detail;
  };
  std::vector<Row> rows;
  for (const std::string &path: config.inputs) {
    ExitCode ignored;
    std::string reason;
    auto graph = load_graph(path, config, in, err, ignored, &reason);
    if (!graph) {
      rows.push_back({ path, false, reason });
      continue;
    }
    const RoundtripReport rt = roundtrip_check(*graph);
    const auto issues =
        check_graph(*graph, UnitOpRegistry::standard(), config.is_strict());
    print_issues(path, issues, err);

    Row row { path, rt.ok && !has_errors(issues), rt.encoded };
    if (!rt.ok) {
      for (const std::string &p: rt.problems)
        err << path << ": " << p << "\n";
      row.detail = "round trip: " + rt.problems.front();
    } else if (has_errors(issues)) {
      row.detail = issues.front().message;
    }
    rows.push_back(std::move(row));
  }

  const auto failed = std::count_if(rows.begin(), rows.end(),
                                    [](const Row &r) { return !r.ok; });
  if (config.json_output()) {
    json report = json::array();
    for (const Row &r: rows)
      report.push_back({ { "input", r.path }, { "ok", r.ok },
                         { "detail", r.detail } });
    out << json({ { "checked", rows.size() },
                  { "failed", failed },
                  { "files", report } })
               .dump(2)
        << "\n";
  } else {
    std::size_t width = 4;
    for (const Row &r: rows)
      width = std::max(width, r.path.size());
    for (const Row &r: rows) {
      out << std::left << std::setw(static_cast<int>(width)) << r.path << "  "
          << (r.ok ? "ok  " : "FAIL") << "  " << r.detail << "\n";
    }
    out << rows.size() << " checked, " << failed << " failed\n";
  }
  return failed > 0 ? kCheckFailed : kOk;
}
}  // namespace

int run(const std::vector<std::string> &args, std::istream &in,
        std::ostream &out, std::ostream &err) {
  CLI::App app { "Convert between flowsheet graphs and SFILES 2.0 strings",
                 "sfiles" };
  app.require_subcommand(1);
  Config config;

  auto add_mode = [&](CLI::App *cmd) {
    auto *numbered = cmd->add_flag("--numbered", config.numbered,
                                   "keep equipment numbers in names");
    auto *generalized = cmd->add_flag("--generalized", config.generalized,
                                      "strip equipment numbers (default)");
    numbered->excludes(generalized);
  };
  auto add_strictness = [&](CLI::App *cmd) {
    auto *strict = cmd->add_flag("--strict", config.strict,
                                 "reject unknown keys, tags and units (default)");
    auto *lenient = cmd->add_flag("--lenient", config.lenient,
                                  "warn on unknown keys, tags and units");
    strict->excludes(lenient);
  };
  auto add_format = [&](CLI::App *cmd) {
    cmd->add_option("--format", config.format, "output format")
        ->check(CLI::IsMember({ "text", "json" }));
  };

  auto *encode_cmd = app.add_subcommand("encode", "graph JSON files to strings");
  encode_cmd->add_option("files", config.inputs, "graph files, '-' for stdin");
  add_mode(encode_cmd);
  add_strictness(encode_cmd);
  add_format(encode_cmd);

  auto *decode_cmd = app.add_subcommand("decode", "strings to graph JSON");
  decode_cmd->add_option("strings", config.inputs, "SFILES strings");
  decode_cmd->add_option("--file", config.file,
                         "newline-delimited strings, '-' for stdin");
  add_strictness(decode_cmd);
  add_format(decode_cmd);

  auto *canon_cmd = app.add_subcommand("canon", "rewrite strings canonically");
  canon_cmd->add_option("strings", config.inputs, "SFILES strings");
  canon_cmd->add_option("--file", config.file,
                        "newline-delimited strings, '-' for stdin");
  add_mode(canon_cmd);
  add_strictness(canon_cmd);
  add_format(canon_cmd);

  auto *check_cmd = app.add_subcommand(
      "check", "round-trip and validate graph files");
  check_cmd->add_option("files", config.inputs, "graph files");
  add_strictness(check_cmd);
  add_format(check_cmd);

  auto *registry_cmd =
      app.add_subcommand("registry", "print the unit operation table as JSON");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kSchemaError;
  }

  if (*encode_cmd)
    return cmd_encode(config, in, out, err);
  if (*decode_cmd)
    return cmd_decode(config, in, out, err);
  if (*canon_cmd)
    return cmd_canon(config, in, out, err);
  if (*check_cmd)
    return cmd_check(config, in, out, err);
  if (*registry_cmd) {
    out << UnitOpRegistry::standard().to_json();
    return kOk;
  }
  return kSchemaError;
}

}  // namespace sfiles::cli

// Copyright 2026 The tempograph Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tempograph/graph_parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <optional>
#include <set>

#include <fmt/format.h>

namespace tempograph {

namespace {

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// Index one past the closing quote starting at `open`, or npos.
std::size_t skip_quoted(std::string_view s, std::size_t open) {
  for (std::size_t i = open + 1; i < s.size(); ++i) {
    if (s[i] == '\\') {
      ++i;
    } else if (s[i] == '"') {
      return i + 1;
    }
  }
  return std::string_view::npos;
}

// Index of the brace closing the one at `open`, or npos.
std::size_t match_brace(std::string_view s, std::size_t open) {
  int depth = 0;
  for (std::size_t i = open; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '"') {
      const std::size_t end = skip_quoted(s, i);
      if (end == std::string_view::npos) return std::string_view::npos;
      i = end - 1;
    } else if (c == '{') {
      ++depth;
    } else if (c == '}') {
      if (--depth == 0) return i;
    }
  }
  return std::string_view::npos;
}

// Position of the '{' opening a graph body right after a keyword ending at
// `pos`, allowing one optional graph name in between.
std::size_t body_open(std::string_view s, std::size_t pos) {
  while (pos < s.size() && is_space(s[pos])) ++pos;
  if (pos < s.size() && s[pos] == '"') {
    pos = skip_quoted(s, pos);
    if (pos == std::string_view::npos) return pos;
  } else {
    while (pos < s.size() && (is_word_char(s[pos]) || s[pos] == '.')) ++pos;
  }
  while (pos < s.size() && is_space(s[pos])) ++pos;
  if (pos < s.size() && s[pos] == '{') return pos;
  return std::string_view::npos;
}

enum class TokenKind { kId, kEdgeOp, kAttrs, kEquals, kBrace, kComma };

struct Token {
  TokenKind kind;
  std::string text;
};

struct Statement {
  std::vector<Token> tokens;
  std::string source;
};

// Splits a graph body into statements at ';' and newlines outside brackets
// and quotes, dropping comments.
std::vector<Statement> split_statements(std::string_view body) {
  std::vector<Statement> out;
  Statement current;
  auto flush = [&]() {
    if (!current.tokens.empty()) out.push_back(std::move(current));
    current = Statement{};
  };
  std::size_t i = 0;
  while (i < body.size()) {
    const char c = body[i];
    if (c == ';' || c == '\n') {
      flush();
      ++i;
    } else if (is_space(c)) {
      ++i;
    } else if (c == '/' && i + 1 < body.size() && body[i + 1] == '/') {
      while (i < body.size() && body[i] != '\n') ++i;
    } else if (c == '#') {
      while (i < body.size() && body[i] != '\n') ++i;
    } else if (c == '/' && i + 1 < body.size() && body[i + 1] == '*') {
      const std::size_t end = body.find("*/", i + 2);
      i = end == std::string_view::npos ? body.size() : end + 2;
    } else if (c == '"') {
      const std::size_t end = skip_quoted(body, i);
      const std::size_t stop = end == std::string_view::npos ? body.size() : end;
      std::string text(body.substr(i + 1, (stop > i + 1 ? stop - i - 2 : 0)));
      if (end == std::string_view::npos) text = std::string(body.substr(i + 1));
      current.source.append(body.substr(i, stop - i));
      current.tokens.push_back({TokenKind::kId, std::move(text)});
      i = stop;
    } else if (c == '[') {
      std::size_t j = i + 1;
      while (j < body.size() && body[j] != ']') {
        if (body[j] == '"') {
          const std::size_t end = skip_quoted(body, j);
          j = end == std::string_view::npos ? body.size() : end;
        } else {
          ++j;
        }
      }
      current.source.append(body.substr(i, std::min(j + 1, body.size()) - i));
      current.tokens.push_back(
          {TokenKind::kAttrs, std::string(body.substr(i + 1, std::min(j, body.size()) - i - 1))});
      i = std::min(j + 1, body.size());
    } else if (c == '-' && i + 1 < body.size() && (body[i + 1] == '>' || body[i + 1] == '-')) {
      current.source.append(body.substr(i, 2));
      current.tokens.push_back({TokenKind::kEdgeOp, std::string(body.substr(i, 2))});
      i += 2;
    } else if (c == '=') {
      current.source.push_back(c);
      current.tokens.push_back({TokenKind::kEquals, "="});
      ++i;
    } else if (c == '{' || c == '}') {
      current.source.push_back(c);
      current.tokens.push_back({TokenKind::kBrace, std::string(1, c)});
      ++i;
    } else if (c == ',') {
      current.source.push_back(c);
      current.tokens.push_back({TokenKind::kComma, ","});
      ++i;
    } else {
      std::size_t j = i;
      while (j < body.size()) {
        const char d = body[j];
        if (is_space(d) || d == ';' || d == '[' || d == ']' || d == '=' || d == '{' ||
            d == '}' || d == ',' || d == '"') {
          break;
        }
        if (d == '-' && j + 1 < body.size() && (body[j + 1] == '>' || body[j + 1] == '-')) break;
        ++j;
      }
      if (j == i) j = i + 1;  // lone ']' and similar
      current.source.append(body.substr(i, j - i));
      current.tokens.push_back({TokenKind::kId, std::string(body.substr(i, j - i))});
      i = j;
    }
  }
  flush();
  return out;
}

// Trailing integer of a node token: "name_7", "name(7)", "<attack(7)>", "7".
std::optional<EventId> node_id(std::string_view token) {
  std::size_t end = token.size();
  while (end > 0 && (token[end - 1] == ')' || token[end - 1] == '>' || is_space(token[end - 1]))) {
    --end;
  }
  std::size_t begin = end;
  while (begin > 0 && std::isdigit(static_cast<unsigned char>(token[begin - 1]))) --begin;
  if (begin == end) return std::nullopt;
  EventId value = 0;
  const auto [ptr, ec] = std::from_chars(token.data() + begin, token.data() + end, value);
  if (ec != std::errc() || ptr != token.data() + end) return std::nullopt;
  return value;
}

// Value of the `label` attribute inside a bracket list.
std::optional<std::string> label_attribute(std::string_view attrs) {
  std::size_t i = 0;
  while (i < attrs.size()) {
    while (i < attrs.size() && (is_space(attrs[i]) || attrs[i] == ',' || attrs[i] == ';')) ++i;
    std::size_t key_end = i;
    while (key_end < attrs.size() && (is_word_char(attrs[key_end]))) ++key_end;
    if (key_end == i) {
      ++i;
      continue;
    }
    std::string key(attrs.substr(i, key_end - i));
    std::transform(key.begin(), key.end(), key.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    i = key_end;
    while (i < attrs.size() && is_space(attrs[i])) ++i;
    if (i >= attrs.size() || attrs[i] != '=') continue;
    ++i;
    while (i < attrs.size() && is_space(attrs[i])) ++i;
    std::string value;
    if (i < attrs.size() && attrs[i] == '"') {
      const std::size_t end = skip_quoted(attrs, i);
      const std::size_t stop = end == std::string_view::npos ? attrs.size() : end - 1;
      value = std::string(attrs.substr(i + 1, stop - i - 1));
      i = end == std::string_view::npos ? attrs.size() : end;
    } else {
      const std::size_t start = i;
      while (i < attrs.size() && !is_space(attrs[i]) && attrs[i] != ',' && attrs[i] != ';') ++i;
      value = std::string(attrs.substr(start, i - start));
    }
    if (key == "label") return value;
  }
  return std::nullopt;
}

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

std::string extract_dot_block(std::string_view raw) {
  std::optional<std::pair<std::size_t, std::size_t>> last;
  std::size_t pos = 0;
  while (pos < raw.size()) {
    std::size_t hit = std::string_view::npos;
    std::size_t kw_len = 0;
    for (std::size_t i = pos; i < raw.size(); ++i) {
      if (i > 0 && is_word_char(raw[i - 1])) continue;
      if (raw.substr(i, 7) == "digraph") {
        kw_len = 7;
      } else if (raw.substr(i, 5) == "graph") {
        kw_len = 5;
      } else {
        continue;
      }
      if (i + kw_len < raw.size() && is_word_char(raw[i + kw_len])) continue;
      hit = i;
      break;
    }
    if (hit == std::string_view::npos) break;
    const std::size_t open = body_open(raw, hit + kw_len);
    if (open == std::string_view::npos) {
      pos = hit + kw_len;
      continue;
    }
    const std::size_t close = match_brace(raw, open);
    if (close == std::string_view::npos) {
      pos = hit + kw_len;
      continue;
    }
    last = {hit, close + 1};
    pos = close + 1;
  }
  if (!last) throw ParseError("no balanced digraph/graph block in model output", std::string(raw));
  return std::string(raw.substr(last->first, last->second - last->first));
}

ParseOutcome parse_edges(std::string_view dot, const std::function<bool(EventId)>& known,
                         Scheme scheme) {
  const std::size_t open = dot.find('{');
  const std::size_t close = dot.rfind('}');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
    throw ParseError("graph block has no body", std::string(dot));
  }
  const std::string_view body = dot.substr(open + 1, close - open - 1);

  ParseOutcome outcome;
  std::map<PairKey, std::size_t> seen;
  for (const Statement& stmt : split_statements(body)) {
    const auto& t = stmt.tokens;
    const bool edge_shape = t.size() >= 3 && t[0].kind == TokenKind::kId &&
                            t[1].kind == TokenKind::kEdgeOp && t[2].kind == TokenKind::kId;
    if (!edge_shape) {
      outcome.warnings.push_back(fmt::format("skipped statement: {}", stmt.source));
      continue;
    }
    if (t.size() > 3 && t[3].kind == TokenKind::kEdgeOp) {
      outcome.warnings.push_back(fmt::format("skipped edge chain: {}", stmt.source));
      continue;
    }
    std::optional<std::string> label_text;
    for (std::size_t k = 3; k < t.size(); ++k) {
      if (t[k].kind == TokenKind::kAttrs) {
        if (auto v = label_attribute(t[k].text)) label_text = v;
      }
    }
    const auto source = node_id(t[0].text);
    const auto target = node_id(t[2].text);
    if (!source || !known(*source)) {
      throw ParseError(fmt::format("unresolvable node '{}' in: {}", t[0].text, stmt.source),
                       std::string(dot));
    }
    if (!target || !known(*target)) {
      throw ParseError(fmt::format("unresolvable node '{}' in: {}", t[2].text, stmt.source),
                       std::string(dot));
    }
    if (!label_text) {
      throw ParseError(fmt::format("edge without label: {}", stmt.source), std::string(dot));
    }
    const auto label = parse_relation(*label_text);
    if (!label || !scheme.contains(*label)) {
      throw ParseError(fmt::format("unknown relation '{}' for scheme '{}' in: {}", *label_text,
                                   scheme.name(), stmt.source),
                       std::string(dot));
    }
    if (*source == *target) {
      outcome.warnings.push_back(fmt::format("dropped self-edge: {}", stmt.source));
      continue;
    }
    const OrientedLabel o = orient(*source, *target, *label);
    ParsedEdge edge{*source, *target, o.pair, o.label};
    auto [it, inserted] = seen.emplace(o.pair, outcome.edges.size());
    if (inserted) {
      outcome.edges.push_back(edge);
    } else {
      ParsedEdge& previous = outcome.edges[it->second];
      if (previous.label != edge.label) {
        outcome.warnings.push_back(fmt::format("pair ({}, {}) relabeled {} -> {}; keeping last",
                                               o.pair.first, o.pair.second,
                                               to_string(previous.label), to_string(edge.label)));
      }
      previous = edge;
    }
  }
  return outcome;
}

ParseOutcome parse_edges(std::string_view dot, const Document& doc, Scheme scheme) {
  return parse_edges(dot, [&doc](EventId id) { return doc.has_event(id); }, scheme);
}

GenerationRecord to_record(const ParseOutcome& outcome, std::span<const PairKey> requested,
                           int generation_index, std::string raw) {
  GenerationRecord record;
  record.generation_index = generation_index;
  record.raw_output = std::move(raw);
  record.warnings = outcome.warnings;
  const std::set<PairKey> wanted(requested.begin(), requested.end());
  for (const ParsedEdge& e : outcome.edges) {
    if (wanted.contains(e.pair)) {
      record.parsed[e.pair] = e.label;
    } else {
      record.warnings.push_back(
          fmt::format("ignored unrequested pair ({}, {})", e.pair.first, e.pair.second));
    }
  }
  for (PairKey p : wanted) {
    if (!record.parsed.contains(p)) record.missing.push_back(p);
  }
  return record;
}

GenerationRecord parse_generation(std::string_view raw, const Document& doc, Scheme scheme,
                                  std::span<const PairKey> requested, int generation_index) {
  const std::string block = extract_dot_block(raw);
  return to_record(parse_edges(block, doc, scheme), requested, generation_index,
                   std::string(raw));
}

std::string to_dot(const TemporalGraph& graph, std::string_view name) {
  std::string out = fmt::format("digraph {} {{\n", name);
  for (const auto& [pair, label] : graph.labels()) {
    out += fmt::format("  e{} -> e{} [label=\"{}\"];\n", pair.first, pair.second,
                       upper(to_string(label)));
  }
  out += "}\n";
  return out;
}

TemporalGraph parse_graph(std::string_view dot, Scheme scheme) {
  TemporalGraph graph(scheme);
  const ParseOutcome outcome = parse_edges(extract_dot_block(dot), [](EventId) { return true; },
                                           scheme);
  for (const ParsedEdge& e : outcome.edges) graph.set(e.pair.first, e.pair.second, e.label);
  return graph;
}

}  // namespace tempograph

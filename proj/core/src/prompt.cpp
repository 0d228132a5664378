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

#include "tempograph/prompt.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>

#include <fmt/format.h>

namespace tempograph {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError(fmt::format("cannot read template {}", path.string()));
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void replace_all(std::string& text, std::string_view from, std::string_view to) {
  std::size_t pos = 0;
  while ((pos = text.find(from, pos)) != std::string::npos) {
    text.replace(pos, from.size(), to);
    pos += to.size();
  }
}

std::string upper_label(Relation r) {
  std::string s(to_string(r));
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

PromptVariant parse_variant(std::string_view name) {
  if (name == "global") return PromptVariant::kGlobal;
  if (name == "timeline") return PromptVariant::kTimeline;
  throw ValidationError(fmt::format("unknown prompt variant '{}' (expected global|timeline)", name));
}

std::string_view to_string(PromptVariant v) {
  return v == PromptVariant::kGlobal ? "global" : "timeline";
}

SplitProfile parse_split_profile(std::string_view name) {
  if (name == "standard") return SplitProfile::kStandard;
  if (name == "dense") return SplitProfile::kDense;
  throw ValidationError(fmt::format("unknown split profile '{}' (expected standard|dense)", name));
}

std::string strip_template_comments(std::string_view text) {
  std::string out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    const std::size_t next = end == std::string_view::npos ? text.size() : end + 1;
    const std::string_view line = text.substr(pos, next - pos);
    if (!line.starts_with("##")) out.append(line);
    pos = next;
  }
  return out;
}

PromptTemplates PromptTemplates::load(const std::filesystem::path& dir) {
  PromptTemplates t;
  std::string version = read_file(dir / "VERSION");
  while (!version.empty() && std::isspace(static_cast<unsigned char>(version.back()))) {
    version.pop_back();
  }
  t.version = version;
  t.system = strip_template_comments(read_file(dir / "system.txt"));
  t.user = strip_template_comments(read_file(dir / "user.txt"));
  t.timeline_instruction = strip_template_comments(read_file(dir / "timeline_instruction.txt"));
  t.labels_four = strip_template_comments(read_file(dir / "labels_four.txt"));
  t.labels_six = strip_template_comments(read_file(dir / "labels_six.txt"));
  return t;
}

std::string mark_events(const Document& doc) {
  std::vector<const Event*> order;
  for (const Event& e : doc.events()) order.push_back(&e);
  std::sort(order.begin(), order.end(),
            [](const Event* l, const Event* r) { return l->begin < r->begin; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (order[i]->begin < order[i - 1]->end) {
      throw ValidationError(fmt::format("{}: events {} and {} have overlapping spans",
                                        doc.doc_id(), order[i - 1]->id, order[i]->id));
    }
  }
  // Right to left, so earlier offsets stay valid.
  std::string text = doc.text();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Event& e = **it;
    text.replace(e.begin, e.end - e.begin, fmt::format("<{}({})>", e.mention, e.id));
  }
  return text;
}

std::string strip_markers(std::string_view marked) {
  static const std::regex kMarker(R"(<([^<>]*)\((-?\d+)\)>)");
  std::string text(marked);
  return std::regex_replace(text, kMarker, "$1");
}

std::vector<std::vector<PairKey>> split_pairs(const std::vector<PairKey>& pairs,
                                              std::size_t n_events, SplitProfile profile) {
  if (n_events <= 20 || pairs.size() < 2) return {pairs};
  if (n_events > 40 && profile == SplitProfile::kDense) {
    std::vector<std::vector<PairKey>> chunks;
    for (std::size_t i = 0; i < pairs.size(); i += 100) {
      const std::size_t end = std::min(pairs.size(), i + 100);
      chunks.emplace_back(pairs.begin() + static_cast<std::ptrdiff_t>(i),
                          pairs.begin() + static_cast<std::ptrdiff_t>(end));
    }
    return chunks;
  }
  const auto half = static_cast<std::ptrdiff_t>((pairs.size() + 1) / 2);
  return {std::vector<PairKey>(pairs.begin(), pairs.begin() + half),
          std::vector<PairKey>(pairs.begin() + half, pairs.end())};
}

PromptBundle build_prompt(const Document& doc, PromptVariant variant,
                          const std::vector<PairKey>& pairs, int split_index, int total_splits,
                          Scheme scheme, const PromptTemplates& templates) {
  if (scheme.variant() == Scheme::Variant::kNarrative) {
    throw ValidationError("prompts are built for the four or six label schemes only");
  }
  for (PairKey p : pairs) {
    if (!doc.has_event(p.first) || !doc.has_event(p.second)) {
      throw ValidationError(fmt::format("{}: pair ({}, {}) references unknown event",
                                        doc.doc_id(), p.first, p.second));
    }
  }

  std::string names;
  for (Relation r : scheme.labels()) {
    if (!names.empty()) names += ", ";
    names += upper_label(r);
  }
  std::string pair_lines;
  for (PairKey p : pairs) pair_lines += fmt::format("({}, {})\n", p.first, p.second);
  if (!pair_lines.empty()) pair_lines.pop_back();

  std::string user = templates.user;
  replace_all(user, "{{LABEL_NAMES}}", names);
  replace_all(user, "{{LABEL_DEFINITIONS}}",
              scheme.variant() == Scheme::Variant::kFour ? templates.labels_four
                                                         : templates.labels_six);
  replace_all(user, "{{TIMELINE_INSTRUCTION}}",
              variant == PromptVariant::kTimeline ? templates.timeline_instruction : "");
  replace_all(user, "{{PAIR_COUNT}}", std::to_string(pairs.size()));
  replace_all(user, "{{PAIRS}}", pair_lines);
  // Last, so document text can never be mistaken for a placeholder.
  replace_all(user, "{{DOCUMENT}}", mark_events(doc));

  PromptBundle bundle;
  bundle.doc_id = doc.doc_id();
  bundle.split_index = split_index;
  bundle.total_splits = total_splits;
  bundle.system_text = templates.system;
  bundle.user_text = std::move(user);
  bundle.pairs = pairs;
  bundle.template_version = templates.version;
  return bundle;
}

std::vector<PromptBundle> build_prompts(const Document& doc, PromptVariant variant, Scheme scheme,
                                        SplitProfile profile, const PromptTemplates& templates) {
  const std::vector<PairKey> pairs = all_pairs(doc.events());
  const auto splits = split_pairs(pairs, doc.event_count(), profile);
  std::vector<PromptBundle> bundles;
  for (std::size_t i = 0; i < splits.size(); ++i) {
    bundles.push_back(build_prompt(doc, variant, splits[i], static_cast<int>(i),
                                   static_cast<int>(splits.size()), scheme, templates));
  }
  return bundles;
}

}  // namespace tempograph

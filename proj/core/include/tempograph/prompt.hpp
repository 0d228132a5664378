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

#ifndef TEMPOGRAPH_PROMPT_HPP_
#define TEMPOGRAPH_PROMPT_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tempograph/core.hpp"

namespace tempograph {

enum class PromptVariant {
  kGlobal,    // classify all pairs directly
  kTimeline,  // write a free-form timeline first, then classify
};

PromptVariant parse_variant(std::string_view name);
std::string_view to_string(PromptVariant v);

// Pair chunking policy for long documents. kDense additionally cuts documents
// above 40 events into chunks of 100 pairs.
enum class SplitProfile { kStandard, kDense };

SplitProfile parse_split_profile(std::string_view name);

struct PromptTemplates {
  std::string version;
  std::string system;
  std::string user;
  std::string timeline_instruction;
  std::string labels_four;
  std::string labels_six;

  // Compiled-in copy of templates/.
  static PromptTemplates defaults();
  // Reads system.txt, user.txt, timeline_instruction.txt, labels_four.txt,
  // labels_six.txt and VERSION from a directory.
  static PromptTemplates load(const std::filesystem::path& dir);
};

// Removes lines starting with "##".
std::string strip_template_comments(std::string_view text);

struct PromptBundle {
  std::string doc_id;
  int split_index = 0;
  int total_splits = 1;
  std::string system_text;
  std::string user_text;
  std::vector<PairKey> pairs;
  std::string template_version;
};

// Replaces every mention with "<mention(id)>". Throws ValidationError when
// spans overlap.
std::string mark_events(const Document& doc);

// Inverse of mark_events for texts without stray "<...(n)>" sequences.
std::string strip_markers(std::string_view marked);

// n <= 20: one split. 20 < n <= 40, or any n > 20 under kStandard: two
// near-equal halves. n > 40 under kDense: consecutive chunks of 100 pairs.
std::vector<std::vector<PairKey>> split_pairs(const std::vector<PairKey>& pairs,
                                              std::size_t n_events, SplitProfile profile);

PromptBundle build_prompt(const Document& doc, PromptVariant variant,
                          const std::vector<PairKey>& split_pairs, int split_index,
                          int total_splits, Scheme scheme,
                          const PromptTemplates& templates = PromptTemplates::defaults());

// All bundles for a document: enumerate pairs, split, build.
std::vector<PromptBundle> build_prompts(const Document& doc, PromptVariant variant, Scheme scheme,
                                        SplitProfile profile,
                                        const PromptTemplates& templates = PromptTemplates::defaults());

}  // namespace tempograph

#endif  // TEMPOGRAPH_PROMPT_HPP_

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

#ifndef TEMPOGRAPH_IO_HPP_
#define TEMPOGRAPH_IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tempograph/aggregate.hpp"
#include "tempograph/core.hpp"

namespace tempograph {

// Throws LoadError.
std::string read_text_file(const std::filesystem::path& path);

// Writes to a sibling temporary file and renames it into place.
void write_text_file_atomic(const std::filesystem::path& path, std::string_view content);

// Generation records of one document as JSON:
//   {"doc_id", "scheme", "generations": [{"index", "raw", "labels": [[a, b, "label"]],
//    "missing": [[a, b]], "warnings": [...]}]}
struct RecordFile {
  std::string doc_id;
  Scheme scheme = Scheme::four();
  std::vector<GenerationRecord> generations;
};

std::string serialize_records(const RecordFile& file);
RecordFile parse_records(std::string_view json_text);

}  // namespace tempograph

#endif  // TEMPOGRAPH_IO_HPP_

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

#include "tempograph/io.hpp"

#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "json.hpp"
#include "tempograph/errors.hpp"

namespace tempograph {

using json = nlohmann::json;

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError(fmt::format("cannot read {}", path.string()));
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_text_file_atomic(const std::filesystem::path& path, std::string_view content) {
  static std::atomic<unsigned> counter{0};
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const auto tmp = path.parent_path() /
                   fmt::format(".{}.tmp.{}.{}", path.filename().string(),
                               std::hash<std::thread::id>{}(std::this_thread::get_id()),
                               counter.fetch_add(1));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw LoadError(fmt::format("cannot write {}", tmp.string()));
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out.flush()) throw LoadError(fmt::format("write failed for {}", tmp.string()));
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw LoadError(fmt::format("cannot move {} into place: {}", path.string(), ec.message()));
  }
}

std::string serialize_records(const RecordFile& file) {
  json gens = json::array();
  for (const GenerationRecord& g : file.generations) {
    json labels = json::array();
    for (const auto& [pair, label] : g.parsed) {
      labels.push_back({pair.first, pair.second, std::string(to_string(label))});
    }
    json missing = json::array();
    for (PairKey p : g.missing) missing.push_back({p.first, p.second});
    gens.push_back({{"index", g.generation_index},
                    {"raw", g.raw_output},
                    {"labels", labels},
                    {"missing", missing},
                    {"warnings", g.warnings}});
  }
  json j = {{"doc_id", file.doc_id},
            {"scheme", std::string(file.scheme.name())},
            {"generations", gens}};
  return j.dump(2) + "\n";
}

RecordFile parse_records(std::string_view json_text) {
  try {
    const json j = json::parse(json_text);
    RecordFile file;
    file.doc_id = j.at("doc_id").get<std::string>();
    file.scheme = Scheme::parse(j.at("scheme").get<std::string>());
    for (const json& g : j.at("generations")) {
      GenerationRecord r;
      r.generation_index = g.at("index").get<int>();
      r.raw_output = g.value("raw", std::string());
      for (const json& l : g.at("labels")) {
        const std::string text = l.at(2).get<std::string>();
        const auto label = parse_relation(text);
        if (!label || !file.scheme.contains(*label)) {
          throw ValidationError(fmt::format("record label '{}' not in scheme", text));
        }
        const OrientedLabel o = orient(l.at(0).get<EventId>(), l.at(1).get<EventId>(), *label);
        r.parsed[o.pair] = o.label;
      }
      if (g.contains("missing")) {
        for (const json& m : g.at("missing")) {
          r.missing.push_back(PairKey::of(m.at(0).get<EventId>(), m.at(1).get<EventId>()));
        }
      }
      if (g.contains("warnings")) r.warnings = g.at("warnings").get<std::vector<std::string>>();
      file.generations.push_back(std::move(r));
    }
    return file;
  } catch (const json::exception& e) {
    throw ValidationError(fmt::format("malformed record file: {}", e.what()));
  }
}

}  // namespace tempograph

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

#include <atomic>
#include <cstdlib>
#include <regex>

#include <fmt/format.h>

#include "doctest.h"
#include "json.hpp"
#include "tempograph/io.hpp"
#include "tempograph/pipeline.hpp"
#include "test_support.hpp"

namespace tempograph {
namespace {

// Answers every prompt with BEFORE for each requested pair.
class EchoTransport : public HttpTransport {
 public:
  HttpResponse post(const HttpRequest& request) override {
    ++calls;
    const auto body = nlohmann::json::parse(request.body);
    const std::string user = body.at("messages").at(1).at("content").get<std::string>();
    std::string dot = "digraph G {\n";
    static const std::regex pair_pattern(R"(\((\d+), (\d+)\))");
    for (std::sregex_iterator it(user.begin(), user.end(), pair_pattern); it != std::sregex_iterator();
         ++it) {
      dot += fmt::format("  e{} -> e{} [label=BEFORE];\n", (*it)[1].str(), (*it)[2].str());
    }
    dot += "}\n";
    const nlohmann::json reply = {{"choices", {{{"message", {{"content", dot}}}}}}};
    return {200, reply.dump()};
  }
  std::atomic<int> calls{0};
};

RunConfig fixture_config(const std::filesystem::path& out) {
  RunConfig c = load_run_config(testing::fixture_dir() / "run.json");
  c.dataset = testing::fixture_dir() / "corpus";
  c.gateway.cache_dir = testing::fixture_dir() / "cache";
  c.gateway.mode = CacheMode::kReplayOnly;
  c.output_dir = out;
  return c;
}

TEST_SUITE("pipeline") {

TEST_CASE("config JSON round-trips and rejects unknown keys") {
  RunConfig c;
  c.generations = 3;
  c.scheme = Scheme::six();
  c.time_limit.reset();
  c.documents = {"a", "b"};
  RunConfig back;
  apply_config_json(back, run_config_json(c));
  CHECK(run_config_json(back) == run_config_json(c));
  CHECK_THROWS_AS(apply_config_json(back, R"({"generatoins": 3})"), ValidationError);
  CHECK_THROWS_AS(apply_config_json(back, R"({"generations": "many"})"), ValidationError);
  back.generations = 0;
  back.dataset = testing::fixture_dir() / "corpus";
  CHECK_THROWS_AS(back.validate(), ValidationError);
}

TEST_CASE("replay over the fixture cache is byte-identical") {
  const auto dir = testing::scratch_dir("replay");
  std::string first_report;
  for (const char* name : {"a", "b"}) {
    const RunConfig c = fixture_config(dir / name);
    LlmGateway gateway(c.model, c.gateway, nullptr);
    const RunResult r = run_pipeline(c, gateway);
    CHECK(r.manifest.failed() == 0);
    CHECK(gateway.stats().network_calls == 0);
    CHECK(r.manifest.report.has_value());
    CHECK(r.manifest.report->ti_mean == 0.0);
  }
  for (const char* sub : {"graphs", "distributions", "records"}) {
    for (const auto& e : std::filesystem::directory_iterator(dir / "a" / sub)) {
      CHECK(read_text_file(e.path()) == read_text_file(dir / "b" / sub / e.path().filename()));
    }
  }
  CHECK(read_text_file(dir / "a" / "report.txt") == read_text_file(dir / "b" / "report.txt"));
  const auto manifest = nlohmann::json::parse(read_text_file(dir / "a" / "manifest.json"));
  CHECK(manifest.at("template_version") == PromptTemplates::defaults().version);
  CHECK(manifest.at("composition_table") == "allen-projection-v1/four/strict");
}

TEST_CASE("cold cache makes documents x splits x M calls, warm cache none") {
  const auto dir = testing::scratch_dir("cold");
  ::setenv("TEMPOGRAPH_PIPELINE_TEST_KEY", "k", 1);
  RunConfig c = fixture_config(dir / "out");
  c.gateway.mode = CacheMode::kReadWrite;
  c.gateway.cache_dir = dir / "cache";
  c.model.api_key_env = "TEMPOGRAPH_PIPELINE_TEST_KEY";
  c.workers = 3;
  auto transport = std::make_shared<EchoTransport>();
  int splits = 0;
  for (const Document& d : load(c.dataset, c.profile).documents) {
    splits += static_cast<int>(
        split_pairs(all_pairs(d.events()), d.event_count(), c.split_profile).size());
  }
  {
    LlmGateway gateway(c.model, c.gateway, transport);
    const RunResult r = run_pipeline(c, gateway);
    CHECK(r.manifest.failed() == 0);
    CHECK(transport->calls == splits * c.generations);
  }
  LlmGateway warm(c.model, c.gateway, transport);
  run_pipeline(c, warm);
  CHECK(transport->calls == splits * c.generations);
  CHECK(warm.stats().cache_hits == splits * c.generations);
  ::unsetenv("TEMPOGRAPH_PIPELINE_TEST_KEY");
}

TEST_CASE("documents without outputs are excluded and flagged") {
  const auto dir = testing::scratch_dir("partial");
  RunConfig c = fixture_config(dir / "out");
  c.gateway.cache_dir = dir / "empty-cache";
  LlmGateway gateway(c.model, c.gateway, nullptr);
  const RunResult r = run_pipeline(c, gateway);
  CHECK(r.manifest.failed() == r.manifest.documents.size());
  CHECK_FALSE(r.manifest.report.has_value());
  CHECK(read_text_file(dir / "out" / "report.txt").starts_with("EXCLUDED"));
}

TEST_CASE("ablation rows share upstream generations") {
  const auto dir = testing::scratch_dir("ablate");
  const RunConfig c = fixture_config(dir / "out");
  LlmGateway gateway(c.model, c.gateway, nullptr);
  const AblationResult zsl = ablate(c, Ablation::kZslTimeline, gateway);
  const AblationResult vote = ablate(c, Ablation::kSelfConsistency, gateway);
  const AblationResult global = ablate(c, Ablation::kGlobalConsistency, gateway);
  const AblationResult zsl_global = ablate(c, Ablation::kZslGlobal, gateway);
  CHECK(zsl.runs == c.generations);
  CHECK(zsl_global.runs == c.generations);
  CHECK(global.report.ti_mean == 0.0);
  CHECK(zsl.report.ti_mean >= 0.0);
  CHECK(vote.report.micro_f1 >= zsl.report.micro_f1);
  CHECK(global.report.micro_f1 >= zsl.report.micro_f1);

  RunConfig first = c;
  first.generations = 1;
  first.aggregation = Aggregation::kFirst;
  LlmGateway g2(first.model, first.gateway, nullptr);
  const RunResult raw = run_pipeline(first, g2);
  const AblationResult single = ablate(first, Ablation::kZslTimeline, g2);
  CHECK(single.report.micro_f1 == doctest::Approx(raw.manifest.report->micro_f1));
  CHECK(format_ablation_table({zsl, vote, global}).find("global-consistency") != std::string::npos);
}

TEST_CASE("record files round-trip") {
  RecordFile f;
  f.doc_id = "d";
  GenerationRecord g;
  g.generation_index = 2;
  g.raw_output = "digraph {}\n\"quoted\"";
  g.parsed = {{PairKey{1, 2}, Relation::kAfter}};
  g.missing = {PairKey{2, 3}};
  g.warnings = {"w"};
  f.generations.push_back(g);
  const RecordFile back = parse_records(serialize_records(f));
  CHECK(serialize_records(back) == serialize_records(f));
  CHECK(back.generations[0].parsed == g.parsed);
}

}  // TEST_SUITE

}  // namespace
}  // namespace tempograph

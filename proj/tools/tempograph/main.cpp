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

#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "json.hpp"
#include "tempograph/errors.hpp"

namespace {

std::string error_kind(const std::exception& e) {
  using namespace tempograph;
  if (dynamic_cast<const ValidationError*>(&e)) return "validation";
  if (dynamic_cast<const LoadError*>(&e)) return "load";
  if (dynamic_cast<const ParseError*>(&e)) return "parse";
  if (dynamic_cast<const ReplayMissError*>(&e)) return "replay-miss";
  if (dynamic_cast<const GatewayError*>(&e)) return "gateway";
  if (dynamic_cast<const MalformedGenerationError*>(&e)) return "malformed-generation";
  if (dynamic_cast<const IncompleteGenerationError*>(&e)) return "incomplete-generation";
  if (dynamic_cast<const InfeasibleError*>(&e)) return "infeasible";
  return "internal";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Temporal relation graphs from sampled model generations."};
  app.require_subcommand(1);
  app.set_version_flag("--version", TEMPOGRAPH_VERSION_STRING);
  std::function<int()> action;
  tempograph::cli::register_commands(app, action);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  try {
    return action ? action() : 0;
  } catch (const std::exception& e) {
    nlohmann::json summary = {{"status", "error"}, {"kind", error_kind(e)}, {"message", e.what()}};
    std::cout.flush();
    std::cerr << summary.dump() << "\n";
    return 1;
  }
}

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

#ifndef TEMPOGRAPH_ERRORS_HPP_
#define TEMPOGRAPH_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace tempograph {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed domain data: duplicate ids, dangling references, bad spans.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class LoadError : public Error {
 public:
  using Error::Error;
};

// Model output that cannot be turned into edges. Carries the offending text.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::string raw = {})
      : Error(what), raw_(std::move(raw)) {}
  const std::string& raw() const noexcept { return raw_; }

 private:
  std::string raw_;
};

class IncompleteGenerationError : public Error {
 public:
  using Error::Error;
};

class GatewayError : public Error {
 public:
  explicit GatewayError(const std::string& what, int status = 0)
      : Error(what), status_(status) {}
  // HTTP status when the endpoint answered; 0 for transport failures.
  int status() const noexcept { return status_; }

 private:
  int status_;
};

class ReplayMissError : public GatewayError {
 public:
  explicit ReplayMissError(const std::string& what) : GatewayError(what) {}
};

class MalformedGenerationError : public Error {
 public:
  MalformedGenerationError(const std::string& what, std::string last_raw)
      : Error(what), last_raw_(std::move(last_raw)) {}
  const std::string& last_raw() const noexcept { return last_raw_; }

 private:
  std::string last_raw_;
};

// The solver found no consistent labeling. Only possible with a malformed table.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

}  // namespace tempograph

#endif  // TEMPOGRAPH_ERRORS_HPP_

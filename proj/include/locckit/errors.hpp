// Copyright 2026 The locckit Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace locckit {

// Malformed or out-of-domain input. The CLI maps this to exit code 2.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A well-formed request whose mathematical precondition does not hold
// (e.g. synthesizing extraction for a pair that does not admit it).
// The CLI maps this to exit code 3.
class PreconditionFailed : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Checker and synthesizer disagree. Never expected on valid input.
class InternalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace locckit

// Copyright 2026 The powergame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef POWERGAME_ERRORS_H_
#define POWERGAME_ERRORS_H_

#include <stdexcept>
#include <string>

namespace powergame {

// Invalid experiment configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A problem would exceed the configured memory budget (CLI exit code 3).
class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// The simplex solver hit its iteration cap (CLI exit code 4).
class SolverStall : public std::runtime_error {
 public:
  explicit SolverStall(const std::string& what) : std::runtime_error(what) {}
};

// A solver returned a verdict that is impossible for the problem class, e.g.
// an infeasible correlated-equilibrium LP.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace powergame

#endif  // POWERGAME_ERRORS_H_

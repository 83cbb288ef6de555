// Copyright 2026 The Authors.
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

#ifndef FKSM_ERROR_HPP_
#define FKSM_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace fksm {

// Malformed instance, out-of-range argument, or a precondition the caller
// could have checked.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// The instance (or a derived instance) admits no feasible solution.
class Infeasible : public std::runtime_error {
 public:
  explicit Infeasible(const std::string& what) : std::runtime_error(what) {}
};

// An invariant that should hold by construction was violated.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace fksm

#endif  // FKSM_ERROR_HPP_

// Copyright 2026 The cfgrowth Authors
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

#ifndef CFGROWTH_ERROR_HPP_
#define CFGROWTH_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace cfgrowth {

// Failure categories. The CLI maps each one to a fixed exit code.
enum class ErrorKind {
  domain,     // precondition violated by the caller's input
  budget,     // precision or digit budget too small for the request
  invariant,  // an internal consistency check failed
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_domain(const std::string& what) {
  throw Error(ErrorKind::domain, what);
}
[[noreturn]] inline void throw_budget(const std::string& what) {
  throw Error(ErrorKind::budget, what);
}
[[noreturn]] inline void throw_invariant(const std::string& what) {
  throw Error(ErrorKind::invariant, what);
}

}  // namespace cfgrowth

#endif  // CFGROWTH_ERROR_HPP_

//  Copyright 2026 The qmet Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#ifndef QMET_ERROR_HPP_
#define QMET_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qmet {

/// Structured error: `kind` is a stable machine-readable tag, `what()` the
/// human-readable detail.  Kinds used across the library:
///   carrier-cap-exceeded, not-a-complete-lattice, arity-mismatch,
///   unknown-operation, non-monotone, hypothesis-violation,
///   radius-not-way-below-unit, mismatched-quantale, invalid-element,
///   empty-radius-family, parse-error, unknown-constructor, unknown-check
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}

  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

/// Size limits for constructions that could otherwise exhaust memory.
/// Constructions abort with a structured error instead of running away.
struct Caps {
  std::size_t carrier = 100000;     // max elements of a materialized carrier
  std::size_t points = 12;          // max |X| for powerspace construction
  std::size_t opens = 1u << 20;     // max opens in a generated topology
  std::size_t metrize_opens = 12;   // max |T.opens| accepted by metrize
};

}  // namespace qmet

#endif  // QMET_ERROR_HPP_

// Copyright 2026 The searchgame Authors
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

#ifndef SEARCHGAME_COMMON_HPP_
#define SEARCHGAME_COMMON_HPP_

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace searchgame {

// Absolute tolerance used for all length/time comparisons in the library.
inline constexpr double kTol = 1e-9;

// Invalid user input: malformed documents, bad flags, broken preconditions.
// The CLI maps this to exit status 1. Violated internal invariants are
// reported as std::logic_error and map to exit status 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool nearly_equal(double a, double b, double tol = kTol) {
  return std::fabs(a - b) <= tol;
}

// All numbers leaving the toolkit (JSON documents, CSV cells) are formatted
// with 12 significant digits so identical invocations emit identical bytes.
inline std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return std::string(buf);
}

// Rounds through the 12-significant-digit textual form.
inline double round12(double x) {
  return std::strtod(format_number(x).c_str(), nullptr);
}

}  // namespace searchgame

#endif  // SEARCHGAME_COMMON_HPP_

// Copyright 2026 The sbmrobust Authors.
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

#ifndef SBMROBUST_ERROR_H_
#define SBMROBUST_ERROR_H_

#include <stdexcept>
#include <string>

namespace sbmrobust {

enum class ErrorCode {
  kInvalidInput,
  kDegenerateSpectrum,
  kInfeasible,
  kStuckNeighborhood,
  kParse,
};

// Every failure raised by the library carries one of the codes above so the
// CLI can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput:
      return "invalid-input";
    case ErrorCode::kDegenerateSpectrum:
      return "degenerate-spectrum";
    case ErrorCode::kInfeasible:
      return "infeasible";
    case ErrorCode::kStuckNeighborhood:
      return "stuck-neighborhood";
    case ErrorCode::kParse:
      return "parse";
  }
  return "unknown";
}

[[noreturn]] inline void ThrowInvalidInput(const std::string& message) {
  throw Error(ErrorCode::kInvalidInput, message);
}

}  // namespace sbmrobust

#endif  // SBMROBUST_ERROR_H_

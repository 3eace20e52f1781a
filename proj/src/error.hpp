// Copyright 2026 The clsketch Authors
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

#ifndef CLSKETCH_ERROR_HPP_
#define CLSKETCH_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace clsk {

// Values mirror clsk_status in the public C header.
enum class ErrorCode : int {
  kConfig = 1,
  kShape = 2,
  kIo = 3,
  kFormat = 4,
  kTruncated = 5,
  kVersion = 6,
  kMagic = 7,
  kFingerprint = 8,
  kDivergence = 9,
  kDegenerate = 10,
  kIndependence = 11,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) throw Error(code, what);
}

}  // namespace clsk

#endif  // CLSKETCH_ERROR_HPP_

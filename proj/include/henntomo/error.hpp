// Copyright 2026 The henntomo Authors
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

namespace henntomo {

enum class ErrorKind {
    kSize,      // dimension or count outside the supported range
    kContract,  // precondition on an argument violated (non-Hermitian input, hidden observable, ...)
    kInput,     // bad user input (unknown names, malformed config)
    kNumeric,   // integrator drift, rank deficiency, divergence, degenerate metric
};

class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

   private:
    ErrorKind kind_;
};

struct SizeError : Error {
    explicit SizeError(const std::string &what) : Error(ErrorKind::kSize, what) {}
};

struct ContractError : Error {
    explicit ContractError(const std::string &what) : Error(ErrorKind::kContract, what) {}
};

struct InputError : Error {
    explicit InputError(const std::string &what) : Error(ErrorKind::kInput, what) {}
};

struct NumericError : Error {
    explicit NumericError(const std::string &what) : Error(ErrorKind::kNumeric, what) {}
};

}  // namespace henntomo

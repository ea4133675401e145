// Copyright 2026 The stabtree Authors
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

namespace stabtree {

/// Error categories shared by the C++ core and the C API status codes.
enum class ErrorCode {
    Parse = 1,
    Arity,
    TooLarge,
    NotHorn,
    MalformedScheme,
    NotASequence,
    NotAPath,
    NotANode,
    NotStable,
    Overflow,
    InvalidArgument,
    TreeFormat,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Parse failure with a 1-based source position.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, unsigned line, unsigned column);
    unsigned line() const noexcept { return line_; }
    unsigned column() const noexcept { return column_; }

private:
    unsigned line_;
    unsigned column_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

} // namespace stabtree

// Copyright 2026 The supkit Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace supkit {

// Base of every error raised by the toolchain.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input text (guards, program listings, plain-text FSMs).
// `position` is a 0-based character offset into the parsed text.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t position)
        : Error(message + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// Schema or I/O problems with artifact files.
class FormatError : public Error {
public:
    using Error::Error;
};

// Semantically invalid models: unknown variables, determinism or
// exclusivity violations, broken preconditions.
class ModelError : public Error {
public:
    using Error::Error;
};

// A downstream artifact no longer matches the content hash it recorded for
// its upstream artifact.
class ChainError : public Error {
public:
    using Error::Error;
};

}  // namespace supkit

// Copyright 2026 The DST Augment Authors
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

namespace dst {

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed data: empty volumes, non-finite spacing, mismatched pairs.
class InvalidInput : public Error {
public:
    using Error::Error;
};

// A numeric argument outside what the operation accepts.
class InvalidParameter : public Error {
public:
    using Error::Error;
};

// Caller broke a documented precondition (e.g. unnormalized image).
class ContractViolation : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

// Format parse failure. `field` names the offending header field or
// record key; `line`/`column` are 1-based and 0 when not applicable.
class ParseError : public Error {
public:
    ParseError(std::string field, const std::string& message, int line = 0, int column = 0)
        : Error(format(field, message, line, column)),
          field_(std::move(field)),
          line_(line),
          column_(column) {}

    const std::string& field() const noexcept { return field_; }
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    static std::string format(const std::string& field, const std::string& message, int line,
                              int column) {
        std::string out = field + ": " + message;
        if (line > 0) {
            out += " (line " + std::to_string(line);
            if (column > 0) out += ", column " + std::to_string(column);
            out += ")";
        }
        return out;
    }

    std::string field_;
    int line_;
    int column_;
};

}  // namespace dst

// SPDX-License-Identifier: Apache-2.0
//
// risim: simulation and analysis toolkit for RIS-assisted MIMO links
// Copyright (C) 2026 The risim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef risim_error_H
#define risim_error_H

#include <stdexcept>
#include <string>
#include <string_view>

namespace risim
{
    // Process exit codes used by the command line tool
    enum class ErrorCode : int
    {
        ok = 0,
        usage = 2,
        validation = 3,
        numeric = 4
    };

    constexpr std::string_view to_string(ErrorCode code)
    {
        switch (code)
        {
        case ErrorCode::ok:
            return "OK";
        case ErrorCode::usage:
            return "USAGE";
        case ErrorCode::validation:
            return "VALIDATION";
        case ErrorCode::numeric:
            return "NUMERIC";
        }
        return "UNKNOWN";
    }

    // Base class of all errors raised by the library
    class Error : public std::runtime_error
    {
    public:
        Error(ErrorCode code, const std::string &message)
            : std::runtime_error(message), code_(code) {}

        ErrorCode code() const noexcept { return code_; }

    private:
        ErrorCode code_;
    };

    // Malformed or out-of-contract input (files, dimensions, ranges)
    class ValidationError : public Error
    {
    public:
        explicit ValidationError(const std::string &message)
            : Error(ErrorCode::validation, message) {}
    };

    // Numerically degenerate input (zero matrices, vanishing references)
    class NumericError : public Error
    {
    public:
        explicit NumericError(const std::string &message)
            : Error(ErrorCode::numeric, message) {}
    };
}

#endif

// SPDX-License-Identifier: Apache-2.0
//
// nearfocus: near-field spot beamfocusing simulation and optimization toolkit
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

#ifndef NEARFOCUS_ERROR_HPP
#define NEARFOCUS_ERROR_HPP

#include <stdexcept>
#include <string>

namespace nearfocus
{
    enum class ErrorCode
    {
        InvalidArgument,
        PointOnAperture,
        LengthMismatch,
        DuplicateFocalPoint,
        GridTooSmall,
        NoCrossing,
        IndivisibleTiling,
        ShapeMismatch,
        CalibrationDiverged,
        Validation, // malformed scenario input
        Io
    };

    const char *to_string(ErrorCode code);

    class Error : public std::runtime_error
    {
    public:
        Error(ErrorCode code, const std::string &what)
            : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

        ErrorCode code() const noexcept { return code_; }

    private:
        ErrorCode code_;
    };

    inline const char *to_string(ErrorCode code)
    {
        switch (code)
        {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::PointOnAperture: return "PointOnAperture";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::DuplicateFocalPoint: return "DuplicateFocalPoint";
        case ErrorCode::GridTooSmall: return "GridTooSmall";
        case ErrorCode::NoCrossing: return "NoCrossing";
        case ErrorCode::IndivisibleTiling: return "IndivisibleTiling";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::CalibrationDiverged: return "CalibrationDiverged";
        case ErrorCode::Validation: return "Validation";
        case ErrorCode::Io: return "Io";
        }
        return "Unknown";
    }
}

#endif

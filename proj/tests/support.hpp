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

#ifndef NEARFOCUS_TESTS_SUPPORT_HPP
#define NEARFOCUS_TESTS_SUPPORT_HPP

#include "nearfocus/error.hpp"
#include "nearfocus/geometry.hpp"

#include <doctest.h>

#include <functional>

namespace test
{
    inline const double lambda = nearfocus::wavelength_for(28e9);

    inline nearfocus::ErrorCode code_of(const std::function<void()> &f)
    {
        try
        {
            f();
        }
        catch (const nearfocus::Error &e)
        {
            return e.code();
        }
        FAIL("expected a nearfocus::Error");
        return nearfocus::ErrorCode::Io;
    }

    inline nearfocus::GridAxis axis(nearfocus::Point3 dir, double a, double b, std::size_t n) { return {dir, a, b, n}; }
}

#endif

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

#ifndef NEARFOCUS_ACCEPTANCE_HPP
#define NEARFOCUS_ACCEPTANCE_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace nearfocus::acceptance
{
    struct CriterionResult
    {
        std::string id;
        std::string claim;
        std::string expected;
        std::string observed;
        std::string tolerance;
        bool pass = false;
    };

    // Runs every acceptance criterion; progress lines go to `progress` when given.
    std::vector<CriterionResult> run_all(std::ostream *progress = nullptr);

    std::string format_report(const std::vector<CriterionResult> &results);
    bool all_passed(const std::vector<CriterionResult> &results);
}

#endif

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

#include "nearfocus/acceptance.hpp"

#include <iostream>

int main()
{
    const auto results = nearfocus::acceptance::run_all(nullptr);
    for (const auto &r : results)
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.id << " | expected " << r.expected << " | observed "
                  << r.observed << " | tolerance " << r.tolerance << '\n';
    std::size_t passed = 0;
    for (const auto &r : results)
        passed += r.pass ? 1 : 0;
    std::cout << passed << "/" << results.size() << " criteria passed\n";
    return nearfocus::acceptance::all_passed(results) ? 0 : 1;
}

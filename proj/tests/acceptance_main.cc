// Copyright 2026 The cvqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>
#include <string>
#include <vector>

#include "cvqec/acceptance.h"

// Usage: cvqec_acceptance [C1 C2 ...]
int main(int argc, char **argv) {
    std::vector<std::string> ids(argv + 1, argv + argc);
    bool ok = true;
    try {
        for (const auto &result : cvqec::run_acceptance(ids)) {
            std::cout << cvqec::format_result(result) << std::endl;
            ok = ok && result.passed;
        }
    } catch (const std::exception &e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    return ok ? 0 : 1;
}

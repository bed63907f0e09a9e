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

#ifndef CVQEC_ACCEPTANCE_H
#define CVQEC_ACCEPTANCE_H

#include <string>
#include <vector>

namespace cvqec {

struct CriterionResult {
    std::string id;
    std::string title;
    bool passed = false;
    std::string detail;
    double milliseconds = 0;
};

/// "C1" .. "C11".
std::vector<std::string> criterion_ids();

/// Runs one criterion. Throws std::invalid_argument for an unknown id; any other exception
/// raised by the check is reported as a failure.
CriterionResult run_criterion(const std::string &id);

/// Runs the given criteria (all when empty) in order.
std::vector<CriterionResult> run_acceptance(const std::vector<std::string> &ids = {});

/// "PASS C1 <title> [0.12 ms] <detail>"
std::string format_result(const CriterionResult &result);

}  // namespace cvqec

#endif

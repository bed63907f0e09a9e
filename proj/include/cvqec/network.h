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

#ifndef CVQEC_NETWORK_H
#define CVQEC_NETWORK_H

#include <array>
#include <vector>

#include <gmpxx.h>

#include "cvqec/exact_scalar.h"
#include "cvqec/gaussian_state.h"
#include "json.hpp"

namespace cvqec {

inline constexpr std::size_t kNumChannels = 5;

/// 5x5 real orthogonal mode matrix with exact entries. Rows are output modes, columns inputs.
using ModeMatrix = ExactMatrix;

/// One element of a linear-optics network acting on modes k, l (1-based).
struct NetworkElement {
    enum class Type { BeamSplitter, Swap };

    Type type = Type::BeamSplitter;
    int k = 1;
    int l = 2;
    mpq_class transmittance{0};
    BeamSplitterSign sign = BeamSplitterSign::Plus;

    static NetworkElement beam_splitter(int k, int l, mpq_class transmittance, BeamSplitterSign sign);
    static NetworkElement swap(int k, int l);

    bool operator==(const NetworkElement &) const = default;
};

/// Ordered list of elements in the order they act on the light, plus per-input Fourier flags.
struct NetworkSpec {
    std::vector<NetworkElement> elements;
    std::array<bool, kNumChannels> fourier{};

    void validate() const;
    bool operator==(const NetworkSpec &) const = default;
};

/// B45-(1/2) B34+(1/3) B12+(1/2) B23+(1/4), listed in application order (B23 first).
NetworkSpec encoder_spec();

/// The encoding matrix; input ordering (a1, a2, a3, a_in, a4), so column 4 is the input mode.
ModeMatrix encoder_matrix();

/// Product of the elements embedded in the 5x5 identity, last element leftmost.
/// Throws std::invalid_argument if an element is invalid or a transmittance has no exact
/// square root in Q(sqrt2, sqrt3).
ModeMatrix compose(const NetworkSpec &spec);
/// Float version of compose(); accepts any transmittance in [0, 1].
Eigen::MatrixXd compose_numeric(const NetworkSpec &spec);

/// Transpose of an orthogonal matrix. Throws std::invalid_argument if M M^T != I exactly.
ModeMatrix inverse(const ModeMatrix &matrix);

/// 10x10 symplectic lift, preceded by (x, p) -> (-p, x) on every flagged input mode.
SymplecticOp lift_to_symplectic(const ModeMatrix &matrix, const std::array<bool, kNumChannels> &fourier = {});
SymplecticOp lift_to_symplectic(const Eigen::MatrixXd &matrix, const std::array<bool, kNumChannels> &fourier = {});

/// {"elements":[{"k":2,"l":3,"T":0.25,"sign":"+"}, {"k":2,"l":3,"type":"swap"}], "fourier":[false,...]}
/// "T" may be a number or an exact rational string such as "1/3".
nlohmann::json network_to_json(const NetworkSpec &spec);
NetworkSpec network_from_json(const nlohmann::json &doc);

}  // namespace cvqec

#endif

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

#include "cvqec/network.h"

#include <cmath>

#include <gtest/gtest.h>

using namespace cvqec;

TEST(network, encoder_entries) {
    ModeMatrix u = encoder_matrix();
    ASSERT_EQ(u.at(0, 0), ExactScalar::sqrt_int(2) / 2);
    ASSERT_EQ(u.at(2, 3), ExactScalar::sqrt_int(3) / 3);
    for (int row : {0, 1}) {
        for (int col : {3, 4}) {
            ASSERT_TRUE(u.at(row, col).is_zero()) << row << "," << col;
        }
    }
    ASSERT_TRUE(u.is_orthogonal());
}

TEST(network, compose_examples) {
    ASSERT_EQ(compose(encoder_spec()), encoder_matrix());
    ASSERT_TRUE(compose(NetworkSpec{}).is_identity());

    NetworkSpec one;
    one.elements.push_back(NetworkElement::beam_splitter(2, 3, mpq_class(1, 4), BeamSplitterSign::Plus));
    ModeMatrix m = compose(one);
    ExactScalar c = ExactScalar::sqrt_int(3) / 2;
    ASSERT_EQ(m.at(1, 1), c);
    ASSERT_EQ(m.at(1, 2), ExactScalar::rational(1, 2));
    ASSERT_EQ(m.at(2, 1), ExactScalar::rational(1, 2));
    ASSERT_EQ(m.at(2, 2), -c);
    ASSERT_EQ(m.at(0, 0), ExactScalar(1));
}

TEST(network, compose_numeric_matches_exact) {
    ASSERT_LE((compose_numeric(encoder_spec()) - encoder_matrix().to_eigen()).cwiseAbs().maxCoeff(), 1e-12);
    NetworkSpec odd;
    odd.elements.push_back(NetworkElement::beam_splitter(1, 2, mpq_class(1, 5), BeamSplitterSign::Minus));
    ASSERT_THROW(compose(odd), std::invalid_argument);
    Eigen::MatrixXd n = compose_numeric(odd);
    ASSERT_NEAR(n(0, 0), std::sqrt(0.8), 1e-15);
    ASSERT_NEAR(n(1, 0), -std::sqrt(0.2), 1e-15);
}

TEST(network, invalid_elements) {
    NetworkSpec bad;
    bad.elements.push_back(NetworkElement::beam_splitter(2, 2, mpq_class(1, 2), BeamSplitterSign::Plus));
    ASSERT_THROW(compose(bad), std::invalid_argument);
    NetworkSpec range;
    range.elements.push_back(NetworkElement::beam_splitter(1, 6, mpq_class(1, 2), BeamSplitterSign::Plus));
    ASSERT_THROW(compose(range), std::invalid_argument);
    NetworkSpec t;
    t.elements.push_back(NetworkElement::beam_splitter(1, 2, mpq_class(3, 2), BeamSplitterSign::Plus));
    ASSERT_THROW(compose(t), std::invalid_argument);
}

TEST(network, swap) {
    NetworkSpec s;
    s.elements.push_back(NetworkElement::swap(1, 4));
    ModeMatrix m = compose(s);
    ASSERT_EQ(m.at(0, 3), ExactScalar(1));
    ASSERT_EQ(m.at(3, 0), ExactScalar(1));
    ASSERT_TRUE(m.at(0, 0).is_zero());
}

TEST(network, inverse_examples) {
    ModeMatrix u = encoder_matrix();
    ASSERT_TRUE((inverse(u) * u).is_identity());
    ASSERT_TRUE(inverse(ExactMatrix::identity(5)).is_identity());
    ExactMatrix skew = ExactMatrix::identity(5);
    skew.at(0, 1) = 1;
    ASSERT_THROW(inverse(skew), std::invalid_argument);
}

TEST(network, lift_to_symplectic) {
    SymplecticOp plain = lift_to_symplectic(encoder_matrix());
    ASSERT_TRUE(plain.is_symplectic());
    for (int i = 0; i < 5; i++) {
        for (int j = 0; j < 5; j++) {
            ASSERT_EQ(plain.S(2 * i, 2 * j + 1), 0);
            ASSERT_EQ(plain.S(2 * i, 2 * j), plain.S(2 * i + 1, 2 * j + 1));
        }
    }

    std::array<bool, kNumChannels> flags{true, false, false, false, false};
    SymplecticOp rotated = lift_to_symplectic(ExactMatrix::identity(5), flags);
    ASSERT_EQ(rotated.S(0, 0), 0);
    ASSERT_EQ(rotated.S(0, 1), -1);
    ASSERT_EQ(rotated.S(1, 0), 1);
    ASSERT_EQ(rotated.S(1, 1), 0);
    ASSERT_EQ(rotated.S(2, 2), 1);
    ASSERT_TRUE(rotated.is_symplectic());
}

TEST(network, json_round_trip) {
    NetworkSpec spec = encoder_spec();
    spec.fourier = {true, true, true, false, true};
    ASSERT_EQ(network_from_json(network_to_json(spec)), spec);
    nlohmann::json doc = network_to_json(spec);
    doc["bogus"] = 1;
    ASSERT_THROW(network_from_json(doc), std::invalid_argument);
}

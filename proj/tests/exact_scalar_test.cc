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

#include "cvqec/exact_scalar.h"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

using namespace cvqec;

TEST(exact_scalar, products_of_square_roots) {
    ExactScalar h = ExactScalar::sqrt_int(2) / 2;
    ASSERT_EQ(h * h, ExactScalar::rational(1, 2));

    ExactScalar s = ExactScalar::sqrt_int(6) / 4;
    ASSERT_EQ(s * s, ExactScalar::rational(3, 8));

    ExactScalar prod = (ExactScalar::sqrt_int(6) / 6) * (ExactScalar::sqrt_int(2) / 2);
    ASSERT_EQ(prod, ExactScalar(0, 0, mpq_class(1, 6), 0));
    ASSERT_NEAR(prod.to_double(), 1 / std::sqrt(12.0), 1e-15);
    ASSERT_EQ(exact_mul(h, h), h * h);
}

TEST(exact_scalar, sqrt_int) {
    ASSERT_EQ(ExactScalar::sqrt_int(0), ExactScalar(0));
    ASSERT_EQ(ExactScalar::sqrt_int(4), ExactScalar(2));
    ASSERT_EQ(ExactScalar::sqrt_int(12), 2 * ExactScalar::sqrt_int(3));
    ASSERT_EQ(ExactScalar::sqrt_int(2) * ExactScalar::sqrt_int(3), ExactScalar::sqrt_int(6));
    ASSERT_THROW(ExactScalar::sqrt_int(5), std::invalid_argument);
    ASSERT_THROW(ExactScalar::sqrt_int(-2), std::invalid_argument);
}

TEST(exact_scalar, sqrt_rational) {
    ASSERT_EQ(ExactScalar::sqrt_rational(mpq_class(3, 4)).value(), ExactScalar::sqrt_int(3) / 2);
    ASSERT_EQ(ExactScalar::sqrt_rational(mpq_class(2, 3)).value(), ExactScalar::sqrt_int(6) / 3);
    ASSERT_FALSE(ExactScalar::sqrt_rational(mpq_class(1, 5)).has_value());
}

TEST(exact_scalar, inverse_and_division_by_zero) {
    ExactScalar x(1, 1, 1, 1);
    ASSERT_EQ(x * x.inverse(), ExactScalar(1));
    ASSERT_THROW(ExactScalar(0).inverse(), std::domain_error);
}

TEST(exact_scalar, str) {
    ASSERT_EQ(ExactScalar::sqrt_int(2).str(), "√2");
    ASSERT_EQ(ExactScalar(0).str(), "0");
    ASSERT_EQ(ExactScalar::rational(-1, 2).str(), "-1/2");
}

TEST(exact_scalar, field_axioms_random) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> coef(-6, 6);
    auto draw = [&] {
        return ExactScalar(mpq_class(coef(rng), 1 + (rng() % 5)), coef(rng), mpq_class(coef(rng), 3), coef(rng));
    };
    for (int i = 0; i < 200; i++) {
        ExactScalar a = draw();
        ExactScalar b = draw();
        ExactScalar c = draw();
        ASSERT_EQ((a * b) * c, a * (b * c));
        ASSERT_EQ(a * (b + c), a * b + a * c);
        ASSERT_EQ(a * b, b * a);
        ASSERT_NEAR((a * b).to_double(), a.to_double() * b.to_double(), 1e-9);
        if (!a.is_zero()) {
            ASSERT_EQ(a / a, ExactScalar(1));
        }
        ASSERT_EQ(a.conjugate_sqrt2().conjugate_sqrt2(), a);
    }
}

TEST(exact_matrix, transpose_and_orthogonality) {
    ExactScalar h = ExactScalar::sqrt_int(2) / 2;
    ExactMatrix m{{h, h}, {h, -h}};
    ASSERT_TRUE(m.is_orthogonal());
    ASSERT_TRUE((m * m.transpose()).is_identity());
    ExactMatrix n{{1, 1}, {0, 1}};
    ASSERT_FALSE(n.is_orthogonal());
    ASSERT_NEAR(m.to_eigen()(1, 1), -std::sqrt(0.5), 1e-15);
}

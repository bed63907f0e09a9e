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

#ifndef CVQEC_EXACT_SCALAR_H
#define CVQEC_EXACT_SCALAR_H

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cvqec {

/// An exact element a + b*sqrt(2) + c*sqrt(3) + d*sqrt(6) of the field Q(sqrt2, sqrt3).
///
/// Every beam-splitter amplitude and feedforward gain of the five-mode code lives in
/// this field, so identities such as "the output carries no e1 term" can be checked
/// with exact zero tests instead of float tolerances.
class ExactScalar {
   public:
    ExactScalar() = default;
    ExactScalar(long value);  // NOLINT(google-explicit-constructor)
    ExactScalar(mpq_class a, mpq_class b, mpq_class c, mpq_class d);

    static ExactScalar rational(long numerator, long denominator);
    /// sqrt(n) for a non-negative integer n whose squarefree part divides 6.
    static ExactScalar sqrt_int(long n);
    /// Exact square root of a non-negative rational, if it lies in the field.
    static std::optional<ExactScalar> sqrt_rational(const mpq_class &q);

    const mpq_class &a() const { return a_; }
    const mpq_class &b() const { return b_; }
    const mpq_class &c() const { return c_; }
    const mpq_class &d() const { return d_; }

    bool is_zero() const;
    bool is_rational() const;
    double to_double() const;

    ExactScalar inverse() const;
    /// Galois conjugates: sqrt2 -> -sqrt2 and sqrt3 -> -sqrt3 respectively.
    ExactScalar conjugate_sqrt2() const;
    ExactScalar conjugate_sqrt3() const;

    ExactScalar operator-() const;
    ExactScalar &operator+=(const ExactScalar &other);
    ExactScalar &operator-=(const ExactScalar &other);
    ExactScalar &operator*=(const ExactScalar &other);
    ExactScalar &operator/=(const ExactScalar &other);

    friend ExactScalar operator+(ExactScalar lhs, const ExactScalar &rhs) { return lhs += rhs; }
    friend ExactScalar operator-(ExactScalar lhs, const ExactScalar &rhs) { return lhs -= rhs; }
    friend ExactScalar operator*(const ExactScalar &lhs, const ExactScalar &rhs);
    friend ExactScalar operator/(const ExactScalar &lhs, const ExactScalar &rhs) { return lhs * rhs.inverse(); }
    friend bool operator==(const ExactScalar &lhs, const ExactScalar &rhs);
    friend bool operator!=(const ExactScalar &lhs, const ExactScalar &rhs) { return !(lhs == rhs); }

    /// Renders e.g. "1/√6", "-√3/2", "2√2", "1/(2√6)".
    std::string str() const;

   private:
    mpq_class a_{0}, b_{0}, c_{0}, d_{0};
};

/// exact_mul in the module contract; operator* is the same thing.
ExactScalar exact_mul(const ExactScalar &lhs, const ExactScalar &rhs);

std::ostream &operator<<(std::ostream &out, const ExactScalar &value);

/// Dense matrix over Q(sqrt2, sqrt3).
class ExactMatrix {
   public:
    ExactMatrix() = default;
    ExactMatrix(std::size_t rows, std::size_t cols);
    ExactMatrix(std::initializer_list<std::initializer_list<ExactScalar>> rows);

    static ExactMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    ExactScalar &at(std::size_t row, std::size_t col);
    const ExactScalar &at(std::size_t row, std::size_t col) const;

    ExactMatrix transpose() const;
    bool is_identity() const;
    bool is_orthogonal() const;
    Eigen::MatrixXd to_eigen() const;

    friend ExactMatrix operator*(const ExactMatrix &lhs, const ExactMatrix &rhs);
    friend bool operator==(const ExactMatrix &lhs, const ExactMatrix &rhs);
    friend bool operator!=(const ExactMatrix &lhs, const ExactMatrix &rhs) { return !(lhs == rhs); }

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<ExactScalar> entries_;
};

}  // namespace cvqec

#endif

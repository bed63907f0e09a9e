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
#include <sstream>
#include <stdexcept>

namespace cvqec {

namespace {

constexpr long kRadicands[4] = {1, 2, 3, 6};

std::string format_term(const mpq_class &q, long radicand) {
    mpq_class mag = abs(q);
    if (radicand == 1) {
        return mag.get_str();
    }
    std::string root = "√" + std::to_string(radicand);
    if (mag.get_den() == 1) {
        return mag == 1 ? root : mag.get_num().get_str() + root;
    }
    // q*sqrt(k) == t/sqrt(k) with t = q*k.
    mpq_class t = mag * radicand;
    if (t == 1) {
        return "1/" + root;
    }
    if (t.get_num() == 1) {
        return "1/(" + t.get_den().get_str() + root + ")";
    }
    std::string num = mag.get_num() == 1 ? root : mag.get_num().get_str() + root;
    return num + "/" + mag.get_den().get_str();
}

}  // namespace

ExactScalar::ExactScalar(long value) : a_(value) {
}

ExactScalar::ExactScalar(mpq_class a, mpq_class b, mpq_class c, mpq_class d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    a_.canonicalize();
    b_.canonicalize();
    c_.canonicalize();
    d_.canonicalize();
}

ExactScalar ExactScalar::rational(long numerator, long denominator) {
    if (denominator == 0) {
        throw std::invalid_argument("ExactScalar::rational: zero denominator");
    }
    mpq_class q(numerator, denominator);
    q.canonicalize();
    return ExactScalar(q, 0, 0, 0);
}

std::optional<ExactScalar> ExactScalar::sqrt_rational(const mpq_class &q) {
    if (sgn(q) < 0) {
        return std::nullopt;
    }
    if (sgn(q) == 0) {
        return ExactScalar();
    }
    // sqrt(p/r) = sqrt(p*r)/r; look for p*r = m^2 * s with s in {1,2,3,6}.
    mpz_class n = q.get_num() * q.get_den();
    for (int i = 0; i < 4; i++) {
        long s = kRadicands[i];
        if (n % s != 0) {
            continue;
        }
        mpz_class rest = n / s;
        if (mpz_perfect_square_p(rest.get_mpz_t()) == 0) {
            continue;
        }
        mpz_class m = sqrt(rest);
        mpq_class coeff(m, q.get_den());
        coeff.canonicalize();
        mpq_class parts[4] = {0, 0, 0, 0};
        parts[i] = coeff;
        return ExactScalar(parts[0], parts[1], parts[2], parts[3]);
    }
    return std::nullopt;
}

ExactScalar ExactScalar::sqrt_int(long n) {
    auto result = sqrt_rational(mpq_class(n));
    if (!result) {
        throw std::invalid_argument("sqrt(" + std::to_string(n) + ") is not in Q(sqrt2, sqrt3)");
    }
    return *result;
}

bool ExactScalar::is_zero() const {
    return sgn(a_) == 0 && sgn(b_) == 0 && sgn(c_) == 0 && sgn(d_) == 0;
}

bool ExactScalar::is_rational() const {
    return sgn(b_) == 0 && sgn(c_) == 0 && sgn(d_) == 0;
}

double ExactScalar::to_double() const {
    return a_.get_d() + b_.get_d() * std::sqrt(2.0) + c_.get_d() * std::sqrt(3.0) + d_.get_d() * std::sqrt(6.0);
}

ExactScalar ExactScalar::conjugate_sqrt2() const {
    return ExactScalar(a_, -b_, c_, -d_);
}

ExactScalar ExactScalar::conjugate_sqrt3() const {
    return ExactScalar(a_, b_, -c_, -d_);
}

ExactScalar ExactScalar::inverse() const {
    if (is_zero()) {
        throw std::domain_error("ExactScalar::inverse: division by zero");
    }
    // x * conj2(x) lies in Q(sqrt3); multiplying that by its sqrt3-conjugate lands in Q.
    ExactScalar c2 = conjugate_sqrt2();
    ExactScalar y = *this * c2;
    ExactScalar y3 = y.conjugate_sqrt3();
    ExactScalar norm = y * y3;
    mpq_class inv_norm = 1 / norm.a_;
    ExactScalar numerator = c2 * y3;
    return numerator * ExactScalar(inv_norm, 0, 0, 0);
}

ExactScalar ExactScalar::operator-() const {
    return ExactScalar(-a_, -b_, -c_, -d_);
}

ExactScalar &ExactScalar::operator+=(const ExactScalar &other) {
    a_ += other.a_;
    b_ += other.b_;
    c_ += other.c_;
    d_ += other.d_;
    return *this;
}

ExactScalar &ExactScalar::operator-=(const ExactScalar &other) {
    a_ -= other.a_;
    b_ -= other.b_;
    c_ -= other.c_;
    d_ -= other.d_;
    return *this;
}

ExactScalar &ExactScalar::operator*=(const ExactScalar &other) {
    *this = *this * other;
    return *this;
}

ExactScalar &ExactScalar::operator/=(const ExactScalar &other) {
    *this = *this * other.inverse();
    return *this;
}

ExactScalar operator*(const ExactScalar &x, const ExactScalar &y) {
    if (x.is_zero() || y.is_zero()) {
        return ExactScalar();
    }
    if (x.is_rational()) {
        return ExactScalar(x.a_ * y.a_, x.a_ * y.b_, x.a_ * y.c_, x.a_ * y.d_);
    }
    if (y.is_rational()) {
        return ExactScalar(y.a_ * x.a_, y.a_ * x.b_, y.a_ * x.c_, y.a_ * x.d_);
    }
    // sqrt2*sqrt3 = sqrt6, sqrt2*sqrt6 = 2 sqrt3, sqrt3*sqrt6 = 3 sqrt2.
    mpq_class a = x.a_ * y.a_ + 2 * x.b_ * y.b_ + 3 * x.c_ * y.c_ + 6 * x.d_ * y.d_;
    mpq_class b = x.a_ * y.b_ + x.b_ * y.a_ + 3 * (x.c_ * y.d_ + x.d_ * y.c_);
    mpq_class c = x.a_ * y.c_ + x.c_ * y.a_ + 2 * (x.b_ * y.d_ + x.d_ * y.b_);
    mpq_class d = x.a_ * y.d_ + x.d_ * y.a_ + x.b_ * y.c_ + x.c_ * y.b_;
    return ExactScalar(a, b, c, d);
}

bool operator==(const ExactScalar &lhs, const ExactScalar &rhs) {
    return lhs.a_ == rhs.a_ && lhs.b_ == rhs.b_ && lhs.c_ == rhs.c_ && lhs.d_ == rhs.d_;
}

ExactScalar exact_mul(const ExactScalar &lhs, const ExactScalar &rhs) {
    return lhs * rhs;
}

std::string ExactScalar::str() const {
    const mpq_class *parts[4] = {&a_, &b_, &c_, &d_};
    std::string out;
    for (int i = 0; i < 4; i++) {
        const mpq_class &q = *parts[i];
        if (sgn(q) == 0) {
            continue;
        }
        if (out.empty()) {
            out += sgn(q) < 0 ? "-" : "";
        } else {
            out += sgn(q) < 0 ? " - " : " + ";
        }
        out += format_term(q, kRadicands[i]);
    }
    return out.empty() ? "0" : out;
}

std::ostream &operator<<(std::ostream &out, const ExactScalar &value) {
    return out << value.str();
}

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {
}

ExactMatrix::ExactMatrix(std::initializer_list<std::initializer_list<ExactScalar>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto &row : rows) {
        if (row.size() != cols_) {
            throw std::invalid_argument("ExactMatrix: ragged initializer");
        }
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
}

ExactMatrix ExactMatrix::identity(std::size_t n) {
    ExactMatrix m(n, n);
    for (std::size_t i = 0; i < n; i++) {
        m.at(i, i) = 1;
    }
    return m;
}

ExactScalar &ExactMatrix::at(std::size_t row, std::size_t col) {
    if (row >= rows_ || col >= cols_) {
        throw std::out_of_range("ExactMatrix::at");
    }
    return entries_[row * cols_ + col];
}

const ExactScalar &ExactMatrix::at(std::size_t row, std::size_t col) const {
    if (row >= rows_ || col >= cols_) {
        throw std::out_of_range("ExactMatrix::at");
    }
    return entries_[row * cols_ + col];
}

ExactMatrix ExactMatrix::transpose() const {
    ExactMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; i++) {
        for (std::size_t j = 0; j < cols_; j++) {
            t.at(j, i) = at(i, j);
        }
    }
    return t;
}

bool ExactMatrix::is_identity() const {
    return rows_ == cols_ && *this == identity(rows_);
}

bool ExactMatrix::is_orthogonal() const {
    return rows_ == cols_ && (*this * transpose()).is_identity();
}

Eigen::MatrixXd ExactMatrix::to_eigen() const {
    Eigen::MatrixXd m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; i++) {
        for (std::size_t j = 0; j < cols_; j++) {
            m(i, j) = at(i, j).to_double();
        }
    }
    return m;
}

ExactMatrix operator*(const ExactMatrix &lhs, const ExactMatrix &rhs) {
    if (lhs.cols_ != rhs.rows_) {
        throw std::invalid_argument("ExactMatrix: dimension mismatch in product");
    }
    ExactMatrix out(lhs.rows_, rhs.cols_);
    for (std::size_t i = 0; i < lhs.rows_; i++) {
        for (std::size_t k = 0; k < lhs.cols_; k++) {
            const ExactScalar &left = lhs.at(i, k);
            if (left.is_zero()) {
                continue;
            }
            for (std::size_t j = 0; j < rhs.cols_; j++) {
                const ExactScalar &right = rhs.at(k, j);
                if (!right.is_zero()) {
                    out.at(i, j) += left * right;
                }
            }
        }
    }
    return out;
}

bool operator==(const ExactMatrix &lhs, const ExactMatrix &rhs) {
    return lhs.rows_ == rhs.rows_ && lhs.cols_ == rhs.cols_ && lhs.entries_ == rhs.entries_;
}

}  // namespace cvqec

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

#ifndef CVQEC_LINEAR_FORM_H
#define CVQEC_LINEAR_FORM_H

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cvqec/exact_scalar.h"

namespace cvqec {

enum class Quadrature : std::uint8_t { X, P };

enum class SymbolKind : std::uint8_t { Ancilla, Input, Error };

/// Which power of e^{r} multiplies a vacuum quadrature symbol.
enum class Attenuation : std::uint8_t { None, Squeezed, Antisqueezed };

/// One independent zero-mean quadrature variable of the Heisenberg picture.
///
/// Ancilla symbols stand for the *vacuum* quadrature x_m^(0) or p_m^(0) together with its
/// squeezing factor, so "x_1^(0) e^{-r}" is a single symbol with tag Squeezed. Error symbols
/// are the x/p parts of the displacement injected on channel 1..5.
struct QuadSymbol {
    SymbolKind kind = SymbolKind::Ancilla;
    int index = 0;  // 0 for the input, 1..4 for ancillas, 1..5 for error channels.
    Quadrature quadrature = Quadrature::X;
    Attenuation tag = Attenuation::None;

    static QuadSymbol input(Quadrature q);
    static QuadSymbol ancilla(int m, Quadrature q, Attenuation tag);
    static QuadSymbol error(int channel, Quadrature q);

    /// e.g. "x_in", "p2", "x1", "xe3".
    std::string name() const;

    auto operator<=>(const QuadSymbol &) const = default;
    bool operator==(const QuadSymbol &) const = default;
};

/// Sum of exact coefficients times quadrature symbols. Zero coefficients are never stored.
class LinearForm {
   public:
    LinearForm() = default;
    static LinearForm of(const QuadSymbol &symbol, ExactScalar coefficient = 1);

    const std::map<QuadSymbol, ExactScalar> &terms() const { return terms_; }
    ExactScalar coefficient(const QuadSymbol &symbol) const;
    bool is_zero() const { return terms_.empty(); }
    bool has_kind(SymbolKind kind) const;

    void add_term(const QuadSymbol &symbol, const ExactScalar &coefficient);
    /// The form with every symbol of the given kind dropped.
    LinearForm without_kind(SymbolKind kind) const;

    LinearForm &operator+=(const LinearForm &other);
    LinearForm &operator-=(const LinearForm &other);
    LinearForm operator-() const;
    friend LinearForm operator+(LinearForm lhs, const LinearForm &rhs) { return lhs += rhs; }
    friend LinearForm operator-(LinearForm lhs, const LinearForm &rhs) { return lhs -= rhs; }
    friend LinearForm operator*(const ExactScalar &scale, const LinearForm &form);
    friend bool operator==(const LinearForm &lhs, const LinearForm &rhs) { return lhs.terms_ == rhs.terms_; }
    friend bool operator!=(const LinearForm &lhs, const LinearForm &rhs) { return !(lhs == rhs); }

    /// "1/√6·x2 − 1/√2·x3 + 1/√3·x_in"
    std::string str() const;

   private:
    std::map<QuadSymbol, ExactScalar> terms_;
};

std::ostream &operator<<(std::ostream &out, const LinearForm &form);

/// Heisenberg-picture x and p operators of one optical mode.
struct ModeForms {
    LinearForm x;
    LinearForm p;

    const LinearForm &quadrature(Quadrature q) const { return q == Quadrature::X ? x : p; }
    bool operator==(const ModeForms &) const = default;

    /// Mode-level rendering ("1/√6·a2 − 1/√2·a3 + 1/√3·a_in") when x and p carry the same
    /// coefficients per mode, otherwise "x: ...; p: ...".
    std::string str() const;
};

/// Row i of the result is sum_j matrix(i, j) * forms[j].
std::vector<LinearForm> form_apply_matrix(std::span<const LinearForm> forms, const ExactMatrix &matrix);
std::vector<ModeForms> form_apply_matrix(std::span<const ModeForms> modes, const ExactMatrix &matrix);

/// Variances of the independent symbols, in units where a vacuum quadrature has variance 1/4.
struct VarianceModel {
    std::array<double, 4> ancilla_r{0, 0, 0, 0};
    double input_var_x = 0.25;
    double input_var_p = 0.25;
    /// Indexed by 2*(channel-1) + (0 for x, 1 for p); unset entries are unknown.
    std::array<std::optional<double>, 10> error_var{};

    static VarianceModel uniform(double r, double input_var_x = 0.25, double input_var_p = 0.25);
    void set_error_variance(int channel, Quadrature q, double variance);
    double variance_of(const QuadSymbol &symbol) const;
};

double form_variance(const LinearForm &form, const VarianceModel &model);
double form_variance(const LinearForm &form, double r, std::array<double, 2> input_var);
/// Covariance of two forms under the same independent-symbol model.
double form_covariance(const LinearForm &lhs, const LinearForm &rhs, const VarianceModel &model);

}  // namespace cvqec

#endif

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

#include "cvqec/linear_form.h"

#include <cmath>
#include <stdexcept>

namespace cvqec {

QuadSymbol QuadSymbol::input(Quadrature q) {
    return QuadSymbol{SymbolKind::Input, 0, q, Attenuation::None};
}

QuadSymbol QuadSymbol::ancilla(int m, Quadrature q, Attenuation tag) {
    if (m < 1 || m > 4) {
        throw std::out_of_range("ancilla index must be in 1..4");
    }
    return QuadSymbol{SymbolKind::Ancilla, m, q, tag};
}

QuadSymbol QuadSymbol::error(int channel, Quadrature q) {
    if (channel < 1 || channel > 5) {
        throw std::out_of_range("error channel must be in 1..5");
    }
    return QuadSymbol{SymbolKind::Error, channel, q, Attenuation::None};
}

std::string QuadSymbol::name() const {
    std::string q = quadrature == Quadrature::X ? "x" : "p";
    switch (kind) {
        case SymbolKind::Input:
            return q + "_in";
        case SymbolKind::Ancilla:
            return q + std::to_string(index);
        case SymbolKind::Error:
            return q + "e" + std::to_string(index);
    }
    return q + "?";
}

LinearForm LinearForm::of(const QuadSymbol &symbol, ExactScalar coefficient) {
    LinearForm form;
    form.add_term(symbol, coefficient);
    return form;
}

ExactScalar LinearForm::coefficient(const QuadSymbol &symbol) const {
    auto it = terms_.find(symbol);
    return it == terms_.end() ? ExactScalar() : it->second;
}

bool LinearForm::has_kind(SymbolKind kind) const {
    for (const auto &[symbol, coeff] : terms_) {
        if (symbol.kind == kind) {
            return true;
        }
    }
    return false;
}

void LinearForm::add_term(const QuadSymbol &symbol, const ExactScalar &coefficient) {
    if (coefficient.is_zero()) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(symbol, coefficient);
    if (!inserted) {
        it->second += coefficient;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
}

LinearForm LinearForm::without_kind(SymbolKind kind) const {
    LinearForm out;
    for (const auto &[symbol, coeff] : terms_) {
        if (symbol.kind != kind) {
            out.terms_.emplace(symbol, coeff);
        }
    }
    return out;
}

LinearForm &LinearForm::operator+=(const LinearForm &other) {
    for (const auto &[symbol, coeff] : other.terms_) {
        add_term(symbol, coeff);
    }
    return *this;
}

LinearForm &LinearForm::operator-=(const LinearForm &other) {
    for (const auto &[symbol, coeff] : other.terms_) {
        add_term(symbol, -coeff);
    }
    return *this;
}

LinearForm LinearForm::operator-() const {
    LinearForm out;
    for (const auto &[symbol, coeff] : terms_) {
        out.terms_.emplace(symbol, -coeff);
    }
    return out;
}

LinearForm operator*(const ExactScalar &scale, const LinearForm &form) {
    LinearForm out;
    if (scale.is_zero()) {
        return out;
    }
    for (const auto &[symbol, coeff] : form.terms_) {
        out.terms_.emplace(symbol, scale * coeff);
    }
    return out;
}

namespace {

template <typename Terms>
std::string render_terms(const Terms &terms) {
    std::string out;
    for (const auto &[name, coeff] : terms) {
        // Print a single-term coefficient as a magnitude with the sign pulled out.
        bool negative = coeff.to_double() < 0;
        ExactScalar magnitude = negative ? -coeff : coeff;
        bool multi_term = (sgn(magnitude.a()) != 0) + (sgn(magnitude.b()) != 0) + (sgn(magnitude.c()) != 0) +
                              (sgn(magnitude.d()) != 0) >
                          1;
        if (out.empty()) {
            out += negative ? "−" : "";
        } else {
            out += negative ? " − " : " + ";
        }
        if (magnitude == ExactScalar(1)) {
            out += name;
        } else if (multi_term) {
            out += "(" + magnitude.str() + ")·" + name;
        } else {
            out += magnitude.str() + "·" + name;
        }
    }
    return out.empty() ? "0" : out;
}

std::string mode_name(const QuadSymbol &symbol) {
    switch (symbol.kind) {
        case SymbolKind::Input:
            return "a_in";
        case SymbolKind::Ancilla:
            return "a" + std::to_string(symbol.index);
        case SymbolKind::Error:
            return "e" + std::to_string(symbol.index);
    }
    return "?";
}

}  // namespace

std::string LinearForm::str() const {
    std::vector<std::pair<std::string, ExactScalar>> named;
    for (const auto &[symbol, coeff] : terms_) {
        named.emplace_back(symbol.name(), coeff);
    }
    return render_terms(named);
}

std::ostream &operator<<(std::ostream &out, const LinearForm &form) {
    return out << form.str();
}

std::string ModeForms::str() const {
    // Mode-level rendering requires x to hold only X symbols, p only P symbols, and matching
    // coefficients for each (kind, index) pair.
    std::vector<std::pair<std::string, ExactScalar>> named;
    bool mode_level = x.terms().size() == p.terms().size();
    auto p_it = p.terms().begin();
    for (const auto &[symbol, coeff] : x.terms()) {
        if (!mode_level) {
            break;
        }
        const auto &[p_symbol, p_coeff] = *p_it++;
        if (symbol.quadrature != Quadrature::X || p_symbol.quadrature != Quadrature::P ||
            symbol.kind != p_symbol.kind || symbol.index != p_symbol.index || coeff != p_coeff) {
            mode_level = false;
            break;
        }
        named.emplace_back(mode_name(symbol), coeff);
    }
    if (mode_level) {
        return render_terms(named);
    }
    return "x: " + x.str() + "; p: " + p.str();
}

std::vector<LinearForm> form_apply_matrix(std::span<const LinearForm> forms, const ExactMatrix &matrix) {
    if (forms.size() != matrix.cols()) {
        throw std::invalid_argument("form_apply_matrix: " + std::to_string(forms.size()) +
                                    " forms for a matrix with " + std::to_string(matrix.cols()) + " columns");
    }
    std::vector<LinearForm> out(matrix.rows());
    for (std::size_t i = 0; i < matrix.rows(); i++) {
        for (std::size_t j = 0; j < matrix.cols(); j++) {
            if (!matrix.at(i, j).is_zero()) {
                out[i] += matrix.at(i, j) * forms[j];
            }
        }
    }
    return out;
}

std::vector<ModeForms> form_apply_matrix(std::span<const ModeForms> modes, const ExactMatrix &matrix) {
    std::vector<LinearForm> xs;
    std::vector<LinearForm> ps;
    for (const auto &mode : modes) {
        xs.push_back(mode.x);
        ps.push_back(mode.p);
    }
    auto new_x = form_apply_matrix(xs, matrix);
    auto new_p = form_apply_matrix(ps, matrix);
    std::vector<ModeForms> out(matrix.rows());
    for (std::size_t i = 0; i < out.size(); i++) {
        out[i] = ModeForms{std::move(new_x[i]), std::move(new_p[i])};
    }
    return out;
}

VarianceModel VarianceModel::uniform(double r, double input_var_x, double input_var_p) {
    VarianceModel model;
    model.ancilla_r = {r, r, r, r};
    model.input_var_x = input_var_x;
    model.input_var_p = input_var_p;
    return model;
}

void VarianceModel::set_error_variance(int channel, Quadrature q, double variance) {
    if (channel < 1 || channel > 5) {
        throw std::out_of_range("error channel must be in 1..5");
    }
    error_var[2 * (channel - 1) + (q == Quadrature::X ? 0 : 1)] = variance;
}

double VarianceModel::variance_of(const QuadSymbol &symbol) const {
    switch (symbol.kind) {
        case SymbolKind::Input:
            return symbol.quadrature == Quadrature::X ? input_var_x : input_var_p;
        case SymbolKind::Ancilla: {
            double r = ancilla_r.at(symbol.index - 1);
            switch (symbol.tag) {
                case Attenuation::None:
                    return 0.25;
                case Attenuation::Squeezed:
                    return 0.25 * std::exp(-2 * r);
                case Attenuation::Antisqueezed:
                    return 0.25 * std::exp(2 * r);
            }
            break;
        }
        case SymbolKind::Error: {
            const auto &v = error_var.at(2 * (symbol.index - 1) + (symbol.quadrature == Quadrature::X ? 0 : 1));
            if (v.has_value()) {
                return *v;
            }
            break;
        }
    }
    throw std::invalid_argument("no variance known for symbol " + symbol.name());
}

double form_variance(const LinearForm &form, const VarianceModel &model) {
    double total = 0;
    for (const auto &[symbol, coeff] : form.terms()) {
        total += (coeff * coeff).to_double() * model.variance_of(symbol);
    }
    return total;
}

double form_variance(const LinearForm &form, double r, std::array<double, 2> input_var) {
    return form_variance(form, VarianceModel::uniform(r, input_var[0], input_var[1]));
}

double form_covariance(const LinearForm &lhs, const LinearForm &rhs, const VarianceModel &model) {
    double total = 0;
    for (const auto &[symbol, coeff] : lhs.terms()) {
        ExactScalar other = rhs.coefficient(symbol);
        if (!other.is_zero()) {
            total += (coeff * other).to_double() * model.variance_of(symbol);
        }
    }
    return total;
}

}  // namespace cvqec

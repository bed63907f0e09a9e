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
#include <set>
#include <stdexcept>
#include <string>

namespace cvqec {

namespace {

void check_modes(int k, int l) {
    if (k < 1 || k > 5 || l < 1 || l > 5 || k == l) {
        throw std::invalid_argument("network element needs two distinct modes in 1..5, got " + std::to_string(k) +
                                    ", " + std::to_string(l));
    }
}

ExactScalar exact_root(const mpq_class &q) {
    auto root = ExactScalar::sqrt_rational(q);
    if (!root) {
        throw std::invalid_argument("transmittance " + q.get_str() + " has no exact square root in Q(sqrt2, sqrt3)");
    }
    return *root;
}

ModeMatrix element_matrix(const NetworkElement &element) {
    ModeMatrix m = ModeMatrix::identity(kNumChannels);
    std::size_t k = element.k - 1;
    std::size_t l = element.l - 1;
    if (element.type == NetworkElement::Type::Swap) {
        m.at(k, k) = 0;
        m.at(l, l) = 0;
        m.at(k, l) = 1;
        m.at(l, k) = 1;
        return m;
    }
    ExactScalar transmit = exact_root(element.transmittance);
    ExactScalar reflect = exact_root(1 - element.transmittance);
    ExactScalar s = element.sign == BeamSplitterSign::Plus ? 1 : -1;
    m.at(k, k) = reflect;
    m.at(k, l) = transmit;
    m.at(l, k) = s * transmit;
    m.at(l, l) = -s * reflect;
    return m;
}

mpq_class parse_transmittance(const nlohmann::json &value) {
    if (value.is_string()) {
        mpq_class q;
        if (q.set_str(value.get<std::string>(), 10) != 0) {
            throw std::invalid_argument("bad rational transmittance '" + value.get<std::string>() + "'");
        }
        q.canonicalize();
        return q;
    }
    if (value.is_number()) {
        // Doubles are converted exactly; 0.25 and 0.5 stay exact, 1/3 must be given as a string.
        return mpq_class(value.get<double>());
    }
    throw std::invalid_argument("transmittance must be a number or a rational string");
}

}  // namespace

NetworkElement NetworkElement::beam_splitter(int k, int l, mpq_class transmittance, BeamSplitterSign sign) {
    NetworkElement e;
    e.type = Type::BeamSplitter;
    e.k = k;
    e.l = l;
    e.transmittance = std::move(transmittance);
    e.transmittance.canonicalize();
    e.sign = sign;
    return e;
}

NetworkElement NetworkElement::swap(int k, int l) {
    NetworkElement e;
    e.type = Type::Swap;
    e.k = k;
    e.l = l;
    return e;
}

void NetworkSpec::validate() const {
    for (const auto &element : elements) {
        check_modes(element.k, element.l);
        if (element.type == NetworkElement::Type::BeamSplitter &&
            (element.transmittance < 0 || element.transmittance > 1)) {
            throw std::invalid_argument("transmittance must lie in [0, 1]");
        }
    }
}

NetworkSpec encoder_spec() {
    NetworkSpec spec;
    spec.elements = {
        NetworkElement::beam_splitter(2, 3, mpq_class(1, 4), BeamSplitterSign::Plus),
        NetworkElement::beam_splitter(1, 2, mpq_class(1, 2), BeamSplitterSign::Plus),
        NetworkElement::beam_splitter(3, 4, mpq_class(1, 3), BeamSplitterSign::Plus),
        NetworkElement::beam_splitter(4, 5, mpq_class(1, 2), BeamSplitterSign::Minus),
    };
    return spec;
}

ModeMatrix encoder_matrix() {
    const ExactScalar r2 = ExactScalar::sqrt_int(2);
    const ExactScalar r3 = ExactScalar::sqrt_int(3);
    const ExactScalar r6 = ExactScalar::sqrt_int(6);
    const ExactScalar inv_r2 = r2 / 2;             // 1/√2
    const ExactScalar r3_over_2r2 = r6 / 4;        // √3/(2√2)
    const ExactScalar inv_2r2 = r2 / 4;            // 1/(2√2)
    const ExactScalar inv_r6 = r6 / 6;             // 1/√6
    const ExactScalar inv_r3 = r3 / 3;             // 1/√3
    const ExactScalar inv_2r6 = r6 / 12;           // 1/(2√6)
    return ModeMatrix{
        {inv_r2, r3_over_2r2, inv_2r2, 0, 0},
        {inv_r2, -r3_over_2r2, -inv_2r2, 0, 0},
        {0, inv_r6, -inv_r2, inv_r3, 0},
        {0, inv_2r6, -inv_2r2, -inv_r3, inv_r2},
        {0, -inv_2r6, inv_2r2, inv_r3, inv_r2},
    };
}

ModeMatrix compose(const NetworkSpec &spec) {
    spec.validate();
    ModeMatrix total = ModeMatrix::identity(kNumChannels);
    for (const auto &element : spec.elements) {
        total = element_matrix(element) * total;
    }
    return total;
}

Eigen::MatrixXd compose_numeric(const NetworkSpec &spec) {
    spec.validate();
    Eigen::MatrixXd total = Eigen::MatrixXd::Identity(kNumChannels, kNumChannels);
    for (const auto &element : spec.elements) {
        Eigen::MatrixXd m = Eigen::MatrixXd::Identity(kNumChannels, kNumChannels);
        std::size_t k = element.k - 1;
        std::size_t l = element.l - 1;
        if (element.type == NetworkElement::Type::Swap) {
            m(k, k) = 0;
            m(l, l) = 0;
            m(k, l) = 1;
            m(l, k) = 1;
        } else {
            double t = element.transmittance.get_d();
            double s = element.sign == BeamSplitterSign::Plus ? 1.0 : -1.0;
            m(k, k) = std::sqrt(1 - t);
            m(k, l) = std::sqrt(t);
            m(l, k) = s * std::sqrt(t);
            m(l, l) = -s * std::sqrt(1 - t);
        }
        total = m * total;
    }
    return total;
}

ModeMatrix inverse(const ModeMatrix &matrix) {
    if (!matrix.is_orthogonal()) {
        throw std::invalid_argument("inverse: matrix is not orthogonal");
    }
    return matrix.transpose();
}

SymplecticOp lift_to_symplectic(const Eigen::MatrixXd &matrix, const std::array<bool, kNumChannels> &fourier) {
    if (matrix.rows() != static_cast<Eigen::Index>(kNumChannels) ||
        matrix.cols() != static_cast<Eigen::Index>(kNumChannels)) {
        throw std::invalid_argument("lift_to_symplectic: expected a 5x5 mode matrix");
    }
    SymplecticOp op{lift_mode_matrix(matrix), Eigen::VectorXd::Zero(2 * kNumChannels)};
    for (std::size_t mode = 0; mode < kNumChannels; mode++) {
        if (fourier[mode]) {
            op = op.after(SymplecticOp::fourier(kNumChannels, mode));
        }
    }
    return op;
}

SymplecticOp lift_to_symplectic(const ModeMatrix &matrix, const std::array<bool, kNumChannels> &fourier) {
    if (!matrix.is_orthogonal()) {
        throw std::invalid_argument("lift_to_symplectic: matrix is not orthogonal");
    }
    return lift_to_symplectic(matrix.to_eigen(), fourier);
}

nlohmann::json network_to_json(const NetworkSpec &spec) {
    nlohmann::json elements = nlohmann::json::array();
    for (const auto &element : spec.elements) {
        nlohmann::json e = {{"k", element.k}, {"l", element.l}};
        if (element.type == NetworkElement::Type::Swap) {
            e["type"] = "swap";
        } else {
            // Dyadic rationals round-trip as numbers; anything else is written exactly.
            mpq_class t = element.transmittance;
            double as_double = t.get_d();
            if (mpq_class(as_double) == t) {
                e["T"] = as_double;
            } else {
                e["T"] = t.get_str();
            }
            e["sign"] = element.sign == BeamSplitterSign::Plus ? "+" : "-";
        }
        elements.push_back(std::move(e));
    }
    nlohmann::json fourier = nlohmann::json::array();
    for (bool flag : spec.fourier) {
        fourier.push_back(flag);
    }
    return {{"elements", elements}, {"fourier", fourier}};
}

NetworkSpec network_from_json(const nlohmann::json &doc) {
    if (!doc.is_object()) {
        throw std::invalid_argument("network document must be a JSON object");
    }
    for (const auto &[key, value] : doc.items()) {
        if (key != "elements" && key != "fourier") {
            throw std::invalid_argument("unknown network key '" + key + "'");
        }
    }
    NetworkSpec spec;
    for (const auto &e : doc.at("elements")) {
        static const std::set<std::string> allowed = {"k", "l", "T", "sign", "type"};
        for (const auto &[key, value] : e.items()) {
            if (!allowed.count(key)) {
                throw std::invalid_argument("unknown network element key '" + key + "'");
            }
        }
        std::string type = e.value("type", std::string("bs"));
        int k = e.at("k").get<int>();
        int l = e.at("l").get<int>();
        if (type == "swap") {
            spec.elements.push_back(NetworkElement::swap(k, l));
        } else if (type == "bs") {
            std::string sign = e.value("sign", std::string("+"));
            if (sign != "+" && sign != "-") {
                throw std::invalid_argument("beam splitter sign must be '+' or '-'");
            }
            spec.elements.push_back(NetworkElement::beam_splitter(
                k, l, parse_transmittance(e.at("T")), sign == "+" ? BeamSplitterSign::Plus : BeamSplitterSign::Minus));
        } else {
            throw std::invalid_argument("unknown network element type '" + type + "'");
        }
    }
    if (doc.contains("fourier")) {
        const auto &flags = doc.at("fourier");
        if (!flags.is_array() || flags.size() != kNumChannels) {
            throw std::invalid_argument("fourier must be an array of 5 booleans");
        }
        for (std::size_t i = 0; i < kNumChannels; i++) {
            spec.fourier[i] = flags[i].get<bool>();
        }
    }
    spec.validate();
    return spec;
}

}  // namespace cvqec

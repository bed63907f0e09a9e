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

#include "cvqec/qec_code.h"

#include <cmath>
#include <numbers>
#include <ostream>
#include <set>
#include <stdexcept>

#include <fmt/format.h>

namespace cvqec {

namespace {

constexpr std::array<bool, kNumChannels> kFourierFlags = {true, true, true, false, true};

std::array<bool, kNumChannels> fourier_flags(bool fourier_mode) {
    return fourier_mode ? kFourierFlags : std::array<bool, kNumChannels>{};
}

const ModeMatrix &encoder() {
    static const ModeMatrix m = encoder_matrix();
    return m;
}

const ModeMatrix &decoder() {
    static const ModeMatrix m = inverse(encoder());
    return m;
}

/// Decoder applied to a carrier displacement, including the loss scaling.
Eigen::MatrixXd decoded_offset_map(const CodeConfig &config) {
    double scale = std::sqrt(config.loss.channel_efficiency * config.loss.detection_efficiency);
    return scale * lift_mode_matrix(decoder().to_eigen());
}

std::size_t coordinate(std::size_t mode, Quadrature q) { return 2 * mode + (q == Quadrature::X ? 0 : 1); }

std::array<Eigen::Index, 6> readout_indices(bool fourier_mode) {
    auto bases = detector_bases(fourier_mode);
    std::array<Eigen::Index, 6> idx{};
    for (int d = 1; d <= 4; d++) {
        idx[d - 1] = static_cast<Eigen::Index>(coordinate(detector_mode_index(d), bases[d - 1]));
    }
    idx[4] = static_cast<Eigen::Index>(coordinate(kOutputModeIndex, Quadrature::X));
    idx[5] = static_cast<Eigen::Index>(coordinate(kOutputModeIndex, Quadrature::P));
    return idx;
}

Eigen::VectorXd select(const Eigen::VectorXd &v, const std::array<Eigen::Index, 6> &idx) {
    Eigen::VectorXd out(6);
    for (int i = 0; i < 6; i++) {
        out(i) = v(idx[i]);
    }
    return out;
}

Eigen::MatrixXd select(const Eigen::MatrixXd &m, const std::array<Eigen::Index, 6> &idx) {
    Eigen::MatrixXd out(6, 6);
    for (int i = 0; i < 6; i++) {
        for (int j = 0; j < 6; j++) {
            out(i, j) = m(idx[i], idx[j]);
        }
    }
    return out;
}

PhaseRelation relation_from_sign(double s) { return s >= 0 ? PhaseRelation::InPhase : PhaseRelation::OutOfPhase; }

void set_pair_relations(SyndromeRecord &record, double c13, double c34) {
    const auto &d = record.detectors;
    if (d[0].fluctuating && d[2].fluctuating) {
        record.d1_d3 = relation_from_sign(c13);
    }
    if (d[2].fluctuating && d[3].fluctuating) {
        record.d3_d4 = relation_from_sign(c34);
    }
}

SyndromeRecord closed_form_from_offsets(const Eigen::VectorXd &offset6, const std::array<double, 4> &baselines,
                                        double threshold, bool fourier_mode) {
    SyndromeRecord record;
    record.fourier_mode = fourier_mode;
    auto bases = detector_bases(fourier_mode);
    for (int d = 0; d < 4; d++) {
        auto &r = record.detectors[d];
        r.basis = bases[d];
        r.baseline_variance = baselines[d];
        double excess = offset6(d) * offset6(d);
        r.observed_variance = baselines[d] + excess;
        r.fluctuating = excess > threshold * baselines[d];
    }
    set_pair_relations(record, offset6(0) * offset6(2), offset6(2) * offset6(3));
    return record;
}

/// Windowed readouts: mean + w_j * offset + noise, w_j = sqrt2 cos(2 pi j / period + phi).
SyndromeRecord sampled_record(const Eigen::VectorXd &mean6, const Eigen::VectorXd &offset6,
                              const GaussianSampler &sampler, const std::array<double, 4> &baselines,
                              const CodeConfig &config, bool fourier_mode, std::size_t window, Rng &rng) {
    if (window < kMinimumWindow) {
        throw std::invalid_argument(fmt::format("syndrome window of {} samples is below the minimum of {}", window,
                                                kMinimumWindow));
    }
    SyndromeRecord record;
    record.fourier_mode = fourier_mode;
    record.trace.resize(window);
    double phi = std::uniform_real_distribution<double>(0, 2 * std::numbers::pi)(rng);
    double period = static_cast<double>(config.modulation_period);
    Eigen::VectorXd noise(6);
    for (std::size_t j = 0; j < window; j++) {
        double w = std::numbers::sqrt2 * std::cos(2 * std::numbers::pi * static_cast<double>(j) / period + phi);
        sampler.draw_noise(rng, noise);
        for (int i = 0; i < 6; i++) {
            record.trace[j][i] = mean6(i) + w * offset6(i) + noise(i);
        }
    }

    std::array<double, 4> avg{};
    for (const auto &row : record.trace) {
        for (int d = 0; d < 4; d++) {
            avg[d] += row[d];
        }
    }
    for (auto &a : avg) {
        a /= static_cast<double>(window);
    }
    std::array<std::array<double, 4>, 4> cov{};
    for (const auto &row : record.trace) {
        for (int a = 0; a < 4; a++) {
            for (int b = a; b < 4; b++) {
                cov[a][b] += (row[a] - avg[a]) * (row[b] - avg[b]);
            }
        }
    }
    double n1 = static_cast<double>(window - 1);
    auto bases = detector_bases(fourier_mode);
    for (int d = 0; d < 4; d++) {
        auto &r = record.detectors[d];
        r.basis = bases[d];
        r.baseline_variance = baselines[d];
        r.observed_variance = cov[d][d] / n1;
        r.fluctuating = r.observed_variance - baselines[d] > config.threshold * baselines[d];
    }
    set_pair_relations(record, cov[0][2], cov[2][3]);
    return record;
}

/// Row vectors over the 6 readouts (D1..D4, out x, out p) producing the corrected output.
Eigen::MatrixXd correction_rows(const CorrectionPlan *plan) {
    Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(2, 6);
    rows(0, 4) = 1;
    rows(1, 5) = 1;
    if (plan) {
        if (plan->x) {
            rows(0, plan->x->detector - 1) += plan->x->gain.to_double();
        }
        if (plan->p) {
            rows(1, plan->p->detector - 1) += plan->p->gain.to_double();
        }
    }
    return rows;
}

GaussianState corrected_from_readouts(const Eigen::VectorXd &mean6, const Eigen::MatrixXd &cov6,
                                      const CorrectionPlan *plan) {
    Eigen::MatrixXd rows = correction_rows(plan);
    return GaussianState(rows * mean6, rows * cov6 * rows.transpose());
}

void check_detector(int detector) {
    if (detector < 1 || detector > 4) {
        throw std::invalid_argument("detector index must be in 1..4");
    }
}

Feedforward ff(int detector, ExactScalar gain) { return Feedforward{detector, std::move(gain)}; }

const std::set<std::string> kConfigKeys = {"r",         "r_ancilla", "squeezing_db",      "input", "fourier_mode",
                                           "loss",      "window",    "threshold",         "modulation_period"};

}  // namespace

InputSpec InputSpec::phase_squeezed(double squeeze_db, double antisqueeze_db) {
    InputSpec spec;
    spec.kind = Kind::PhaseSqueezed;
    spec.squeeze_db = squeeze_db;
    spec.antisqueeze_db = antisqueeze_db;
    return spec;
}

GaussianState InputSpec::state() const {
    if (kind == Kind::Vacuum) {
        return GaussianState::vacuum(1);
    }
    return squeezed_from_db(squeeze_db, antisqueeze_db, SqueezeAxis::Phase);
}

std::string InputSpec::str() const {
    if (kind == Kind::Vacuum) {
        return "vacuum";
    }
    return fmt::format("squeezed({} dB, {} dB)", squeeze_db, antisqueeze_db);
}

CodeConfig CodeConfig::with_r(double r, InputSpec input) {
    CodeConfig config;
    config.r_ancilla = {r, r, r, r};
    config.input = input;
    return config;
}

CodeConfig CodeConfig::with_squeezing_db(double db, InputSpec input) {
    return with_r(squeezing_r_from_db(db), input);
}

CodeConfig CodeConfig::toggled_fourier() const {
    CodeConfig twin = *this;
    twin.fourier_mode = !fourier_mode;
    return twin;
}

void CodeConfig::validate() const {
    for (double r : r_ancilla) {
        if (!std::isfinite(r) || r < 0) {
            throw std::invalid_argument("ancilla squeezing parameters must be finite and non-negative");
        }
    }
    if (input.kind == InputSpec::Kind::PhaseSqueezed &&
        (!std::isfinite(input.squeeze_db) || !std::isfinite(input.antisqueeze_db) ||
         input.squeeze_db + input.antisqueeze_db < -1e-12)) {
        throw std::invalid_argument("input squeezing levels violate the uncertainty relation");
    }
    for (double eta : {loss.channel_efficiency, loss.detection_efficiency}) {
        if (!(eta > 0 && eta <= 1)) {
            throw std::invalid_argument("efficiencies must lie in (0, 1]");
        }
    }
    if (window < kMinimumWindow) {
        throw std::invalid_argument(fmt::format("window must be at least {} samples", kMinimumWindow));
    }
    if (!(threshold > 0)) {
        throw std::invalid_argument("threshold must be positive");
    }
    if (modulation_period < 2) {
        throw std::invalid_argument("modulation period must be at least 2 samples");
    }
}

VarianceModel CodeConfig::variance_model() const {
    GaussianState in = input.state();
    VarianceModel model;
    model.ancilla_r = r_ancilla;
    model.input_var_x = in.var_x(0);
    model.input_var_p = in.var_p(0);
    return model;
}

SqueezeAxis ancilla_axis(int m) {
    if (m < 1 || m > 4) {
        throw std::invalid_argument("ancilla index must be in 1..4");
    }
    return m == 2 ? SqueezeAxis::Phase : SqueezeAxis::Amplitude;
}

nlohmann::json to_json(const CodeConfig &config) {
    nlohmann::json input;
    if (config.input.kind == InputSpec::Kind::Vacuum) {
        input = "vacuum";
    } else {
        input = {{"kind", "squeezed"},
                 {"squeeze_db", config.input.squeeze_db},
                 {"antisqueeze_db", config.input.antisqueeze_db}};
    }
    return {
        {"r_ancilla", config.r_ancilla},
        {"input", input},
        {"fourier_mode", config.fourier_mode},
        {"loss",
         {{"channel_efficiency", config.loss.channel_efficiency},
          {"detection_efficiency", config.loss.detection_efficiency}}},
        {"window", config.window},
        {"threshold", config.threshold},
        {"modulation_period", config.modulation_period},
    };
}

CodeConfig code_config_from_json(const nlohmann::json &doc) {
    if (!doc.is_object()) {
        throw std::invalid_argument("code config must be a JSON object");
    }
    for (const auto &[key, value] : doc.items()) {
        if (!kConfigKeys.count(key)) {
            throw std::invalid_argument("unknown code config key '" + key + "'");
        }
    }
    int given = static_cast<int>(doc.contains("r")) + static_cast<int>(doc.contains("r_ancilla")) +
                static_cast<int>(doc.contains("squeezing_db"));
    if (given > 1) {
        throw std::invalid_argument("give at most one of r, r_ancilla, squeezing_db");
    }
    CodeConfig config;
    if (doc.contains("r")) {
        double r = doc.at("r").get<double>();
        config.r_ancilla = {r, r, r, r};
    } else if (doc.contains("squeezing_db")) {
        double r = squeezing_r_from_db(doc.at("squeezing_db").get<double>());
        config.r_ancilla = {r, r, r, r};
    } else if (doc.contains("r_ancilla")) {
        const auto &arr = doc.at("r_ancilla");
        if (!arr.is_array() || arr.size() != 4) {
            throw std::invalid_argument("r_ancilla must be an array of 4 numbers");
        }
        for (std::size_t i = 0; i < 4; i++) {
            config.r_ancilla[i] = arr[i].get<double>();
        }
    }
    if (doc.contains("input")) {
        const auto &in = doc.at("input");
        if (in.is_string()) {
            std::string kind = in.get<std::string>();
            if (kind == "vacuum") {
                config.input = InputSpec::vacuum();
            } else if (kind == "squeezed") {
                config.input = InputSpec::phase_squeezed();
            } else {
                throw std::invalid_argument("input must be \"vacuum\" or \"squeezed\"");
            }
        } else if (in.is_object()) {
            for (const auto &[key, value] : in.items()) {
                if (key != "kind" && key != "squeeze_db" && key != "antisqueeze_db") {
                    throw std::invalid_argument("unknown input key '" + key + "'");
                }
            }
            std::string kind = in.value("kind", std::string("squeezed"));
            if (kind == "vacuum") {
                config.input = InputSpec::vacuum();
            } else if (kind == "squeezed") {
                config.input = InputSpec::phase_squeezed(in.value("squeeze_db", -3.5), in.value("antisqueeze_db", 8.9));
            } else {
                throw std::invalid_argument("input kind must be \"vacuum\" or \"squeezed\"");
            }
        } else {
            throw std::invalid_argument("input must be a string or an object");
        }
    }
    config.fourier_mode = doc.value("fourier_mode", config.fourier_mode);
    if (doc.contains("loss")) {
        const auto &loss = doc.at("loss");
        for (const auto &[key, value] : loss.items()) {
            if (key != "channel_efficiency" && key != "detection_efficiency") {
                throw std::invalid_argument("unknown loss key '" + key + "'");
            }
        }
        config.loss.channel_efficiency = loss.value("channel_efficiency", 1.0);
        config.loss.detection_efficiency = loss.value("detection_efficiency", 1.0);
    }
    config.window = doc.value("window", config.window);
    config.threshold = doc.value("threshold", config.threshold);
    config.modulation_period = doc.value("modulation_period", config.modulation_period);
    config.validate();
    return config;
}

std::size_t detector_mode_index(int detector) {
    check_detector(detector);
    return detector == 4 ? 4 : static_cast<std::size_t>(detector - 1);
}

std::array<Quadrature, 4> detector_bases(bool fourier_mode) {
    if (fourier_mode) {
        return {Quadrature::P, Quadrature::X, Quadrature::P, Quadrature::P};
    }
    return {Quadrature::X, Quadrature::P, Quadrature::X, Quadrature::X};
}

FiveModeState encode(const CodeConfig &config) {
    config.validate();
    // Register order (a1, a2, a3, a_in, a4) matches the encoder columns.
    std::vector<ModeForms> inputs(kNumChannels);
    std::vector<GaussianState> parts;
    int ancilla = 1;
    for (std::size_t slot = 0; slot < kNumChannels; slot++) {
        if (slot == 3) {
            inputs[slot] = {LinearForm::of(QuadSymbol::input(Quadrature::X)),
                            LinearForm::of(QuadSymbol::input(Quadrature::P))};
            parts.push_back(config.input.state());
            continue;
        }
        int m = ancilla++;
        bool amplitude = ancilla_axis(m) == SqueezeAxis::Amplitude;
        ModeForms forms{
            LinearForm::of(QuadSymbol::ancilla(m, Quadrature::X,
                                               amplitude ? Attenuation::Squeezed : Attenuation::Antisqueezed)),
            LinearForm::of(QuadSymbol::ancilla(m, Quadrature::P,
                                               amplitude ? Attenuation::Antisqueezed : Attenuation::Squeezed)),
        };
        if (config.fourier_mode) {
            forms = ModeForms{-forms.p, forms.x};
        }
        inputs[slot] = forms;
        parts.push_back(squeezed_vacuum(config.r_ancilla[m - 1], ancilla_axis(m)));
    }
    auto carriers = form_apply_matrix(std::span<const ModeForms>(inputs), encoder());
    SymplecticOp op = lift_to_symplectic(encoder(), fourier_flags(config.fourier_mode));
    FiveModeState state{{}, apply(op, GaussianState::product(parts)), Eigen::VectorXd::Zero(2 * kNumChannels)};
    std::copy(carriers.begin(), carriers.end(), state.forms.begin());
    return state;
}

FiveModeState inject_error(const FiveModeState &state, const ErrorEvent &event) {
    if (!event.occurred) {
        if (event.dx != 0 || event.dp != 0) {
            throw std::invalid_argument("an error event that did not occur must carry zero displacement");
        }
        return state;
    }
    if (event.channel < 1 || event.channel > static_cast<int>(kNumChannels)) {
        throw std::invalid_argument("error channel must be in 1..5");
    }
    FiveModeState out = state;
    std::size_t mode = static_cast<std::size_t>(event.channel - 1);
    auto &forms = out.forms[mode];
    forms.x += LinearForm::of(QuadSymbol::error(event.channel, Quadrature::X));
    forms.p += LinearForm::of(QuadSymbol::error(event.channel, Quadrature::P));
    out.numeric = state.numeric.displaced(mode, event.dx, event.dp);
    out.error_offset(2 * mode) += event.dx;
    out.error_offset(2 * mode + 1) += event.dp;
    return out;
}

DecodedState decode(const FiveModeState &state, const CodeConfig &config) {
    auto modes = form_apply_matrix(std::span<const ModeForms>(state.forms), decoder());
    DecodedState decoded{modes[kOutputModeIndex], {modes[0], modes[1], modes[2], modes[4]}, state.numeric,
                         Eigen::VectorXd(), config.fourier_mode};

    GaussianState numeric = state.numeric;
    if (config.loss.channel_efficiency < 1) {
        for (std::size_t m = 0; m < kNumChannels; m++) {
            numeric = loss_channel(numeric, m, config.loss.channel_efficiency);
        }
    }
    numeric = apply(lift_to_symplectic(decoder()), numeric);
    if (config.loss.detection_efficiency < 1) {
        for (std::size_t m = 0; m < kNumChannels; m++) {
            numeric = loss_channel(numeric, m, config.loss.detection_efficiency);
        }
    }
    decoded.numeric = numeric;
    decoded.error_offset = decoded_offset_map(config) * state.error_offset;
    return decoded;
}

std::string to_string(PhaseRelation relation) {
    switch (relation) {
        case PhaseRelation::NotApplicable:
            return "n/a";
        case PhaseRelation::InPhase:
            return "in-phase";
        case PhaseRelation::OutOfPhase:
            return "out-of-phase";
    }
    return "?";
}

SyndromeRecord measure_syndrome(const DecodedState &decoded, const CodeConfig &config, std::size_t window,
                                Rng &rng) {
    auto idx = readout_indices(decoded.fourier_mode);
    Eigen::VectorXd offset6 = select(decoded.error_offset, idx);
    Eigen::VectorXd mean6 = select(Eigen::VectorXd(decoded.numeric.mean() - decoded.error_offset), idx);
    Eigen::MatrixXd cov6 = select(decoded.numeric.cov(), idx);
    std::array<double, 4> baselines{};
    for (int d = 0; d < 4; d++) {
        baselines[d] = cov6(d, d);
    }
    GaussianSampler sampler(Eigen::VectorXd::Zero(6), cov6);
    return sampled_record(mean6, offset6, sampler, baselines, config, decoded.fourier_mode, window, rng);
}

SyndromeRecord measure_syndrome_closed_form(const DecodedState &decoded, const CodeConfig &config) {
    auto idx = readout_indices(decoded.fourier_mode);
    Eigen::VectorXd offset6 = select(decoded.error_offset, idx);
    std::array<double, 4> baselines{};
    for (int d = 0; d < 4; d++) {
        baselines[d] = decoded.numeric.cov()(idx[d], idx[d]);
    }
    return closed_form_from_offsets(offset6, baselines, config.threshold, decoded.fourier_mode);
}

std::string ClassificationResult::str() const {
    switch (kind) {
        case Kind::NoError:
            return "no-error";
        case Kind::Channel:
            return fmt::format("channel-{}", channel);
        case Kind::AmbiguousP:
            return "ambiguous-p";
        case Kind::Unclassifiable:
            return "unclassifiable";
    }
    return "?";
}

ClassificationResult classify(const SyndromeRecord &record) {
    const auto &d = record.detectors;
    bool f1 = d[0].fluctuating;
    bool f3 = d[2].fluctuating;
    bool f4 = d[3].fluctuating;
    if (!f1 && !f3 && !f4) {
        return d[1].fluctuating ? ClassificationResult::ambiguous_p() : ClassificationResult::no_error();
    }
    if (f1 && f3 && !f4) {
        return ClassificationResult::on_channel(record.d1_d3 == PhaseRelation::InPhase ? 1 : 2);
    }
    if (!f1 && f3 && !f4) {
        return ClassificationResult::on_channel(3);
    }
    if (!f1 && f3 && f4) {
        return ClassificationResult::on_channel(record.d3_d4 == PhaseRelation::OutOfPhase ? 4 : 5);
    }
    return ClassificationResult::unclassifiable();
}

CorrectionPlan correction_plan(const ClassificationResult &classification, bool fourier_mode) {
    if (!classification.is_definite()) {
        throw std::invalid_argument("no correction plan for a " + classification.str() + " syndrome");
    }
    CorrectionPlan plan;
    plan.fourier_mode = fourier_mode;
    if (classification.kind == ClassificationResult::Kind::NoError || classification.channel <= 2) {
        return plan;
    }
    const ExactScalar r2 = ExactScalar::sqrt_int(2);
    const ExactScalar r2_3 = ExactScalar::sqrt_int(6) / 3;  // √(2/3)
    // In Fourier mode the roles of the two quadratures swap between D2 and D3/D4.
    Feedforward d2;
    Feedforward d34;
    switch (classification.channel) {
        case 3:
            d34 = ff(3, r2_3);
            d2 = ff(2, -r2);
            break;
        case 4:
            d34 = ff(4, r2_3);
            d2 = ff(2, 2 * r2);
            break;
        case 5:
            d34 = ff(4, -r2_3);
            d2 = ff(2, 2 * r2);
            break;
        default:
            throw std::invalid_argument("channel must be in 1..5");
    }
    plan.x = fourier_mode ? d2 : d34;
    plan.p = fourier_mode ? d34 : d2;
    return plan;
}

CorrectionPlan derive_correction_plan(int channel, bool fourier_mode) {
    if (channel < 1 || channel > static_cast<int>(kNumChannels)) {
        throw std::invalid_argument("channel must be in 1..5");
    }
    CodeConfig config;
    config.fourier_mode = fourier_mode;
    DecodedState decoded = decode(inject_error(encode(config), ErrorEvent::on(channel, 0, 0)), config);
    auto bases = detector_bases(fourier_mode);

    CorrectionPlan plan;
    plan.fourier_mode = fourier_mode;
    for (Quadrature q : {Quadrature::X, Quadrature::P}) {
        QuadSymbol error = QuadSymbol::error(channel, q);
        ExactScalar c_out = decoded.output.quadrature(q).coefficient(error);
        if (c_out.is_zero()) {
            continue;
        }
        std::optional<Feedforward> best;
        double best_size = 0;
        for (int det = 1; det <= 4; det++) {
            if (bases[det - 1] != q) {
                continue;
            }
            ExactScalar c_det = decoded.syndrome[det - 1].quadrature(q).coefficient(error);
            if (c_det.is_zero()) {
                continue;
            }
            ExactScalar gain = -(c_out / c_det);
            double size = std::abs(gain.to_double());
            if (!best || size < best_size) {
                best = ff(det, gain);
                best_size = size;
            }
        }
        if (!best) {
            throw std::logic_error("no detector observes the error on the output quadrature");
        }
        (q == Quadrature::X ? plan.x : plan.p) = best;
    }
    return plan;
}

CorrectedOutput apply_correction(const DecodedState &decoded, const CorrectionPlan &plan,
                                 const SyndromeRecord &record) {
    if (plan.fourier_mode != decoded.fourier_mode || record.fourier_mode != decoded.fourier_mode) {
        throw std::invalid_argument("correction plan, syndrome and decoded state disagree on the Fourier setting");
    }
    auto bases = detector_bases(plan.fourier_mode);
    CorrectedOutput out{decoded.output, decoded.numeric.mode(kOutputModeIndex), {}};
    Eigen::MatrixXd map = Eigen::MatrixXd::Zero(2, 2 * kNumChannels);
    map(0, coordinate(kOutputModeIndex, Quadrature::X)) = 1;
    map(1, coordinate(kOutputModeIndex, Quadrature::P)) = 1;
    int row = 0;
    for (const auto *f : {&plan.x, &plan.p}) {
        Quadrature q = row == 0 ? Quadrature::X : Quadrature::P;
        if (*f) {
            check_detector((*f)->detector);
            Quadrature basis = bases[(*f)->detector - 1];
            if (basis != q) {
                throw std::invalid_argument("feedforward detector does not measure the corrected quadrature");
            }
            LinearForm term = (*f)->gain * decoded.syndrome[(*f)->detector - 1].quadrature(basis);
            (q == Quadrature::X ? out.forms.x : out.forms.p) += term;
            map(row, coordinate(detector_mode_index((*f)->detector), basis)) += (*f)->gain.to_double();
        }
        row++;
    }
    out.state = apply_affine(map, Eigen::VectorXd::Zero(2), decoded.numeric);
    if (!record.trace.empty()) {
        Eigen::MatrixXd rows = correction_rows(&plan);
        out.trace.reserve(record.trace.size());
        for (const auto &sample : record.trace) {
            Eigen::Map<const Eigen::Matrix<double, 6, 1>> v(sample.data());
            Eigen::Vector2d c = rows * v;
            out.trace.push_back({c(0), c(1)});
        }
    }
    return out;
}

OutputStats closed_form_output(const CodeConfig &config, int error_channel) {
    if (error_channel < 0 || error_channel > static_cast<int>(kNumChannels)) {
        throw std::invalid_argument("error channel must be in 0..5");
    }
    // A unit displacement on both quadratures exercises the cancellation of the error mean.
    ErrorEvent event = error_channel == 0 ? ErrorEvent::none() : ErrorEvent::on(error_channel, 1.0, 1.0);
    DecodedState decoded = decode(inject_error(encode(config), event), config);
    ClassificationResult c =
        error_channel == 0 ? ClassificationResult::no_error() : ClassificationResult::on_channel(error_channel);
    CorrectionPlan plan = correction_plan(c, config.fourier_mode);
    SyndromeRecord record = measure_syndrome_closed_form(decoded, config);
    CorrectedOutput corrected = apply_correction(decoded, plan, record);

    GaussianState input = config.input.state();
    OutputStats stats{error_channel, plan, corrected.forms, input, corrected.state, 0, 0, 0};
    stats.var_x = corrected.state.var_x(0);
    stats.var_p = corrected.state.var_p(0);
    stats.fidelity = fidelity_gaussian(input, corrected.state);
    return stats;
}

ClassificationResult expected_classification(std::span<const ErrorEvent> events) {
    std::set<int> channels;
    for (const auto &e : events) {
        if (e.occurred) {
            channels.insert(e.channel);
        }
    }
    if (channels.empty()) {
        return ClassificationResult::no_error();
    }
    if (channels.size() == 1) {
        return ClassificationResult::on_channel(*channels.begin());
    }
    return ClassificationResult::unclassifiable();
}

CodePipeline::CodePipeline(const CodeConfig &config) : config_(config), input_(config.input.state()) {
    config_.validate();
    variants_.push_back(make_variant(config_));
    variants_.push_back(make_variant(config_.toggled_fourier()));
}

CodePipeline::Variant CodePipeline::make_variant(const CodeConfig &config) {
    DecodedState baseline = decode(encode(config), config);
    auto idx = readout_indices(config.fourier_mode);
    Eigen::MatrixXd cov6 = select(baseline.numeric.cov(), idx);
    std::array<double, 4> baselines{};
    for (int d = 0; d < 4; d++) {
        baselines[d] = cov6(d, d);
    }
    Eigen::VectorXd mean6 = select(baseline.numeric.mean(), idx);
    GaussianSampler sampler(Eigen::VectorXd::Zero(6), cov6);
    return Variant{config, std::move(baseline), decoded_offset_map(config), idx, mean6, cov6, baselines, sampler};
}

const CodePipeline::Variant &CodePipeline::variant(bool fourier_mode) const {
    return fourier_mode == config_.fourier_mode ? variants_[0] : variants_[1];
}

Eigen::VectorXd CodePipeline::readout_offset(const Variant &v, std::span<const ErrorEvent> events) const {
    Eigen::VectorXd carrier = Eigen::VectorXd::Zero(2 * kNumChannels);
    for (const auto &e : events) {
        if (!e.occurred) {
            continue;
        }
        if (e.channel < 1 || e.channel > static_cast<int>(kNumChannels)) {
            throw std::invalid_argument("error channel must be in 1..5");
        }
        carrier(2 * (e.channel - 1)) += e.dx;
        carrier(2 * (e.channel - 1) + 1) += e.dp;
    }
    return select(Eigen::VectorXd(v.error_map * carrier), v.readout_index);
}

SyndromeRecord CodePipeline::closed_form_record(const Variant &v, const Eigen::VectorXd &offset6) const {
    return closed_form_from_offsets(offset6, v.baselines, v.config.threshold, v.config.fourier_mode);
}

ClassificationResult CodePipeline::closed_form_classification(std::span<const ErrorEvent> events,
                                                              bool *used_rerun) const {
    const Variant &first = variant(config_.fourier_mode);
    ClassificationResult c = classify(closed_form_record(first, readout_offset(first, events)));
    *used_rerun = false;
    if (c.is_definite()) {
        return c;
    }
    *used_rerun = true;
    const Variant &twin = variant(!config_.fourier_mode);
    ClassificationResult again = classify(closed_form_record(twin, readout_offset(twin, events)));
    return again.is_definite() ? again : ClassificationResult::unclassifiable();
}

RoundReport CodePipeline::run_round(std::span<const ErrorEvent> events, Rng &rng) const {
    RoundReport report;
    report.events.assign(events.begin(), events.end());

    const Variant *v = &variant(config_.fourier_mode);
    Eigen::VectorXd offset6 = readout_offset(*v, events);
    report.first_pass =
        sampled_record(v->readout_mean, offset6, v->sampler, v->baselines, v->config, v->config.fourier_mode,
                       config_.window, rng);
    report.first_classification = classify(report.first_pass);
    report.classification = report.first_classification;
    if (!report.first_classification.is_definite()) {
        v = &variant(!config_.fourier_mode);
        offset6 = readout_offset(*v, events);
        report.rerun_pass = sampled_record(v->readout_mean, offset6, v->sampler, v->baselines, v->config,
                                           v->config.fourier_mode, config_.window, rng);
        ClassificationResult again = classify(*report.rerun_pass);
        report.classification = again.is_definite() ? again : ClassificationResult::unclassifiable();
    }
    report.matched = report.classification == expected_classification(events);

    const CorrectionPlan *plan = nullptr;
    if (report.classification.is_definite()) {
        report.plan = correction_plan(report.classification, v->config.fourier_mode);
        plan = &*report.plan;
    }

    Eigen::MatrixXd rows = correction_rows(plan);
    const auto &trace = report.final_pass().trace;
    double n = static_cast<double>(trace.size());
    Eigen::Vector2d sum = Eigen::Vector2d::Zero();
    Eigen::Vector2d sum_sq = Eigen::Vector2d::Zero();
    for (const auto &sample : trace) {
        Eigen::Map<const Eigen::Matrix<double, 6, 1>> s(sample.data());
        Eigen::Vector2d c = rows * s;
        sum += c;
        sum_sq += c.cwiseProduct(c);
    }
    Eigen::Vector2d mean = sum / n;
    Eigen::Vector2d var = (sum_sq - n * mean.cwiseProduct(mean)) / (n - 1);
    report.out_mean_x = mean(0);
    report.out_mean_p = mean(1);
    report.out_var_x = var(0);
    report.out_var_p = var(1);

    GaussianState out = corrected_from_readouts(Eigen::VectorXd(v->readout_mean + offset6), v->readout_cov, plan);
    report.theory_var_x = out.var_x(0);
    report.theory_var_p = out.var_p(0);
    report.fidelity = fidelity_gaussian(input_, out);
    return report;
}

CodePipeline::Shot CodePipeline::one_shot(const ErrorEvent &event, Rng &rng) const {
    std::span<const ErrorEvent> events(&event, 1);
    bool rerun = false;
    ClassificationResult c = closed_form_classification(events, &rerun);
    const Variant &v = variant(rerun ? !config_.fourier_mode : config_.fourier_mode);
    Eigen::VectorXd readout = v.readout_mean + readout_offset(v, events);
    Eigen::VectorXd noise(6);
    v.sampler.draw_noise(rng, noise);
    readout += noise;
    Shot shot{event, c, rerun, readout(4), readout(5)};
    if (c.is_definite()) {
        CorrectionPlan plan = correction_plan(c, v.config.fourier_mode);
        if (plan.x) {
            shot.x += plan.x->gain.to_double() * readout(plan.x->detector - 1);
        }
        if (plan.p) {
            shot.p += plan.p->gain.to_double() * readout(plan.p->detector - 1);
        }
    }
    return shot;
}

GaussianState CodePipeline::corrected_state(std::span<const ErrorEvent> events) const {
    bool rerun = false;
    ClassificationResult c = closed_form_classification(events, &rerun);
    const Variant &v = variant(rerun ? !config_.fourier_mode : config_.fourier_mode);
    Eigen::VectorXd mean6 = v.readout_mean + readout_offset(v, events);
    if (!c.is_definite()) {
        return corrected_from_readouts(mean6, v.readout_cov, nullptr);
    }
    CorrectionPlan plan = correction_plan(c, v.config.fourier_mode);
    return corrected_from_readouts(mean6, v.readout_cov, &plan);
}

RoundReport run_round(const CodeConfig &config, const ErrorConfig &error_config, Rng &rng) {
    ErrorEvent event = sample_error(error_config, rng);
    return CodePipeline(config).run_round(std::span<const ErrorEvent>(&event, 1), rng);
}

RoundReport run_round(const CodeConfig &config, std::span<const ErrorEvent> events, Rng &rng) {
    return CodePipeline(config).run_round(events, rng);
}

nlohmann::json to_json(const SyndromeRecord &record, bool include_trace) {
    nlohmann::json detectors = nlohmann::json::array();
    for (int d = 0; d < 4; d++) {
        const auto &r = record.detectors[d];
        detectors.push_back({
            {"detector", fmt::format("D{}", d + 1)},
            {"basis", r.basis == Quadrature::X ? "x" : "p"},
            {"baseline_variance", r.baseline_variance},
            {"observed_variance", r.observed_variance},
            {"fluctuating", r.fluctuating},
        });
    }
    nlohmann::json doc = {
        {"fourier_mode", record.fourier_mode},
        {"detectors", detectors},
        {"d1_d3", to_string(record.d1_d3)},
        {"d3_d4", to_string(record.d3_d4)},
        {"window", record.trace.size()},
    };
    if (include_trace) {
        doc["trace"] = record.trace;
    }
    return doc;
}

nlohmann::json to_json(const CorrectionPlan &plan) {
    auto term = [&](const std::optional<Feedforward> &f, Quadrature q) -> nlohmann::json {
        if (!f) {
            return nullptr;
        }
        auto bases = detector_bases(plan.fourier_mode);
        return {{"detector", fmt::format("D{}", f->detector)},
                {"readout", fmt::format("{}_D{}", bases[f->detector - 1] == Quadrature::X ? "x" : "p", f->detector)},
                {"gain", f->gain.str()},
                {"gain_value", f->gain.to_double()},
                {"corrects", q == Quadrature::X ? "x" : "p"}};
    };
    return {{"fourier_mode", plan.fourier_mode}, {"x", term(plan.x, Quadrature::X)}, {"p", term(plan.p, Quadrature::P)}};
}

nlohmann::json to_json(const RoundReport &report, bool include_trace) {
    nlohmann::json events = nlohmann::json::array();
    for (const auto &e : report.events) {
        events.push_back(to_json(e));
    }
    nlohmann::json doc = {
        {"events", events},
        {"first_pass", to_json(report.first_pass, include_trace)},
        {"first_classification", report.first_classification.str()},
        {"classification", report.classification.str()},
        {"matched", report.matched},
        {"fourier_rerun", report.rerun_pass.has_value()},
        {"plan", report.plan ? to_json(*report.plan) : nlohmann::json(nullptr)},
        {"output",
         {{"mean_x", report.out_mean_x},
          {"mean_p", report.out_mean_p},
          {"var_x", report.out_var_x},
          {"var_p", report.out_var_p},
          {"theory_var_x", report.theory_var_x},
          {"theory_var_p", report.theory_var_p}}},
        {"fidelity", report.fidelity},
    };
    if (report.rerun_pass) {
        doc["rerun_pass"] = to_json(*report.rerun_pass, include_trace);
    }
    return doc;
}

void write_trace_csv(std::ostream &out, const SyndromeRecord &record) {
    out << "sample";
    for (int d = 0; d < 4; d++) {
        out << ',' << (record.detectors[d].basis == Quadrature::X ? "x" : "p") << "_D" << d + 1;
    }
    out << "\r\n";
    for (std::size_t j = 0; j < record.trace.size(); j++) {
        const auto &row = record.trace[j];
        out << fmt::format("{},{:.17g},{:.17g},{:.17g},{:.17g}\r\n", j, row[0], row[1], row[2], row[3]);
    }
}

}  // namespace cvqec

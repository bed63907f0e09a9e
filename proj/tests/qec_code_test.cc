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
#include <sstream>

#include <gtest/gtest.h>

using namespace cvqec;

namespace {

const ExactScalar r2 = ExactScalar::sqrt_int(2);
const ExactScalar r3 = ExactScalar::sqrt_int(3);
const ExactScalar r6 = ExactScalar::sqrt_int(6);

LinearForm sym(const QuadSymbol &s, const ExactScalar &c = 1) { return LinearForm::of(s, c); }

QuadSymbol e(int k, Quadrature q = Quadrature::X) { return QuadSymbol::error(k, q); }

DecodedState decode_event(const CodeConfig &cfg, const ErrorEvent &event) {
    return decode(inject_error(encode(cfg), event), cfg);
}

SyndromeRecord closed_form(const CodeConfig &cfg, const ErrorEvent &event) {
    return measure_syndrome_closed_form(decode_event(cfg, event), cfg);
}

double big(const CodeConfig &cfg) { return 10 * std::sqrt(0.25 * std::exp(-2 * cfg.r_ancilla[0])); }

}  // namespace

TEST(qec_code, encoded_carrier_three) {
    FiveModeState s = encode(CodeConfig{});
    LinearForm want = sym(QuadSymbol::ancilla(2, Quadrature::X, Attenuation::Antisqueezed), r6 / 6) +
                      sym(QuadSymbol::ancilla(3, Quadrature::X, Attenuation::Squeezed), -r2 / 2) +
                      sym(QuadSymbol::input(Quadrature::X), r3 / 3);
    ASSERT_EQ(s.forms[2].x, want);
}

TEST(qec_code, encoded_carriers_are_vacuum_at_r0) {
    FiveModeState s = encode(CodeConfig{});
    for (std::size_t m = 0; m < 5; m++) {
        ASSERT_NEAR(s.numeric.var_x(m), 0.25, 1e-14);
        ASSERT_NEAR(s.numeric.var_p(m), 0.25, 1e-14);
    }
}

TEST(qec_code, error_free_decode_recovers_input) {
    CodeConfig cfg = CodeConfig::with_r(0.4);
    DecodedState d = decode(encode(cfg), cfg);
    ASSERT_EQ(d.output.x, sym(QuadSymbol::input(Quadrature::X)));
    ASSERT_EQ(d.output.p, sym(QuadSymbol::input(Quadrature::P)));
    ASSERT_EQ(d.syndrome[0].x, sym(QuadSymbol::ancilla(1, Quadrature::X, Attenuation::Squeezed)));
    ASSERT_EQ(d.syndrome[1].p, sym(QuadSymbol::ancilla(2, Quadrature::P, Attenuation::Squeezed)));
}

TEST(qec_code, single_error_decode_forms) {
    CodeConfig cfg;
    DecodedState d2 = decode_event(cfg, ErrorEvent::on(2, 0, 0));
    auto a = [](int m) { return sym(QuadSymbol::ancilla(m, Quadrature::X, m == 2 ? Attenuation::Antisqueezed
                                                                                 : Attenuation::Squeezed)); };
    ASSERT_EQ(d2.syndrome[1].x, a(2) + sym(e(2), -3 * r6 / 12));
    ASSERT_EQ(d2.syndrome[0].x, a(1) + sym(e(2), r2 / 2));
    ASSERT_EQ(d2.syndrome[2].x, a(3) + sym(e(2), -r2 / 4));

    DecodedState d4 = decode_event(cfg, ErrorEvent::on(4, 0, 0));
    ASSERT_EQ(d4.syndrome[3].x, a(4) + sym(e(4), r2 / 2));
    ASSERT_EQ(d4.output.x, sym(QuadSymbol::input(Quadrature::X)) + sym(e(4), -r3 / 3));
}

TEST(qec_code, inject_error_numeric) {
    CodeConfig cfg;
    double delta = 1.7;
    DecodedState d = decode_event(cfg, ErrorEvent::on(3, delta, 0));
    ASSERT_NEAR(d.numeric.mean()(2 * kOutputModeIndex), delta / std::sqrt(3.0), 1e-14);
    ASSERT_NEAR(d.numeric.mean()(2 * kOutputModeIndex + 1), 0, 1e-14);

    DecodedState d1 = decode_event(cfg, ErrorEvent::on(1, 3.0, -2.0));
    ASSERT_NEAR(d1.numeric.mean()(2 * kOutputModeIndex), 0, 1e-14);
    ASSERT_NEAR(d1.numeric.mean()(2 * kOutputModeIndex + 1), 0, 1e-14);

    FiveModeState s = encode(cfg);
    FiveModeState same = inject_error(s, ErrorEvent::none());
    ASSERT_EQ(same.numeric.mean(), s.numeric.mean());
    ErrorEvent ghost = ErrorEvent::none();
    ghost.dx = 1;
    ASSERT_THROW(inject_error(s, ghost), std::invalid_argument);
}

TEST(qec_code, syndrome_flags_and_phase) {
    CodeConfig cfg = CodeConfig::with_squeezing_db(-3.5);
    double amp = big(cfg);
    SyndromeRecord s1 = closed_form(cfg, ErrorEvent::on(1, 0.6 * amp, 0.8 * amp));
    ASSERT_TRUE(s1.detectors[0].fluctuating);
    ASSERT_TRUE(s1.detectors[1].fluctuating);
    ASSERT_TRUE(s1.detectors[2].fluctuating);
    ASSERT_FALSE(s1.detectors[3].fluctuating);
    ASSERT_EQ(s1.d1_d3, PhaseRelation::InPhase);
    ASSERT_EQ(closed_form(cfg, ErrorEvent::on(2, amp, 0)).d1_d3, PhaseRelation::OutOfPhase);

    SyndromeRecord quiet = closed_form(CodeConfig::with_r(3), ErrorEvent::none());
    for (const auto &d : quiet.detectors) {
        ASSERT_FALSE(d.fluctuating);
    }
}

TEST(qec_code, classify_table) {
    CodeConfig cfg = CodeConfig::with_squeezing_db(-3.5);
    double amp = big(cfg);
    for (int k = 1; k <= 5; k++) {
        ASSERT_EQ(classify(closed_form(cfg, ErrorEvent::on(k, amp, 0))), ClassificationResult::on_channel(k)) << k;
        ASSERT_EQ(classify(closed_form(cfg, ErrorEvent::on(k, amp * 0.6, amp * 0.8))),
                  ClassificationResult::on_channel(k))
            << k;
        ASSERT_EQ(classify(closed_form(cfg, ErrorEvent::on(k, 0, amp))), ClassificationResult::ambiguous_p()) << k;
        ASSERT_EQ(classify(closed_form(cfg.toggled_fourier(), ErrorEvent::on(k, 0, amp))),
                  ClassificationResult::on_channel(k))
            << k;
    }
    ASSERT_EQ(classify(closed_form(cfg, ErrorEvent::none())), ClassificationResult::no_error());

    SyndromeRecord r;
    r.detectors[2].fluctuating = true;
    r.detectors[1].fluctuating = true;
    ASSERT_EQ(classify(r), ClassificationResult::on_channel(3));
    r.detectors[3].fluctuating = true;
    r.d3_d4 = PhaseRelation::InPhase;
    ASSERT_EQ(classify(r), ClassificationResult::on_channel(5));
    SyndromeRecord only_d2;
    only_d2.detectors[1].fluctuating = true;
    ASSERT_EQ(classify(only_d2), ClassificationResult::ambiguous_p());
    SyndromeRecord odd;
    odd.detectors[0].fluctuating = true;
    ASSERT_EQ(classify(odd), ClassificationResult::unclassifiable());
}

TEST(qec_code, correction_plans) {
    CorrectionPlan p4 = correction_plan(ClassificationResult::on_channel(4));
    ASSERT_EQ(p4.x, (Feedforward{4, r6 / 3}));
    ASSERT_EQ(p4.p, (Feedforward{2, 2 * r2}));
    ASSERT_TRUE(correction_plan(ClassificationResult::on_channel(1)).is_zero());
    ASSERT_TRUE(correction_plan(ClassificationResult::no_error()).is_zero());
    CorrectionPlan p3 = correction_plan(ClassificationResult::on_channel(3));
    ASSERT_EQ(p3.x, (Feedforward{3, r6 / 3}));
    ASSERT_EQ(p3.p, (Feedforward{2, -r2}));
    CorrectionPlan p5 = correction_plan(ClassificationResult::on_channel(5));
    ASSERT_EQ(p5.x, (Feedforward{4, -r6 / 3}));
    ASSERT_EQ(p5.p, (Feedforward{2, 2 * r2}));
    ASSERT_THROW(correction_plan(ClassificationResult::ambiguous_p()), std::invalid_argument);
    ASSERT_THROW(correction_plan(ClassificationResult::unclassifiable()), std::invalid_argument);
}

TEST(qec_code, derived_plans_match_table) {
    for (bool fourier : {false, true}) {
        for (int k = 1; k <= 5; k++) {
            ASSERT_EQ(derive_correction_plan(k, fourier), correction_plan(ClassificationResult::on_channel(k), fourier))
                << k << " " << fourier;
        }
    }
}

TEST(qec_code, correction_cancels_error_exactly) {
    for (bool fourier : {false, true}) {
        CodeConfig cfg = CodeConfig::with_r(0.4);
        cfg.fourier_mode = fourier;
        for (int k = 1; k <= 5; k++) {
            DecodedState d = decode_event(cfg, ErrorEvent::on(k, 0, 0));
            SyndromeRecord rec = measure_syndrome_closed_form(d, cfg);
            CorrectedOutput out =
                apply_correction(d, correction_plan(ClassificationResult::on_channel(k), fourier), rec);
            ASSERT_FALSE(out.forms.x.has_kind(SymbolKind::Error)) << k;
            ASSERT_FALSE(out.forms.p.has_kind(SymbolKind::Error)) << k;
            ASSERT_EQ(out.forms.x.coefficient(QuadSymbol::input(Quadrature::X)), ExactScalar(1));
        }
    }
    CodeConfig cfg;
    DecodedState d = decode_event(cfg, ErrorEvent::on(3, 0, 0));
    SyndromeRecord rec = measure_syndrome_closed_form(d, cfg);
    ASSERT_THROW(apply_correction(d, correction_plan(ClassificationResult::on_channel(3), true), rec),
                 std::invalid_argument);
}

TEST(qec_code, output_noise_formulas) {
    for (double r : {0.0, 0.403, 1.0}) {
        CodeConfig cfg = CodeConfig::with_r(r);
        double unit = 0.25 * std::exp(-2 * r);
        ASSERT_NEAR(closed_form_output(cfg, 3).var_x, 0.25 + 2.0 / 3 * unit, 1e-12);
        ASSERT_NEAR(closed_form_output(cfg, 3).var_p, 0.25 + 2 * unit, 1e-12);
        for (int k : {4, 5}) {
            ASSERT_NEAR(closed_form_output(cfg, k).var_x, 0.25 + 2.0 / 3 * unit, 1e-12);
            ASSERT_NEAR(closed_form_output(cfg, k).var_p, 0.25 + 8 * unit, 1e-12);
        }
        for (int k : {0, 1, 2}) {
            ASSERT_NEAR(closed_form_output(cfg, k).var_x, 0.25, 1e-12);
            ASSERT_NEAR(closed_form_output(cfg, k).fidelity, 1, 1e-12);
        }
    }
}

TEST(qec_code, fidelity_examples) {
    ASSERT_NEAR(closed_form_output(CodeConfig::with_r(0), 3).fidelity, 0.612, 5e-4);
    ASSERT_NEAR(closed_form_output(CodeConfig::with_squeezing_db(-3.5), 4).fidelity, 0.559, 5e-4);
    ASSERT_NEAR(closed_form_output(CodeConfig::with_r(0, InputSpec::phase_squeezed()), 4).fidelity, 0.40, 0.035);
    for (int k = 0; k <= 5; k++) {
        ASSERT_GT(closed_form_output(CodeConfig::with_r(10), k).fidelity, 0.999);
    }
}

TEST(qec_code, perfect_squeezing_limit_forms) {
    OutputStats s = closed_form_output(CodeConfig::with_r(10), 5);
    ASSERT_NEAR(s.var_x, 0.25, 1e-9);
    ASSERT_NEAR(s.var_p, 0.25, 1e-7);
    for (const auto &[symbol, coeff] : s.forms.x.terms()) {
        if (symbol.kind == SymbolKind::Ancilla) {
            ASSERT_EQ(symbol.tag, Attenuation::Squeezed);
        }
    }
}

TEST(qec_code, run_round_examples) {
    CodeConfig cfg = CodeConfig::with_squeezing_db(-3.5);
    CodePipeline pipeline(cfg);
    Rng rng(5);
    ErrorEvent e2 = ErrorEvent::on(2, big(cfg) * 0.6, big(cfg) * 0.8);
    RoundReport r2 = pipeline.run_round(std::span<const ErrorEvent>(&e2, 1), rng);
    ASSERT_EQ(r2.classification, ClassificationResult::on_channel(2));
    ASSERT_TRUE(r2.matched);
    ASSERT_NEAR(r2.fidelity, 1, 1e-9);

    ErrorEvent p4 = ErrorEvent::on(4, 0, big(cfg));
    RoundReport rp = pipeline.run_round(std::span<const ErrorEvent>(&p4, 1), rng);
    ASSERT_EQ(rp.first_classification, ClassificationResult::ambiguous_p());
    ASSERT_TRUE(rp.rerun_pass.has_value());
    ASSERT_TRUE(rp.rerun_pass->fourier_mode);
    ASSERT_EQ(rp.classification, ClassificationResult::on_channel(4));
    ASSERT_TRUE(rp.plan->fourier_mode);

    ErrorConfig never{0.0, 3, DisplacementLaw::General, 5};
    RoundReport r0 = run_round(cfg, never, rng);
    ASSERT_EQ(r0.classification, ClassificationResult::no_error());
    ASSERT_TRUE(r0.plan->is_zero());
    ASSERT_NEAR(r0.theory_var_x, 0.25, 1e-12);
    ASSERT_NEAR(r0.fidelity, 1, 1e-12);
}

TEST(qec_code, windowed_output_statistics) {
    CodeConfig cfg = CodeConfig::with_squeezing_db(-3.5);
    cfg.window = 20000;
    CodePipeline pipeline(cfg);
    Rng rng(6);
    ErrorEvent ev = ErrorEvent::on(3, big(cfg), 0);
    RoundReport r = pipeline.run_round(std::span<const ErrorEvent>(&ev, 1), rng);
    ASSERT_TRUE(r.matched);
    double n = static_cast<double>(cfg.window);
    ASSERT_NEAR(r.out_mean_x, 0, 5 * std::sqrt(r.theory_var_x / n));
    ASSERT_NEAR(r.out_var_x, r.theory_var_x, 5 * r.theory_var_x * std::sqrt(2 / n));
    ASSERT_NEAR(r.out_var_p, r.theory_var_p, 5 * r.theory_var_p * std::sqrt(2 / n));
}

TEST(qec_code, sampled_syndrome_window) {
    CodeConfig cfg = CodeConfig::with_squeezing_db(-3.5);
    Rng rng(7);
    DecodedState d = decode_event(cfg, ErrorEvent::on(1, big(cfg), 0));
    ASSERT_THROW(measure_syndrome(d, cfg, 29, rng), std::invalid_argument);
    SyndromeRecord rec = measure_syndrome(d, cfg, 4096, rng);
    ASSERT_EQ(rec.trace.size(), 4096u);
    ASSERT_EQ(classify(rec), ClassificationResult::on_channel(1));
    ASSERT_NEAR(rec.detectors[3].observed_variance, rec.detectors[3].baseline_variance,
                5 * rec.detectors[3].baseline_variance * std::sqrt(2.0 / 4096));

    std::ostringstream out;
    write_trace_csv(out, rec);
    std::string csv = out.str();
    ASSERT_EQ(csv.substr(0, csv.find("\r\n")), "sample,x_D1,p_D2,x_D3,x_D4");
}

TEST(qec_code, closed_form_matches_pipeline_for_random_events) {
    Rng rng(8);
    std::uniform_real_distribution<double> unit(-1, 1);
    for (double r : {0.0, 0.4, 1.2}) {
        CodeConfig cfg = CodeConfig::with_r(r);
        CodePipeline pipeline(cfg);
        for (int k = 1; k <= 5; k++) {
            double a = big(cfg);
            ErrorEvent ev = ErrorEvent::on(k, a * (1.5 + 0.5 * unit(rng)), a * unit(rng));
            GaussianState got = pipeline.corrected_state(std::span<const ErrorEvent>(&ev, 1));
            OutputStats want = closed_form_output(cfg, k);
            ASSERT_NEAR(got.mean().norm(), 0, 1e-9);
            ASSERT_TRUE(got.cov().isApprox(want.output.cov(), 1e-10));
        }
    }
}

TEST(qec_code, loss_only_adds_noise) {
    CodeConfig cfg = CodeConfig::with_squeezing_db(-3.5);
    double previous = 1;
    for (double eta : {1.0, 0.98, 0.95, 0.9}) {
        cfg.loss.channel_efficiency = eta;
        cfg.loss.detection_efficiency = eta;
        double f = closed_form_output(cfg, 4).fidelity;
        ASSERT_LE(f, previous + 1e-12);
        previous = f;
    }
    cfg.loss.channel_efficiency = 1.2;
    ASSERT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(qec_code, expected_classification) {
    ErrorEvent one = ErrorEvent::on(3, 1, 0);
    ASSERT_EQ(expected_classification(std::span<const ErrorEvent>(&one, 1)), ClassificationResult::on_channel(3));
    ErrorEvent none = ErrorEvent::none();
    ASSERT_EQ(expected_classification(std::span<const ErrorEvent>(&none, 1)), ClassificationResult::no_error());
    std::vector<ErrorEvent> two{ErrorEvent::on(1, 1, 0), ErrorEvent::on(4, 1, 0)};
    ASSERT_EQ(expected_classification(two), ClassificationResult::unclassifiable());
}

TEST(qec_code, config_json) {
    CodeConfig cfg = CodeConfig::with_squeezing_db(-3.5, InputSpec::phase_squeezed());
    cfg.fourier_mode = true;
    cfg.window = 512;
    CodeConfig back = code_config_from_json(to_json(cfg));
    ASSERT_EQ(back.r_ancilla, cfg.r_ancilla);
    ASSERT_EQ(back.input.kind, cfg.input.kind);
    ASSERT_EQ(back.fourier_mode, true);
    ASSERT_EQ(back.window, 512u);
    ASSERT_NEAR(code_config_from_json({{"squeezing_db", -3.5}}).r_ancilla[2], squeezing_r_from_db(-3.5), 1e-15);
    ASSERT_THROW(code_config_from_json({{"squeezing", -3.5}}), std::invalid_argument);
}

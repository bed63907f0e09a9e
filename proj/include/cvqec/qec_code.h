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

#ifndef CVQEC_QEC_CODE_H
#define CVQEC_QEC_CODE_H

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cvqec/error_model.h"
#include "cvqec/gaussian_state.h"
#include "cvqec/linear_form.h"
#include "cvqec/network.h"
#include "json.hpp"

namespace cvqec {

struct InputSpec {
    enum class Kind { Vacuum, PhaseSqueezed };

    Kind kind = Kind::Vacuum;
    double squeeze_db = -3.5;
    double antisqueeze_db = 8.9;

    static InputSpec vacuum() { return {}; }
    static InputSpec phase_squeezed(double squeeze_db = -3.5, double antisqueeze_db = 8.9);

    GaussianState state() const;
    std::string str() const;
};

/// Optional transmission losses. Channel loss acts on all five carriers after the error is
/// injected; detection loss acts on all five decoded modes before homodyne readout.
struct LossConfig {
    double channel_efficiency = 1.0;
    double detection_efficiency = 1.0;
};

/// Ancillas a1, a3, a4 are amplitude-squeezed and a2 is phase-squeezed; r_ancilla[m-1] is the
/// squeezing parameter of a_m (all equal unless configured otherwise).
struct CodeConfig {
    std::array<double, 4> r_ancilla{0, 0, 0, 0};
    InputSpec input;
    bool fourier_mode = false;
    LossConfig loss;
    /// Syndrome window length (samples) and fluctuation threshold (excess over baseline,
    /// in units of the baseline variance).
    std::size_t window = 1024;
    double threshold = 3.0;
    /// Period, in samples, of the unit-RMS modulation applied to an injected error inside a window.
    std::size_t modulation_period = 16;

    static CodeConfig with_r(double r, InputSpec input = InputSpec::vacuum());
    static CodeConfig with_squeezing_db(double db, InputSpec input = InputSpec::vacuum());
    CodeConfig toggled_fourier() const;

    void validate() const;
    VarianceModel variance_model() const;
};

SqueezeAxis ancilla_axis(int m);

nlohmann::json to_json(const CodeConfig &config);
CodeConfig code_config_from_json(const nlohmann::json &doc);

/// The five carriers c1..c5, symbolically and numerically.
struct FiveModeState {
    std::array<ModeForms, kNumChannels> forms;
    GaussianState numeric;
    /// Total displacement injected on the carriers (interleaved x/p), already in numeric.mean().
    Eigen::VectorXd error_offset;
};

/// Decoded modes. The numeric register is ordered (d1, d2, d3, d_out, d4).
struct DecodedState {
    ModeForms output;
    std::array<ModeForms, 4> syndrome;
    GaussianState numeric;
    Eigen::VectorXd error_offset;
    bool fourier_mode = false;
};

/// Register position of detector D1..D4 (1-based) in the decoded numeric state.
std::size_t detector_mode_index(int detector);
inline constexpr std::size_t kOutputModeIndex = 3;
/// Measured quadrature of D1..D4: (x, p, x, x), or (p, x, p, p) in Fourier mode.
std::array<Quadrature, 4> detector_bases(bool fourier_mode);

FiveModeState encode(const CodeConfig &config);
FiveModeState inject_error(const FiveModeState &state, const ErrorEvent &event);
DecodedState decode(const FiveModeState &state, const CodeConfig &config);

enum class PhaseRelation { NotApplicable, InPhase, OutOfPhase };
std::string to_string(PhaseRelation relation);

struct DetectorReadout {
    Quadrature basis = Quadrature::X;
    double baseline_variance = 0;
    double observed_variance = 0;
    bool fluctuating = false;
};

struct SyndromeRecord {
    bool fourier_mode = false;
    std::array<DetectorReadout, 4> detectors;
    /// Only defined when both detectors of the pair fluctuate.
    PhaseRelation d1_d3 = PhaseRelation::NotApplicable;
    PhaseRelation d3_d4 = PhaseRelation::NotApplicable;
    /// Per sample: readouts of D1..D4 followed by the uncorrected output (x, p). Empty in
    /// closed-form mode.
    std::vector<std::array<double, 6>> trace;
};

inline constexpr std::size_t kMinimumWindow = 30;

/// Sampled syndrome: `window` homodyne readouts with the injected error modulated by a unit-RMS
/// sinusoid of random phase. Throws std::invalid_argument if window < 30.
SyndromeRecord measure_syndrome(const DecodedState &decoded, const CodeConfig &config, std::size_t window,
                                Rng &rng);
/// Noise-free syndrome: excess variance is the squared error-induced readout offset and the
/// phase relation is the sign of the product of offsets.
SyndromeRecord measure_syndrome_closed_form(const DecodedState &decoded, const CodeConfig &config);

struct ClassificationResult {
    enum class Kind { NoError, Channel, AmbiguousP, Unclassifiable };

    Kind kind = Kind::NoError;
    int channel = 0;

    static ClassificationResult no_error() { return {Kind::NoError, 0}; }
    static ClassificationResult on_channel(int channel) { return {Kind::Channel, channel}; }
    static ClassificationResult ambiguous_p() { return {Kind::AmbiguousP, 0}; }
    static ClassificationResult unclassifiable() { return {Kind::Unclassifiable, 0}; }

    bool is_definite() const { return kind == Kind::NoError || kind == Kind::Channel; }
    std::string str() const;
    bool operator==(const ClassificationResult &) const = default;
};

/// Table lookup on the fluctuation pattern of D1, D3, D4 (D2 only matters when nothing else moves).
ClassificationResult classify(const SyndromeRecord &record);

/// A readout of detector D1..D4 (in the record's measurement basis) scaled by an exact gain.
struct Feedforward {
    int detector = 0;
    ExactScalar gain;
    bool operator==(const Feedforward &) const = default;
};

struct CorrectionPlan {
    std::optional<Feedforward> x;
    std::optional<Feedforward> p;
    bool fourier_mode = false;

    bool is_zero() const { return !x && !p; }
    bool operator==(const CorrectionPlan &) const = default;
};

/// Tabulated feedforward gains. Throws std::invalid_argument for ambiguous or unclassifiable input.
CorrectionPlan correction_plan(const ClassificationResult &classification, bool fourier_mode = false);
/// Gains obtained symbolically by cancelling the error terms of d_out exactly, using for each
/// output quadrature the detector that needs the smallest gain.
CorrectionPlan derive_correction_plan(int channel, bool fourier_mode);

struct CorrectedOutput {
    ModeForms forms;
    GaussianState state;
    /// Corrected (x, p) per sample of the record's trace.
    std::vector<std::array<double, 2>> trace;
};

CorrectedOutput apply_correction(const DecodedState &decoded, const CorrectionPlan &plan,
                                 const SyndromeRecord &record);

struct OutputStats {
    int channel = 0;
    CorrectionPlan plan;
    ModeForms forms;
    GaussianState input;
    GaussianState output;
    double var_x = 0;
    double var_p = 0;
    double fidelity = 0;
};

/// Corrected output of a round with an error on `error_channel` (0 for none) assuming correct
/// classification. Variances come from the covariance pipeline, the fidelity from the Gaussian formula.
OutputStats closed_form_output(const CodeConfig &config, int error_channel);

struct RoundReport {
    std::vector<ErrorEvent> events;
    SyndromeRecord first_pass;
    std::optional<SyndromeRecord> rerun_pass;
    ClassificationResult first_classification;
    ClassificationResult classification;
    bool matched = false;
    std::optional<CorrectionPlan> plan;
    double out_mean_x = 0;
    double out_mean_p = 0;
    double out_var_x = 0;
    double out_var_p = 0;
    double theory_var_x = 0;
    double theory_var_p = 0;
    double fidelity = 0;

    /// The syndrome the final classification came from.
    const SyndromeRecord &final_pass() const { return rerun_pass ? *rerun_pass : first_pass; }
};

/// Expected classification of a set of injected events.
ClassificationResult expected_classification(std::span<const ErrorEvent> events);

/// Precomputed encode/decode products for one configuration and its Fourier twin.
class CodePipeline {
   public:
    explicit CodePipeline(const CodeConfig &config);

    const CodeConfig &config() const { return config_; }

    /// Full round: windowed syndrome, classification, one rerun with the Fourier setting toggled
    /// when the first pass is ambiguous or unclassifiable, then correction.
    RoundReport run_round(std::span<const ErrorEvent> events, Rng &rng) const;

    struct Shot {
        ErrorEvent event;
        ClassificationResult classification;
        bool fourier_rerun = false;
        double x = 0;
        double p = 0;
    };
    /// Single-sample trial: closed-form classification of the event, then one joint draw of the
    /// detector readouts and the output mode with the corresponding correction applied.
    Shot one_shot(const ErrorEvent &event, Rng &rng) const;

    /// Corrected output state for a given event under closed-form classification.
    GaussianState corrected_state(std::span<const ErrorEvent> events) const;
    const GaussianState &input_state() const { return input_; }

   private:
    struct Variant {
        CodeConfig config;
        DecodedState baseline;
        Eigen::MatrixXd error_map;  // injected carrier displacement -> decoded offset
        std::array<Eigen::Index, 6> readout_index{};
        Eigen::VectorXd readout_mean;
        Eigen::MatrixXd readout_cov;
        std::array<double, 4> baselines{};
        GaussianSampler sampler;
    };

    static Variant make_variant(const CodeConfig &config);
    const Variant &variant(bool fourier_mode) const;
    Eigen::VectorXd readout_offset(const Variant &v, std::span<const ErrorEvent> events) const;
    SyndromeRecord closed_form_record(const Variant &v, const Eigen::VectorXd &offset6) const;
    ClassificationResult closed_form_classification(std::span<const ErrorEvent> events, bool *used_rerun) const;

    CodeConfig config_;
    GaussianState input_;
    std::vector<Variant> variants_;  // [0] = config, [1] = Fourier-toggled twin
};

RoundReport run_round(const CodeConfig &config, const ErrorConfig &error_config, Rng &rng);
RoundReport run_round(const CodeConfig &config, std::span<const ErrorEvent> events, Rng &rng);

nlohmann::json to_json(const SyndromeRecord &record, bool include_trace = false);
nlohmann::json to_json(const CorrectionPlan &plan);
nlohmann::json to_json(const RoundReport &report, bool include_trace = false);
/// RFC-4180 CSV: sample index and the four detector readouts, named by measurement basis.
void write_trace_csv(std::ostream &out, const SyndromeRecord &record);

}  // namespace cvqec

#endif

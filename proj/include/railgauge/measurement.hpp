#pragma once

#include <string>
#include <vector>

#include "railgauge/fock.hpp"
#include "railgauge/interferometer.hpp"

namespace railgauge {

/// Outcome class of one click pattern under the two-hypothesis test.
/// SuccessPlus / SuccessMinus: reachable under exactly one hypothesis, so the
/// pattern identifies it. Failure: reachable under both. Unreachable: below
/// tolerance under both (float residue; excluded from aggregates after its
/// total mass is checked).
enum class Verdict { SuccessPlus, SuccessMinus, Failure, Unreachable };
const char* verdict_name(Verdict verdict);

/// Float classification with absolute tolerance tol on each probability.
Verdict classify(double p_plus, double p_minus, double tol);
/// Exact-backend classification: the tolerance is exact zero.
Verdict classify_exact(const Rational& p_plus, const Rational& p_minus);

/// A probability that knows whether it is exact. `value` always holds the
/// double; `frac` is meaningful when `exact`.
struct ProbValue {
    double value = 0.0;
    bool exact = false;
    Rational frac;

    static ProbValue from_double(double v);
    static ProbValue from_rational(const Rational& r);
    /// "p/q" when exact, else 15-significant-digit decimal.
    std::string display() const;
};

/// Per-photon-number-sector aggregates. `p_sector` is the total probability
/// that `photons` photons arrive, independent of hypothesis and interferometer
/// (always the exact binomial fraction C(n, I)/2^n).
struct SectorRow {
    int photons = 0;
    ProbValue p_sector;
    ProbValue s_plus, s_minus, f_plus, f_minus;
};

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string expected;
    std::string got;
    std::string detail;
};

struct PatternOutcome {
    ClickPattern pattern;
    ProbValue p_plus, p_minus;
    Verdict verdict = Verdict::Unreachable;
};

struct MeasurementReport {
    int n = 0;
    Kind kind = Kind::Custom;
    double phi = 0.0;
    std::vector<int> ancilla_signs; // modes 2..n
    Backend backend = Backend::Float;
    double tol = 1e-9;
    double prior_plus = 0.5;

    std::vector<SectorRow> sectors; // indexed by photon count 0..n
    ProbValue s_plus, s_minus, f_plus, f_minus, overall;
    std::vector<CheckResult> checks;
    std::vector<PatternOutcome> patterns; // populated when keep_patterns

    bool all_checks_pass() const;
    const SectorRow& sector(int photons) const;
};

enum class BackendChoice { Auto, Float, Exact };
BackendChoice backend_choice_from_string(const std::string& name);

struct MeasureOptions {
    BackendChoice backend = BackendChoice::Auto;
    double tol = 1e-9;
    double prior_plus = 0.5;
    bool keep_patterns = false;
};

/// Builds the named interferometer, rejecting invalid (kind, n) pairs:
/// qft needs n >= 2, gm a power of two, hadamard12 exactly n = 12.
Interferometer build_kind(Kind kind, int n);

/// Runs the full two-hypothesis discrimination experiment: evolves both
/// inputs (plus and minus signal, shared ancilla signs), classifies every
/// pattern in the union support, aggregates per-sector and total success and
/// failure probabilities, and records the consistency checks
/// (normalization, sector identities, totals, endpoint sectors,
/// unreachable mass). `overall` is prior_plus * s_plus +
/// (1 - prior_plus) * s_minus; it stays exact only for the even 1/2 prior.
MeasurementReport run_measurement(const Interferometer& itf, double phi,
                                  const std::vector<int>& ancilla_signs,
                                  const MeasureOptions& opts = {});

/// Same engine with arbitrary ancilla sign vectors; exploratory surface for
/// non-uniform ancilla choices.
MeasurementReport mixed_ancilla_experiment(const Interferometer& itf, double phi,
                                           const std::vector<int>& ancilla_signs,
                                           const MeasureOptions& opts = {});

struct SweepResult {
    std::vector<MeasurementReport> reports; // kind-major, n ascending
    std::vector<std::string> warnings;      // skipped (kind, n) combinations
};

/// All-plus-ancilla reports for every kind in `kinds` and every n in
/// [n_min, n_max]; invalid combinations are skipped with a warning rather
/// than failing the sweep. May evaluate reports in parallel (bounded by the
/// RAILGAUGE_THREADS environment variable); output order is deterministic.
SweepResult run_sweep(const std::vector<Kind>& kinds, int n_min, int n_max, double phi,
                      const MeasureOptions& opts = {});

/// The 12-mode Hadamard experiment on the exact backend.
MeasurementReport hadamard12_report(const MeasureOptions& opts = {});

} // namespace railgauge

#include "railgauge/measurement.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <thread>
#include <utility>

namespace railgauge {

namespace {

std::string format_probability(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

Int128 pow2_128(int e) {
    return Int128(1) << e;
}

Rational sector_mass_fraction(int n, int photons) {
    return Rational(binomial128(n, photons), pow2_128(n));
}

} // namespace

const char* verdict_name(Verdict verdict) {
    switch (verdict) {
    case Verdict::SuccessPlus: return "success_plus";
    case Verdict::SuccessMinus: return "success_minus";
    case Verdict::Failure: return "failure";
    case Verdict::Unreachable: return "unreachable";
    }
    return "?";
}

Verdict classify(double p_plus, double p_minus, double tol) {
    if (!(tol >= 0.0)) fail(Errc::InvalidArgument, "classification tolerance must be >= 0");
    if (p_plus < -tol || p_minus < -tol)
        fail(Errc::InvalidProbability, "negative pattern probability");
    const bool plus = p_plus > tol;
    const bool minus = p_minus > tol;
    if (plus && minus) return Verdict::Failure;
    if (plus) return Verdict::SuccessPlus;
    if (minus) return Verdict::SuccessMinus;
    return Verdict::Unreachable;
}

Verdict classify_exact(const Rational& p_plus, const Rational& p_minus) {
    if (p_plus < Rational() || p_minus < Rational())
        fail(Errc::InvalidProbability, "negative pattern probability");
    const bool plus = !p_plus.is_zero();
    const bool minus = !p_minus.is_zero();
    if (plus && minus) return Verdict::Failure;
    if (plus) return Verdict::SuccessPlus;
    if (minus) return Verdict::SuccessMinus;
    return Verdict::Unreachable;
}

ProbValue ProbValue::from_double(double v) {
    ProbValue out;
    out.value = v;
    out.exact = false;
    return out;
}

ProbValue ProbValue::from_rational(const Rational& r) {
    ProbValue out;
    out.value = r.to_double();
    out.exact = true;
    out.frac = r;
    return out;
}

std::string ProbValue::display() const {
    return exact ? frac.to_fraction() : format_probability(value);
}

bool MeasurementReport::all_checks_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.pass; });
}

const SectorRow& MeasurementReport::sector(int photons) const {
    if (photons < 0 || photons >= static_cast<int>(sectors.size()))
        fail(Errc::InvalidArgument, "sector index out of range");
    return sectors[photons];
}

BackendChoice backend_choice_from_string(const std::string& name) {
    if (name == "auto") return BackendChoice::Auto;
    if (name == "float") return BackendChoice::Float;
    if (name == "exact") return BackendChoice::Exact;
    fail(Errc::InvalidArgument, "unknown backend '" + name + "' (auto|float|exact)");
}

Interferometer build_kind(Kind kind, int n) {
    switch (kind) {
    case Kind::QFT:
        if (n < 2) fail(Errc::InvalidModeCount, "qft needs at least 2 modes");
        return build_qft(n);
    case Kind::GreenMachine:
        return build_green_machine(n);
    case Kind::Hadamard12:
        if (n != 12) fail(Errc::InvalidModeCount, "hadamard12 is fixed at n = 12");
        return build_hadamard12();
    case Kind::Custom:
        fail(Errc::InvalidArgument, "custom interferometers need an explicit mesh");
    }
    fail(Errc::InvalidArgument, "unknown interferometer kind");
}

namespace {

template <class Amp>
FockPolynomial<Amp> make_input(const AncillaSpec& spec) {
    if constexpr (std::is_same_v<Amp, ExactAmp>) {
        return input_polynomial_exact(spec);
    } else if constexpr (std::is_same_v<Amp, Cld>) {
        return input_polynomial_hp(spec);
    } else {
        return input_polynomial(spec);
    }
}

/// Everything the merge walk accumulates, in the backend's own arithmetic.
template <class P>
struct Sums {
    std::vector<P> s_plus, s_minus, f_plus, f_minus; // indexed by photon count
    P raw_plus{}, raw_minus{};                       // all mass, pre-classification
    P discarded_plus{}, discarded_minus{};           // mass excluded from aggregates

    explicit Sums(int n)
        : s_plus(n + 1), s_minus(n + 1), f_plus(n + 1), f_minus(n + 1) {}
};

template <class P>
ProbValue to_prob_value(const P& p) {
    if constexpr (std::is_same_v<P, Rational>) {
        return ProbValue::from_rational(p);
    } else {
        return ProbValue::from_double(static_cast<double>(p));
    }
}

template <class P>
Verdict classify_p(const P& p_plus, const P& p_minus, double tol) {
    if constexpr (std::is_same_v<P, Rational>) {
        (void)tol;
        return classify_exact(p_plus, p_minus);
    } else {
        return classify(static_cast<double>(p_plus), static_cast<double>(p_minus), tol);
    }
}

template <class P>
P sum_all(const std::vector<P>& v) {
    P out{};
    for (const auto& x : v) out += x;
    return out;
}

/// One consistency check comparing a probability-like quantity against an
/// exact target. The float backend passes within `tol_abs`; the exact backend
/// requires equality.
template <class P>
CheckResult make_equality_check(const std::string& name, const P& got, const Rational& want,
                                double tol_abs, const std::string& detail) {
    CheckResult c;
    c.name = name;
    c.expected = want.to_fraction();
    c.detail = detail;
    if constexpr (std::is_same_v<P, Rational>) {
        c.pass = got == want;
        c.got = got.to_fraction();
    } else {
        c.pass = std::abs(got - static_cast<P>(want.to_double())) <= static_cast<P>(tol_abs);
        c.got = format_probability(static_cast<double>(got));
    }
    return c;
}

template <class P>
double as_double(const P& p) {
    if constexpr (std::is_same_v<P, Rational>) {
        return p.to_double();
    } else {
        return static_cast<double>(p);
    }
}

template <class Amp>
void run_typed(const Interferometer& itf, const AncillaSpec& plus, const AncillaSpec& minus,
               const MeasureOptions& opts, MeasurementReport& rep) {
    using P = typename ProbabilityOf<Amp>::type;
    const int n = itf.n;

    auto evolved_plus = evolve(make_input<Amp>(plus), itf);
    auto evolved_minus = evolve(make_input<Amp>(minus), itf);
    auto probs_plus = pattern_probabilities(evolved_plus);
    auto probs_minus = pattern_probabilities(evolved_minus);

    // Both lists are in canonical order (ascending photon total, then
    // lexicographically ascending pattern); rank() reproduces that order so
    // the union support can be walked in one merge pass.
    auto rank = [n](std::uint64_t key) {
        return std::pair<int, std::uint64_t>(packed_total(key, n), packed_reverse(key, n));
    };

    Sums<P> sums(n);
    std::size_t i = 0, j = 0;
    while (i < probs_plus.size() || j < probs_minus.size()) {
        bool take_plus = false, take_minus = false;
        if (i >= probs_plus.size()) {
            take_minus = true;
        } else if (j >= probs_minus.size()) {
            take_plus = true;
        } else {
            auto ri = rank(probs_plus[i].key);
            auto rj = rank(probs_minus[j].key);
            take_plus = ri <= rj;
            take_minus = rj <= ri;
        }
        const std::uint64_t key = take_plus ? probs_plus[i].key : probs_minus[j].key;
        const P p_plus = take_plus ? probs_plus[i].p : P{};
        const P p_minus = take_minus ? probs_minus[j].p : P{};
        const int total = packed_total(key, n);

        const Verdict v = classify_p(p_plus, p_minus, opts.tol);
        switch (v) {
        case Verdict::SuccessPlus:
            sums.s_plus[total] += p_plus;
            sums.discarded_minus += p_minus;
            break;
        case Verdict::SuccessMinus:
            sums.s_minus[total] += p_minus;
            sums.discarded_plus += p_plus;
            break;
        case Verdict::Failure:
            sums.f_plus[total] += p_plus;
            sums.f_minus[total] += p_minus;
            break;
        case Verdict::Unreachable:
            sums.discarded_plus += p_plus;
            sums.discarded_minus += p_minus;
            break;
        }
        sums.raw_plus += p_plus;
        sums.raw_minus += p_minus;

        if (opts.keep_patterns) {
            PatternOutcome out;
            out.pattern = unpack_pattern(key, n);
            out.p_plus = to_prob_value(p_plus);
            out.p_minus = to_prob_value(p_minus);
            out.verdict = v;
            rep.patterns.push_back(std::move(out));
        }
        if (take_plus) ++i;
        if (take_minus) ++j;
    }

    rep.sectors.clear();
    rep.sectors.reserve(n + 1);
    for (int photons = 0; photons <= n; ++photons) {
        SectorRow row;
        row.photons = photons;
        row.p_sector = ProbValue::from_rational(sector_mass_fraction(n, photons));
        row.s_plus = to_prob_value(sums.s_plus[photons]);
        row.s_minus = to_prob_value(sums.s_minus[photons]);
        row.f_plus = to_prob_value(sums.f_plus[photons]);
        row.f_minus = to_prob_value(sums.f_minus[photons]);
        rep.sectors.push_back(std::move(row));
    }

    const P s_plus_total = sum_all(sums.s_plus);
    const P s_minus_total = sum_all(sums.s_minus);
    const P f_plus_total = sum_all(sums.f_plus);
    const P f_minus_total = sum_all(sums.f_minus);
    rep.s_plus = to_prob_value(s_plus_total);
    rep.s_minus = to_prob_value(s_minus_total);
    rep.f_plus = to_prob_value(f_plus_total);
    rep.f_minus = to_prob_value(f_minus_total);

    if constexpr (std::is_same_v<P, Rational>) {
        if (opts.prior_plus == 0.5) {
            rep.overall = ProbValue::from_rational((s_plus_total + s_minus_total) *
                                                   Rational::of(1, 2));
        } else {
            rep.overall = ProbValue::from_double(opts.prior_plus * s_plus_total.to_double() +
                                                 (1.0 - opts.prior_plus) *
                                                     s_minus_total.to_double());
        }
    } else {
        rep.overall = ProbValue::from_double(
            static_cast<double>(opts.prior_plus * s_plus_total +
                                (1.0 - opts.prior_plus) * s_minus_total));
    }

    // Consistency checks. Tolerances are fixed (1e-9 for sums, 1e-8 for
    // discarded mass); the exact backend requires exact equality.
    const Rational one = Rational::of(1);
    rep.checks.push_back(make_equality_check("normalization_plus", sums.raw_plus, one, 1e-9,
                                             "total pattern mass, plus hypothesis"));
    rep.checks.push_back(make_equality_check("normalization_minus", sums.raw_minus, one, 1e-9,
                                             "total pattern mass, minus hypothesis"));

    for (int side = 0; side < 2; ++side) {
        const bool is_plus = side == 0;
        CheckResult c;
        c.name = is_plus ? "sector_identity_plus" : "sector_identity_minus";
        c.detail = "per-sector success + failure mass equals C(n,I)/2^n";
        c.pass = true;
        if constexpr (std::is_same_v<P, Rational>) {
            c.expected = "exact match in every sector";
            c.got = "exact match in every sector";
            for (int photons = 0; photons <= n; ++photons) {
                const Rational got = (is_plus ? sums.s_plus[photons] : sums.s_minus[photons]) +
                                     (is_plus ? sums.f_plus[photons] : sums.f_minus[photons]);
                const Rational want = sector_mass_fraction(n, photons);
                if (!(got == want)) {
                    c.pass = false;
                    c.got = "sector " + std::to_string(photons) + ": " + got.to_fraction() +
                            " != " + want.to_fraction();
                    break;
                }
            }
        } else {
            double worst = 0.0;
            for (int photons = 0; photons <= n; ++photons) {
                const double got = as_double(is_plus ? sums.s_plus[photons]
                                                     : sums.s_minus[photons]) +
                                   as_double(is_plus ? sums.f_plus[photons]
                                                     : sums.f_minus[photons]);
                worst = std::max(worst,
                                 std::abs(got - sector_mass_fraction(n, photons).to_double()));
            }
            c.expected = "max sector deviation <= 1e-09";
            c.got = "max sector deviation " + format_probability(worst);
            c.pass = worst <= 1e-9;
        }
        rep.checks.push_back(std::move(c));
    }

    P split_plus = s_plus_total;
    split_plus += f_plus_total;
    P split_minus = s_minus_total;
    split_minus += f_minus_total;
    rep.checks.push_back(make_equality_check("success_failure_split_plus", split_plus, one,
                                             1e-9, "s_plus + f_plus"));
    rep.checks.push_back(make_equality_check("success_failure_split_minus", split_minus, one,
                                             1e-9, "s_minus + f_minus"));

    {
        CheckResult c;
        c.name = "endpoint_sectors";
        c.detail = "no success mass in the 0- and n-photon sectors";
        const double worst =
            std::max({as_double(sums.s_plus[0]), as_double(sums.s_minus[0]),
                      as_double(sums.s_plus[n]), as_double(sums.s_minus[n])});
        c.expected = "0";
        c.got = format_probability(worst);
        c.pass = worst == 0.0;
        rep.checks.push_back(std::move(c));
    }

    {
        CheckResult c;
        c.name = "discarded_mass";
        c.detail = "mass excluded from aggregates (unreachable patterns and "
                   "below-tolerance residues)";
        const double worst =
            std::max(as_double(sums.discarded_plus), as_double(sums.discarded_minus));
        c.expected = "< 1e-08";
        c.got = format_probability(worst);
        c.pass = worst < 1e-8;
        rep.checks.push_back(std::move(c));
    }
}

void validate_sweep_point(Kind kind, int n) {
    if (n < 2) fail(Errc::InvalidModeCount, "needs at least 2 modes");
    switch (kind) {
    case Kind::QFT:
        return;
    case Kind::GreenMachine:
        if (!is_power_of_two(n)) fail(Errc::NotPowerOfTwo, "mode count is not a power of two");
        return;
    case Kind::Hadamard12:
        if (n != 12) fail(Errc::InvalidModeCount, "this interferometer is fixed at n = 12");
        return;
    case Kind::Custom:
        fail(Errc::InvalidArgument, "custom interferometers cannot be swept by kind");
    }
}

std::size_t thread_budget(std::size_t jobs) {
    if (jobs <= 1) return 1;
    std::size_t budget = std::thread::hardware_concurrency();
    if (budget == 0) budget = 1;
    if (const char* env = std::getenv("RAILGAUGE_THREADS")) {
        char* end = nullptr;
        const long parsed = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && parsed >= 1) budget = static_cast<std::size_t>(parsed);
    }
    return std::min(budget, jobs);
}

} // namespace

MeasurementReport run_measurement(const Interferometer& itf, double phi,
                                  const std::vector<int>& ancilla_signs,
                                  const MeasureOptions& opts) {
    const int n = itf.n;
    if (static_cast<int>(ancilla_signs.size()) != n - 1)
        fail(Errc::DimensionMismatch, "expected exactly n - 1 ancilla signs");
    if (!(opts.prior_plus >= 0.0 && opts.prior_plus <= 1.0))
        fail(Errc::InvalidProbability, "prior must lie in [0, 1]");

    std::vector<int> signs_plus(1, +1);
    signs_plus.insert(signs_plus.end(), ancilla_signs.begin(), ancilla_signs.end());
    std::vector<int> signs_minus = signs_plus;
    signs_minus[0] = -1;
    const AncillaSpec plus = make_ancilla_spec(n, signs_plus, phi);
    const AncillaSpec minus = make_ancilla_spec(n, signs_minus, phi);

    const bool exact_possible = itf.exact && plus.phi == 0.0;
    Backend backend = Backend::Float;
    switch (opts.backend) {
    case BackendChoice::Auto:
        backend = exact_possible ? Backend::ExactDyadic : Backend::Float;
        break;
    case BackendChoice::Float:
        backend = Backend::Float;
        break;
    case BackendChoice::Exact:
        if (!exact_possible)
            fail(Errc::InvalidArgument,
                 "exact backend needs an exact-amplitude unitary and phi = 0");
        backend = Backend::ExactDyadic;
        break;
    }

    MeasurementReport rep;
    rep.n = n;
    rep.kind = itf.kind;
    rep.phi = plus.phi;
    rep.ancilla_signs = ancilla_signs;
    rep.backend = backend;
    rep.tol = opts.tol;
    rep.prior_plus = opts.prior_plus;

    if (backend == Backend::ExactDyadic) {
        run_typed<ExactAmp>(itf, plus, minus, opts, rep);
    } else {
        // The float backend evolves in long double and rounds once at the
        // end, so reported doubles sit on the mathematically exact values.
        run_typed<Cld>(itf, plus, minus, opts, rep);
    }
    return rep;
}

MeasurementReport mixed_ancilla_experiment(const Interferometer& itf, double phi,
                                           const std::vector<int>& ancilla_signs,
                                           const MeasureOptions& opts) {
    return run_measurement(itf, phi, ancilla_signs, opts);
}

SweepResult run_sweep(const std::vector<Kind>& kinds, int n_min, int n_max, double phi,
                      const MeasureOptions& opts) {
    if (n_min > n_max) fail(Errc::InvalidArgument, "empty sweep range");
    if (kinds.empty()) fail(Errc::InvalidArgument, "no interferometer kinds given");

    struct Job {
        Kind kind;
        int n;
    };
    SweepResult result;
    std::vector<Job> jobs;
    for (const Kind kind : kinds) {
        for (int n = n_min; n <= n_max; ++n) {
            try {
                validate_sweep_point(kind, n);
            } catch (const Error& e) {
                result.warnings.push_back("skipping " + std::string(kind_name(kind)) +
                                          " n=" + std::to_string(n) + ": " + e.what());
                continue;
            }
            jobs.push_back({kind, n});
        }
    }

    result.reports.resize(jobs.size());
    std::vector<std::exception_ptr> failures(jobs.size());
    auto run_one = [&](std::size_t idx) {
        try {
            const Interferometer itf = build_kind(jobs[idx].kind, jobs[idx].n);
            const std::vector<int> ancillas(static_cast<std::size_t>(jobs[idx].n) - 1, +1);
            result.reports[idx] = run_measurement(itf, phi, ancillas, opts);
        } catch (...) {
            failures[idx] = std::current_exception();
        }
    };

    const std::size_t threads = thread_budget(jobs.size());
    if (threads <= 1) {
        for (std::size_t idx = 0; idx < jobs.size(); ++idx) run_one(idx);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t idx = next.fetch_add(1); idx < jobs.size();
                     idx = next.fetch_add(1)) {
                    run_one(idx);
                }
            });
        }
        for (auto& th : pool) th.join();
    }
    for (auto& failure : failures) {
        if (failure) std::rethrow_exception(failure);
    }
    return result;
}

MeasurementReport hadamard12_report(const MeasureOptions& opts) {
    return run_measurement(build_hadamard12(), 0.0, std::vector<int>(11, +1), opts);
}

} // namespace railgauge

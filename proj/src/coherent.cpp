#include "railgauge/coherent.hpp"

#include <cmath>
#include <numbers>

#include "railgauge/errors.hpp"
#include "railgauge/interferometer.hpp"

namespace railgauge {

namespace {

/// alpha must sit on an integer within 1e-12 for the two-mode pattern
/// condition i - j = +-alpha to be satisfiable.
int require_integer_alpha(double alpha) {
    const double rounded = std::round(alpha);
    if (std::abs(alpha - rounded) > 1e-12 || rounded == 0.0)
        fail(Errc::NotDiscriminating,
             "the two-mode coherent scheme needs a nonzero integer alpha");
    return static_cast<int>(std::abs(rounded));
}

void require_cutoff(int cutoff) {
    if (cutoff < 1) fail(Errc::InvalidArgument, "cutoff must be >= 1");
}

} // namespace

int default_cutoff(double alpha) {
    return static_cast<int>(std::ceil(alpha * alpha + 10.0 * std::abs(alpha) + 10.0));
}

double bessel_i(int order, double x) {
    if (order < 0 || x < 0.0)
        fail(Errc::InvalidArgument, "bessel_i needs order >= 0 and x >= 0");
    if (order > 170) fail(Errc::InvalidArgument, "bessel_i order capped at 170");
    double term = std::pow(x / 2.0, order) / factorial_double(order);
    double sum = term;
    for (int m = 0; m < 10000; ++m) {
        term *= (x / 2.0) * (x / 2.0) / ((m + 1.0) * (m + order + 1.0));
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum;
}

double bs_coherent_success(double alpha) {
    const int a = require_integer_alpha(alpha);
    return 2.0 * std::exp(-alpha * alpha) * bessel_i(a, alpha * alpha);
}

const char* sim_method_name(SimMethod method) {
    switch (method) {
    case SimMethod::Series: return "series";
    case SimMethod::FockSim: return "fock_sim";
    }
    return "?";
}

double bs_coherent_success_sim(double alpha, int cutoff, SimMethod method) {
    if (method == SimMethod::FockSim) {
        return gm_coherent_success_fock(2, alpha, cutoff).average();
    }
    const int a = require_integer_alpha(alpha);
    if (cutoff <= 0) cutoff = default_cutoff(alpha);
    require_cutoff(cutoff);
    const double half = alpha * alpha / 2.0;
    // term(i) = half^{2i - a} / (i! (i-a)!), iterated from i = a
    double term = std::pow(half, a) / factorial_double(a);
    double sum = 0.0;
    for (int i = a; i <= cutoff; ++i) {
        sum += term;
        term *= half * half / ((i + 1.0) * (i + 1.0 - a));
    }
    return 2.0 * std::exp(-alpha * alpha) * sum;
}

CoherentResult gm_coherent_success(int n, double alpha, int cutoff) {
    if (n < 2) fail(Errc::InvalidModeCount, "needs at least 2 modes");
    if (alpha == 0.0)
        fail(Errc::NotDiscriminating, "alpha = 0 cannot separate the hypotheses");
    if (cutoff <= 0) cutoff = default_cutoff(alpha);
    require_cutoff(cutoff);

    CoherentResult out;
    out.n = n;
    out.alpha = alpha;
    out.cutoff = cutoff;
    const double prefactor = 2.0 * std::exp(-(n - 1.0) * alpha * alpha);
    const double log_ratio = std::log(n - 1.0);        // log(n-1)
    const double log_weight = std::log(alpha * alpha / n);

    for (const int branch : {+1, -1}) {
        double total = 0.0;
        bool any = false;
        for (int s = 0; s <= cutoff; ++s) {
            const double exact_i1 = (n - 1.0) * (s + branch * alpha);
            const long long i1 = std::llround(exact_i1);
            if (i1 < 0 || std::abs(exact_i1 - static_cast<double>(i1)) > 1e-9) continue;
            if (i1 > 300) continue; // far below double underflow already
            any = true;
            const double log_term = (2.0 * i1 + s) * log_ratio + (i1 + s) * log_weight -
                                    std::lgamma(i1 + 1.0) - std::lgamma(s + 1.0);
            total += std::exp(log_term);
        }
        if (!any) {
            if (!out.diagnostic.empty()) out.diagnostic += "; ";
            out.diagnostic += std::string(branch > 0 ? "plus" : "minus") +
                              " branch: no pattern satisfies the click condition "
                              "within the cutoff";
        }
        (branch > 0 ? out.p_plus : out.p_minus) = prefactor * total;
    }
    return out;
}

CoherentResult gm_coherent_success_fock(int n, double alpha, int cutoff) {
    if (n != 2 && n != 4)
        fail(Errc::InvalidModeCount, "the truncated-Fock route supports n in {2, 4}");
    if (alpha == 0.0)
        fail(Errc::NotDiscriminating, "alpha = 0 cannot separate the hypotheses");
    if (cutoff <= 0) cutoff = default_cutoff(alpha);
    require_cutoff(cutoff);

    CoherentResult out;
    out.n = n;
    out.alpha = alpha;
    out.cutoff = cutoff;

    const Interferometer itf = build_green_machine(n);
    const int max_degree = 1 + (n - 1) * cutoff;

    // Truncated coherent factor: c_m = e^{-alpha^2/2} alpha^m / m!.
    std::vector<Cd> coherent_factor(cutoff + 1);
    const double envelope = std::exp(-alpha * alpha / 2.0);
    double power = 1.0;
    for (int m = 0; m <= cutoff; ++m) {
        coherent_factor[m] = envelope * power;
        power *= alpha / (m + 1.0);
    }

    for (const int branch : {+1, -1}) {
        std::vector<std::vector<Cd>> factors;
        factors.push_back({Cd(1.0 / std::numbers::sqrt2), Cd(branch / std::numbers::sqrt2)});
        for (int m = 1; m < n; ++m) factors.push_back(coherent_factor);
        auto evolved = evolve(product_input(n, max_degree, std::move(factors)), itf);
        const auto probs = pattern_probabilities(evolved);

        double total = 0.0;
        for (const auto& pp : probs) {
            const ClickPattern pattern = unpack_pattern(pp.key, n);
            int rest = 0;
            for (int k = 1; k < n; ++k) rest += pattern[k];
            const double expr = pattern[0] / (n - 1.0) - rest;
            if (std::abs(expr - branch * alpha) < 1e-9) total += pp.p;
        }
        (branch > 0 ? out.p_plus : out.p_minus) = total;
    }
    return out;
}

LoadingResult loading_probability(double alpha, int i, int j, Cd upsilon, Cd xi) {
    if (alpha == 0.0)
        fail(Errc::InvalidAmplitude, "loading needs a nonzero carrier amplitude");
    if (i < 0 || j < 0 || i > 170 || j > 170)
        fail(Errc::InvalidArgument, "occupancies must lie in 0..170");
    const double qubit_norm = std::norm(upsilon) + std::norm(xi);
    if (std::abs(qubit_norm - 1.0) > 1e-12)
        fail(Errc::InvalidAmplitude, "|upsilon|^2 + |xi|^2 must equal 1");

    const double a2 = alpha * alpha;
    const double weight = std::exp(-a2) / a2 * std::pow(a2 / 2.0, i + j) /
                          (factorial_double(i) * factorial_double(j));
    LoadingResult out;
    out.amp_vacuum = alpha * upsilon;
    out.amp_single = static_cast<double>(i - j) * xi;
    out.probability = weight * (std::norm(out.amp_vacuum) + std::norm(out.amp_single));
    return out;
}

double total_loading_probability(double alpha, Cd upsilon, Cd xi, int cutoff) {
    if (cutoff <= 0) cutoff = default_cutoff(alpha);
    require_cutoff(cutoff);
    double total = 0.0;
    for (int i = 1; i <= std::min(cutoff, 170); ++i)
        total += 2.0 * loading_probability(alpha, i, i - 1, upsilon, xi).probability;
    return total;
}

} // namespace railgauge

#pragma once

#include <complex>
#include <string>

#include "railgauge/fock.hpp"

namespace railgauge {

/// Coherent-ancilla discrimination: the signal mode carries (|0> +- |1>)/sqrt(2)
/// and every other input mode a coherent state of real amplitude alpha. A
/// pattern succeeds when i1/(n-1) - (i2 + ... + in) lands on +alpha (plus
/// hypothesis) or -alpha (minus hypothesis); all other patterns with nonzero
/// probability under both hypotheses are failures.

/// Truncation depth used when the caller passes cutoff <= 0:
/// ceil(alpha^2 + 10 |alpha| + 10), far past where terms stop mattering at
/// double precision.
int default_cutoff(double alpha);

/// Modified Bessel function of the first kind, integer order >= 0, x >= 0,
/// by its ascending series (terminates at term < 1e-18 * partial sum).
double bessel_i(int order, double x);

/// Two-mode closed form 2 e^{-alpha^2} I_{|alpha|}(alpha^2). The pattern
/// condition i - j = +-alpha can only be met for integer alpha, and alpha = 0
/// fails to separate the hypotheses, so non-integer or zero alpha is an
/// error.
double bs_coherent_success(double alpha);

enum class SimMethod { Series, FockSim };
const char* sim_method_name(SimMethod method);

/// The same two-mode probability by explicit summation. Series adds the
/// per-pattern terms 2 e^{-a^2} (a^2/2)^{2i-a} / (i! (i-a)!) for
/// i = a..cutoff with a = |alpha|; FockSim evolves the truncated two-mode
/// input through the 50-50 splitter and classifies every output pattern.
/// Both agree with the closed form to full double precision once the cutoff
/// clears the default.
double bs_coherent_success_sim(double alpha, int cutoff, SimMethod method = SimMethod::Series);

struct CoherentResult {
    int n = 0;
    double alpha = 0.0;
    int cutoff = 0;
    double p_plus = 0.0;
    double p_minus = 0.0;
    std::string diagnostic; // non-empty when a branch admits no lattice point

    double average() const { return 0.5 * (p_plus + p_minus); }
};

/// n-mode generalization by direct lattice summation:
///   p_{+-} = 2 e^{-(n-1) alpha^2} * sum over ancilla-side photon totals
///            s = 0..cutoff with i1 = (n-1)(s +- alpha) a non-negative
///            integer of (n-1)^{2 i1 + s} (alpha^2/n)^{i1 + s} / (i1! s!),
/// where the multinomial sum over individual ancilla occupancies with total
/// s has already been collapsed ((n-1)^s / s!). alpha need not be an
/// integer: branches whose constraint never lands on the lattice come back
/// as 0 with a diagnostic. For n = 2 this reduces term-by-term to the
/// two-mode series.
CoherentResult gm_coherent_success(int n, double alpha, int cutoff = 0);

/// Independent route for the same probabilities: truncated-Fock evolution
/// through the n-mode Hadamard interferometer (each ancilla mode truncated
/// at `cutoff` photons) with per-pattern classification. Kept affordable for
/// n in {2, 4}.
CoherentResult gm_coherent_success_fock(int n, double alpha, int cutoff = 0);

/// After a success, the surviving coherent mode carries the signal qubit.
/// `probability` is the chance that pattern (i, j) occurs and the qubit
/// (upsilon, xi) loads:
///   e^{-|alpha|^2}/|alpha|^2 * (|alpha|^2/2)^{i+j} / (i! j!) *
///   (|alpha upsilon|^2 + (i-j)^2 |xi|^2),
/// with the unnormalized loaded components alpha*upsilon and (i-j)*xi.
struct LoadingResult {
    double probability = 0.0;
    Cd amp_vacuum;
    Cd amp_single;
};

LoadingResult loading_probability(double alpha, int i, int j, Cd upsilon, Cd xi);

/// Total over the dominant pattern family: sum of 2 * loading_probability
/// for (i, i-1), i = 1..cutoff; the factor 2 counts the mirrored pattern.
/// Converges to 2 e^{-alpha^2} I_1(alpha^2) (alpha^2 |upsilon|^2 +
/// |xi|^2)/alpha^2.
double total_loading_probability(double alpha, Cd upsilon, Cd xi, int cutoff = 0);

} // namespace railgauge

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "railgauge/exact.hpp"
#include "railgauge/flat_map.hpp"
#include "railgauge/interferometer.hpp"
#include "railgauge/pattern.hpp"

namespace railgauge {

using Cd = std::complex<double>;
using Cld = std::complex<long double>;

/// Float: complex double amplitudes, works for every unitary and phase.
/// ExactDyadic: amplitudes in the exact field num * 2^(-a/2) * 3^(-b/2),
/// valid for Hadamard-type unitaries with phi = 0; probabilities downstream
/// become exact rationals.
enum class Backend { Float, ExactDyadic };
const char* backend_name(Backend backend);
Backend backend_from_string(const std::string& name);

/// One input configuration: signs[0] is the mode-1 signal hypothesis sign,
/// signs[1..n-1] are the ancilla signs, phi the shared azimuth. Mode j
/// carries (|0> + signs[j] * e^{i phi} |1>)/sqrt(2).
struct AncillaSpec {
    int n = 0;
    std::vector<int> signs;
    double phi = 0.0;
};

/// Validates lengths and sign values and folds phi into [0, 2*pi).
AncillaSpec make_ancilla_spec(int n, std::vector<int> signs, double phi);

template <class Amp>
struct ProbabilityOf;
template <>
struct ProbabilityOf<Cd> {
    using type = double;
};
template <>
struct ProbabilityOf<Cld> {
    using type = long double;
};
template <>
struct ProbabilityOf<ExactAmp> {
    using type = Rational;
};

/// Sparse creation-operator polynomial over n modes: `terms` maps a packed
/// occupancy key (see pattern.hpp) to the monomial's amplitude. When the
/// state is a product of single-mode factor polynomials, `factors[j][d]`
/// holds the coefficient of (a_j^+)^d and evolution runs factor-by-factor,
/// which is what keeps the 10- and 12-mode cases tractable. `max_degree`
/// bounds every intermediate monomial during evolution.
template <class Amp>
struct FockPolynomial {
    int n = 0;
    int max_degree = 0;
    FlatMap<Amp> terms;
    std::vector<std::vector<Amp>> factors;

    bool factored() const { return !factors.empty(); }
};

/// 2^{-n/2} * prod_j (1 + signs[j] e^{i phi} a_j^+), expanded (2^n terms)
/// and carrying the factor form.
FockPolynomial<Cd> input_polynomial(const AncillaSpec& spec);

/// Long-double variant used by the float measurement backend: evolving in
/// extended precision and rounding the final probabilities once keeps them
/// on the mathematically exact values through the last printed digit.
FockPolynomial<Cld> input_polynomial_hp(const AncillaSpec& spec);

/// Exact-backend variant; requires phi = 0 so every amplitude is +-2^{-n/2}.
FockPolynomial<ExactAmp> input_polynomial_exact(const AncillaSpec& spec);

/// Product of arbitrary single-mode factor polynomials (coherent-state
/// inputs use this); terms are left to evolve, which reads the factor form.
FockPolynomial<Cd> product_input(int n, int max_degree, std::vector<std::vector<Cd>> factors);

/// Substitutes a_j^+ -> sum_k U_{jk} b_k^+ and expands, collecting like
/// monomials and pruning intermediates above poly.max_degree. Factored
/// inputs multiply through one input mode at a time; general polynomials
/// fall back to per-monomial substitution with cached linear-form powers.
/// The float backend drops |c| < 1e-14 * max|c| afterwards so structural
/// zeros stay zero.
template <class Amp>
FockPolynomial<Amp> evolve(const FockPolynomial<Amp>& poly, const Interferometer& itf);

template <class Amp>
struct PatternProbability {
    std::uint64_t key = 0;
    typename ProbabilityOf<Amp>::type p{};
};

/// P(i1..in) = |c|^2 * i1! * ... * in! for every monomial in the
/// polynomial, in canonical order (ascending photon total, then
/// lexicographically ascending pattern).
template <class Amp>
std::vector<PatternProbability<Amp>> pattern_probabilities(const FockPolynomial<Amp>& poly);

/// sum |c|^2 * prod(i_j!) — equals 1 for a normalized state.
template <class Amp>
typename ProbabilityOf<Amp>::type squared_mass(const FockPolynomial<Amp>& poly);

/// Permanent via Ryser's formula with Gray-code row-sum updates,
/// O(2^m * m); dimension 0 returns 1, dimension capped at 20.
Cd permanent(const Eigen::MatrixXcd& m);

/// Independent route to one output coefficient: 2^{-n/2} e^{i phi I} *
/// sum over input-mode subsets S with |S| = I of (prod_{j in S} signs[j]) *
/// Perm(U[S -> pattern]) / prod(i_k!), where U[S -> pattern] repeats output
/// column k exactly i_k times. Agrees with the coefficient evolve produces
/// for the same monomial.
Cd amplitude_oracle(const Interferometer& itf, const AncillaSpec& spec,
                    const ClickPattern& pattern);

} // namespace railgauge

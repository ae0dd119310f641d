#pragma once

#include "railgauge/exact.hpp"

namespace railgauge {

/// Closed-form totals and sector values for the symmetric (Fourier- or
/// Hadamard-type) n-mode discrimination experiment with all-plus ancillas.
/// Every value is an exact rational. The fixed 12-mode Hadamard deliberately
/// deviates from these formulas; see the must-differ checks in the test
/// suite.

/// Total success probability against the all-plus hypothesis:
/// n!/(2^n ((n/2)!)^2) for even n, 0 for odd n.
Rational s_plus_formula(int n);

/// Total success probability against the flipped-signal hypothesis:
/// (n-1)/n.
Rational s_minus_formula(int n);

/// Equal-prior average success probability: the mean of the two totals for
/// even n, (n-1)/(2n) for odd n (where s_plus vanishes).
Rational overall_formula(int n);

/// Success probability inside the I-photon sector, flipped-signal
/// hypothesis: 4(n-I) I C(n,I)/(2^n n^2). Zero at I = 0 and I = n.
Rational sector_minus_formula(int n, int photons);

/// Overlap of the two hypotheses' I-photon sector states: (n-2I)/n.
Rational gamma(int n, int photons);

/// The same overlap by direct enumeration: sum of (-1)^{occupancy of mode 1}
/// over all C(n,I) single-photon-per-mode configurations, divided by C(n,I).
/// Exponential in n (n <= 16); exists to validate `gamma` independently.
Rational gamma_bruteforce(int n, int photons);

/// Probability that I of the n inputs carry a photon: C(n,I)/2^n.
Rational sector_probability(int n, int photons);

} // namespace railgauge

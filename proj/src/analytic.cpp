#include "railgauge/analytic.hpp"

#include <bit>

#include "railgauge/errors.hpp"

namespace railgauge {

namespace {

void require_modes(int n) {
    if (n < 2) fail(Errc::InvalidModeCount, "needs at least 2 modes");
}

void require_sector(int n, int photons) {
    require_modes(n);
    if (photons < 0 || photons > n)
        fail(Errc::InvalidArgument, "photon count outside 0..n");
}

Int128 pow2_128(int e) {
    return Int128(1) << e;
}

} // namespace

Rational s_plus_formula(int n) {
    require_modes(n);
    if (n % 2 != 0) return Rational();
    const Int128 half_fact = factorial128(n / 2);
    return Rational(factorial128(n), pow2_128(n) * half_fact * half_fact);
}

Rational s_minus_formula(int n) {
    require_modes(n);
    return Rational::of(n - 1, n);
}

Rational overall_formula(int n) {
    require_modes(n);
    if (n % 2 != 0) return Rational::of(n - 1, 2 * n);
    return (s_plus_formula(n) + s_minus_formula(n)) * Rational::of(1, 2);
}

Rational sector_minus_formula(int n, int photons) {
    require_sector(n, photons);
    const Int128 numerator =
        Int128(4) * (n - photons) * photons * binomial128(n, photons);
    return Rational(numerator, pow2_128(n) * n * n);
}

Rational gamma(int n, int photons) {
    require_sector(n, photons);
    return Rational::of(n - 2 * photons, n);
}

Rational gamma_bruteforce(int n, int photons) {
    require_sector(n, photons);
    if (n > 16) fail(Errc::InvalidModeCount, "brute-force overlap capped at 16 modes");
    long long signed_count = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) != photons) continue;
        signed_count += (mask & 1u) ? -1 : +1;
    }
    return Rational(Int128(signed_count), binomial128(n, photons));
}

Rational sector_probability(int n, int photons) {
    require_sector(n, photons);
    return Rational(binomial128(n, photons), pow2_128(n));
}

} // namespace railgauge

#pragma once

#include <cstdint>
#include <string>

#include "railgauge/errors.hpp"

namespace railgauge {

using Int128 = __int128;

std::string int128_to_string(Int128 v);
Int128 int128_from_string(const std::string& s);

inline Int128 int128_abs(Int128 v) { return v < 0 ? -v : v; }

Int128 gcd128(Int128 a, Int128 b);

/// a*b with overflow detection; throws Errc::Overflow past 128 bits.
Int128 mul_checked(Int128 a, Int128 b);
/// a+b with overflow detection.
Int128 add_checked(Int128 a, Int128 b);

/// n! as a 128-bit integer (n <= 33).
Int128 factorial128(int n);
/// n! as a double (n <= 170), table-backed.
double factorial_double(int n);
/// Binomial coefficient as a 128-bit integer (exact, n <= 60).
Int128 binomial128(int n, int k);

/// Exact complex-free amplitude of the form num * 2^(-h2/2) * 3^(-h3/2).
///
/// This covers every coefficient that appears when a product of (1 +- a_j^+)
/// factors is pushed through an interferometer whose entries are +-1/sqrt(n)
/// with n = 2^a * 3^b: each creation operator picks up one 1/sqrt(n), so a
/// monomial of degree d carries the scale 2^(-n/2) * n^(-d/2) exactly.
/// Values are kept normalized (num odd w.r.t. reducible 2s and 3s, zero is
/// (0,0,0)), so operator== is structural equality of the real number.
struct ExactAmp {
    std::int64_t num = 0;
    std::int32_t h2 = 0;
    std::int32_t h3 = 0;

    ExactAmp() = default;
    ExactAmp(std::int64_t n, std::int32_t two_halves, std::int32_t three_halves);

    bool is_zero() const { return num == 0; }
    double to_double() const;
    long double to_long_double() const;

    /// num^2 * 2^h2 * 3^h3 as exact integers: value^2 == first/second.
    struct SquareParts {
        Int128 num2;
        Int128 den;
    };
    SquareParts square_parts() const;

    friend bool operator==(const ExactAmp& a, const ExactAmp& b) {
        return a.num == b.num && a.h2 == b.h2 && a.h3 == b.h3;
    }
    friend bool operator!=(const ExactAmp& a, const ExactAmp& b) { return !(a == b); }
};

ExactAmp operator+(const ExactAmp& a, const ExactAmp& b);
ExactAmp operator-(const ExactAmp& a);
ExactAmp operator-(const ExactAmp& a, const ExactAmp& b);
ExactAmp operator*(const ExactAmp& a, const ExactAmp& b);
ExactAmp& operator+=(ExactAmp& a, const ExactAmp& b);

std::string to_string(const ExactAmp& a);

/// Exact rational over checked 128-bit integers, always normalized
/// (gcd(num, den) == 1, den > 0). Wide enough for every probability and
/// sector sum this library produces; see the overflow notes on ExactAmp.
struct Rational {
    Int128 num = 0;
    Int128 den = 1;

    Rational() = default;
    Rational(Int128 n, Int128 d);
    static Rational of(std::int64_t n, std::int64_t d = 1) { return Rational(Int128(n), Int128(d)); }

    bool is_zero() const { return num == 0; }
    double to_double() const;
    /// "num/den", or just "num" when den == 1.
    std::string to_fraction() const;
    /// Parses "p/q" or "p".
    static Rational parse(const std::string& text);

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b);
};

Rational operator+(const Rational& a, const Rational& b);
Rational operator-(const Rational& a, const Rational& b);
Rational operator*(const Rational& a, const Rational& b);
Rational operator/(const Rational& a, const Rational& b);
Rational& operator+=(Rational& a, const Rational& b);

/// |amp|^2 * extra as an exact rational (extra is an exact integer weight,
/// e.g. a product of occupancy factorials).
Rational abs_square_times(const ExactAmp& amp, Int128 extra);

} // namespace railgauge

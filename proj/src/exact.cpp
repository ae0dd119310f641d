#include "railgauge/exact.hpp"

#include <cmath>
#include <cstdlib>
#include <vector>

namespace railgauge {

const char* errc_name(Errc code) {
    switch (code) {
    case Errc::InvalidModeCount: return "invalid mode count";
    case Errc::NotPowerOfTwo: return "not a power of two";
    case Errc::InvalidPort: return "invalid port";
    case Errc::DimensionMismatch: return "dimension mismatch";
    case Errc::InvalidProbability: return "invalid probability";
    case Errc::InvalidAmplitude: return "invalid amplitude";
    case Errc::NotDiscriminating: return "not discriminating";
    case Errc::ExactScaleMismatch: return "exact scale mismatch";
    case Errc::Overflow: return "overflow";
    case Errc::InvalidArgument: return "invalid argument";
    }
    return "unknown error";
}

std::string int128_to_string(Int128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    // Peel digits from |v|; careful with INT128_MIN (never produced here,
    // all values stay well under 2^127).
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                              : static_cast<unsigned __int128>(v);
    char buf[48];
    int pos = 48;
    while (u > 0) {
        buf[--pos] = static_cast<char>('0' + static_cast<int>(u % 10));
        u /= 10;
    }
    std::string out;
    if (neg) out.push_back('-');
    out.append(buf + pos, buf + 48);
    return out;
}

Int128 int128_from_string(const std::string& s) {
    if (s.empty()) fail(Errc::InvalidArgument, "empty integer literal");
    std::size_t i = 0;
    bool neg = false;
    if (s[0] == '-' || s[0] == '+') {
        neg = (s[0] == '-');
        i = 1;
    }
    if (i >= s.size()) fail(Errc::InvalidArgument, "sign without digits: '" + s + "'");
    Int128 v = 0;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9')
            fail(Errc::InvalidArgument, "bad digit in integer literal: '" + s + "'");
        v = mul_checked(v, 10);
        v = add_checked(v, s[i] - '0');
    }
    return neg ? -v : v;
}

Int128 gcd128(Int128 a, Int128 b) {
    a = int128_abs(a);
    b = int128_abs(b);
    while (b != 0) {
        Int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Int128 mul_checked(Int128 a, Int128 b) {
    Int128 r;
    if (__builtin_mul_overflow(a, b, &r))
        fail(Errc::Overflow, "128-bit multiply overflow: " + int128_to_string(a) + " * " +
                                 int128_to_string(b));
    return r;
}

Int128 add_checked(Int128 a, Int128 b) {
    Int128 r;
    if (__builtin_add_overflow(a, b, &r))
        fail(Errc::Overflow, "128-bit add overflow: " + int128_to_string(a) + " + " +
                                 int128_to_string(b));
    return r;
}

Int128 factorial128(int n) {
    if (n < 0 || n > 33) fail(Errc::InvalidArgument, "factorial128 needs 0 <= n <= 33, got " + std::to_string(n));
    Int128 r = 1;
    for (int i = 2; i <= n; ++i) r = mul_checked(r, i);
    return r;
}

double factorial_double(int n) {
    static const std::vector<double> table = [] {
        std::vector<double> t(171);
        t[0] = 1.0;
        for (int i = 1; i <= 170; ++i) t[i] = t[i - 1] * i;
        return t;
    }();
    if (n < 0 || n > 170)
        fail(Errc::InvalidArgument, "factorial_double needs 0 <= n <= 170, got " + std::to_string(n));
    return table[static_cast<std::size_t>(n)];
}

Int128 binomial128(int n, int k) {
    if (n < 0 || k < 0) fail(Errc::InvalidArgument, "binomial128 needs nonnegative arguments");
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    Int128 r = 1;
    for (int i = 1; i <= k; ++i) {
        r = mul_checked(r, n - k + i);
        r /= i; // always divides exactly: r is C(n-k+i, i) * i! / i! at each step
    }
    return r;
}

ExactAmp::ExactAmp(std::int64_t n, std::int32_t two_halves, std::int32_t three_halves)
    : num(n), h2(two_halves), h3(three_halves) {
    if (num == 0) {
        h2 = 0;
        h3 = 0;
        return;
    }
    // Pull full powers of 2 and 3 out of num into the scale exponents so each
    // value has one canonical representation.
    while (num % 2 == 0) {
        num /= 2;
        h2 -= 2;
    }
    while (num % 3 == 0) {
        num /= 3;
        h3 -= 2;
    }
}

double ExactAmp::to_double() const {
    if (num == 0) return 0.0;
    return static_cast<double>(num) * std::pow(2.0, -0.5 * h2) * std::pow(3.0, -0.5 * h3);
}

long double ExactAmp::to_long_double() const {
    if (num == 0) return 0.0L;
    return static_cast<long double>(num) * std::pow(2.0L, -0.5L * h2) *
           std::pow(3.0L, -0.5L * h3);
}

ExactAmp::SquareParts ExactAmp::square_parts() const {
    SquareParts parts;
    parts.num2 = mul_checked(Int128(num), Int128(num));
    parts.den = 1;
    // h2/h3 may be negative after normalization (value > 1); fold negative
    // exponents into the numerator instead.
    auto fold = [&](std::int32_t h, Int128 base) {
        if (h >= 0) {
            for (std::int32_t i = 0; i < h; ++i) parts.den = mul_checked(parts.den, base);
        } else {
            for (std::int32_t i = 0; i < -h; ++i) parts.num2 = mul_checked(parts.num2, base);
        }
    };
    fold(h2, 2);
    fold(h3, 3);
    return parts;
}

ExactAmp operator+(const ExactAmp& a, const ExactAmp& b) {
    if (a.num == 0) return b;
    if (b.num == 0) return a;
    // Align both terms on the common scale 2^(-H2/2) * 3^(-H3/2) with
    // H = max exponent. The gap must be even in each prime: an odd gap means
    // the two terms live on incommensurable scales (x vs x*sqrt(2)) and the
    // sum leaves this number system.
    std::int32_t H2 = a.h2 > b.h2 ? a.h2 : b.h2;
    std::int32_t H3 = a.h3 > b.h3 ? a.h3 : b.h3;
    if ((H2 - a.h2) % 2 != 0 || (H2 - b.h2) % 2 != 0 || (H3 - a.h3) % 2 != 0 ||
        (H3 - b.h3) % 2 != 0)
        fail(Errc::ExactScaleMismatch,
             "cannot add " + to_string(a) + " and " + to_string(b) +
                 ": scales differ by an odd power of sqrt(2) or sqrt(3)");
    auto lift = [](const ExactAmp& x, std::int32_t H2v, std::int32_t H3v) -> std::int64_t {
        Int128 n = x.num;
        for (std::int32_t i = 0; i < (H2v - x.h2) / 2; ++i) n = mul_checked(n, 2);
        for (std::int32_t i = 0; i < (H3v - x.h3) / 2; ++i) n = mul_checked(n, 3);
        if (n > INT64_MAX || n < INT64_MIN)
            fail(Errc::Overflow, "exact amplitude numerator exceeds 64 bits");
        return static_cast<std::int64_t>(n);
    };
    std::int64_t na = lift(a, H2, H3);
    std::int64_t nb = lift(b, H2, H3);
    std::int64_t sum;
    if (__builtin_add_overflow(na, nb, &sum))
        fail(Errc::Overflow, "exact amplitude numerator exceeds 64 bits in addition");
    return ExactAmp(sum, H2, H3);
}

ExactAmp operator-(const ExactAmp& a) { return ExactAmp(-a.num, a.h2, a.h3); }

ExactAmp operator-(const ExactAmp& a, const ExactAmp& b) { return a + (-b); }

ExactAmp operator*(const ExactAmp& a, const ExactAmp& b) {
    if (a.num == 0 || b.num == 0) return ExactAmp();
    std::int64_t p;
    if (__builtin_mul_overflow(a.num, b.num, &p))
        fail(Errc::Overflow, "exact amplitude numerator exceeds 64 bits in multiplication");
    return ExactAmp(p, a.h2 + b.h2, a.h3 + b.h3);
}

ExactAmp& operator+=(ExactAmp& a, const ExactAmp& b) {
    a = a + b;
    return a;
}

std::string to_string(const ExactAmp& a) {
    std::string s = std::to_string(a.num);
    if (a.h2 != 0) s += " * 2^(-" + std::to_string(a.h2) + "/2)";
    if (a.h3 != 0) s += " * 3^(-" + std::to_string(a.h3) + "/2)";
    return s;
}

Rational::Rational(Int128 n, Int128 d) : num(n), den(d) {
    if (den == 0) fail(Errc::InvalidArgument, "rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    if (num == 0) {
        den = 1;
        return;
    }
    Int128 g = gcd128(num, den);
    num /= g;
    den /= g;
}

double Rational::to_double() const {
    return static_cast<double>(num) / static_cast<double>(den);
}

std::string Rational::to_fraction() const {
    if (den == 1) return int128_to_string(num);
    return int128_to_string(num) + "/" + int128_to_string(den);
}

Rational Rational::parse(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(int128_from_string(text), 1);
    return Rational(int128_from_string(text.substr(0, slash)),
                    int128_from_string(text.substr(slash + 1)));
}

bool operator<(const Rational& a, const Rational& b) {
    // Cross-multiply on reduced fractions; safe for all values produced here.
    return mul_checked(a.num, b.den) < mul_checked(b.num, a.den);
}

Rational operator+(const Rational& a, const Rational& b) {
    // Use lcm of denominators to keep the cross products as small as possible.
    Int128 g = gcd128(a.den, b.den);
    Int128 da = a.den / g;
    Int128 db = b.den / g;
    Int128 n = add_checked(mul_checked(a.num, db), mul_checked(b.num, da));
    Int128 d = mul_checked(a.den, db);
    return Rational(n, d);
}

Rational operator-(const Rational& a, const Rational& b) {
    return a + Rational(-b.num, b.den);
}

Rational operator*(const Rational& a, const Rational& b) {
    // Cross-reduce before multiplying.
    Int128 g1 = gcd128(a.num, b.den);
    Int128 g2 = gcd128(b.num, a.den);
    return Rational(mul_checked(a.num / g1, b.num / g2), mul_checked(a.den / g2, b.den / g1));
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.num == 0) fail(Errc::InvalidArgument, "division by zero rational");
    return a * Rational(b.den, b.num);
}

Rational& operator+=(Rational& a, const Rational& b) {
    a = a + b;
    return a;
}

Rational abs_square_times(const ExactAmp& amp, Int128 extra) {
    auto parts = amp.square_parts();
    return Rational(mul_checked(parts.num2, extra), parts.den);
}

} // namespace railgauge

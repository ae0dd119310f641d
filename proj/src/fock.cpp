#include "railgauge/fock.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <type_traits>

namespace railgauge {

const char* backend_name(Backend backend) {
    switch (backend) {
    case Backend::Float: return "float";
    case Backend::ExactDyadic: return "exact";
    }
    return "float";
}

Backend backend_from_string(const std::string& name) {
    if (name == "float") return Backend::Float;
    if (name == "exact") return Backend::ExactDyadic;
    fail(Errc::InvalidArgument, "unknown backend '" + name + "' (expected float or exact)");
}

AncillaSpec make_ancilla_spec(int n, std::vector<int> signs, double phi) {
    if (n < 1) fail(Errc::InvalidModeCount, "need at least one mode");
    if (static_cast<int>(signs.size()) != n)
        fail(Errc::InvalidArgument, "expected " + std::to_string(n) + " signs, got " +
                                        std::to_string(signs.size()));
    for (int s : signs)
        if (s != 1 && s != -1) fail(Errc::InvalidArgument, "signs must be +1 or -1");
    const double two_pi = 2.0 * std::numbers::pi;
    phi = std::fmod(phi, two_pi);
    if (phi < 0) phi += two_pi;
    AncillaSpec spec;
    spec.n = n;
    spec.signs = std::move(signs);
    spec.phi = phi;
    return spec;
}

namespace {

template <class Amp>
struct AmpOps;

template <>
struct AmpOps<Cd> {
    static Cd one() { return {1.0, 0.0}; }
    static bool is_zero(const Cd& c) { return c.real() == 0.0 && c.imag() == 0.0; }
    static Cd entry(const Interferometer& itf, int j, int k) { return itf.entries(j, k); }
};

template <>
struct AmpOps<Cld> {
    static Cld one() { return {1.0L, 0.0L}; }
    static bool is_zero(const Cld& c) { return c.real() == 0.0L && c.imag() == 0.0L; }
    static Cld entry(const Interferometer& itf, int j, int k) { return itf.entry_hp(j, k); }
};

template <>
struct AmpOps<ExactAmp> {
    static ExactAmp one() { return ExactAmp(1, 0, 0); }
    static bool is_zero(const ExactAmp& a) { return a.is_zero(); }
    static ExactAmp entry(const Interferometer& itf, int j, int k) { return itf.exact_entry(j, k); }
};

template <class Amp>
struct Term {
    std::uint64_t key = 0;
    int degree = 0;
    Amp amp{};
};

template <class Amp>
std::vector<Term<Amp>> to_terms(const FlatMap<Amp>& map, int n) {
    std::vector<Term<Amp>> out;
    out.reserve(map.size());
    map.for_each([&](std::uint64_t key, const Amp& amp) {
        if (AmpOps<Amp>::is_zero(amp)) return;
        out.push_back(Term<Amp>{key, packed_total(key, n), amp});
    });
    std::sort(out.begin(), out.end(), [](const Term<Amp>& a, const Term<Amp>& b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        return a.key < b.key;
    });
    return out;
}

/// Number of n-mode monomials with total degree <= d, saturated — used only
/// to pre-size hash tables.
std::size_t monomial_count_estimate(int n, int d) {
    double c = 1.0; // C(n + d, d)
    for (int i = 1; i <= d; ++i) c = c * (n + i) / i;
    const double cap = 3.0e6;
    return static_cast<std::size_t>(std::min(c, cap)) + 16;
}

template <class Amp>
FlatMap<Amp> sparse_multiply(const FlatMap<Amp>& acc, const std::vector<Term<Amp>>& factor,
                             int n, int max_degree) {
    std::size_t estimate =
        std::min(acc.size() * factor.size() + 16, monomial_count_estimate(n, max_degree));
    FlatMap<Amp> out(estimate);
    acc.for_each([&](std::uint64_t key, const Amp& c) {
        if (AmpOps<Amp>::is_zero(c)) return;
        int deg = packed_total(key, n);
        for (const auto& t : factor) {
            if (deg + t.degree > max_degree) break; // factor is degree-sorted
            out[key + t.key] += c * t.amp;
        }
    });
    return out;
}

template <class Amp>
std::vector<Term<Amp>> linear_form(const Interferometer& itf, int j, int n) {
    int bits = pattern_bits_per_mode(n);
    std::vector<Term<Amp>> lin;
    lin.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        Amp a = AmpOps<Amp>::entry(itf, j, k);
        if (!AmpOps<Amp>::is_zero(a)) lin.push_back(Term<Amp>{1ull << (bits * k), 1, a});
    }
    return lin;
}

/// Image of one input-mode factor polynomial under the substitution,
/// expanded over output modes and degree-sorted.
template <class Amp>
std::vector<Term<Amp>> expand_factor(const Interferometer& itf, int j,
                                     const std::vector<Amp>& coeffs, int n, int max_degree) {
    auto lin = linear_form<Amp>(itf, j, n);
    FlatMap<Amp> expanded;
    if (!coeffs.empty() && !AmpOps<Amp>::is_zero(coeffs[0])) expanded[0] += coeffs[0];
    FlatMap<Amp> power;
    power[0] = AmpOps<Amp>::one();
    int top = std::min(static_cast<int>(coeffs.size()) - 1, max_degree);
    for (int d = 1; d <= top; ++d) {
        power = sparse_multiply(power, lin, n, max_degree);
        if (power.empty()) break;
        if (!AmpOps<Amp>::is_zero(coeffs[d]))
            power.for_each(
                [&](std::uint64_t key, const Amp& amp) { expanded[key] += coeffs[d] * amp; });
    }
    return to_terms(expanded, n);
}

template <class Amp>
void drop_negligible(FockPolynomial<Amp>& poly) {
    if constexpr (std::is_same_v<Amp, ExactAmp>) {
        FlatMap<Amp> kept(poly.terms.size());
        poly.terms.for_each([&](std::uint64_t key, const Amp& c) {
            if (!AmpOps<Amp>::is_zero(c)) kept[key] = c;
        });
        poly.terms = std::move(kept);
    } else {
        using Real = typename Amp::value_type;
        Real max_abs = 0;
        poly.terms.for_each(
            [&](std::uint64_t, const Amp& c) { max_abs = std::max(max_abs, std::abs(c)); });
        Real cut = static_cast<Real>(1e-14) * max_abs;
        FlatMap<Amp> kept(poly.terms.size());
        poly.terms.for_each([&](std::uint64_t key, const Amp& c) {
            if (std::abs(c) > Real(0) && std::abs(c) >= cut) kept[key] = c;
        });
        poly.terms = std::move(kept);
    }
}

} // namespace

namespace {

template <class C>
FockPolynomial<C> input_polynomial_impl(const AncillaSpec& spec) {
    using Real = typename C::value_type;
    int n = spec.n;
    int bits = pattern_bits_per_mode(n);
    FockPolynomial<C> poly;
    poly.n = n;
    poly.max_degree = n;
    const Real inv_sqrt2 = Real(1) / std::sqrt(Real(2));
    const Real phi = static_cast<Real>(spec.phi);
    const C phase = spec.phi == 0.0 ? C{Real(1), Real(0)} : C{std::cos(phi), std::sin(phi)};
    poly.factors.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
        poly.factors[j] = {C{inv_sqrt2, Real(0)},
                           phase * C{static_cast<Real>(spec.signs[j]) * inv_sqrt2, Real(0)}};
    const Real scale = std::pow(Real(2), Real(-0.5) * static_cast<Real>(n));
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        std::uint64_t key = 0;
        int sign = 1;
        int photons = 0;
        for (int j = 0; j < n; ++j) {
            if (mask & (1ull << j)) {
                key |= 1ull << (bits * j);
                sign *= spec.signs[j];
                ++photons;
            }
        }
        poly.terms[key] = static_cast<Real>(sign) * scale * std::pow(phase, photons);
    }
    return poly;
}

} // namespace

FockPolynomial<Cd> input_polynomial(const AncillaSpec& spec) {
    return input_polynomial_impl<Cd>(spec);
}

FockPolynomial<Cld> input_polynomial_hp(const AncillaSpec& spec) {
    return input_polynomial_impl<Cld>(spec);
}

FockPolynomial<ExactAmp> input_polynomial_exact(const AncillaSpec& spec) {
    if (spec.phi != 0.0)
        fail(Errc::InvalidArgument, "the exact backend requires phi = 0");
    int n = spec.n;
    int bits = pattern_bits_per_mode(n);
    FockPolynomial<ExactAmp> poly;
    poly.n = n;
    poly.max_degree = n;
    poly.factors.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
        poly.factors[j] = {ExactAmp(1, 1, 0), ExactAmp(spec.signs[j], 1, 0)};
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        std::uint64_t key = 0;
        int sign = 1;
        for (int j = 0; j < n; ++j) {
            if (mask & (1ull << j)) {
                key |= 1ull << (bits * j);
                sign *= spec.signs[j];
            }
        }
        poly.terms[key] = ExactAmp(sign, n, 0);
    }
    return poly;
}

FockPolynomial<Cd> product_input(int n, int max_degree, std::vector<std::vector<Cd>> factors) {
    if (n < 1) fail(Errc::InvalidModeCount, "need at least one mode");
    if (static_cast<int>(factors.size()) != n)
        fail(Errc::InvalidArgument, "expected one factor polynomial per mode");
    if (max_degree < 0) fail(Errc::InvalidArgument, "negative degree bound");
    FockPolynomial<Cd> poly;
    poly.n = n;
    poly.max_degree = max_degree;
    poly.factors = std::move(factors);
    return poly;
}

template <class Amp>
FockPolynomial<Amp> evolve(const FockPolynomial<Amp>& poly, const Interferometer& itf) {
    if (poly.n != itf.n)
        fail(Errc::DimensionMismatch, "polynomial has " + std::to_string(poly.n) +
                                          " modes, interferometer has " + std::to_string(itf.n));
    if constexpr (std::is_same_v<Amp, ExactAmp>) {
        if (!itf.exact)
            fail(Errc::InvalidArgument, "exact evolution needs an exact-representable unitary");
    }
    int n = poly.n;
    int bits = pattern_bits_per_mode(n);
    if (bits < 63 && poly.max_degree >= (1ll << bits))
        fail(Errc::Overflow, "max_degree " + std::to_string(poly.max_degree) +
                                 " cannot be packed at " + std::to_string(bits) + " bits/mode");

    FockPolynomial<Amp> out;
    out.n = n;
    out.max_degree = poly.max_degree;

    if (poly.factored()) {
        if (static_cast<int>(poly.factors.size()) != n)
            fail(Errc::InvalidArgument, "factored polynomial must carry one factor per mode");
        FlatMap<Amp> acc;
        acc[0] = AmpOps<Amp>::one();
        for (int j = 0; j < n; ++j) {
            auto factor = expand_factor(itf, j, poly.factors[j], n, poly.max_degree);
            acc = sparse_multiply(acc, factor, n, poly.max_degree);
        }
        out.terms = std::move(acc);
    } else {
        // General path: substitute monomial by monomial, caching the powers
        // of each mode's linear form.
        std::vector<std::vector<std::vector<Term<Amp>>>> cache(static_cast<std::size_t>(n));
        auto power_of = [&](int j, int p) -> const std::vector<Term<Amp>>& {
            auto& cp = cache[static_cast<std::size_t>(j)];
            if (cp.empty()) cp.push_back(linear_form<Amp>(itf, j, n));
            while (static_cast<int>(cp.size()) < p) {
                FlatMap<Amp> next;
                for (const auto& a : cp.back())
                    for (const auto& b : cp.front()) {
                        if (a.degree + b.degree > poly.max_degree) continue;
                        next[a.key + b.key] += a.amp * b.amp;
                    }
                cp.push_back(to_terms(next, n));
            }
            return cp[static_cast<std::size_t>(p - 1)];
        };
        FlatMap<Amp> acc(poly.terms.size() * 4 + 16);
        poly.terms.for_each([&](std::uint64_t key, const Amp& c) {
            if (AmpOps<Amp>::is_zero(c)) return;
            ClickPattern exps = unpack_pattern(key, n);
            FlatMap<Amp> cur;
            cur[0] = c;
            for (int j = 0; j < n; ++j)
                if (exps[j] > 0) cur = sparse_multiply(cur, power_of(j, exps[j]), n, poly.max_degree);
            cur.for_each([&](std::uint64_t k2, const Amp& v) { acc[k2] += v; });
        });
        out.terms = std::move(acc);
    }
    drop_negligible(out);
    return out;
}

template <class Amp>
std::vector<PatternProbability<Amp>> pattern_probabilities(const FockPolynomial<Amp>& poly) {
    std::vector<PatternProbability<Amp>> out;
    out.reserve(poly.terms.size());
    poly.terms.for_each([&](std::uint64_t key, const Amp& c) {
        if (AmpOps<Amp>::is_zero(c)) return;
        ClickPattern pat = unpack_pattern(key, poly.n);
        if constexpr (std::is_same_v<Amp, ExactAmp>) {
            Int128 weight = 1;
            for (int i : pat) weight = mul_checked(weight, factorial128(i));
            out.push_back(PatternProbability<Amp>{key, abs_square_times(c, weight)});
        } else {
            typename ProbabilityOf<Amp>::type weight = 1;
            for (int i : pat) weight *= factorial_double(i);
            out.push_back(PatternProbability<Amp>{key, std::norm(c) * weight});
        }
    });
    // Canonical order: ascending photon total, then lexicographic pattern.
    struct Rank {
        std::uint32_t total;
        std::uint64_t revkey;
        std::uint32_t idx;
    };
    std::vector<Rank> ranks(out.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        ranks[i] = Rank{static_cast<std::uint32_t>(packed_total(out[i].key, poly.n)),
                        packed_reverse(out[i].key, poly.n), static_cast<std::uint32_t>(i)};
    std::sort(ranks.begin(), ranks.end(), [](const Rank& a, const Rank& b) {
        if (a.total != b.total) return a.total < b.total;
        return a.revkey < b.revkey;
    });
    std::vector<PatternProbability<Amp>> sorted;
    sorted.reserve(out.size());
    for (const auto& r : ranks) sorted.push_back(std::move(out[r.idx]));
    return sorted;
}

template <class Amp>
typename ProbabilityOf<Amp>::type squared_mass(const FockPolynomial<Amp>& poly) {
    typename ProbabilityOf<Amp>::type sum{};
    poly.terms.for_each([&](std::uint64_t key, const Amp& c) {
        if (AmpOps<Amp>::is_zero(c)) return;
        ClickPattern pat = unpack_pattern(key, poly.n);
        if constexpr (std::is_same_v<Amp, ExactAmp>) {
            Int128 weight = 1;
            for (int i : pat) weight = mul_checked(weight, factorial128(i));
            sum += abs_square_times(c, weight);
        } else {
            typename ProbabilityOf<Amp>::type weight = 1;
            for (int i : pat) weight *= factorial_double(i);
            sum += std::norm(c) * weight;
        }
    });
    return sum;
}

Cd permanent(const Eigen::MatrixXcd& m) {
    if (m.rows() != m.cols())
        fail(Errc::DimensionMismatch, "permanent needs a square matrix");
    int dim = static_cast<int>(m.rows());
    if (dim == 0) return {1.0, 0.0};
    if (dim > 20) fail(Errc::InvalidArgument, "permanent capped at dimension 20");
    // Ryser: perm = (-1)^dim * sum over nonempty column subsets S of
    // (-1)^{|S|} * prod_r (sum_{c in S} M(r, c)), with Gray-code updates so
    // each subset step adjusts the row sums by one column.
    std::vector<Cd> row_sums(static_cast<std::size_t>(dim), Cd{0.0, 0.0});
    Cd total{0.0, 0.0};
    std::uint32_t prev_gray = 0;
    const std::uint32_t count = 1u << dim;
    for (std::uint32_t g = 1; g < count; ++g) {
        std::uint32_t gray = g ^ (g >> 1);
        std::uint32_t diff = gray ^ prev_gray;
        int col = std::countr_zero(diff);
        if (gray & diff)
            for (int r = 0; r < dim; ++r) row_sums[r] += m(r, col);
        else
            for (int r = 0; r < dim; ++r) row_sums[r] -= m(r, col);
        Cd prod{1.0, 0.0};
        for (int r = 0; r < dim; ++r) prod *= row_sums[r];
        if (std::popcount(gray) % 2 == 0)
            total += prod;
        else
            total -= prod;
        prev_gray = gray;
    }
    return (dim % 2 == 0) ? total : -total;
}

Cd amplitude_oracle(const Interferometer& itf, const AncillaSpec& spec,
                    const ClickPattern& pattern) {
    int n = itf.n;
    if (spec.n != n || static_cast<int>(pattern.size()) != n)
        fail(Errc::DimensionMismatch, "pattern and input must both cover " + std::to_string(n) +
                                          " modes");
    int photons = pattern_total(pattern);
    if (photons > n) return {0.0, 0.0}; // at most one photon enters per mode

    std::vector<int> cols;
    cols.reserve(static_cast<std::size_t>(photons));
    for (int k = 0; k < n; ++k)
        for (int c = 0; c < pattern[k]; ++c) cols.push_back(k);

    double weight = 1.0;
    for (int i : pattern) weight *= factorial_double(i);

    Cd sum{0.0, 0.0};
    if (photons == 0) {
        sum = {1.0, 0.0}; // empty permanent
    } else {
        std::vector<int> subset(static_cast<std::size_t>(photons));
        for (int i = 0; i < photons; ++i) subset[static_cast<std::size_t>(i)] = i;
        Eigen::MatrixXcd sub(photons, photons);
        while (true) {
            int sign = 1;
            for (int r = 0; r < photons; ++r) {
                sign *= spec.signs[static_cast<std::size_t>(subset[r])];
                for (int c = 0; c < photons; ++c)
                    sub(r, c) = itf.entries(subset[r], cols[static_cast<std::size_t>(c)]);
            }
            sum += static_cast<double>(sign) * permanent(sub);
            // next lexicographic |photons|-combination of {0..n-1}
            int i = photons - 1;
            while (i >= 0 && subset[static_cast<std::size_t>(i)] == n - photons + i) --i;
            if (i < 0) break;
            ++subset[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < photons; ++j)
                subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    Cd phase = std::polar(1.0, spec.phi * photons);
    return std::pow(2.0, -0.5 * n) * phase * sum / weight;
}

template FockPolynomial<Cd> evolve<Cd>(const FockPolynomial<Cd>&, const Interferometer&);
template FockPolynomial<Cld> evolve<Cld>(const FockPolynomial<Cld>&, const Interferometer&);
template FockPolynomial<ExactAmp> evolve<ExactAmp>(const FockPolynomial<ExactAmp>&,
                                                   const Interferometer&);
template std::vector<PatternProbability<Cd>> pattern_probabilities<Cd>(const FockPolynomial<Cd>&);
template std::vector<PatternProbability<Cld>>
pattern_probabilities<Cld>(const FockPolynomial<Cld>&);
template std::vector<PatternProbability<ExactAmp>>
pattern_probabilities<ExactAmp>(const FockPolynomial<ExactAmp>&);
template typename ProbabilityOf<Cd>::type squared_mass<Cd>(const FockPolynomial<Cd>&);
template typename ProbabilityOf<Cld>::type squared_mass<Cld>(const FockPolynomial<Cld>&);
template typename ProbabilityOf<ExactAmp>::type
squared_mass<ExactAmp>(const FockPolynomial<ExactAmp>&);

} // namespace railgauge

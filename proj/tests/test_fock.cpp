#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "railgauge/fock.hpp"

using namespace railgauge;

namespace {

ExactAmp ecoeff(const FockPolynomial<ExactAmp>& poly, const ClickPattern& pat) {
    const ExactAmp* p = poly.terms.find(pack_pattern(pat));
    return p ? *p : ExactAmp();
}

Cd fcoeff(const FockPolynomial<Cd>& poly, const ClickPattern& pat) {
    const Cd* p = poly.terms.find(pack_pattern(pat));
    return p ? *p : Cd(0.0, 0.0);
}

void check_oracle_matches_evolve(const Interferometer& itf, const AncillaSpec& spec) {
    const auto evolved = evolve(input_polynomial(spec), itf);
    for (const ClickPattern& pat : enumerate_patterns(itf.n, itf.n)) {
        const Cd direct = amplitude_oracle(itf, spec, pat);
        CHECK(std::abs(direct - fcoeff(evolved, pat)) <= 1e-12);
    }
}

} // namespace

TEST_CASE("pattern packing round-trips and orders canonically") {
    const ClickPattern pat = {2, 0, 1, 0};
    const std::uint64_t key = pack_pattern(pat);
    CHECK(unpack_pattern(key, 4) == pat);
    CHECK(packed_total(key, 4) == 3);
    CHECK(pattern_total(pat) == 3);
    CHECK(pattern_to_string(pat) == "(2,0,1,0)");

    // 12 modes pack at 5 bits each; counts up to 31 survive the round trip.
    const ClickPattern wide = {31, 0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 31};
    CHECK(unpack_pattern(pack_pattern(wide), 12) == wide);

    // Reversed keys compare like patterns.
    const ClickPattern a = {0, 2};
    const ClickPattern b = {1, 1};
    CHECK(pattern_less(a, b));
    CHECK(packed_reverse(pack_pattern(a), 2) < packed_reverse(pack_pattern(b), 2));

    CHECK_THROWS_AS(pattern_bits_per_mode(13), Error);
    CHECK_THROWS_AS(pattern_bits_per_mode(0), Error);
}

TEST_CASE("pattern enumeration counts and order") {
    const auto p2 = enumerate_patterns(2, 2);
    REQUIRE(p2.size() == 6); // C(4,2)
    CHECK(p2[0] == ClickPattern{0, 0});
    CHECK(p2[1] == ClickPattern{0, 1});
    CHECK(p2[2] == ClickPattern{1, 0});
    CHECK(p2[3] == ClickPattern{0, 2});
    CHECK(p2[4] == ClickPattern{1, 1});
    CHECK(p2[5] == ClickPattern{2, 0});

    CHECK(enumerate_patterns(3, 3).size() == 20); // C(6,3)
    CHECK(enumerate_patterns(3, 2).size() == 10); // 1 + 3 + 6

    const auto p4 = enumerate_patterns(4, 4);
    CHECK(p4.size() == 70); // C(8,4)
    for (std::size_t i = 1; i < p4.size(); ++i) {
        CHECK(pattern_less(p4[i - 1], p4[i]));
        CHECK_FALSE(pattern_less(p4[i], p4[i - 1]));
    }
}

TEST_CASE("input specifications are validated and the phase is folded") {
    CHECK_THROWS_AS(make_ancilla_spec(3, {1, 1}, 0.0), Error);
    CHECK_THROWS_AS(make_ancilla_spec(2, {1, 2}, 0.0), Error);
    try {
        make_ancilla_spec(0, {}, 0.0);
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::InvalidModeCount);
    }

    const double two_pi = 2.0 * std::numbers::pi;
    CHECK(std::abs(make_ancilla_spec(2, {1, 1}, two_pi).phi) <= 1e-15);
    CHECK(std::abs(make_ancilla_spec(2, {1, 1}, -std::numbers::pi / 2).phi -
                   1.5 * std::numbers::pi) <= 1e-14);
    CHECK(make_ancilla_spec(2, {1, 1}, 0.25).phi == 0.25);
}

TEST_CASE("input polynomials expand to 2^n equal-magnitude terms") {
    const AncillaSpec spec = make_ancilla_spec(3, {-1, 1, 1}, 0.9);
    const auto poly = input_polynomial(spec);
    CHECK(poly.n == 3);
    CHECK(poly.max_degree == 3);
    CHECK(poly.factored());
    CHECK(poly.terms.size() == 8);
    const double mag = std::pow(2.0, -1.5);
    poly.terms.for_each([&](std::uint64_t, const Cd& c) {
        CHECK(std::abs(std::abs(c) - mag) <= 1e-15);
    });
    CHECK(std::abs(squared_mass(poly) - 1.0) <= 1e-14);

    const auto exact = input_polynomial_exact(make_ancilla_spec(2, {1, 1}, 0.0));
    CHECK(exact.terms.size() == 4);
    CHECK(ecoeff(exact, {0, 0}) == ExactAmp(1, 2, 0));
    CHECK(ecoeff(exact, {1, 1}) == ExactAmp(1, 2, 0));
    CHECK(squared_mass(exact) == Rational::of(1));

    CHECK_THROWS_AS(input_polynomial_exact(make_ancilla_spec(2, {1, 1}, 0.5)), Error);
}

TEST_CASE("two-mode Hadamard evolution, exact coefficients frozen by hand") {
    const Interferometer itf = build_green_machine(2);

    const auto plus = evolve(input_polynomial_exact(make_ancilla_spec(2, {1, 1}, 0.0)), itf);
    CHECK(ecoeff(plus, {0, 0}) == ExactAmp(1, 2, 0));  //  1/2
    CHECK(ecoeff(plus, {1, 0}) == ExactAmp(1, 1, 0));  //  1/sqrt(2)
    CHECK(ecoeff(plus, {0, 1}).is_zero());             //  destructive
    CHECK(ecoeff(plus, {2, 0}) == ExactAmp(1, 4, 0));  //  1/4
    CHECK(ecoeff(plus, {0, 2}) == ExactAmp(-1, 4, 0)); // -1/4
    CHECK(ecoeff(plus, {1, 1}).is_zero());
    CHECK(squared_mass(plus) == Rational::of(1));

    const auto minus = evolve(input_polynomial_exact(make_ancilla_spec(2, {-1, 1}, 0.0)), itf);
    CHECK(ecoeff(minus, {0, 0}) == ExactAmp(1, 2, 0));
    CHECK(ecoeff(minus, {1, 0}).is_zero());             // single photon swaps arms
    CHECK(ecoeff(minus, {0, 1}) == ExactAmp(-1, 1, 0));
    CHECK(ecoeff(minus, {2, 0}) == ExactAmp(-1, 4, 0));
    CHECK(ecoeff(minus, {0, 2}) == ExactAmp(1, 4, 0));
    CHECK(squared_mass(minus) == Rational::of(1));
}

TEST_CASE("two-mode pattern probabilities in canonical order") {
    const Interferometer itf = build_green_machine(2);
    const auto plus = evolve(input_polynomial_exact(make_ancilla_spec(2, {1, 1}, 0.0)), itf);
    const auto rows = pattern_probabilities(plus);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].key == pack_pattern({0, 0}));
    CHECK(rows[0].p == Rational::of(1, 4));
    CHECK(rows[1].key == pack_pattern({1, 0}));
    CHECK(rows[1].p == Rational::of(1, 2));
    CHECK(rows[2].key == pack_pattern({0, 2}));
    CHECK(rows[2].p == Rational::of(1, 8)); // |1/4|^2 * 2!
    CHECK(rows[3].key == pack_pattern({2, 0}));
    CHECK(rows[3].p == Rational::of(1, 8));
}

TEST_CASE("four-mode Hadamard evolution, exact spot checks frozen by hand") {
    const Interferometer itf = build_green_machine(4);

    const auto plus = evolve(input_polynomial_exact(make_ancilla_spec(4, {1, 1, 1, 1}, 0.0)), itf);
    CHECK(ecoeff(plus, {0, 0, 0, 0}) == ExactAmp(1, 4, 0));  // 1/4
    CHECK(ecoeff(plus, {1, 0, 0, 0}) == ExactAmp(1, 2, 0));  // 1/2: columns 2..4 cancel
    CHECK(ecoeff(plus, {0, 1, 0, 0}).is_zero());
    CHECK(ecoeff(plus, {0, 0, 1, 0}).is_zero());
    CHECK(ecoeff(plus, {4, 0, 0, 0}) == ExactAmp(1, 12, 0)); // (1/4)(1/2)^4 = 1/64
    CHECK(squared_mass(plus) == Rational::of(1));

    const auto minus =
        evolve(input_polynomial_exact(make_ancilla_spec(4, {-1, 1, 1, 1}, 0.0)), itf);
    CHECK(ecoeff(minus, {0, 0, 0, 0}) == ExactAmp(1, 4, 0));
    CHECK(ecoeff(minus, {1, 0, 0, 0}) == ExactAmp(1, 4, 0));
    CHECK(ecoeff(minus, {0, 1, 0, 0}) == ExactAmp(-1, 4, 0));
    CHECK(ecoeff(minus, {3, 0, 0, 0}) == ExactAmp(-1, 8, 0));
    CHECK(ecoeff(minus, {0, 3, 0, 0}) == ExactAmp(1, 8, 0));
    CHECK(ecoeff(minus, {1, 2, 0, 0}) == ExactAmp(1, 8, 0));
    CHECK(ecoeff(minus, {2, 1, 0, 0}) == ExactAmp(-1, 8, 0));
    CHECK(ecoeff(minus, {0, 2, 1, 0}) == ExactAmp(-1, 8, 0));
    CHECK(ecoeff(minus, {0, 1, 1, 1}) == ExactAmp(-1, 6, 0)); // -1/8
    CHECK(ecoeff(minus, {1, 0, 1, 1}) == ExactAmp(1, 6, 0));
    CHECK(squared_mass(minus) == Rational::of(1));
}

TEST_CASE("float evolution conserves probability mass") {
    const Interferometer q5 = build_qft(5);
    const auto a = evolve(input_polynomial(make_ancilla_spec(5, {-1, 1, 1, 1, 1}, 0.7)), q5);
    CHECK(std::abs(squared_mass(a) - 1.0) <= 1e-14);

    const Interferometer g4 = build_green_machine(4);
    const auto b = evolve(input_polynomial(make_ancilla_spec(4, {1, 1, 1, 1}, 0.0)), g4);
    CHECK(std::abs(squared_mass(b) - 1.0) <= 1e-14);
    // The float image of an exactly-destructive coefficient stays pinned to zero.
    CHECK(fcoeff(b, {0, 1, 0, 0}) == Cd(0.0, 0.0));
}

TEST_CASE("permanents of small frozen matrices") {
    Eigen::MatrixXcd m1(1, 1);
    m1 << Cd(2.0, 3.0);
    CHECK(permanent(m1) == Cd(2.0, 3.0));

    Eigen::MatrixXcd m2(2, 2);
    m2 << 1.0, 2.0, 3.0, 4.0; // perm = 1*4 + 2*3
    CHECK(std::abs(permanent(m2) - Cd(10.0, 0.0)) <= 1e-13);

    Eigen::MatrixXcd rot(2, 2);
    rot << Cd(0, 1), Cd(1, 0), Cd(1, 0), Cd(0, 1); // i*i + 1*1 = 0
    CHECK(std::abs(permanent(rot)) <= 1e-15);

    CHECK(std::abs(permanent(Eigen::MatrixXcd::Ones(3, 3)) - Cd(6.0, 0.0)) <= 1e-13);
    CHECK(std::abs(permanent(Eigen::MatrixXcd::Identity(3, 3)) - Cd(1.0, 0.0)) <= 1e-13);
    CHECK(permanent(Eigen::MatrixXcd(0, 0)) == Cd(1.0, 0.0));

    CHECK_THROWS_AS(permanent(Eigen::MatrixXcd::Ones(2, 3)), Error);
    CHECK_THROWS_AS(permanent(Eigen::MatrixXcd::Identity(21, 21)), Error);
}

TEST_CASE("permanent-based amplitudes agree with polynomial evolution") {
    for (int sign : {1, -1}) {
        std::vector<int> signs4 = {sign, 1, 1, 1};
        check_oracle_matches_evolve(build_green_machine(4),
                                    make_ancilla_spec(4, signs4, 0.0));
        check_oracle_matches_evolve(build_qft(4), make_ancilla_spec(4, signs4, 0.0));
    }
    // A non-trivial shared phase on an odd mode count.
    check_oracle_matches_evolve(build_qft(3), make_ancilla_spec(3, {-1, 1, 1}, 1.234));

    // One value pinned by hand: three spread photons under the minus sign.
    const Cd got = amplitude_oracle(build_green_machine(4),
                                    make_ancilla_spec(4, {-1, 1, 1, 1}, 0.0),
                                    ClickPattern{0, 1, 1, 1});
    CHECK(std::abs(got - Cd(-0.125, 0.0)) <= 1e-12);
}

TEST_CASE("evolution rejects mismatched or unrepresentable requests") {
    const auto poly2 = input_polynomial_exact(make_ancilla_spec(2, {1, 1}, 0.0));
    try {
        evolve(poly2, build_green_machine(4));
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::DimensionMismatch);
    }
    try {
        evolve(poly2, build_qft(2)); // exact amplitudes, trigonometric unitary
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::InvalidArgument);
    }

    // 12 modes pack at 5 bits; a degree-32 bound cannot be represented.
    std::vector<std::vector<Cd>> factors(12, std::vector<Cd>{Cd(1.0, 0.0), Cd(1.0, 0.0)});
    const auto wide = product_input(12, 32, std::move(factors));
    try {
        evolve(wide, build_hadamard12());
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::Overflow);
    }

    CHECK_THROWS_AS(product_input(3, 2, {{Cd(1, 0)}, {Cd(1, 0)}}), Error);
    CHECK_THROWS_AS(product_input(2, -1, {{Cd(1, 0)}, {Cd(1, 0)}}), Error);
}

TEST_CASE("backend names round-trip") {
    CHECK(backend_name(Backend::Float) == std::string("float"));
    CHECK(backend_name(Backend::ExactDyadic) == std::string("exact"));
    CHECK(backend_from_string("float") == Backend::Float);
    CHECK(backend_from_string("exact") == Backend::ExactDyadic);
    CHECK_THROWS_AS(backend_from_string("mpfr"), Error);
}

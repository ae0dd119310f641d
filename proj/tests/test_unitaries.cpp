#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cmath>
#include <complex>
#include <numbers>

#include "railgauge/interferometer.hpp"

using namespace railgauge;

TEST_CASE("kind names round-trip") {
    CHECK(kind_name(Kind::QFT) == std::string("qft"));
    CHECK(kind_name(Kind::GreenMachine) == std::string("gm"));
    CHECK(kind_name(Kind::Hadamard12) == std::string("hadamard12"));
    CHECK(kind_from_string("qft") == Kind::QFT);
    CHECK(kind_from_string("gm") == Kind::GreenMachine);
    CHECK(kind_from_string("hadamard12") == Kind::Hadamard12);
    CHECK(kind_from_string("custom") == Kind::Custom);
    CHECK_THROWS_AS(kind_from_string("dft"), Error);
}

TEST_CASE("power-of-two helpers") {
    CHECK(is_power_of_two(1));
    CHECK(is_power_of_two(8));
    CHECK_FALSE(is_power_of_two(0));
    CHECK_FALSE(is_power_of_two(12));
    CHECK(log2_exact(16) == 4);
    try {
        log2_exact(6);
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NotPowerOfTwo);
    }
}

TEST_CASE("Fourier matrix entries match their definition") {
    for (int n : {2, 3, 4, 5, 6, 7, 8}) {
        const Interferometer itf = build_qft(n);
        CHECK(itf.n == n);
        CHECK(itf.kind == Kind::QFT);
        CHECK_FALSE(itf.exact);
        CHECK(itf.mesh.empty());
        REQUIRE(itf.entries.rows() == n);
        REQUIRE(itf.entries.cols() == n);
        const double scale = 1.0 / std::sqrt(static_cast<double>(n));
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                const double theta =
                    2.0 * std::numbers::pi * static_cast<double>((j * k) % n) / n;
                const std::complex<double> want = std::polar(scale, theta);
                CHECK(std::abs(itf.entries(j, k) - want) <= 1e-15);
            }
        }
        CHECK(unitarity_error(itf.entries) <= 1e-14);
        // Exact representation is (correctly) refused.
        CHECK_THROWS_AS(itf.exact_entry(0, 0), Error);
    }
}

TEST_CASE("Fourier quarter turns carry no trigonometric residue") {
    const Interferometer f4 = build_qft(4);
    CHECK(f4.entries(0, 0) == std::complex<double>(0.5, 0.0));
    CHECK(f4.entries(1, 1) == std::complex<double>(0.0, 0.5));
    CHECK(f4.entries(2, 2) == std::complex<double>(0.5, 0.0));  // omega^4 = 1
    CHECK(f4.entries(1, 2) == std::complex<double>(-0.5, 0.0)); // omega^2 = -1
    CHECK(f4.entries(1, 3) == std::complex<double>(0.0, -0.5)); // omega^3 = -i
    CHECK(f4.entries(3, 3) == std::complex<double>(0.0, 0.5));  // omega^9 = i

    const Interferometer f2 = build_qft(2);
    const double r = std::sqrt(0.5); // the correctly rounded 1/sqrt(2)
    CHECK(f2.entries(0, 0) == std::complex<double>(r, 0.0));
    CHECK(f2.entries(1, 1) == std::complex<double>(-r, 0.0));
    CHECK(f2.entries(0, 1).imag() == 0.0);

    // n = 8 has quarter turns at jk multiples of 2 and true trig elsewhere.
    const Interferometer f8 = build_qft(8);
    CHECK(f8.entries(1, 2).real() == 0.0); // omega^2 = i exactly
    CHECK(f8.entries(1, 4).imag() == 0.0); // omega^4 = -1 exactly
}

TEST_CASE("qft rejects fewer than 2 modes") {
    try {
        build_qft(1);
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::InvalidModeCount);
    }
}

TEST_CASE("Hadamard interferometer follows the Sylvester sign rule") {
    for (int n : {2, 4, 8, 16}) {
        const Interferometer itf = build_green_machine(n);
        const int levels = log2_exact(n);
        CHECK(itf.exact);
        CHECK(itf.kind == Kind::GreenMachine);
        CHECK(itf.exact_entries.is_exactly_orthogonal());
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const int sign =
                    (std::popcount(static_cast<unsigned>(j) & static_cast<unsigned>(k)) % 2 == 0)
                        ? 1
                        : -1;
                CHECK(itf.exact_entry(j, k) == ExactAmp(sign, levels, 0));
            }
        CHECK(unitarity_error(itf.entries) <= 1e-14);
    }
}

TEST_CASE("Hadamard block recursion holds exactly") {
    const Interferometer big = build_green_machine(8);
    const Interferometer half = build_green_machine(4);
    const ExactAmp inv_sqrt2(1, 1, 0);
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
            const ExactAmp u = half.exact_entry(j, k) * inv_sqrt2;
            CHECK(big.exact_entry(j, k) == u);
            CHECK(big.exact_entry(j, k + 4) == u);
            CHECK(big.exact_entry(j + 4, k) == u);
            CHECK(big.exact_entry(j + 4, k + 4) == -u);
        }
}

TEST_CASE("Hadamard sizes must be powers of two") {
    try {
        build_green_machine(6);
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NotPowerOfTwo);
    }
    CHECK_THROWS_AS(build_green_machine(0), Error);
}

TEST_CASE("splitter mesh layout: half meshes side by side, then the long pairs") {
    const auto mesh8 = build_gm_mesh(8);
    REQUIRE(mesh8.size() == 12); // (n/2) * log2(n)
    for (const auto& bs : mesh8) {
        CHECK(bs.port_a >= 1);
        CHECK(bs.port_b <= 8);
        CHECK(bs.port_b - bs.port_a == (1 << (bs.layer - 1)));
    }
    // Layer 1 pairs neighbors, the last layer pairs i with i + n/2.
    CHECK(mesh8[0].port_a == 1);
    CHECK(mesh8[0].port_b == 2);
    CHECK(mesh8.back().layer == 3);
    CHECK(mesh8.back().port_a == 4);
    CHECK(mesh8.back().port_b == 8);

    const auto mesh2 = build_gm_mesh(2);
    REQUIRE(mesh2.size() == 1);
    CHECK(mesh2[0].port_a == 1);
    CHECK(mesh2[0].port_b == 2);
}

TEST_CASE("composing the mesh reproduces the Hadamard matrix exactly") {
    for (int n : {2, 4, 8}) {
        const Interferometer direct = build_green_machine(n);
        const Interferometer meshed = apply_mesh(direct.mesh, n);
        REQUIRE(meshed.exact);
        CHECK(meshed.exact_entries == direct.exact_entries);
    }
}

TEST_CASE("irregular meshes stay exact while the sums align") {
    // (1,2) then (2,3): every amplitude addition pairs with a zero, so the
    // composition never leaves the exact field even off the Hadamard family.
    const Interferometer itf = apply_mesh({{1, 1, 2}, {2, 2, 3}}, 3);
    REQUIRE(itf.exact);
    CHECK(itf.exact_entry(0, 0) == ExactAmp(1, 1, 0));
    CHECK(itf.exact_entry(0, 1) == ExactAmp(1, 2, 0));
    CHECK(itf.exact_entry(2, 1) == ExactAmp(1, 1, 0));
    CHECK(itf.exact_entry(2, 2) == ExactAmp(-1, 1, 0));
    CHECK(itf.exact_entries.is_exactly_orthogonal());
}

TEST_CASE("mesh composition falls back to floats when scales clash") {
    // After (1,2),(2,3) column 1 holds 1/sqrt(2) next to column 2's 1/2;
    // a further (1,2) splitter adds them, which no exact amplitude can
    // represent, so the float path takes over.
    std::vector<BeamSplitter> mesh = {{1, 1, 2}, {2, 2, 3}, {3, 1, 2}};
    const Interferometer itf = apply_mesh(mesh, 3);
    CHECK_FALSE(itf.exact);
    CHECK(itf.n == 3);
    CHECK(itf.kind == Kind::Custom);
    CHECK(unitarity_error(itf.entries) <= 1e-15);
    const double r2 = std::sqrt(2.0);
    CHECK(std::abs(itf.entries(0, 0) - std::complex<double>((2.0 + r2) / 4.0, 0.0)) <= 1e-15);
    CHECK(std::abs(itf.entries(1, 0) - std::complex<double>((2.0 - r2) / 4.0, 0.0)) <= 1e-15);
    CHECK(std::abs(itf.entries(2, 2) - std::complex<double>(-1.0 / r2, 0.0)) <= 1e-15);
    // The long-double rendering exists on the fallback path too, and the
    // double matrix is its rounded image.
    REQUIRE(itf.entries_hp.size() == 9);
    CHECK(itf.entries(0, 1).real() == static_cast<double>(itf.entry_hp(0, 1).real()));
}

TEST_CASE("mesh port validation") {
    try {
        apply_mesh({{1, 0, 2}}, 4);
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::InvalidPort);
    }
    CHECK_THROWS_AS(apply_mesh({{1, 1, 5}}, 4), Error);
    CHECK_THROWS_AS(apply_mesh({{1, 2, 2}}, 4), Error);
}

TEST_CASE("the fixed 12-mode Hadamard") {
    const Interferometer itf = build_hadamard12();
    CHECK(itf.n == 12);
    CHECK(itf.kind == Kind::Hadamard12);
    REQUIRE(itf.exact);
    CHECK(itf.exact_entries.is_exactly_orthogonal());
    CHECK(itf.mesh.empty());

    // Every entry is +-1/sqrt(12); first row and first column all +.
    const ExactAmp plus(1, 2, 1);
    for (int j = 0; j < 12; ++j) {
        CHECK(itf.exact_entry(0, j) == plus);
        CHECK(itf.exact_entry(j, 0) == plus);
        for (int k = 0; k < 12; ++k) {
            const ExactAmp e = itf.exact_entry(j, k);
            CHECK((e == plus || e == -plus));
        }
    }

    // Rows 2..12 are cyclic shifts of one sign vector over columns 2..12.
    for (int j = 1; j <= 10; ++j)
        for (int k = 1; k <= 11; ++k)
            CHECK(itf.exact_entry(j + 1, 1 + (k % 11)) == itf.exact_entry(j, k));

    // It is genuinely not symmetric (unlike the Sylvester family).
    bool symmetric = true;
    for (int j = 0; j < 12 && symmetric; ++j)
        for (int k = 0; k < 12 && symmetric; ++k)
            if (!(itf.exact_entry(j, k) == itf.exact_entry(k, j))) symmetric = false;
    CHECK_FALSE(symmetric);

    CHECK(unitarity_error(itf.entries) <= 1e-14);
}

TEST_CASE("double entries are the rounded image of the long-double entries") {
    for (const Interferometer& itf :
         {build_qft(5), build_green_machine(4), build_hadamard12()}) {
        REQUIRE(itf.entries_hp.size() == itf.entries.size());
        for (int j = 0; j < itf.n; ++j)
            for (int k = 0; k < itf.n; ++k) {
                const std::complex<long double> hp = itf.entry_hp(j, k);
                CHECK(itf.entries(j, k).real() == static_cast<double>(hp.real()));
                CHECK(itf.entries(j, k).imag() == static_cast<double>(hp.imag()));
            }
    }
}

TEST_CASE("exact matrices compare and convert consistently") {
    ExactMatrix m = ExactMatrix::identity(3);
    CHECK(m.is_exactly_orthogonal());
    CHECK(m == ExactMatrix::identity(3));
    m.at(0, 0) = ExactAmp(1, 1, 0);
    CHECK_FALSE(m.is_exactly_orthogonal());
    CHECK_FALSE(m == ExactMatrix::identity(3));

    const Eigen::MatrixXcd c = build_green_machine(2).exact_entries.to_complex();
    const double r = std::sqrt(0.5);
    CHECK(std::abs(c(0, 0).real() - r) <= 1e-15);
    CHECK(std::abs(c(1, 1).real() + r) <= 1e-15);
    CHECK(c(0, 1).imag() == 0.0);
}

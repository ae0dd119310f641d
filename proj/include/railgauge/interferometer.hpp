#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <vector>

#include "railgauge/errors.hpp"
#include "railgauge/exact.hpp"

namespace railgauge {

enum class Kind { QFT, GreenMachine, Hadamard12, Custom };

/// Extended-precision complex matrix used to build unitaries: entries are
/// produced in long double so the float evolution engine's double-rounded
/// results match the mathematically exact values to the last printed digit.
using MatrixXcld = Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic>;

/// Canonical lowercase names used on every external surface
/// ("qft", "gm", "hadamard12", "custom").
const char* kind_name(Kind kind);
Kind kind_from_string(const std::string& name);

/// 50-50 splitter between two modes (1-based ports):
/// a_pa^+ -> (b_pa^+ + b_pb^+)/sqrt(2),  a_pb^+ -> (b_pa^+ - b_pb^+)/sqrt(2).
/// The block is real on purpose: the recursive Hadamard construction needs
/// sign-only interference.
struct BeamSplitter {
    int layer = 1;
    int port_a = 1;
    int port_b = 2;
};

/// Dense n x n matrix of exact amplitudes; just enough linear algebra for
/// composing beam-splitter meshes and checking unitarity without rounding.
class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    static ExactMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    ExactAmp& at(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    const ExactAmp& at(int r, int c) const {
        return data_[static_cast<std::size_t>(r) * cols_ + c];
    }

    /// In-place right-multiplication by the splitter block on 0-based
    /// columns (ca, cb): col_ca' = (col_ca + col_cb)/sqrt(2),
    /// col_cb' = (col_ca - col_cb)/sqrt(2).
    void apply_splitter_columns(int ca, int cb);

    Eigen::MatrixXcd to_complex() const;
    MatrixXcld to_complex_hp() const;

    /// True iff M * M^T equals the identity exactly.
    bool is_exactly_orthogonal() const;

    friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<ExactAmp> data_;
};

/// An n-mode interferometer. `entries` (row j = image of input mode j over
/// the output modes) is always present; matrices whose entries live in the
/// exact amplitude field additionally carry `exact_entries`. The builders
/// also fill `entries_hp`, a long-double rendering of the same matrix, and
/// `entries` is derived from the most precise representation available so
/// the backends can never drift apart.
struct Interferometer {
    int n = 0;
    Kind kind = Kind::Custom;
    Eigen::MatrixXcd entries;
    MatrixXcld entries_hp; // may be empty for hand-assembled instances
    std::vector<BeamSplitter> mesh; // empty when no mesh decomposition applies
    bool exact = false;
    ExactMatrix exact_entries;

    ExactAmp exact_entry(int j, int k) const {
        if (!exact) fail(Errc::InvalidArgument, "interferometer has no exact representation");
        return exact_entries.at(j, k);
    }

    /// Long-double entry; widens the double entry when no high-precision
    /// matrix was stored (hand-assembled instances).
    std::complex<long double> entry_hp(int j, int k) const {
        if (entries_hp.size() != 0) return entries_hp(j, k);
        const std::complex<double> e = entries(j, k);
        return {e.real(), e.imag()};
    }
};

/// Fourier interferometer: entries omega^{(j-1)(k-1)}/sqrt(n) with
/// omega = exp(2*pi*i/n). Quarter-turn powers are produced exactly so the
/// n=2 and n=4 cases carry no spurious imaginary parts.
Interferometer build_qft(int n);

/// Power-of-two Hadamard interferometer via the Sylvester block recursion
/// U_n = [[U_{n/2}, U_{n/2}], [U_{n/2}, -U_{n/2}]]/sqrt(2); all entries are
/// +-1/sqrt(n). Carries both the exact representation and its splitter mesh.
Interferometer build_green_machine(int n);

/// The splitter mesh realizing build_green_machine(n): log2(n) layers of n/2
/// splitters; layers 1..log2(n)-1 are the two half-size meshes side by side
/// and the last layer pairs port i with port i + n/2.
std::vector<BeamSplitter> build_gm_mesh(int n);

/// The fixed 12-mode Hadamard interferometer (not symmetric; rows 2..12 are
/// cyclic shifts of one sign vector), entries +-1/sqrt(12), exact backend.
Interferometer build_hadamard12();

/// Composes the splitter blocks onto the identity in sequence order.
/// Composition stays in exact arithmetic when every intermediate entry is
/// representable (true for every Hadamard-type mesh) and falls back to
/// floating point otherwise.
Interferometer apply_mesh(const std::vector<BeamSplitter>& mesh, int n);

/// max |(U * U^+ - I)_{jk}|.
double unitarity_error(const Eigen::MatrixXcd& u);

bool is_power_of_two(int n);
int log2_exact(int n);

} // namespace railgauge

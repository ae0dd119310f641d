#include "railgauge/interferometer.hpp"

#include <cmath>
#include <numbers>

namespace railgauge {

const char* kind_name(Kind kind) {
    switch (kind) {
    case Kind::QFT: return "qft";
    case Kind::GreenMachine: return "gm";
    case Kind::Hadamard12: return "hadamard12";
    case Kind::Custom: return "custom";
    }
    return "custom";
}

Kind kind_from_string(const std::string& name) {
    if (name == "qft") return Kind::QFT;
    if (name == "gm") return Kind::GreenMachine;
    if (name == "hadamard12") return Kind::Hadamard12;
    if (name == "custom") return Kind::Custom;
    fail(Errc::InvalidArgument, "unknown interferometer kind '" + name +
                                    "' (expected qft, gm, hadamard12, or custom)");
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

int log2_exact(int n) {
    if (!is_power_of_two(n)) fail(Errc::NotPowerOfTwo, std::to_string(n) + " is not a power of 2");
    int k = 0;
    while ((1 << k) < n) ++k;
    return k;
}

ExactMatrix ExactMatrix::identity(int n) {
    ExactMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = ExactAmp(1, 0, 0);
    return m;
}

void ExactMatrix::apply_splitter_columns(int ca, int cb) {
    const ExactAmp inv_sqrt2(1, 1, 0);
    for (int r = 0; r < rows_; ++r) {
        ExactAmp a = at(r, ca);
        ExactAmp b = at(r, cb);
        at(r, ca) = (a + b) * inv_sqrt2;
        at(r, cb) = (a - b) * inv_sqrt2;
    }
}

Eigen::MatrixXcd ExactMatrix::to_complex() const {
    Eigen::MatrixXcd m(rows_, cols_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) m(r, c) = std::complex<double>(at(r, c).to_double(), 0.0);
    return m;
}

MatrixXcld ExactMatrix::to_complex_hp() const {
    MatrixXcld m(rows_, cols_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c)
            m(r, c) = std::complex<long double>(at(r, c).to_long_double(), 0.0L);
    return m;
}

bool ExactMatrix::is_exactly_orthogonal() const {
    if (rows_ != cols_) return false;
    const ExactAmp one(1, 0, 0);
    for (int r = 0; r < rows_; ++r) {
        for (int s = r; s < rows_; ++s) {
            ExactAmp dot;
            for (int c = 0; c < cols_; ++c) dot += at(r, c) * at(s, c);
            if (dot != (r == s ? one : ExactAmp())) return false;
        }
    }
    return true;
}

namespace {

void require_mode_count(int n, int minimum) {
    if (n < minimum)
        fail(Errc::InvalidModeCount,
             "need at least " + std::to_string(minimum) + " modes, got " + std::to_string(n));
}

Eigen::MatrixXcd narrow(const MatrixXcld& m) {
    Eigen::MatrixXcd out(m.rows(), m.cols());
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            out(r, c) = std::complex<double>(static_cast<double>(m(r, c).real()),
                                             static_cast<double>(m(r, c).imag()));
    return out;
}

} // namespace

Interferometer build_qft(int n) {
    require_mode_count(n, 2);
    Interferometer itf;
    itf.n = n;
    itf.kind = Kind::QFT;
    itf.entries_hp.resize(n, n);
    const long double scale = 1.0L / std::sqrt(static_cast<long double>(n));
    const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            long long r = (static_cast<long long>(j) * k) % n;
            std::complex<long double> w;
            // Exact quarter turns avoid ~1e-16 imaginary residue at n = 2, 4.
            if (4 * r % n == 0) {
                switch (4 * r / n) {
                case 0: w = {1, 0}; break;
                case 1: w = {0, 1}; break;
                case 2: w = {-1, 0}; break;
                default: w = {0, -1}; break;
                }
            } else {
                long double theta = two_pi * static_cast<long double>(r) / n;
                w = {std::cos(theta), std::sin(theta)};
            }
            itf.entries_hp(j, k) = scale * w;
        }
    }
    itf.entries = narrow(itf.entries_hp);
    return itf;
}

Interferometer build_green_machine(int n) {
    require_mode_count(n, 2);
    int levels = log2_exact(n);
    // Sylvester sign recursion on integers, scaled once at the end.
    Eigen::MatrixXi signs = Eigen::MatrixXi::Ones(1, 1);
    for (int l = 0; l < levels; ++l) {
        int half = signs.rows();
        Eigen::MatrixXi next(2 * half, 2 * half);
        next.topLeftCorner(half, half) = signs;
        next.topRightCorner(half, half) = signs;
        next.bottomLeftCorner(half, half) = signs;
        next.bottomRightCorner(half, half) = -signs;
        signs = std::move(next);
    }
    Interferometer itf;
    itf.n = n;
    itf.kind = Kind::GreenMachine;
    itf.exact = true;
    itf.exact_entries = ExactMatrix(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            itf.exact_entries.at(j, k) = ExactAmp(signs(j, k), levels, 0);
    itf.entries_hp = itf.exact_entries.to_complex_hp();
    itf.entries = narrow(itf.entries_hp);
    itf.mesh = build_gm_mesh(n);
    return itf;
}

std::vector<BeamSplitter> build_gm_mesh(int n) {
    require_mode_count(n, 2);
    int levels = log2_exact(n);
    // Layer l pairs ports that differ in bit (l-1): its blocks of size 2^l
    // are exactly the half-size meshes of the recursion, and the final layer
    // pairs i with i + n/2.
    std::vector<BeamSplitter> mesh;
    mesh.reserve(static_cast<std::size_t>(n / 2) * levels);
    for (int layer = 1; layer <= levels; ++layer) {
        int stride = 1 << (layer - 1);
        for (int base = 0; base < n; base += 2 * stride)
            for (int offset = 0; offset < stride; ++offset) {
                BeamSplitter bs;
                bs.layer = layer;
                bs.port_a = base + offset + 1;
                bs.port_b = base + offset + stride + 1;
                mesh.push_back(bs);
            }
    }
    return mesh;
}

Interferometer build_hadamard12() {
    // Rows 2..12 share one sign vector cyclically shifted through columns
    // 2..12; row 1 and column 1 are all +.
    static const char* const rows[12] = {
        "++++++++++++",
        "+-+-+++---+-",
        "+--+-+++---+",
        "++--+-+++---",
        "+-+--+-+++--",
        "+--+--+-+++-",
        "+---+--+-+++",
        "++---+--+-++",
        "+++---+--+-+",
        "++++---+--+-",
        "+-+++---+--+",
        "++-+++---+--",
    };
    Interferometer itf;
    itf.n = 12;
    itf.kind = Kind::Hadamard12;
    itf.exact = true;
    itf.exact_entries = ExactMatrix(12, 12);
    for (int j = 0; j < 12; ++j)
        for (int k = 0; k < 12; ++k)
            itf.exact_entries.at(j, k) = ExactAmp(rows[j][k] == '+' ? 1 : -1, 2, 1);
    itf.entries_hp = itf.exact_entries.to_complex_hp();
    itf.entries = narrow(itf.entries_hp);
    return itf;
}

Interferometer apply_mesh(const std::vector<BeamSplitter>& mesh, int n) {
    require_mode_count(n, 1);
    for (const auto& bs : mesh) {
        if (bs.port_a < 1 || bs.port_a > n || bs.port_b < 1 || bs.port_b > n ||
            bs.port_a == bs.port_b)
            fail(Errc::InvalidPort, "splitter ports (" + std::to_string(bs.port_a) + "," +
                                        std::to_string(bs.port_b) + ") invalid for " +
                                        std::to_string(n) + " modes");
    }
    Interferometer itf;
    itf.n = n;
    itf.kind = Kind::Custom;
    itf.mesh = mesh;
    try {
        ExactMatrix m = ExactMatrix::identity(n);
        for (const auto& bs : mesh) m.apply_splitter_columns(bs.port_a - 1, bs.port_b - 1);
        itf.exact = true;
        itf.exact_entries = std::move(m);
        itf.entries_hp = itf.exact_entries.to_complex_hp();
    } catch (const Error&) {
        // Some intermediate sum left the exact amplitude field (possible for
        // hand-written meshes where a port skips a layer); compose in
        // long-double floats.
        const long double inv_sqrt2 = 1.0L / std::sqrt(2.0L);
        MatrixXcld u = MatrixXcld::Identity(n, n);
        for (const auto& bs : mesh) {
            const auto a = u.col(bs.port_a - 1).eval();
            const auto b = u.col(bs.port_b - 1).eval();
            u.col(bs.port_a - 1) = (a + b) * inv_sqrt2;
            u.col(bs.port_b - 1) = (a - b) * inv_sqrt2;
        }
        itf.exact = false;
        itf.entries_hp = std::move(u);
    }
    itf.entries = narrow(itf.entries_hp);
    return itf;
}

double unitarity_error(const Eigen::MatrixXcd& u) {
    Eigen::MatrixXcd defect =
        u * u.adjoint() - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
    return defect.cwiseAbs().maxCoeff();
}

} // namespace railgauge

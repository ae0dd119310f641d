#pragma once

#include <stdexcept>
#include <string>

namespace railgauge {

/// Machine-readable failure categories surfaced by the library API.
enum class Errc {
    InvalidModeCount,   // mode count outside a builder's supported range
    NotPowerOfTwo,      // Green Machine requested for a non power-of-two size
    InvalidPort,        // beam-splitter port outside [1, n] or degenerate pair
    DimensionMismatch,  // polynomial / unitary / pattern sizes disagree
    InvalidProbability, // negative probability fed to the classifier
    InvalidAmplitude,   // zero coherent amplitude where a nonzero one is required
    NotDiscriminating,  // coherent amplitude that yields no unambiguous patterns
    ExactScaleMismatch, // exact amplitudes with incompatible radical scales
    Overflow,           // checked integer arithmetic exceeded 128 bits
    InvalidArgument,    // anything else rejected at the API boundary
};

const char* errc_name(Errc code);

/// Exception carrying an Errc; all library errors are reported through this type.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace railgauge

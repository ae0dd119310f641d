#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "railgauge/errors.hpp"

namespace railgauge {

/// Photon counts per output mode, e.g. {2, 0, 1, 0}.
using ClickPattern = std::vector<int>;

/// Bit width per mode when packing an n-mode occupancy vector into 64 bits.
inline int pattern_bits_per_mode(int n_modes) {
    if (n_modes < 1 || n_modes > 12)
        fail(Errc::InvalidModeCount,
             "mode occupancies pack into 64 bits only for 1..12 modes, got " +
                 std::to_string(n_modes));
    return 64 / n_modes;
}

/// Packs mode occupancies into a single key (mode 0 in the low bits).
/// Each count must fit in 64/n bits; with n <= 12 that is at least 5 bits,
/// i.e. counts up to 31 always fit; fewer modes allow far larger counts.
std::uint64_t pack_pattern(const ClickPattern& pattern);

ClickPattern unpack_pattern(std::uint64_t key, int n_modes);

/// Sum of occupancies.
int pattern_total(const ClickPattern& pattern);

/// Sum of occupancies straight from a packed key.
int packed_total(std::uint64_t key, int n_modes);

/// Key with mode 0 in the most significant position, so that comparing
/// reversed keys numerically compares patterns lexicographically.
std::uint64_t packed_reverse(std::uint64_t key, int n_modes);

/// "(2,0,1,0)" rendering used in reports and error messages.
std::string pattern_to_string(const ClickPattern& pattern);

/// All n-mode patterns with total photon number <= max_total, in canonical
/// order: ascending total first, then lexicographically ascending. There are
/// sum_d C(n+d-1, d) of them; the count for max_total == n is C(2n, n).
std::vector<ClickPattern> enumerate_patterns(int n_modes, int max_total);

/// Canonical comparison matching enumerate_patterns order.
bool pattern_less(const ClickPattern& a, const ClickPattern& b);

} // namespace railgauge

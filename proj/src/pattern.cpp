#include "railgauge/pattern.hpp"

#include <algorithm>

namespace railgauge {

std::uint64_t pack_pattern(const ClickPattern& pattern) {
    int n = static_cast<int>(pattern.size());
    int bits = pattern_bits_per_mode(n);
    std::uint64_t limit = (bits >= 64) ? ~0ull : ((1ull << bits) - 1);
    std::uint64_t key = 0;
    for (int m = 0; m < n; ++m) {
        if (pattern[m] < 0)
            fail(Errc::InvalidArgument, "negative occupancy in " + pattern_to_string(pattern));
        std::uint64_t c = static_cast<std::uint64_t>(pattern[m]);
        if (c > limit)
            fail(Errc::Overflow, "occupancy " + std::to_string(pattern[m]) + " does not fit in " +
                                     std::to_string(bits) + " bits for " + std::to_string(n) +
                                     " modes");
        key |= c << (bits * m);
    }
    return key;
}

ClickPattern unpack_pattern(std::uint64_t key, int n_modes) {
    int bits = pattern_bits_per_mode(n_modes);
    std::uint64_t mask = (bits >= 64) ? ~0ull : ((1ull << bits) - 1);
    ClickPattern out(static_cast<std::size_t>(n_modes));
    for (int m = 0; m < n_modes; ++m)
        out[m] = static_cast<int>((key >> (bits * m)) & mask);
    return out;
}

int pattern_total(const ClickPattern& pattern) {
    int t = 0;
    for (int c : pattern) t += c;
    return t;
}

int packed_total(std::uint64_t key, int n_modes) {
    int bits = pattern_bits_per_mode(n_modes);
    std::uint64_t mask = (bits >= 64) ? ~0ull : ((1ull << bits) - 1);
    int t = 0;
    for (int m = 0; m < n_modes; ++m) t += static_cast<int>((key >> (bits * m)) & mask);
    return t;
}

std::uint64_t packed_reverse(std::uint64_t key, int n_modes) {
    int bits = pattern_bits_per_mode(n_modes);
    std::uint64_t mask = (bits >= 64) ? ~0ull : ((1ull << bits) - 1);
    std::uint64_t out = 0;
    for (int m = 0; m < n_modes; ++m)
        out |= ((key >> (bits * m)) & mask) << (bits * (n_modes - 1 - m));
    return out;
}

std::string pattern_to_string(const ClickPattern& pattern) {
    std::string s = "(";
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(pattern[i]);
    }
    s += ")";
    return s;
}

bool pattern_less(const ClickPattern& a, const ClickPattern& b) {
    int ta = pattern_total(a);
    int tb = pattern_total(b);
    if (ta != tb) return ta < tb;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

namespace {

void emit_with_total(int n_modes, int total, ClickPattern& scratch, int mode,
                     std::vector<ClickPattern>& out) {
    if (mode == n_modes - 1) {
        scratch[mode] = total;
        out.push_back(scratch);
        return;
    }
    for (int c = 0; c <= total; ++c) {
        scratch[mode] = c;
        emit_with_total(n_modes, total - c, scratch, mode + 1, out);
    }
}

} // namespace

std::vector<ClickPattern> enumerate_patterns(int n_modes, int max_total) {
    if (n_modes < 1) fail(Errc::InvalidModeCount, "need at least one mode");
    if (max_total < 0) fail(Errc::InvalidArgument, "negative photon total");
    std::vector<ClickPattern> out;
    ClickPattern scratch(static_cast<std::size_t>(n_modes));
    for (int total = 0; total <= max_total; ++total)
        emit_with_total(n_modes, total, scratch, 0, out);
    return out;
}

} // namespace railgauge

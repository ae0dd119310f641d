#pragma once

#include <algorithm>
#include <cstdint>
#include <cstddef>
#include <utility>
#include <vector>

namespace railgauge {

/// Open-addressing hash map from uint64 keys to V, tuned for the monomial
/// tables in the Fock engine: dense batches of insert-or-accumulate followed
/// by a full sweep. Key ~0ull is reserved as the empty slot marker.
template <class V>
class FlatMap {
public:
    static constexpr std::uint64_t kEmpty = ~0ull;

    struct Slot {
        std::uint64_t key = kEmpty;
        V value{};
    };

    FlatMap() { rehash(16); }
    explicit FlatMap(std::size_t expected) {
        std::size_t cap = 16;
        while (cap * 10 < expected * 16) cap <<= 1; // target load <= 0.625
        rehash(cap);
    }

    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    void clear() {
        for (auto& s : slots_) s.key = kEmpty;
        size_ = 0;
    }

    /// Returns the value slot for key, default-constructing it on first use.
    V& operator[](std::uint64_t key) {
        if ((size_ + 1) * 10 > slots_.size() * 7) rehash(slots_.size() * 2);
        std::size_t i = probe(key);
        if (slots_[i].key == kEmpty) {
            slots_[i].key = key;
            slots_[i].value = V{};
            ++size_;
        }
        return slots_[i].value;
    }

    const V* find(std::uint64_t key) const {
        std::size_t i = probe(key);
        return slots_[i].key == kEmpty ? nullptr : &slots_[i].value;
    }

    /// Iterates occupied slots in unspecified order.
    template <class Fn>
    void for_each(Fn&& fn) const {
        for (const auto& s : slots_)
            if (s.key != kEmpty) fn(s.key, s.value);
    }

    /// Occupied (key, value) pairs in ascending key order.
    std::vector<std::pair<std::uint64_t, V>> sorted_items() const {
        std::vector<std::pair<std::uint64_t, V>> out;
        out.reserve(size_);
        for (const auto& s : slots_)
            if (s.key != kEmpty) out.emplace_back(s.key, s.value);
        std::sort(out.begin(), out.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        return out;
    }

private:
    std::vector<Slot> slots_;
    std::size_t size_ = 0;

    static std::uint64_t mix(std::uint64_t x) {
        // splitmix64 finalizer; occupancy keys are highly structured.
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

    std::size_t probe(std::uint64_t key) const {
        std::size_t mask = slots_.size() - 1;
        std::size_t i = mix(key) & mask;
        while (slots_[i].key != kEmpty && slots_[i].key != key) i = (i + 1) & mask;
        return i;
    }

    void rehash(std::size_t new_cap) {
        std::vector<Slot> old = std::move(slots_);
        slots_.assign(new_cap, Slot{});
        for (auto& s : old) {
            if (s.key == kEmpty) continue;
            std::size_t mask = slots_.size() - 1;
            std::size_t i = mix(s.key) & mask;
            while (slots_[i].key != kEmpty) i = (i + 1) & mask;
            slots_[i] = std::move(s);
        }
    }
};

} // namespace railgauge

#pragma once

#include <cstdint>
#include <string_view>

namespace aog {

/// SplitMix64 generator. Output is fully specified, so runs reproduce
/// bit-for-bit on every platform.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        // Lemire's multiply-shift with rejection.
        while (true) {
            unsigned __int128 prod = static_cast<unsigned __int128>((*this)()) * bound;
            auto low = static_cast<std::uint64_t>(prod);
            if (low >= bound || low >= (-bound) % bound) return static_cast<std::uint64_t>(prod >> 64);
        }
    }

private:
    std::uint64_t state_;
};

/// Derives an independent stream seed from a master seed and a stream index.
/// Distinct (master, stream) pairs give distinct, decorrelated seeds.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    SplitMix64 mix(master ^ (stream * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL));
    mix();
    return mix();
}

/// Stream index for a named component (FNV-1a of the name).
inline std::uint64_t stream_id(std::string_view name) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : name) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace aog

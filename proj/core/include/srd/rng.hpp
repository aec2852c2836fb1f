#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>

namespace srd {

/// splitmix64 finalizer; used to derive stream keys from structured ids.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Stream key for (seed, id_0, id_1, ...). Distinct component tuples give
/// statistically independent streams; the derivation is order-sensitive.
inline std::uint64_t derive_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> ids) {
    std::uint64_t key = mix64(seed);
    for (std::uint64_t id : ids) key = mix64(key ^ mix64(id));
    return key;
}

/// Philox4x32-10 counter-based generator. A block is addressed by the
/// 64-bit stream key and a 64-bit block index, so any draw can be computed
/// in isolation: reproducibility is independent of evaluation order and of
/// how work is split across threads.
struct Philox4x32 {
    static constexpr std::uint32_t kMult0 = 0xD2511F53u;
    static constexpr std::uint32_t kMult1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    static std::array<std::uint32_t, 4> block(std::uint64_t key, std::uint64_t index) {
        std::uint32_t c0 = static_cast<std::uint32_t>(index);
        std::uint32_t c1 = static_cast<std::uint32_t>(index >> 32);
        std::uint32_t c2 = 0u;
        std::uint32_t c3 = 0u;
        std::uint32_t k0 = static_cast<std::uint32_t>(key);
        std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
        for (int round = 0; round < 10; ++round) {
            std::uint64_t p0 = static_cast<std::uint64_t>(kMult0) * c0;
            std::uint64_t p1 = static_cast<std::uint64_t>(kMult1) * c2;
            std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
            std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
            std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
            std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
            std::uint32_t n0 = hi1 ^ c1 ^ k0;
            std::uint32_t n1 = lo1;
            std::uint32_t n2 = hi0 ^ c3 ^ k1;
            std::uint32_t n3 = lo0;
            c0 = n0;
            c1 = n1;
            c2 = n2;
            c3 = n3;
            k0 += kWeyl0;
            k1 += kWeyl1;
        }
        return {c0, c1, c2, c3};
    }
};

/// Uniform in (0,1), never hitting either endpoint.
inline double to_unit_double(std::uint32_t lo, std::uint32_t hi) {
    std::uint64_t x = (static_cast<std::uint64_t>(hi) << 32) | lo;
    return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
}

/// Addressable stream of standard normal draws (Box-Muller over Philox
/// blocks). normal(i) depends only on (key, i); a one-block cache makes
/// sequential consumption cost one Philox block per two draws.
class GaussianStream {
 public:
    explicit GaussianStream(std::uint64_t key) : key_(key) {}

    double normal(std::uint64_t i) const {
        std::uint64_t blk = i >> 1;
        if (blk != cached_block_) {
            auto words = Philox4x32::block(key_, blk);
            double u1 = to_unit_double(words[0], words[1]);
            double u2 = to_unit_double(words[2], words[3]);
            double radius = std::sqrt(-2.0 * std::log(u1));
            double angle = 2.0 * std::numbers::pi * u2;
            cached_[0] = radius * std::cos(angle);
            cached_[1] = radius * std::sin(angle);
            cached_block_ = blk;
        }
        return cached_[i & 1];
    }

    std::uint64_t key() const { return key_; }

 private:
    std::uint64_t key_;
    mutable std::uint64_t cached_block_ = ~0ull;
    mutable double cached_[2] = {0.0, 0.0};
};

/// Small helper for non-cryptographic uniform draws in tests and samplers.
class UniformStream {
 public:
    explicit UniformStream(std::uint64_t key) : key_(key) {}

    double uniform(std::uint64_t i) const {
        auto words = Philox4x32::block(key_, i);
        return to_unit_double(words[0], words[1]);
    }
    /// Uniform in [lo, hi).
    double uniform(std::uint64_t i, double lo, double hi) const {
        return lo + (hi - lo) * uniform(i);
    }

 private:
    std::uint64_t key_;
};

}  // namespace srd

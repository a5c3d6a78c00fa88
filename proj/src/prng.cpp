#include "fdao/prng.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <stdexcept>

namespace fdao {

std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_stream_seed(std::uint64_t base, std::uint64_t ordinal) {
    std::uint64_t s = base + (ordinal + 1) * 0x9E3779B97F4A7C15ULL;
    return splitmix64_next(s);
}

std::uint64_t os_entropy_seed() {
    if (std::FILE* f = std::fopen("/dev/urandom", "rb")) {
        std::uint64_t v = 0;
        const std::size_t got = std::fread(&v, sizeof v, 1, f);
        std::fclose(f);
        if (got == 1) return v;
    }
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::uint64_t SeedSource::resolve() const {
    return mode == Mode::explicit_value ? value : os_entropy_seed();
}

void CauchyParams::validate() const {
    if (!(scale > 0.0) || !std::isfinite(scale) || !std::isfinite(location))
        throw std::invalid_argument("CauchyParams: scale must be finite and > 0");
}

double cauchy_cdf(double x, const CauchyParams& p) {
    p.validate();
    return std::atan((x - p.location) / p.scale) / std::numbers::pi + 0.5;
}

double cauchy_quantile(double u, const CauchyParams& p) {
    p.validate();
    if (!(u > 0.0) || !(u < 1.0))
        throw std::invalid_argument("cauchy_quantile: u must lie in (0,1)");
    return p.location + p.scale * std::tan(std::numbers::pi * (u - 0.5));
}

Mt19937::Mt19937(std::uint64_t seed) {
    const std::uint32_t key[2] = {static_cast<std::uint32_t>(seed),
                                  static_cast<std::uint32_t>(seed >> 32)};
    seed_key(key);
    seed_ = seed;
}

Mt19937 Mt19937::from_u32(std::uint32_t seed) {
    Mt19937 g;
    g.seed_u32(seed);
    g.seed_ = seed;
    return g;
}

Mt19937 Mt19937::from_key(std::span<const std::uint32_t> key) {
    Mt19937 g;
    g.seed_key(key);
    g.seed_ = key.empty() ? 0 : key[0];
    return g;
}

void Mt19937::seed_u32(std::uint32_t s) {
    state_[0] = s;
    for (std::uint32_t i = 1; i < kStateWords; ++i)
        state_[i] = 1812433253u * (state_[i - 1] ^ (state_[i - 1] >> 30)) + i;
    index_ = kStateWords;
}

void Mt19937::seed_key(std::span<const std::uint32_t> key) {
    if (key.empty()) throw std::invalid_argument("Mt19937: empty seed key");
    seed_u32(19650218u);
    std::size_t i = 1, j = 0;
    std::size_t k = std::max(kStateWords, key.size());
    for (; k != 0; --k) {
        state_[i] = (state_[i] ^ ((state_[i - 1] ^ (state_[i - 1] >> 30)) * 1664525u)) +
                    key[j] + static_cast<std::uint32_t>(j);
        ++i;
        ++j;
        if (i >= kStateWords) {
            state_[0] = state_[kStateWords - 1];
            i = 1;
        }
        if (j >= key.size()) j = 0;
    }
    for (k = kStateWords - 1; k != 0; --k) {
        state_[i] = (state_[i] ^ ((state_[i - 1] ^ (state_[i - 1] >> 30)) * 1566083941u)) -
                    static_cast<std::uint32_t>(i);
        ++i;
        if (i >= kStateWords) {
            state_[0] = state_[kStateWords - 1];
            i = 1;
        }
    }
    state_[0] = 0x80000000u;  // MSB guarantees a non-zero state
    index_ = kStateWords;
}

std::uint32_t Mt19937::next_u32() {
    constexpr std::uint32_t kMatrixA = 0x9908B0DFu;
    constexpr std::uint32_t kUpper = 0x80000000u;
    constexpr std::uint32_t kLower = 0x7FFFFFFFu;
    constexpr std::size_t kShift = 397;

    if (index_ >= kStateWords) {
        for (std::size_t n = 0; n < kStateWords; ++n) {
            const std::uint32_t y =
                (state_[n] & kUpper) | (state_[(n + 1) % kStateWords] & kLower);
            state_[n] = state_[(n + kShift) % kStateWords] ^ (y >> 1) ^
                        ((y & 1u) ? kMatrixA : 0u);
        }
        index_ = 0;
    }
    std::uint32_t y = state_[index_++];
    y ^= y >> 11;
    y ^= (y << 7) & 0x9D2C5680u;
    y ^= (y << 15) & 0xEFC60000u;
    y ^= y >> 18;
    return y;
}

std::uint64_t Mt19937::next_u64() {
    const std::uint64_t hi = next_u32();
    const std::uint64_t lo = next_u32();
    return (hi << 32) | lo;
}

double Mt19937::uniform01() {
    return next_u32() * (1.0 / 4294967295.0);
}

double Mt19937::gaussian() {
    if (has_cached_gaussian_) {
        has_cached_gaussian_ = false;
        return cached_gaussian_;
    }
    double v1, v2, rsq;
    do {
        v1 = 2.0 * uniform01() - 1.0;
        v2 = 2.0 * uniform01() - 1.0;
        rsq = v1 * v1 + v2 * v2;
    } while (rsq >= 1.0 || rsq == 0.0);
    const double fac = std::sqrt(-2.0 * std::log(rsq) / rsq);
    cached_gaussian_ = v1 * fac;
    has_cached_gaussian_ = true;
    return v2 * fac;
}

double Mt19937::cauchy(const CauchyParams& p) {
    p.validate();
    double u;
    do {
        u = uniform01();
    } while (u == 0.0 || u == 1.0);
    return p.location + p.scale * std::tan(std::numbers::pi * (u - 0.5));
}

}  // namespace fdao

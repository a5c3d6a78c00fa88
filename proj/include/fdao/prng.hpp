#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace fdao {

// SplitMix64 mixing step; used to derive independent stream seeds for
// parallel tasks from one base seed.
std::uint64_t splitmix64_next(std::uint64_t& state);
std::uint64_t derive_stream_seed(std::uint64_t base, std::uint64_t ordinal);

// 8 bytes from the OS entropy pool (/dev/urandom, std::random_device fallback).
std::uint64_t os_entropy_seed();

struct SeedSource {
    enum class Mode { os_entropy, explicit_value };
    Mode mode = Mode::os_entropy;
    std::uint64_t value = 0;

    static SeedSource explicit_value_of(std::uint64_t v) {
        return {Mode::explicit_value, v};
    }
    // Explicit seeds pass through unchanged; otherwise draw from the OS.
    std::uint64_t resolve() const;
};

struct CauchyParams {
    double location = 0.0;  // median of the distribution
    double scale = 1.0;     // width factor, strictly positive

    void validate() const;  // throws std::invalid_argument
};

// C(x) = arctan((x - location)/scale)/pi + 1/2
double cauchy_cdf(double x, const CauchyParams& p);
// Inverse of the above: location + scale * tan(pi*(u - 1/2)), u in (0,1).
double cauchy_quantile(double u, const CauchyParams& p);

// MT19937 (32-bit, 2002 initialization-improved variant).
//
// A 64-bit seed is folded into the init-by-array seeding path as the key
// {low 32 bits, high 32 bits}; from_u32 gives the classic single-word
// initialization. Streams are reproducible bit for bit given the same seed.
// A generator is single-owner: concurrent tasks each get their own instance,
// seeded via derive_stream_seed.
class Mt19937 {
public:
    static constexpr std::size_t kStateWords = 624;

    explicit Mt19937(std::uint64_t seed);
    static Mt19937 from_u32(std::uint32_t seed);
    static Mt19937 from_key(std::span<const std::uint32_t> key);

    std::uint32_t next_u32();
    std::uint64_t next_u64();  // two next_u32 draws, first is the high word

    // Uniform on the closed interval [0,1]: next_u32 / (2^32 - 1).
    double uniform01();

    // Standard normal via the polar (rejection) form of Box-Muller; the
    // second variate of each accepted pair is cached for the next call.
    double gaussian();

    // Inverse-CDF Cauchy variate; u == 0 or 1 is redrawn rather than
    // producing an infinite tangent argument.
    double cauchy(const CauchyParams& p);

    std::uint64_t seed() const { return seed_; }

private:
    Mt19937() = default;
    void seed_u32(std::uint32_t s);
    void seed_key(std::span<const std::uint32_t> key);

    std::array<std::uint32_t, kStateWords> state_{};
    std::uint32_t index_ = kStateWords;
    std::uint64_t seed_ = 0;
    double cached_gaussian_ = 0.0;
    bool has_cached_gaussian_ = false;
};

}  // namespace fdao

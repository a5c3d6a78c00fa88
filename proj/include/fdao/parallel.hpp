#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

// Deterministic OpenMP reduction helpers.
//
// Floating-point sums are accumulated in fixed-size chunks whose partial sums
// are combined in index order, so the result is bit-identical for any thread
// count (replay of a seeded run must reproduce reports byte for byte).
// Integer reductions are order-independent and use plain OpenMP reductions.
//
// fdao::serial holds the straightforward single-thread reference loops; the
// test suite and the bench tool compare the two paths.

namespace fdao::par {

inline constexpr std::size_t kChunk = 8192;

template <class Term>
double chunked_sum(std::size_t n, Term&& term) {
    if (n == 0) return 0.0;
    const std::size_t nchunks = (n + kChunk - 1) / kChunk;
    std::vector<double> partial(nchunks, 0.0);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(nchunks); ++c) {
        const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
        const std::size_t hi = std::min(lo + kChunk, n);
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += term(i);
        partial[static_cast<std::size_t>(c)] = s;
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

template <class Body>
void for_each_index(std::size_t n, Body&& body) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
        body(static_cast<std::size_t>(i));
}

template <class Pred>
std::size_t count_indices(std::size_t n, Pred&& pred) {
    long long count = 0;
#pragma omp parallel for schedule(static) reduction(+ : count)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
        if (pred(static_cast<std::size_t>(i))) ++count;
    return static_cast<std::size_t>(count);
}

}  // namespace fdao::par

namespace fdao::serial {

// Reference accumulation, plain left-to-right. For n <= par::kChunk the
// chunked sum performs the identical sequence of additions.
template <class Term>
double sum(std::size_t n, Term&& term) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += term(i);
    return s;
}

}  // namespace fdao::serial

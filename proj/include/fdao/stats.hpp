#pragma once

#include <cstddef>
#include <span>

#include "fdao/prng.hpp"

namespace fdao {

struct CentralMoments {
    double mean = 0.0;
    double m2 = 0.0;  // (1/m) sum (x - mean)^2
    double m3 = 0.0;
    double m4 = 0.0;
};

CentralMoments central_moments(std::span<const double> xs);

// Sk = m3 / m2^(3/2). Requires m >= 2 and positive variance.
double skewness(std::span<const double> xs);

// Kr = m4 / m2^2, non-excess convention (Gaussian -> 3).
double kurtosis(std::span<const double> xs);

struct JarqueBeraResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

// JB = (m/6) * (Sk^2 + (Kr-3)^2/4); p-value from chi-square with 2 dof.
double jarque_bera_statistic(std::size_t m, double sk, double kr);
double chi_square_sf_df2(double x);  // survival function, exp(-x/2)
JarqueBeraResult jarque_bera(std::span<const double> xs);

// Fraction of sample values <= x.
double ecdf(std::span<const double> xs, double x);

struct HlEstimate {
    double point = 0.0;  // median of the Walsh averages
    double ci_lo = 0.0;  // 95% interval from signed-rank order statistics
    double ci_hi = 0.0;
    enum class Method { exact, subsampled } method = Method::exact;
};

struct HlOptions {
    // Full Walsh enumeration up to this sample size (~2e6 pairs); larger
    // samples are summarized from a random subsample of pairs.
    std::size_t exact_cap = 2000;
    std::size_t subsample_pairs = 4'000'000;
    Mt19937* rng = nullptr;  // required when the subsampled path is taken
};

// Hodges-Lehmann point estimate with a 95% confidence interval taken from
// the Wilcoxon signed-rank critical ranks of the sorted Walsh averages
// (exact signed-rank quantiles for m <= 12, normal approximation above).
HlEstimate hodges_lehmann(std::span<const double> xs, const HlOptions& opt = {});

// 1-based rank of the lower CI end among the m(m+1)/2 sorted Walsh averages;
// the upper end is the mirrored rank. Exposed for the oracle tests.
std::size_t hl_ci_rank(std::size_t m);

namespace serial {
CentralMoments central_moments(std::span<const double> xs);
}

}  // namespace fdao

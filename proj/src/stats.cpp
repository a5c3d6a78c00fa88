#include "fdao/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fdao/parallel.hpp"

namespace fdao {

namespace {

void require_sample(std::span<const double> xs, std::size_t min_size) {
    if (xs.size() < min_size)
        throw std::invalid_argument("sample: need at least " + std::to_string(min_size) +
                                    " values");
    for (double v : xs)
        if (!std::isfinite(v)) throw std::invalid_argument("sample: values must be finite");
}

struct MomentSums {
    double s2 = 0.0, s3 = 0.0, s4 = 0.0;
};

MomentSums moment_sums(std::span<const double> xs, double mean) {
    const std::size_t n = xs.size();
    const std::size_t nchunks = (n + par::kChunk - 1) / par::kChunk;
    std::vector<MomentSums> partial(nchunks);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(nchunks); ++c) {
        const std::size_t lo = static_cast<std::size_t>(c) * par::kChunk;
        const std::size_t hi = std::min(lo + par::kChunk, n);
        MomentSums s;
        for (std::size_t i = lo; i < hi; ++i) {
            const double d = xs[i] - mean;
            const double d2 = d * d;
            s.s2 += d2;
            s.s3 += d2 * d;
            s.s4 += d2 * d2;
        }
        partial[static_cast<std::size_t>(c)] = s;
    }
    MomentSums total;
    for (const MomentSums& s : partial) {
        total.s2 += s.s2;
        total.s3 += s.s3;
        total.s4 += s.s4;
    }
    return total;
}

// Largest c with P(T+ <= c) <= 0.025 under the null signed-rank distribution,
// or -1 when even c = 0 exceeds the tail. Exact enumeration, m <= 12.
long exact_signed_rank_c(std::size_t m) {
    const std::size_t tmax = m * (m + 1) / 2;
    std::vector<std::uint64_t> ways(tmax + 1, 0);
    ways[0] = 1;
    for (std::size_t i = 1; i <= m; ++i)
        for (std::size_t t = tmax; t >= i; --t) ways[t] += ways[t - i];
    const double total = std::ldexp(1.0, static_cast<int>(m));  // 2^m
    double cum = 0.0;
    long c = -1;
    for (std::size_t t = 0; t <= tmax; ++t) {
        cum += static_cast<double>(ways[t]);
        if (cum / total <= 0.025)
            c = static_cast<long>(t);
        else
            break;
    }
    return c;
}

double median_of_sorted(const std::vector<double>& w) {
    const std::size_t n = w.size();
    if (n % 2 == 1) return w[n / 2];
    return 0.5 * (w[n / 2 - 1] + w[n / 2]);
}

}  // namespace

CentralMoments central_moments(std::span<const double> xs) {
    require_sample(xs, 1);
    const double m = static_cast<double>(xs.size());
    CentralMoments out;
    out.mean = par::chunked_sum(xs.size(), [&](std::size_t i) { return xs[i]; }) / m;
    const MomentSums s = moment_sums(xs, out.mean);
    out.m2 = s.s2 / m;
    out.m3 = s.s3 / m;
    out.m4 = s.s4 / m;
    return out;
}

namespace serial {
CentralMoments central_moments(std::span<const double> xs) {
    CentralMoments out;
    const double m = static_cast<double>(xs.size());
    out.mean = fdao::serial::sum(xs.size(), [&](std::size_t i) { return xs[i]; }) / m;
    double s2 = 0.0, s3 = 0.0, s4 = 0.0;
    for (double x : xs) {
        const double d = x - out.mean;
        const double d2 = d * d;
        s2 += d2;
        s3 += d2 * d;
        s4 += d2 * d2;
    }
    out.m2 = s2 / m;
    out.m3 = s3 / m;
    out.m4 = s4 / m;
    return out;
}
}  // namespace serial

double skewness(std::span<const double> xs) {
    require_sample(xs, 2);
    const CentralMoments cm = central_moments(xs);
    if (!(cm.m2 > 0.0)) throw std::domain_error("skewness: sample variance is zero");
    return cm.m3 / std::pow(cm.m2, 1.5);
}

double kurtosis(std::span<const double> xs) {
    require_sample(xs, 2);
    const CentralMoments cm = central_moments(xs);
    if (!(cm.m2 > 0.0)) throw std::domain_error("kurtosis: sample variance is zero");
    return cm.m4 / (cm.m2 * cm.m2);
}

double jarque_bera_statistic(std::size_t m, double sk, double kr) {
    const double k3 = kr - 3.0;
    return static_cast<double>(m) / 6.0 * (sk * sk + k3 * k3 / 4.0);
}

double chi_square_sf_df2(double x) { return std::exp(-0.5 * x); }

JarqueBeraResult jarque_bera(std::span<const double> xs) {
    require_sample(xs, 2);
    const CentralMoments cm = central_moments(xs);
    if (!(cm.m2 > 0.0)) throw std::domain_error("jarque_bera: sample variance is zero");
    const double sk = cm.m3 / std::pow(cm.m2, 1.5);
    const double kr = cm.m4 / (cm.m2 * cm.m2);
    const double jb = jarque_bera_statistic(xs.size(), sk, kr);
    return {jb, chi_square_sf_df2(jb)};
}

double ecdf(std::span<const double> xs, double x) {
    require_sample(xs, 1);
    const std::size_t below =
        par::count_indices(xs.size(), [&](std::size_t i) { return xs[i] <= x; });
    return static_cast<double>(below) / static_cast<double>(xs.size());
}

std::size_t hl_ci_rank(std::size_t m) {
    const std::size_t pairs = m * (m + 1) / 2;
    long k;
    if (m <= 12) {
        k = exact_signed_rank_c(m) + 1;  // CI = (W_(c+1), W_(M-c))
    } else {
        const double dm = static_cast<double>(m);
        const double sd = std::sqrt(dm * (dm + 1.0) * (2.0 * dm + 1.0) / 24.0);
        k = static_cast<long>(std::floor(dm * (dm + 1.0) / 4.0 - 1.96 * sd));
    }
    k = std::max<long>(k, 1);
    k = std::min<long>(k, static_cast<long>((pairs + 1) / 2));
    return static_cast<std::size_t>(k);
}

HlEstimate hodges_lehmann(std::span<const double> xs, const HlOptions& opt) {
    require_sample(xs, 2);
    const std::size_t m = xs.size();
    const std::size_t pairs = m * (m + 1) / 2;
    const std::size_t k = hl_ci_rank(m);

    HlEstimate est;
    if (m <= opt.exact_cap) {
        std::vector<double> walsh(pairs);
        par::for_each_index(m, [&](std::size_t i) {
            // row i holds (i,i..m-1); rows are laid out in order
            std::size_t base = i * m - i * (i - 1) / 2;
            for (std::size_t j = i; j < m; ++j)
                walsh[base + (j - i)] = 0.5 * (xs[i] + xs[j]);
        });
        std::sort(walsh.begin(), walsh.end());
        est.point = median_of_sorted(walsh);
        est.ci_lo = walsh[k - 1];
        est.ci_hi = walsh[pairs - k];
        est.method = HlEstimate::Method::exact;
        return est;
    }

    if (opt.rng == nullptr)
        throw std::invalid_argument(
            "hodges_lehmann: sample exceeds the exact cap and no generator was given");
    const std::size_t count = opt.subsample_pairs;
    std::vector<std::size_t> flat(count);
    for (std::size_t s = 0; s < count; ++s) flat[s] = opt.rng->next_u64() % pairs;
    std::vector<double> walsh(count);
    par::for_each_index(count, [&](std::size_t s) {
        // invert the triangular row layout used above
        const std::size_t t = flat[s];
        const double dm = static_cast<double>(m);
        std::size_t i = static_cast<std::size_t>(
            std::floor(dm + 0.5 - std::sqrt((dm + 0.5) * (dm + 0.5) -
                                            2.0 * static_cast<double>(t))));
        auto row_base = [&](std::size_t r) { return r * m - r * (r - 1) / 2; };
        while (i > 0 && row_base(i) > t) --i;
        while (row_base(i + 1) <= t) ++i;
        const std::size_t j = i + (t - row_base(i));
        walsh[s] = 0.5 * (xs[i] + xs[j]);
    });
    std::sort(walsh.begin(), walsh.end());
    est.point = median_of_sorted(walsh);
    // map full-set ranks onto subsample quantile positions
    const double q_lo = static_cast<double>(k - 1) / static_cast<double>(pairs - 1);
    std::size_t lo_idx = static_cast<std::size_t>(
        std::llround(q_lo * static_cast<double>(count - 1)));
    lo_idx = std::min(lo_idx, count - 1);
    est.ci_lo = walsh[lo_idx];
    est.ci_hi = walsh[count - 1 - lo_idx];
    est.method = HlEstimate::Method::subsampled;
    return est;
}

}  // namespace fdao

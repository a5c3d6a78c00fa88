#include "fdao/uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fdao/parallel.hpp"

namespace fdao {

namespace {

// Derivative magnitudes below this are treated as zero; the quotient would
// only manufacture spurious +-inf.
constexpr double kOmegaFloor = 1e-300;

// omega values for every (point, parameter), laid out point-major.
std::vector<double> omega_matrix(const ModelSpec& spec, const Dataset& data,
                                 std::span<const double> theta) {
    const std::size_t k = spec.arity();
    std::vector<double> omega(data.size() * k);
    par::for_each_index(data.size(), [&](std::size_t i) {
        model_grad(spec, data.points[i].x, theta, {&omega[i * k], k});
    });
    return omega;
}

}  // namespace

std::vector<GammaSet> gamma_sets(const ModelSpec& spec, const Dataset& data,
                                 const FitResult& fit) {
    if (fit.residuals.size() != data.size())
        throw std::invalid_argument("gamma_sets: residuals not aligned with data");
    const std::size_t k = spec.arity();
    const std::size_t m = data.size();
    const std::vector<double> omega = omega_matrix(spec, data, fit.theta_opt.values);

    std::vector<GammaSet> sets(k);
    const auto names = spec.param_names();
    for (std::size_t j = 0; j < k; ++j) {
        GammaSet& set = sets[j];
        set.param_index = j;
        set.param_name = names[j];
        set.values.reserve(m);
        for (std::size_t i = 0; i < m; ++i) {
            const double w = omega[i * k + j];
            const double q = fit.residuals[i] / w;
            if (std::fabs(w) < kOmegaFloor || !std::isfinite(q))
                ++set.dropped_nonfinite;
            else
                set.values.push_back(q);
        }
    }
    return sets;
}

GammaDetail gamma_detail(const ModelSpec& spec, const Dataset& data,
                         const FitResult& fit, std::size_t param_index) {
    if (param_index >= spec.arity())
        throw std::invalid_argument("gamma_detail: parameter index out of range");
    if (fit.residuals.size() != data.size())
        throw std::invalid_argument("gamma_detail: residuals not aligned with data");
    const std::size_t k = spec.arity();
    const std::size_t m = data.size();
    const std::vector<double> omega = omega_matrix(spec, data, fit.theta_opt.values);

    GammaDetail detail;
    detail.omega.resize(m);
    detail.dgamma.resize(m);
    detail.kept_flag.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double w = omega[i * k + param_index];
        const double q = fit.residuals[i] / w;
        const bool kept = std::fabs(w) >= kOmegaFloor && std::isfinite(q);
        detail.omega[i] = w;
        detail.dgamma[i] = q;
        detail.kept_flag[i] = kept ? 1 : 0;
    }
    return detail;
}

double upsilon(std::span<const double> dgamma) {
    if (dgamma.empty()) throw std::invalid_argument("upsilon: empty set");
    const std::size_t m = dgamma.size();
    const std::size_t below =
        par::count_indices(m, [&](std::size_t i) { return dgamma[i] < 0.0; });
    const std::size_t at_zero =
        par::count_indices(m, [&](std::size_t i) { return dgamma[i] == 0.0; });
    const double f0 = (static_cast<double>(below) + 0.5 * static_cast<double>(at_zero)) /
                      static_cast<double>(m);
    return std::fabs(f0 - 0.5);
}

ParamUncertainty summarize(const GammaSet& set, double theta_j,
                           const SummaryOptions& opt) {
    if (set.kept() < 2)
        throw std::domain_error("summarize: fewer than 2 kept values for parameter " +
                                set.param_name);

    ParamUncertainty out;
    out.name = set.param_name;
    out.theta = theta_j;
    out.m_kept = set.kept();
    out.dropped = set.dropped_nonfinite;

    const HlEstimate hl = hodges_lehmann(set.values, opt.hl);
    out.dg_median = hl.point;
    out.dg_ci_lo = hl.ci_lo;
    out.dg_ci_hi = hl.ci_hi;
    out.median = theta_j + hl.point;
    out.ci_lo = theta_j + hl.ci_lo;
    out.ci_hi = theta_j + hl.ci_hi;

    const auto [mn, mx] = std::minmax_element(set.values.begin(), set.values.end());
    out.range_lo = theta_j + *mn;
    out.range_hi = theta_j + *mx;

    const CentralMoments cm = central_moments(set.values);
    if (cm.m2 > 0.0) {
        out.sk = cm.m3 / std::pow(cm.m2, 1.5);
        out.kr = cm.m4 / (cm.m2 * cm.m2);
    } else {
        // degenerate point mass: moments carry no information
        out.sk = 0.0;
        out.kr = 0.0;
    }
    out.upsilon = upsilon(set.values);
    out.flagged = out.upsilon > opt.alpha;
    return out;
}

FdaoReport analyze(const ModelSpec& spec, const Dataset& data,
                   const AnalyzeOptions& opt) {
    const FitResult fr = fit(spec, data, opt.fit_config);
    const std::vector<GammaSet> sets = gamma_sets(spec, data, fr);

    FdaoReport report;
    report.theta_opt = fr.theta_opt;
    report.sr = fr.sr;
    report.loops = fr.loops;
    report.stop_reason = fr.stop_reason;
    report.seed = opt.seed;
    report.alpha = opt.alpha;
    report.params.reserve(sets.size());
    for (std::size_t j = 0; j < sets.size(); ++j) {
        Mt19937 stream(derive_stream_seed(opt.seed, j));
        SummaryOptions sopt;
        sopt.alpha = opt.alpha;
        sopt.hl.exact_cap = opt.hl_exact_cap;
        sopt.hl.subsample_pairs = opt.hl_subsample_pairs;
        sopt.hl.rng = &stream;
        report.params.push_back(summarize(sets[j], fr.theta_opt.values[j], sopt));
    }
    return report;
}

}  // namespace fdao

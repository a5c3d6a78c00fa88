#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fdao/models.hpp"
#include "fdao/simplex.hpp"
#include "fdao/stats.hpp"

namespace fdao {

// Per-parameter uncertainty sample: dgamma_{j,i} = residual_i / omega_j(x_i),
// with omega_j the model's partial derivative at the optimum. Quotients that
// come out non-finite (zero or tiny derivative, overflow) are dropped and
// counted rather than stored.
struct GammaSet {
    std::size_t param_index = 0;
    std::string param_name;
    std::vector<double> values;  // kept dgamma values, data order
    std::size_t dropped_nonfinite = 0;

    std::size_t kept() const { return values.size(); }
};

// Per-point detail behind one GammaSet, used for the machine CSV dumps.
struct GammaDetail {
    std::vector<double> omega;
    std::vector<double> dgamma;
    std::vector<std::uint8_t> kept_flag;
};

std::vector<GammaSet> gamma_sets(const ModelSpec& spec, const Dataset& data,
                                 const FitResult& fit);
GammaDetail gamma_detail(const ModelSpec& spec, const Dataset& data,
                         const FitResult& fit, std::size_t param_index);

// |F(0) - 1/2| on the empirical distribution of the dgamma values (values
// exactly zero count half). 0 for a set symmetric about zero, 0.5 when no
// value lies on the opposite side of zero from the median.
double upsilon(std::span<const double> dgamma);

struct ParamUncertainty {
    std::string name;
    double theta = 0.0;  // optimizer value this row is centered on
    // parameter units (theta + dgamma summaries)
    double median = 0.0;
    double ci_lo = 0.0, ci_hi = 0.0;
    double range_lo = 0.0, range_hi = 0.0;
    // dgamma-space interval, retained for machine output
    double dg_median = 0.0, dg_ci_lo = 0.0, dg_ci_hi = 0.0;
    double sk = 0.0;
    double kr = 0.0;
    double upsilon = 0.0;
    std::size_t m_kept = 0;
    std::size_t dropped = 0;
    bool flagged = false;  // upsilon above the configured alpha
};

struct SummaryOptions {
    double alpha = 0.02;
    HlOptions hl;
};

// Nonparametric summary of one GammaSet (needs kept >= 2). The median and
// 95% interval come from the Hodges-Lehmann procedure on the dgamma values
// and are reported shifted by theta_j so rows read in parameter units.
ParamUncertainty summarize(const GammaSet& set, double theta_j,
                           const SummaryOptions& opt = {});

struct FdaoReport {
    ParamVector theta_opt;
    double sr = 0.0;
    long loops = 0;
    StopReason stop_reason = StopReason::converged;
    std::uint64_t seed = 0;  // echoed for replay
    double alpha = 0.02;
    std::vector<ParamUncertainty> params;
};

struct AnalyzeOptions {
    SimplexConfig fit_config;
    double alpha = 0.02;
    std::uint64_t seed = 0;  // drives Walsh subsampling streams
    std::size_t hl_exact_cap = 2000;
    std::size_t hl_subsample_pairs = 4'000'000;
};

// fit -> gamma_sets -> summarize, one ParamUncertainty per model parameter.
// Each parameter's summary draws from its own stream derived from the seed,
// so summaries are reproducible regardless of evaluation order.
FdaoReport analyze(const ModelSpec& spec, const Dataset& data,
                   const AnalyzeOptions& opt);

}  // namespace fdao

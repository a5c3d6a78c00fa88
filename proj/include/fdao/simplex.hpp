#pragma once

#include <span>
#include <vector>

#include "fdao/models.hpp"

namespace fdao {

struct SimplexConfig {
    ParamVector theta_init;
    double delta_init = 0.1;       // fractional step used to build the start simplex
    double epsilon_stop = 1e-8;    // relative objective-change threshold
    long loop_cap = 1'024'000;     // hard iteration limit
};

enum class StopReason { converged, loop_cap };

const char* stop_reason_name(StopReason r);

struct FitResult {
    ParamVector theta_opt;
    double sr = 0.0;       // final sum of absolute residuals
    long loops = 0;
    StopReason stop_reason = StopReason::converged;
    std::vector<double> residuals;  // y_i - f(x_i | theta_opt), data order
};

// SR(theta) = sum_i |y_i - f(x_i|theta)|. Non-finite model output makes the
// whole objective +inf, which the simplex treats as a rejected vertex.
double objective_sr(const ModelSpec& spec, const Dataset& data,
                    std::span<const double> theta);

namespace serial {
// Reference single-thread summation, kept for the oracle tests and bench.
double objective_sr(const ModelSpec& spec, const Dataset& data,
                    std::span<const double> theta);
}  // namespace serial

// Nelder-Mead minimization of objective_sr. Coefficients: reflection 1,
// expansion 2, contraction 0.5, shrink 0.5. Vertex j of the initial simplex
// perturbs parameter j by a factor (1 + delta_init), additively by delta_init
// when that parameter is zero. One loop is one accepted simplex
// transformation; convergence is declared when an improvement of the best
// vertex changes SR by less than epsilon_stop relative (loops where the best
// vertex is unchanged keep iterating), or when SR reaches exactly zero.
FitResult fit(const ModelSpec& spec, const Dataset& data, const SimplexConfig& config);

}  // namespace fdao

#include "fdao/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "fdao/parallel.hpp"

namespace fdao {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

inline double residual_term(const ModelSpec& spec, const DataPoint& pt,
                            std::span<const double> theta) {
    const double f = model_value(spec, pt.x, theta);
    if (!std::isfinite(f)) return kInf;
    return std::fabs(pt.y - f);
}
}  // namespace

const char* stop_reason_name(StopReason r) {
    return r == StopReason::converged ? "converged" : "loop_cap";
}

double objective_sr(const ModelSpec& spec, const Dataset& data,
                    std::span<const double> theta) {
    return par::chunked_sum(data.size(), [&](std::size_t i) {
        return residual_term(spec, data.points[i], theta);
    });
}

namespace serial {
double objective_sr(const ModelSpec& spec, const Dataset& data,
                    std::span<const double> theta) {
    return fdao::serial::sum(data.size(), [&](std::size_t i) {
        return residual_term(spec, data.points[i], theta);
    });
}
}  // namespace serial

FitResult fit(const ModelSpec& spec, const Dataset& data, const SimplexConfig& config) {
    const std::size_t k = spec.arity();
    if (config.theta_init.size() != k)
        throw std::invalid_argument("fit: theta_init arity does not match model");
    if (!config.theta_init.all_finite())
        throw std::invalid_argument("fit: theta_init must be finite");
    if (!(config.delta_init > 0.0))
        throw std::invalid_argument("fit: delta_init must be > 0");
    if (!(config.epsilon_stop > 0.0))
        throw std::invalid_argument("fit: epsilon_stop must be > 0");
    if (config.loop_cap < 1) throw std::invalid_argument("fit: loop_cap must be >= 1");
    if (data.size() < k)
        throw std::invalid_argument("fit: need at least as many points as parameters");
    for (std::size_t i = 0; i < data.size(); ++i) {
        const DataPoint& pt = data.points[i];
        if (!spec.x_admissible(pt.x) || !std::isfinite(pt.y))
            throw std::domain_error("fit: data point " + std::to_string(i + 1) +
                                    " outside the model domain");
    }

    using Vertex = std::vector<double>;
    std::vector<Vertex> simplex(k + 1, Vertex(config.theta_init.values));
    for (std::size_t j = 0; j < k; ++j) {
        double& v = simplex[j + 1][j];
        v = (v == 0.0) ? config.delta_init : v * (1.0 + config.delta_init);
    }
    std::vector<double> value(k + 1);
    for (std::size_t j = 0; j <= k; ++j) value[j] = objective_sr(spec, data, simplex[j]);

    std::vector<std::size_t> order(k + 1);
    auto sort_order = [&] {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return value[a] < value[b]; });
    };

    Vertex centroid(k), candidate(k), contracted(k);
    long loops = 0;
    StopReason reason = StopReason::loop_cap;

    while (loops < config.loop_cap) {
        sort_order();
        const std::size_t best = order[0];
        const std::size_t second_worst = order[k - 1];
        const std::size_t worst = order[k];

        // centroid of all vertices but the worst
        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t j = 0; j <= k; ++j) {
            if (j == worst) continue;
            for (std::size_t c = 0; c < k; ++c) centroid[c] += simplex[j][c];
        }
        for (std::size_t c = 0; c < k; ++c) centroid[c] /= static_cast<double>(k);

        for (std::size_t c = 0; c < k; ++c)
            candidate[c] = centroid[c] + (centroid[c] - simplex[worst][c]);
        const double f_reflect = objective_sr(spec, data, candidate);

        if (f_reflect < value[best]) {
            Vertex expanded(k);
            for (std::size_t c = 0; c < k; ++c)
                expanded[c] = centroid[c] + 2.0 * (candidate[c] - centroid[c]);
            const double f_expand = objective_sr(spec, data, expanded);
            if (f_expand < f_reflect) {
                simplex[worst] = std::move(expanded);
                value[worst] = f_expand;
            } else {
                simplex[worst] = candidate;
                value[worst] = f_reflect;
            }
        } else if (f_reflect < value[second_worst]) {
            simplex[worst] = candidate;
            value[worst] = f_reflect;
        } else {
            const bool outside = f_reflect < value[worst];
            const Vertex& toward = outside ? candidate : simplex[worst];
            for (std::size_t c = 0; c < k; ++c)
                contracted[c] = centroid[c] + 0.5 * (toward[c] - centroid[c]);
            const double f_contract = objective_sr(spec, data, contracted);
            if (f_contract < (outside ? f_reflect : value[worst])) {
                simplex[worst] = contracted;
                value[worst] = f_contract;
            } else {
                // shrink everything toward the current best vertex
                for (std::size_t j = 0; j <= k; ++j) {
                    if (j == best) continue;
                    for (std::size_t c = 0; c < k; ++c)
                        simplex[j][c] =
                            simplex[best][c] + 0.5 * (simplex[j][c] - simplex[best][c]);
                    value[j] = objective_sr(spec, data, simplex[j]);
                }
            }
        }
        ++loops;

        // Convergence: the SR values across the simplex stopped changing in
        // relative terms (single-step best-vertex changes misfire on the
        // kinks of the L1 surface, where near-tie improvements appear long
        // before the optimum). SR exactly zero is a perfect fit.
        const auto [lo, hi] = std::minmax_element(value.begin(), value.end());
        if (*lo == 0.0) {
            reason = StopReason::converged;
            break;
        }
        if (std::isfinite(*hi) && (*hi - *lo) / *lo < config.epsilon_stop) {
            reason = StopReason::converged;
            break;
        }
    }

    sort_order();
    FitResult result;
    result.theta_opt = spec.make_params(simplex[order[0]]);
    result.sr = value[order[0]];
    result.loops = loops;
    result.stop_reason = reason;
    result.residuals.resize(data.size());
    const std::span<const double> theta(result.theta_opt.values);
    par::for_each_index(data.size(), [&](std::size_t i) {
        result.residuals[i] = data.points[i].y - model_value(spec, data.points[i].x, theta);
    });
    return result;
}

}  // namespace fdao

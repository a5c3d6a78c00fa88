#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fdao/models.hpp"
#include "fdao/prng.hpp"
#include "fdao/simplex.hpp"
#include "fdao/uncertainty.hpp"

namespace fdao {

enum class NoiseKind { cauchy, gaussian };

// One synthetic-data fitting experiment: draw r noisy replicates of the true
// curve at every grid point, fit, and summarize parameter uncertainty.
struct ExperimentPlan {
    ModelFamily family = ModelFamily::boltzmann2;
    ParamVector theta_true;
    NoiseKind noise = NoiseKind::gaussian;
    double noise_scale = 0.05;  // Cauchy gamma or Gaussian amplitude phi
    std::vector<double> x_grid;
    long replicates = 1;  // r draws per grid value
    ParamVector theta_init;
    double delta_init = 0.1;
    double epsilon_stop = 1e-8;
    long loop_cap = 1'024'000;
    double alpha = 0.02;
    std::uint64_t seed = 0;

    void validate() const;  // throws std::invalid_argument
};

// Default grids used when a plan does not name its own.
const std::vector<double>& default_hill_grid();       // 0.001 .. 1, 7 values
const std::vector<double>& default_boltzmann_grid();  // -100 .. 100 mV, 11 values

// Replicates are drawn grid-major: all r values for the first grid entry,
// then the next. One generator stream drives a whole dataset.
Dataset gen_hill_cauchy(const ExperimentPlan& plan, Mt19937& rng);
Dataset gen_hill_gauss(const ExperimentPlan& plan, Mt19937& rng);
Dataset gen_boltzmann_gauss(const ExperimentPlan& plan, Mt19937& rng);
Dataset gen_boltzmann_cauchy(const ExperimentPlan& plan, Mt19937& rng);
Dataset generate(const ExperimentPlan& plan, Mt19937& rng);  // dispatch

struct ExperimentParamRow {
    std::string name;
    double simulated = 0.0;  // true value used by the generator
    double predicted = 0.0;  // HL median in parameter units
    double ci_lo = 0.0, ci_hi = 0.0;
    double range_lo = 0.0, range_hi = 0.0;
    double sk = 0.0, kr = 0.0;
    double upsilon = 0.0;
};

struct ExperimentRow {
    std::vector<ExperimentParamRow> params;
    long loops = 0;
    StopReason stop_reason = StopReason::converged;
    std::uint64_t seed = 0;
};

// generate -> fit -> uncertainty analysis, tabulated per parameter.
ExperimentRow run_experiment(const ExperimentPlan& plan);

// Plan files are plain `key = value` text with `#` comments. Keys: family,
// noise, gamma | phi, grid, r, theta_true.<name>, theta_init.<name>,
// delta_init, seed; optional epsilon_stop, loop_cap, alpha.
ExperimentPlan parse_plan(std::istream& in);
ExperimentPlan parse_plan_file(const std::string& path);

}  // namespace fdao

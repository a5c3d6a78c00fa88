#include "fdao/montecarlo.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fdao/io.hpp"

namespace fdao {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

Dataset draw_grid_major(const ExperimentPlan& plan, Mt19937& rng, bool cauchy_noise) {
    const ModelSpec spec{plan.family};
    Dataset data;
    data.points.reserve(plan.x_grid.size() * static_cast<std::size_t>(plan.replicates));
    const std::span<const double> theta(plan.theta_true.values);
    for (double x : plan.x_grid) {
        const double mu = model_value(spec, x, theta);
        for (long i = 0; i < plan.replicates; ++i) {
            double y;
            if (cauchy_noise)
                y = rng.cauchy(CauchyParams{mu, plan.noise_scale});
            else
                y = mu + plan.noise_scale * rng.gaussian();
            data.points.push_back({x, y});
        }
    }
    return data;
}

}  // namespace

void ExperimentPlan::validate() const {
    const ModelSpec spec{family};
    require(theta_true.size() == spec.arity(), "plan: theta_true arity mismatch");
    require(theta_init.size() == spec.arity(), "plan: theta_init arity mismatch");
    require(theta_true.all_finite() && theta_init.all_finite(),
            "plan: parameters must be finite");
    require(!x_grid.empty(), "plan: empty grid");
    for (double x : x_grid)
        require(spec.x_admissible(x), "plan: grid value outside the model domain");
    require(replicates >= 1, "plan: r must be >= 1");
    if (noise == NoiseKind::cauchy)
        require(noise_scale > 0.0, "plan: gamma must be > 0");
    else
        require(noise_scale >= 0.0, "plan: phi must be >= 0");
    require(delta_init > 0.0, "plan: delta_init must be > 0");
    require(loop_cap >= 1, "plan: loop_cap must be >= 1");
}

const std::vector<double>& default_hill_grid() {
    static const std::vector<double> grid{0.001, 0.003, 0.01, 0.03, 0.1, 0.3, 1.0};
    return grid;
}

const std::vector<double>& default_boltzmann_grid() {
    static const std::vector<double> grid{-100, -80, -60, -40, -20, 0,
                                          20,   40,  50,  80,  100};
    return grid;
}

Dataset gen_hill_cauchy(const ExperimentPlan& plan, Mt19937& rng) {
    plan.validate();
    require(plan.family == ModelFamily::hill4 && plan.noise == NoiseKind::cauchy,
            "gen_hill_cauchy: plan is not hill4/cauchy");
    return draw_grid_major(plan, rng, true);
}

Dataset gen_hill_gauss(const ExperimentPlan& plan, Mt19937& rng) {
    plan.validate();
    require(plan.family == ModelFamily::hill4 && plan.noise == NoiseKind::gaussian,
            "gen_hill_gauss: plan is not hill4/gaussian");
    return draw_grid_major(plan, rng, false);
}

Dataset gen_boltzmann_gauss(const ExperimentPlan& plan, Mt19937& rng) {
    plan.validate();
    require(plan.family == ModelFamily::boltzmann2 && plan.noise == NoiseKind::gaussian,
            "gen_boltzmann_gauss: plan is not boltzmann2/gaussian");
    return draw_grid_major(plan, rng, false);
}

Dataset gen_boltzmann_cauchy(const ExperimentPlan& plan, Mt19937& rng) {
    plan.validate();
    require(plan.family == ModelFamily::boltzmann2 && plan.noise == NoiseKind::cauchy,
            "gen_boltzmann_cauchy: plan is not boltzmann2/cauchy");
    return draw_grid_major(plan, rng, true);
}

Dataset generate(const ExperimentPlan& plan, Mt19937& rng) {
    plan.validate();
    return draw_grid_major(plan, rng, plan.noise == NoiseKind::cauchy);
}

ExperimentRow run_experiment(const ExperimentPlan& plan) {
    plan.validate();
    Mt19937 rng(plan.seed);
    const Dataset data = generate(plan, rng);
    const ModelSpec spec{plan.family};

    AnalyzeOptions opt;
    opt.fit_config.theta_init = plan.theta_init;
    opt.fit_config.delta_init = plan.delta_init;
    opt.fit_config.epsilon_stop = plan.epsilon_stop;
    opt.fit_config.loop_cap = plan.loop_cap;
    opt.alpha = plan.alpha;
    opt.seed = plan.seed;
    const FdaoReport report = analyze(spec, data, opt);

    ExperimentRow row;
    row.loops = report.loops;
    row.stop_reason = report.stop_reason;
    row.seed = plan.seed;
    row.params.reserve(report.params.size());
    for (std::size_t j = 0; j < report.params.size(); ++j) {
        const ParamUncertainty& p = report.params[j];
        ExperimentParamRow pr;
        pr.name = p.name;
        pr.simulated = plan.theta_true.values[j];
        pr.predicted = p.median;
        pr.ci_lo = p.ci_lo;
        pr.ci_hi = p.ci_hi;
        pr.range_lo = p.range_lo;
        pr.range_hi = p.range_hi;
        pr.sk = p.sk;
        pr.kr = p.kr;
        pr.upsilon = p.upsilon;
        row.params.push_back(std::move(pr));
    }
    return row;
}

ExperimentPlan parse_plan(std::istream& in) {
    const io::KeyValueMap kv = io::parse_key_values(in, "<plan>");
    ExperimentPlan plan;

    const std::string family = kv.get("family");
    plan.family = model_spec_from_name(family).family;
    const ModelSpec spec{plan.family};

    const std::string noise = kv.get("noise");
    if (noise == "cauchy")
        plan.noise = NoiseKind::cauchy;
    else if (noise == "gaussian")
        plan.noise = NoiseKind::gaussian;
    else
        throw std::invalid_argument("plan: noise must be 'cauchy' or 'gaussian'");

    if (plan.noise == NoiseKind::cauchy)
        plan.noise_scale = kv.get_double("gamma");
    else
        plan.noise_scale = kv.get_double("phi");

    if (kv.has("grid"))
        plan.x_grid = io::parse_double_list(kv.get("grid"), "plan key 'grid'");
    else
        plan.x_grid = plan.family == ModelFamily::hill4 ? default_hill_grid()
                                                        : default_boltzmann_grid();

    plan.replicates = kv.get_long_or("r", 1);

    std::vector<double> tru, init;
    for (const char* name : spec.param_names()) {
        tru.push_back(kv.get_double(std::string("theta_true.") + name));
        init.push_back(kv.get_double(std::string("theta_init.") + name));
    }
    plan.theta_true = spec.make_params(tru);
    plan.theta_init = spec.make_params(init);

    plan.delta_init = kv.get_double_or("delta_init", 0.1);
    plan.epsilon_stop = kv.get_double_or("epsilon_stop", 1e-8);
    plan.loop_cap = kv.get_long_or("loop_cap", 1'024'000);
    plan.alpha = kv.get_double_or("alpha", 0.02);
    plan.seed = kv.has("seed") ? kv.get_u64("seed") : 0;

    plan.validate();
    return plan;
}

ExperimentPlan parse_plan_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    ExperimentPlan plan = parse_plan(in);
    return plan;
}

}  // namespace fdao

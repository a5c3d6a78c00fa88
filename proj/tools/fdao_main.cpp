// Command-line front end: fit / simulate / ingest.
//
// Exit codes: 0 ok, 2 malformed input, 3 model-domain error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fdao/ingest.hpp"
#include "fdao/io.hpp"
#include "fdao/models.hpp"
#include "fdao/montecarlo.hpp"
#include "fdao/prng.hpp"
#include "fdao/uncertainty.hpp"

namespace fs = std::filesystem;
using namespace fdao;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitDomain = 3;

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path.string());
    return out;
}

struct FitArgs {
    std::string config_path;
    std::string data_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<double> alpha;
};

int run_fit(const FitArgs& args) {
    const std::string config_text = io::slurp_file(args.config_path);
    std::istringstream config_stream(config_text);
    const io::KeyValueMap cfg = io::parse_key_values(config_stream, args.config_path);

    const ModelSpec spec = model_spec_from_name(cfg.get("model"));
    std::vector<double> init;
    for (const char* name : spec.param_names())
        init.push_back(cfg.get_double(std::string("theta_init.") + name));

    AnalyzeOptions opt;
    opt.fit_config.theta_init = spec.make_params(init);
    opt.fit_config.delta_init = cfg.get_double_or("delta_init", 0.1);
    opt.fit_config.epsilon_stop = cfg.get_double_or("epsilon_stop", 1e-8);
    opt.fit_config.loop_cap = cfg.get_long_or("loop_cap", 1'024'000);
    opt.alpha = args.alpha.value_or(cfg.get_double_or("alpha", 0.02));
    opt.seed = args.seed ? SeedSource::explicit_value_of(*args.seed).resolve()
                         : SeedSource{}.resolve();

    const Dataset data = io::read_xy_csv_file(args.data_path);
    const FitResult fr = fit(spec, data, opt.fit_config);
    const std::vector<GammaSet> sets = gamma_sets(spec, data, fr);

    FdaoReport report;
    report.theta_opt = fr.theta_opt;
    report.sr = fr.sr;
    report.loops = fr.loops;
    report.stop_reason = fr.stop_reason;
    report.seed = opt.seed;
    report.alpha = opt.alpha;
    for (std::size_t j = 0; j < sets.size(); ++j) {
        Mt19937 stream(derive_stream_seed(opt.seed, j));
        SummaryOptions sopt;
        sopt.alpha = opt.alpha;
        sopt.hl.exact_cap = opt.hl_exact_cap;
        sopt.hl.subsample_pairs = opt.hl_subsample_pairs;
        sopt.hl.rng = &stream;
        report.params.push_back(summarize(sets[j], fr.theta_opt.values[j], sopt));
    }

    fs::create_directories(args.out_dir);
    io::ReportHeader header{"fit", io::hex_u64(io::fnv1a64(config_text)), opt.seed};
    {
        auto out = open_out(fs::path(args.out_dir) / "report.tsv");
        io::write_report_tsv(out, header, report);
    }
    for (std::size_t j = 0; j < report.params.size(); ++j) {
        auto out = open_out(fs::path(args.out_dir) /
                            ("dgamma_" + report.params[j].name + ".csv"));
        io::write_dgamma_csv(out, spec, data, fr, report.params[j], j);
    }

    std::cout << "fit: model=" << model_family_name(spec.family)
              << " seed=" << opt.seed
              << " stop_reason=" << stop_reason_name(report.stop_reason)
              << " loops=" << report.loops << " sr=" << io::format_sig6(report.sr)
              << '\n';
    for (const ParamUncertainty& p : report.params) {
        std::cout << "  " << p.name << " = " << io::format_sig6(p.median) << " ("
                  << io::format_sig6(p.ci_lo) << ", " << io::format_sig6(p.ci_hi)
                  << ")  upsilon=" << io::format_sig6(p.upsilon)
                  << (p.flagged ? "  [flagged]" : "") << '\n';
    }
    std::cout << "report: " << (fs::path(args.out_dir) / "report.tsv").string() << '\n';
    return kExitOk;
}

struct SimulateArgs {
    std::vector<std::string> plan_paths;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
};

int run_simulate(const SimulateArgs& args) {
    fs::create_directories(args.out_dir);
    auto out = open_out(fs::path(args.out_dir) / "experiment.tsv");

    bool header_written = false;
    for (std::size_t ordinal = 0; ordinal < args.plan_paths.size(); ++ordinal) {
        const std::string& path = args.plan_paths[ordinal];
        const std::string plan_text = io::slurp_file(path);
        std::istringstream plan_stream(plan_text);
        ExperimentPlan plan = parse_plan(plan_stream);
        if (args.seed)
            plan.seed = args.plan_paths.size() == 1
                            ? *args.seed
                            : derive_stream_seed(*args.seed, ordinal);

        const ExperimentRow row = run_experiment(plan);

        out << "# plan = " << path << '\n';
        out << "# config_hash = " << io::hex_u64(io::fnv1a64(plan_text)) << '\n';
        out << "# seed = " << plan.seed << '\n';
        out << "# stop_reason = " << stop_reason_name(row.stop_reason) << '\n';
        if (!header_written) {
            io::write_experiment_header(out);
            header_written = true;
        }
        io::write_experiment_rows(out, row);

        std::cout << "simulate: plan=" << path << " seed=" << plan.seed
                  << " stop_reason=" << stop_reason_name(row.stop_reason)
                  << " loops=" << row.loops << '\n';
        for (const ExperimentParamRow& p : row.params)
            std::cout << "  " << p.name << ": simulated=" << io::format_sig6(p.simulated)
                      << " predicted=" << io::format_sig6(p.predicted) << '\n';
    }
    std::cout << "table: " << (fs::path(args.out_dir) / "experiment.tsv").string()
              << '\n';
    return kExitOk;
}

struct IngestArgs {
    std::string blanks_path;
    std::string live_path;
    std::vector<std::string> treated;  // conc=file
    std::string out_dir = ".";
};

int run_ingest(const IngestArgs& args) {
    AbsorbanceSets sets;
    sets.blanks = io::read_absorbance_csv_file(args.blanks_path);
    sets.live = io::read_absorbance_csv_file(args.live_path);
    for (const std::string& spec_text : args.treated) {
        const auto eq = spec_text.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("--treated expects <concentration>=<file>: " +
                                        spec_text);
        const double conc =
            io::parse_double(spec_text.substr(0, eq), "--treated concentration");
        sets.treated.emplace_back(conc,
                                  io::read_absorbance_csv_file(spec_text.substr(eq + 1)));
    }

    const std::vector<EffectSample> samples = build_effect_samples(sets);
    const Dataset data = to_dataset(samples);

    fs::create_directories(args.out_dir);
    {
        auto out = open_out(fs::path(args.out_dir) / "dataset.csv");
        out << "x,y\n";
        for (const DataPoint& pt : data.points)
            out << io::format_full(pt.x) << ',' << io::format_full(pt.y) << '\n';
    }
    {
        auto out = open_out(fs::path(args.out_dir) / "counts.tsv");
        out << "concentration\tkept\tdropped\n";
        for (const EffectSample& s : samples)
            out << io::format_sig6(s.concentration) << '\t' << s.y.size() << '\t'
                << s.dropped_nonfinite << '\n';
    }

    std::cout << "ingest: nb=" << sets.blanks.size() << " nd=" << sets.live.size()
              << " concentrations=" << samples.size() << '\n';
    for (const EffectSample& s : samples)
        std::cout << "  [D]=" << io::format_sig6(s.concentration)
                  << " kept=" << s.y.size() << " dropped=" << s.dropped_nonfinite
                  << '\n';
    std::cout << "dataset: " << (fs::path(args.out_dir) / "dataset.csv").string()
              << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonlinear L1 regression with derivative-based uncertainty analysis"};
    app.require_subcommand(1);

    FitArgs fit_args;
    CLI::App* fit_cmd =
        app.add_subcommand("fit", "fit a model to x,y data and report uncertainty");
    fit_cmd->add_option("--config", fit_args.config_path, "key = value model config")
        ->required();
    fit_cmd->add_option("--data", fit_args.data_path, "CSV with header x,y")->required();
    fit_cmd->add_option("--out", fit_args.out_dir, "output directory");
    std::uint64_t fit_seed = 0;
    CLI::Option* fit_seed_opt =
        fit_cmd->add_option("--seed", fit_seed, "explicit RNG seed (default: OS entropy)");
    double fit_alpha = 0.0;
    CLI::Option* fit_alpha_opt =
        fit_cmd->add_option("--alpha", fit_alpha, "upsilon flag threshold");

    SimulateArgs sim_args;
    CLI::App* sim_cmd =
        app.add_subcommand("simulate", "run synthetic-data experiments from plan files");
    sim_cmd->add_option("--plan", sim_args.plan_paths, "plan file (repeatable)")
        ->required();
    sim_cmd->add_option("--out", sim_args.out_dir, "output directory");
    std::uint64_t sim_seed = 0;
    CLI::Option* sim_seed_opt =
        sim_cmd->add_option("--seed", sim_seed, "override the plan seed");

    IngestArgs ingest_args;
    CLI::App* ingest_cmd =
        app.add_subcommand("ingest", "absorbance files -> percent-death dataset");
    ingest_cmd->add_option("--blanks", ingest_args.blanks_path, "blank wells CSV")
        ->required();
    ingest_cmd->add_option("--live", ingest_args.live_path, "live-control wells CSV")
        ->required();
    ingest_cmd
        ->add_option("--treated", ingest_args.treated,
                     "<concentration>=<file>, repeatable")
        ->required();
    ingest_cmd->add_option("--out", ingest_args.out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (fit_cmd->parsed()) {
            if (*fit_seed_opt) fit_args.seed = fit_seed;
            if (*fit_alpha_opt) fit_args.alpha = fit_alpha;
            return run_fit(fit_args);
        }
        if (sim_cmd->parsed()) {
            if (*sim_seed_opt) sim_args.seed = sim_seed;
            return run_simulate(sim_args);
        }
        return run_ingest(ingest_args);
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

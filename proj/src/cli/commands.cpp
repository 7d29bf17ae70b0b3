#include "tlasso/cli.hpp"

#include "tlasso/error.hpp"
#include "tlasso/model_select.hpp"
#include "tlasso/regpath.hpp"
#include "tlasso/sim/experiments.hpp"
#include "tlasso/theory/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>

namespace tlasso::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Shortest text that reads back to the same double.
std::string number(double v) {
    char buf[32];
    for (int digits = 15; digits <= 17; ++digits) {
        std::snprintf(buf, sizeof buf, "%.*g", digits, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

struct Output {
    fs::path dir;
    std::ostream* log;

    void prepare() const {
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory '" + dir.string() + "'");
    }
    void write(const std::string& name, const std::string& text) const {
        const fs::path path = dir / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
        out << text;
        if (!out) throw IoError("failed writing '" + path.string() + "'");
        *log << "wrote " << path.string() << "\n";
    }
    void write_json(const std::string& name, json j) const {
        j["schema_version"] = 1;
        write(name, j.dump(2) + "\n");
    }
};

std::string coefficient_csv(const Dataset& d, const Coefficients& c) {
    std::string out = "feature,beta\n";
    for (Index j = 0; j < d.p(); ++j) out += d.column_name(j) + "," + number(c.beta(j)) + "\n";
    return out;
}

json coefficient_json(const Dataset& d, const Coefficients& c) {
    json beta = json::object();
    for (Index j = 0; j < d.p(); ++j) beta[d.column_name(j)] = c.beta(j);
    return {{"intercept", c.intercept}, {"beta", beta}};
}

const std::map<std::string, Loss> loss_names{{"squared", Loss::squared}, {"logistic", Loss::logistic}};
const std::map<std::string, CvMetric> metric_names{
    {"mse", CvMetric::mse}, {"deviance", CvMetric::deviance}, {"auc", CvMetric::auc}};

std::string loss_name(Loss l) { return l == Loss::logistic ? "logistic" : "squared"; }

// Flags shared by the data-driven subcommands.
struct DataFlags {
    std::string data;
    std::string response;
    std::string init;
    Loss loss = Loss::squared;
    double tol = 1e-7;
    int max_sweeps = 100000;

    void add(CLI::App* app) {
        app->add_option("--data", data, "CSV file with a header row")->required()->check(CLI::ExistingFile);
        app->add_option("--response", response, "response column name")->required();
        app->add_option("--init", init, "initial estimate, CSV with header feature,beta")->check(CLI::ExistingFile);
        app->add_option("--loss", loss, "squared or logistic")
            ->transform(CLI::CheckedTransformer(loss_names, CLI::ignore_case));
        app->add_option("--tol", tol, "largest coordinate change at convergence")->check(CLI::PositiveNumber);
        app->add_option("--max-sweeps", max_sweeps, "cap on coordinate passes")->check(CLI::PositiveNumber);
    }
    FitConfig config() const {
        FitConfig cfg;
        cfg.loss = loss;
        cfg.tol = tol;
        cfg.max_sweeps = max_sweeps;
        return cfg;
    }
    Coefficients tilde(const Dataset& d) const { return init.empty() ? Coefficients::zeros(d.p()) : load_coefficients(init, d); }
};

// Standardized copy of the data, the map back, and the initial estimate on the
// standardized scale. Logistic responses are left as labels.
struct Prepared {
    Dataset data;
    Standardizer scaler;
    Coefficients tilde;
};

Prepared prepare(const Dataset& raw, const Coefficients& tilde_raw, Loss loss) {
    StandardizeOptions opts;
    opts.center_response = loss == Loss::squared;
    opts.constant_columns = ConstantColumnPolicy::keep_unscaled;
    auto [d, s] = standardize(raw, opts);
    Coefficients t = to_standardized_scale(tilde_raw, s);
    return {std::move(d), std::move(s), std::move(t)};
}

int cmd_fit(const DataFlags& f, double lambda, double alpha, bool intercept, const Output& out) {
    const Dataset d = load_csv(f.data, f.response);
    const Coefficients tilde = f.tilde(d);
    FitConfig cfg = f.config();
    cfg.fit_intercept = intercept;
    const PenaltySpec pen{lambda, alpha};
    const FitResult r = cd_fit(d, pen, tilde, cfg);
    out.prepare();
    out.write("coefficients.csv", coefficient_csv(d, r.coefficients));
    json j = {{"command", "fit"},
              {"loss", loss_name(f.loss)},
              {"lambda", lambda},
              {"alpha", alpha},
              {"n", d.n()},
              {"p", d.p()},
              {"objective", r.objective},
              {"sweeps", r.sweeps_used},
              {"kkt_residual", r.kkt_residual},
              {"converged", r.converged},
              {"labels_remapped", r.labels_remapped},
              {"coefficients", coefficient_json(d, r.coefficients)}};
    out.write_json("fit.json", j);
    if (!r.converged) {
        *out.log << "fit stopped at max_sweeps without converging\n";
        return exit_no_convergence;
    }
    return exit_ok;
}

int cmd_path(const DataFlags& f, double alpha, int n_lambda, double ratio, const Output& out) {
    const Dataset raw = load_csv(f.data, f.response);
    const Prepared pr = prepare(raw, f.tilde(raw), f.loss);
    PathSpec spec;
    spec.alpha = alpha;
    spec.n_lambda = n_lambda;
    spec.ratio = ratio;
    spec.tilde = pr.tilde;
    FitConfig cfg = f.config();
    cfg.zero_columns = ZeroColumnPolicy::penalty_minimizer;
    cfg.fit_intercept = f.loss == Loss::logistic;
    const PathResult path = fit_path(pr.data, spec, cfg);

    std::string csv = "lambda,intercept";
    for (Index j = 0; j < raw.p(); ++j) csv += "," + raw.column_name(j);
    csv += "\n";
    json fits = json::array();
    bool all_converged = true;
    for (std::size_t i = 0; i < path.lambdas.size(); ++i) {
        const FitResult& r = path.fits[i];
        const Coefficients c = destandardize(r.coefficients, pr.scaler);
        csv += number(path.lambdas[i]) + "," + number(c.intercept);
        for (Index j = 0; j < raw.p(); ++j) csv += "," + number(c.beta(j));
        csv += "\n";
        fits.push_back({{"lambda", path.lambdas[i]},
                        {"objective", r.objective},
                        {"sweeps", r.sweeps_used},
                        {"kkt_residual", r.kkt_residual},
                        {"converged", r.converged}});
        all_converged = all_converged && r.converged;
    }
    out.prepare();
    out.write("path.csv", csv);
    const LambdaMax& lm = path.lambda_max;
    json j = {{"command", "path"},
              {"loss", loss_name(f.loss)},
              {"alpha", alpha},
              {"scale", "standardized"},
              {"lambda_max",
               {{"value", lm.value},
                {"certifying", lm.certifying == TrivialSolution::zero ? "zero" : "unchanged"},
                {"fallback", lm.fallback}}},
              {"fits", fits}};
    out.write_json("path.json", j);
    return all_converged ? exit_ok : exit_no_convergence;
}

int cmd_cv(const DataFlags& f, const CvSpec& spec, const Output& out) {
    const Dataset raw = load_csv(f.data, f.response);
    const Prepared pr = prepare(raw, f.tilde(raw), f.loss);
    FitConfig cfg = f.config();
    cfg.zero_columns = ZeroColumnPolicy::penalty_minimizer;
    cfg.fit_intercept = f.loss == Loss::logistic;
    const CvResult r = cross_validate(pr.data, spec, pr.tilde, cfg);
    const Coefficients c = destandardize(r.refit.coefficients, pr.scaler);

    std::string csv = "alpha,lambda,mean,sd,folds\n";
    for (const CvCell& cell : r.table) {
        csv += number(cell.alpha) + "," + number(cell.lambda) + "," + number(cell.mean) + "," + number(cell.sd) + "," +
               std::to_string(cell.folds) + "\n";
    }
    out.prepare();
    out.write("cv.csv", csv);
    out.write("coefficients.csv", coefficient_csv(raw, c));
    const auto metric = std::find_if(metric_names.begin(), metric_names.end(),
                                     [&](const auto& kv) { return kv.second == spec.metric; })->first;
    json j = {{"command", "cv"},
              {"loss", loss_name(f.loss)},
              {"folds", spec.k},
              {"alphas", spec.alphas},
              {"n_lambda", spec.n_lambda},
              {"ratio", spec.ratio},
              {"seed", spec.seed},
              {"metric", metric},
              {"best_alpha", r.best_alpha},
              {"best_lambda", r.best_lambda},
              {"converged", r.refit.converged},
              {"coefficients", coefficient_json(raw, c)}};
    out.write_json("cv.json", j);
    return r.refit.converged ? exit_ok : exit_no_convergence;
}

struct SimulateFlags {
    std::string scenario;
    int trials = 30;
    std::uint64_t seed = 1;
    std::vector<std::string> methods{"lasso_all", "lasso_single", "transfer_lasso"};
    std::vector<double> rates{0.0, 0.25, 0.5, 0.75, 1.0};
    std::vector<double> alphas{0.0, 0.25, 0.5, 0.75, 1.0};
    int folds = 10;
    int n_lambda = 100;
    double tol = 1e-4;
    int n_per_step = 0;
    int steps = 0;
};

void write_report(const Output& out, const std::string& stem, const ExperimentReport& r) {
    out.write(stem + ".csv", r.to_csv());
    json j = r.to_json();
    j["command"] = "simulate";
    out.write_json(stem + ".json", j);
}

int cmd_simulate(const SimulateFlags& f, const Output& out) {
    const DriftKind kind = parse_drift_kind(f.scenario);
    DriftScenario sc = DriftScenario::defaults(kind);
    if (f.n_per_step > 0) sc.n_per_step = f.n_per_step;
    if (f.steps > 0) sc.n_steps = f.steps;
    ExperimentConfig cfg;
    cfg.trials = f.trials;
    cfg.seed = f.seed;
    cfg.methods.clear();
    for (const auto& m : f.methods) cfg.methods.push_back(parse_method(m));
    cfg.cv.alphas = f.alphas;
    cfg.cv.k = f.folds;
    cfg.cv.n_lambda = f.n_lambda;
    cfg.fit.tol = f.tol;

    out.prepare();
    switch (kind) {
        case DriftKind::abrupt:
        case DriftKind::gradual:
            write_report(out, drift_kind_name(kind), run_concept_drift(sc, cfg));
            break;
        case DriftKind::transfer: {
            const TransferReports r = run_transfer(sc, f.rates, cfg);
            write_report(out, "transfer_l2_error", r.l2_error);
            write_report(out, "transfer_correct_selected", r.correct_selected);
            break;
        }
        case DriftKind::classification_drift:
            write_report(out, "classification", run_classification_drift(sc, cfg));
            break;
    }
    return exit_ok;
}

int cmd_verify(const std::string& suite, const std::string& scale, const Output& out) {
    const auto reports = run_suites(suite, scale == "full" ? VerifyScale::full : VerifyScale::quick);
    json j = {{"command", "verify"}, {"suite", suite}, {"scale", scale}, {"suites", json::array()}};
    bool pass = true;
    for (const auto& r : reports) {
        j["suites"].push_back(r.record);
        pass = pass && r.pass;
        *out.log << r.name << ": " << (r.pass ? "pass" : "FAIL") << "\n";
    }
    j["pass"] = pass;
    out.prepare();
    out.write_json("verify.json", j);
    return pass ? exit_ok : exit_verification;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& log) {
    CLI::App app{"Transfer Lasso: fits, paths, cross-validation, simulations and verification"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string out_dir = ".";
    app.add_option("--out", out_dir, "directory for result files (created if missing)");

    DataFlags fit_flags;
    double lambda = 0.0;
    double fit_alpha = 1.0;
    bool intercept = false;
    auto* fit = app.add_subcommand("fit", "single fit at one (lambda, alpha)");
    fit_flags.add(fit);
    fit->add_option("--lambda", lambda, "penalty level")->required()->check(CLI::NonNegativeNumber);
    fit->add_option("--alpha", fit_alpha, "weight on the anchor at zero")->check(CLI::Range(0.0, 1.0));
    fit->add_flag("--intercept", intercept, "fit an unpenalized intercept");

    DataFlags path_flags;
    double path_alpha = 1.0;
    int n_lambda = 100;
    double ratio = 1e-4;
    auto* path = app.add_subcommand("path", "warm-started fits down a log-spaced lambda grid");
    path_flags.add(path);
    path->add_option("--alpha", path_alpha)->check(CLI::Range(0.0, 1.0));
    path->add_option("--n-lambda", n_lambda)->check(CLI::PositiveNumber);
    path->add_option("--ratio", ratio, "lambda_min / lambda_max")->check(CLI::Range(0.0, 1.0));

    DataFlags cv_flags;
    CvSpec cv_spec;
    auto* cv = app.add_subcommand("cv", "k-fold cross-validation over alpha and lambda");
    cv_flags.add(cv);
    cv->add_option("--folds", cv_spec.k)->check(CLI::Range(2, 1000000));
    cv->add_option("--alphas", cv_spec.alphas)->delimiter(',');
    cv->add_option("--n-lambda", cv_spec.n_lambda)->check(CLI::PositiveNumber);
    cv->add_option("--ratio", cv_spec.ratio)->check(CLI::Range(0.0, 1.0));
    cv->add_option("--seed", cv_spec.seed);
    cv->add_option("--metric", cv_spec.metric, "mse, deviance or auc")
        ->transform(CLI::CheckedTransformer(metric_names, CLI::ignore_case));

    SimulateFlags sim_flags;
    auto* sim = app.add_subcommand("simulate", "Monte-Carlo experiments");
    sim->add_option("--scenario", sim_flags.scenario)
        ->required()
        ->check(CLI::IsMember({"abrupt", "gradual", "transfer", "classification"}));
    sim->add_option("--trials", sim_flags.trials)->check(CLI::PositiveNumber);
    sim->add_option("--seed", sim_flags.seed);
    sim->add_option("--methods", sim_flags.methods)
        ->delimiter(',')
        ->check(CLI::IsMember({"lasso_all", "lasso_single", "transfer_lasso"}));
    sim->add_option("--rates", sim_flags.rates, "transfer rates")->delimiter(',');
    sim->add_option("--alphas", sim_flags.alphas)->delimiter(',');
    sim->add_option("--folds", sim_flags.folds)->check(CLI::Range(2, 1000000));
    sim->add_option("--n-lambda", sim_flags.n_lambda)->check(CLI::PositiveNumber);
    sim->add_option("--tol", sim_flags.tol)->check(CLI::PositiveNumber);
    sim->add_option("--n-per-step", sim_flags.n_per_step)->check(CLI::PositiveNumber);
    sim->add_option("--steps", sim_flags.steps)->check(CLI::PositiveNumber);

    std::string suite = "all";
    std::string scale = "quick";
    auto* verify = app.add_subcommand("verify", "property suites against independent oracles");
    verify->add_option("--suite", suite)->check(CLI::IsMember({"all", "threshold", "kkt", "unchanging", "signs", "bounds"}));
    verify->add_option("--scale", scale)->check(CLI::IsMember({"quick", "full"}));

    std::vector<std::string> argv_store{"tlasso"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        log << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        log << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        log << "error: " << e.what() << "\n";
        return exit_validation;
    }

    const Output out{out_dir, &log};
    try {
        if (*fit) return cmd_fit(fit_flags, lambda, fit_alpha, intercept, out);
        if (*path) return cmd_path(path_flags, path_alpha, n_lambda, ratio, out);
        if (*cv) return cmd_cv(cv_flags, cv_spec, out);
        if (*sim) return cmd_simulate(sim_flags, out);
        if (*verify) return cmd_verify(suite, scale, out);
    } catch (const IoError& e) {
        log << "error: " << e.what() << "\n";
        return exit_io;
    } catch (const ParseError& e) {
        log << "error: " << e.what() << "\n";
        return exit_io;
    } catch (const NoConvergence& e) {
        log << "error: " << e.what() << "\n";
        return exit_no_convergence;
    } catch (const Error& e) {
        log << "error: " << e.what() << "\n";
        return exit_validation;
    }
    return exit_validation;
}

}  // namespace tlasso::cli

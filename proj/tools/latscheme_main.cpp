// Batch experiment runner for signed-measure approximation schemes on Z and
// Z^2: builds exact laws and scheme measures, reports distances against
// leading-term predictions and rigorous bounds, and emits CSV/JSON tables
// plus gnuplot-ready data files.

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "latscheme/experiment.hpp"
#include "latscheme/hermite.hpp"

namespace {

using latscheme::ExperimentSpec;

std::vector<long> parse_n_list(const std::string& text) {
    std::vector<long> out;
    if (text.find(':') != std::string::npos) {
        long a = 0, b = 0, step = 0;
        if (std::sscanf(text.c_str(), "%ld:%ld:%ld", &a, &b, &step) != 3 || step <= 0)
            throw CLI::ValidationError("--n", "range syntax is a:b:step with step > 0");
        for (long v = a; v <= b; v += step) out.push_back(v);
    } else {
        std::istringstream is(text);
        std::string item;
        while (std::getline(is, item, ','))
            if (!item.empty()) out.push_back(std::stol(item));
    }
    if (out.empty()) throw CLI::ValidationError("--n", "empty n grid");
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ','))
        if (!item.empty()) out.push_back(std::stoi(item));
    return out;
}

std::map<std::string, std::string> parse_params(const std::vector<std::string>& kvs) {
    std::map<std::string, std::string> params;
    for (const auto& kv : kvs) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--param", "expected key=value, got " + kv);
        params[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    return params;
}

struct CliOptions {
    std::string model;
    std::vector<std::string> params;
    std::string n_text;
    std::string order_text = "0";
    std::string dist_text;
    std::string lambda_convention = "theorem";
    double tol = 1e-14;
    std::string out;
    std::string format = "csv";
    std::string config;
};

void apply_config_file(CliOptions& opt) {
    std::ifstream in(opt.config);
    if (!in) throw CLI::ValidationError("--config", "cannot open " + opt.config);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--config", "malformed line: " + line);
        std::string key = line.substr(0, eq), value = line.substr(eq + 1);
        if (key == "model") opt.model = value;
        else if (key == "param") opt.params.push_back(value);
        else if (key == "n") opt.n_text = value;
        else if (key == "order") opt.order_text = value;
        else if (key == "dist") opt.dist_text = value;
        else if (key == "lambda-convention") opt.lambda_convention = value;
        else if (key == "tol") opt.tol = std::strtod(value.c_str(), nullptr);
        else if (key == "out") opt.out = value;
        else if (key == "format") opt.format = value;
        else throw CLI::ValidationError("--config", "unknown key: " + key);
    }
}

ExperimentSpec build_spec(const CliOptions& opt) {
    ExperimentSpec spec;
    spec.model = opt.model;
    spec.params = parse_params(opt.params);
    spec.n_values = parse_n_list(opt.n_text);
    spec.orders = parse_int_list(opt.order_text);
    if (spec.orders.empty()) spec.orders = {0};
    if (!opt.dist_text.empty()) {
        std::istringstream is(opt.dist_text);
        std::string item;
        while (std::getline(is, item, ','))
            if (!item.empty()) spec.distances.push_back(item);
    }
    if (opt.lambda_convention == "theorem")
        spec.lambda_convention = ExperimentSpec::Lambda::Theorem;
    else if (opt.lambda_convention == "exact-sum")
        spec.lambda_convention = ExperimentSpec::Lambda::ExactSum;
    else
        throw CLI::ValidationError("--lambda-convention", "must be theorem or exact-sum");
    spec.tol = opt.tol;
    spec.out = opt.out;
    if (opt.format == "csv") spec.format = ExperimentSpec::Format::Csv;
    else if (opt.format == "json") spec.format = ExperimentSpec::Format::Json;
    else throw CLI::ValidationError("--format", "must be csv or json");
    return spec;
}

void add_common_options(CLI::App* cmd, CliOptions& opt, bool need_n) {
    cmd->add_option("--model", opt.model, "model name");
    cmd->add_option("--param", opt.params, "model parameter key=value (repeatable)");
    auto* n = cmd->add_option("--n", opt.n_text, "n grid: comma list or a:b:step");
    cmd->add_option("--order", opt.order_text, "scheme orders, comma list");
    if (need_n) n->required();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"signed-measure approximation schemes for lattice laws"};
    app.require_subcommand(1);

    CliOptions eopt;
    auto* experiment = app.add_subcommand("experiment", "run a (model, n, order) grid");
    add_common_options(experiment, eopt, false);
    experiment->add_option("--dist", eopt.dist_text, "distances: subset of local,kolmogorov,tv");
    experiment->add_option("--lambda-convention", eopt.lambda_convention, "theorem | exact-sum");
    experiment->add_option("--tol", eopt.tol, "truncation tolerance");
    experiment->add_option("--out", eopt.out, "output table path (plots share the stem)");
    experiment->add_option("--format", eopt.format, "csv | json");
    experiment->add_option("--config", eopt.config, "key=value config file with the same keys");

    auto* constants = app.add_subcommand("constants", "print the z/M/V constants table as CSV");

    CliOptions popt;
    auto* predict = app.add_subcommand("predict", "print leading-term distance predictions");
    add_common_options(predict, popt, true);

    CliOptions bopt;
    double beps = 0.5;
    auto* bound = app.add_subcommand("bound", "evaluate the rigorous TV norm bound");
    add_common_options(bound, bopt, true);
    bound->add_option("--eps", beps, "cut parameter epsilon");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*constants) {
            std::cout << latscheme::emit_constants_table();
            return 0;
        }
        if (*experiment) {
            if (!eopt.config.empty()) apply_config_file(eopt);
            if (eopt.model.empty() || eopt.n_text.empty())
                throw CLI::ValidationError("experiment", "needs --model and --n (or a config file)");
            ExperimentSpec spec = build_spec(eopt);
            auto rows = latscheme::run_experiment(spec);
            std::string table = spec.format == ExperimentSpec::Format::Csv
                                    ? latscheme::rows_to_csv(rows)
                                    : latscheme::rows_to_json(rows);
            if (spec.out.empty()) {
                std::cout << table;
            } else {
                std::string stem = spec.out;
                auto dot = stem.find_last_of('.');
                if (dot != std::string::npos) stem = stem.substr(0, dot);
                auto files = latscheme::emit_plot_data(rows, stem);
                std::cout << "wrote " << spec.out << "\n";
                for (const auto& f : files) std::cout << "wrote " << f << "\n";
            }
            return 0;
        }
        if (*predict) {
            ExperimentSpec spec = build_spec(popt);
            auto model = latscheme::models::make_model(spec.model, spec.params);
            std::printf("# model n lambda order r_eff d_local d_kolmogorov d_tv\n");
            for (long n : spec.n_values) {
                double lam = model->lambda(n);
                for (int order : spec.orders) {
                    int K = std::max(order + 3, 8);
                    auto alph = model->alphabet(n, K);
                    double beta = 0.0;
                    int r_eff = order;
                    for (int k = order + 1; k <= alph.K; ++k) {
                        double v = latscheme::elementary_from_powers(alph, k);
                        if (std::abs(v) > 1e-13) {
                            beta = v;
                            r_eff = k - 1;
                            break;
                        }
                    }
                    if (model->dimension() == 1) {
                        double s2 = model->exponent().variance(0);
                        std::printf("%s %ld %.12g %d %d %.12g %.12g %.12g\n", spec.model.c_str(), n,
                                    lam, order, r_eff,
                                    latscheme::predict_local(beta, s2, lam, r_eff),
                                    latscheme::predict_kolmogorov(beta, s2, lam, r_eff),
                                    latscheme::predict_tv(beta, s2, lam, r_eff));
                    } else {
                        auto bm = model->beta_map2d(n, order, K);
                        auto ex = model->exponent();
                        std::array<double, 2> sig{std::sqrt(ex.variance(0)), std::sqrt(ex.variance(1))};
                        std::printf("%s %ld %.12g %d %d %.12g n/a %.12g\n", spec.model.c_str(), n, lam,
                                    order, r_eff, latscheme::predict_local_md(bm, sig, lam, r_eff),
                                    latscheme::predict_tv_md(bm, sig, lam, r_eff));
                    }
                }
            }
            return 0;
        }
        if (*bound) {
            ExperimentSpec spec = build_spec(bopt);
            auto model = latscheme::models::make_model(spec.model, spec.params);
            std::printf("# model n order r lambda eps norm_A beta gamma M sigma2 phi_prime bound measured_tv\n");
            for (long n : spec.n_values) {
                auto law = model->exact_law(n);
                double lam = model->lambda(n);
                for (int order : spec.orders) {
                    int K = std::max(order + 3, 8);
                    auto alph = model->alphabet(n, K);
                    std::vector<double> e{1.0};
                    for (int k = 1; k <= order; ++k)
                        e.push_back(latscheme::elementary_from_powers(alph, k));
                    auto residue = latscheme::LaurentResidue::from_elementary(e);
                    auto scheme = latscheme::scheme_measure(model->exponent(), lam, residue, spec.tol);
                    auto d = latscheme::distance_tv(law, scheme);
                    auto be = latscheme::evaluate_norm_bound(*model, n, order, lam, residue, beps,
                                                             spec.tol);
                    if (!be) {
                        std::printf("%s %ld %d - %.12g %.3g - - - - - - n/a %.12g\n",
                                    spec.model.c_str(), n, order, lam, beps, d.value);
                        continue;
                    }
                    std::printf("%s %ld %d %d %.12g %.3g %.6g %.6g %.6g %.6g %.6g %.6g %.12g %.12g\n",
                                spec.model.c_str(), n, order, be->inputs.r, lam, beps,
                                be->inputs.norm_psi_minus_chi_A, be->inputs.beta_r1_eps,
                                be->inputs.gamma_eps, be->inputs.M, be->inputs.sigma2,
                                be->inputs.phi_prime_sup, be->bound, d.value);
                }
            }
            return 0;
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}

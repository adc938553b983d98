#include "latscheme/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "latscheme/hermite.hpp"

#include <json.hpp>

namespace latscheme {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<double> elementary_sequence(const FormalAlphabet& a, int up_to) {
    std::vector<double> e;
    e.push_back(1.0);
    for (int k = 1; k <= std::min(up_to, a.K); ++k) e.push_back(elementary_from_powers(a, k));
    return e;
}

// e_k from the power sums by truncated series exponentiation; used by the
// Laurent-coefficient norm estimate, which needs orders past the partition cap.
std::vector<double> elementary_by_series(const std::vector<double>& power_sums, int K) {
    std::vector<double> a(static_cast<std::size_t>(K) + 1, 0.0);
    for (int k = 1; k <= K && k < static_cast<int>(power_sums.size()); ++k)
        a[static_cast<std::size_t>(k)] =
            (k % 2 == 1 ? 1.0 : -1.0) * power_sums[static_cast<std::size_t>(k)] / k;
    std::vector<double> e(static_cast<std::size_t>(K) + 1, 0.0);
    e[0] = 1.0;
    for (int m = 1; m <= K; ++m) {
        double s = 0.0;
        for (int k = 1; k <= m; ++k)
            s += static_cast<double>(k) * a[static_cast<std::size_t>(k)] *
                 e[static_cast<std::size_t>(m - k)];
        e[static_cast<std::size_t>(m)] = s / m;
    }
    return e;
}

double exact_sum_lambda(const SignedLatticeMeasure& law, const LevyExponent& exponent) {
    double mean = 0.0, rate = 0.0;
    for (int axis = 0; axis < law.dimension(); ++axis) {
        mean += law.mean(axis);
        rate += exponent.mean(axis);
    }
    return mean / rate;
}

struct SchemeData {
    LaurentResidue residue;
    SignedLatticeMeasure scheme;
    int r_eff;
    double beta;           // 1D top coefficient; 0 when none found
    BetaMap beta2d;        // 2D
    bool have_beta;
};

SchemeData build_scheme(const models::Model& model, long n, int order, double lambda, double tol) {
    const int K = std::max(order + 3, 8);
    LevyExponent exponent = model.exponent();
    if (model.dimension() == 1) {
        FormalAlphabet alph = model.alphabet(n, K);
        auto e = elementary_sequence(alph, order);
        e.resize(static_cast<std::size_t>(order) + 1, 0.0);
        LaurentResidue residue = LaurentResidue::from_elementary(e);
        SignedLatticeMeasure scheme = scheme_measure(exponent, lambda, residue, tol);
        int r_eff = order;
        double beta = 0.0;
        bool have = false;
        for (int k = order + 1; k <= alph.K; ++k) {
            double v = elementary_from_powers(alph, k);
            if (std::abs(v) > 1e-13) {
                r_eff = k - 1;
                beta = v;
                have = true;
                break;
            }
        }
        return SchemeData{std::move(residue), std::move(scheme), r_eff, beta, {}, have};
    }
    LaurentResidue residue = model.residue2d(n, order, K);
    SignedLatticeMeasure scheme = scheme_measure(exponent, lambda, residue, tol);
    BetaMap beta = model.beta_map2d(n, order, K);
    int r_eff = order;
    bool have = !beta.empty();
    if (have) r_eff = beta.begin()->first[0] + beta.begin()->first[1] - 1;
    return SchemeData{std::move(residue), std::move(scheme), r_eff, 0.0, std::move(beta), have};
}

}  // namespace

std::optional<BoundEvaluation> evaluate_norm_bound(const models::Model& model, long n, int order,
                                                   double lambda_used,
                                                   const LaurentResidue& scheme_residue,
                                                   double eps, double tol) {
    auto p_opt = model.bernoulli_parameters(n);
    if (!p_opt || model.dimension() != 1) return std::nullopt;
    const std::vector<double>& p = *p_opt;
    LevyExponent exponent = model.exponent();
    double sigma2 = exponent.variance(0);
    if (lambda_used < 2.0 / sigma2) return std::nullopt;

    // partial power sums; the coefficient head below stops at Khead, past
    // which the 2^k amplification of double-precision noise takes over
    const int Khead = 45;
    std::vector<double> powers(static_cast<std::size_t>(Khead) + 1, 0.0);
    double sum_p = 0.0;
    {
        std::vector<double> cur(p.begin(), p.end());
        for (auto it = p.rbegin(); it != p.rend(); ++it) sum_p += *it;
        for (int k = 2; k <= Khead; ++k) {
            double s = 0.0;
            for (std::size_t j = 0; j < cur.size(); ++j) {
                cur[j] *= p[j];
                s += cur[j];
            }
            powers[static_cast<std::size_t>(k)] = s;
        }
    }
    // a lambda convention that differs from the exact Bernoulli sum shows up
    // as a first-order term e^{(sum p - lambda) w} in the residual
    double delta = sum_p - lambda_used;
    if (std::abs(delta) < 1e-9) delta = 0.0;
    powers[1] = delta;
    auto e = elementary_by_series(powers, Khead);

    // the bound is proved for the residue matched to the n-dependent sums;
    // the effective order is the first k past the scheme order with e_k != 0
    int r_eff = order;
    for (int k = order + 1; k <= Khead; ++k) {
        if (std::abs(e[static_cast<std::size_t>(k)]) > 1e-9) {
            r_eff = k - 1;
            break;
        }
    }

    // ||psi - chi||_A <= sum_{k>r} |e_k| 2^k. Head summed directly; the tail
    // uses the Cauchy bound |e_k| <= max_{|w|=4} |psi_n(w)| / 4^k, with the
    // circle maximum taken on a grid and doubled for coarseness.
    double norm = 0.0;
    for (int k = r_eff + 1; k <= Khead; ++k)
        norm += std::abs(e[static_cast<std::size_t>(k)]) * std::pow(2.0, k);
    norm += 1.0;   // cushion for the 2^k-amplified coefficient rounding
    {
        double log_max = -1e300;
        const int grid = 512;
        for (int i = 0; i < grid; ++i) {
            double ang = 2.0 * std::numbers::pi * i / grid;
            std::complex<double> w = std::polar(4.0, ang);
            double lg = delta * w.real();
            for (double pj : p) lg += std::log(std::abs(1.0 + pj * w)) - pj * w.real();
            log_max = std::max(log_max, lg);
        }
        double circle_max = 2.0 * std::exp(log_max);
        norm += circle_max * std::pow(2.0, -Khead);   // sum_{k>Khead} (2/4)^k
    }

    // pointwise residual psi_n - chi_n on [-eps, eps]
    const int samples = 257;
    std::vector<std::complex<double>> resid(samples);
    for (int i = 0; i < samples; ++i) {
        double xi = -eps + 2.0 * eps * i / (samples - 1);
        std::complex<double> w = std::polar(1.0, xi) - 1.0;
        std::complex<double> psi = std::exp((sum_p - lambda_used) * w);
        for (double pj : p) psi *= (1.0 + pj * w) * std::exp(-pj * w);
        std::complex<double> chi = 0.0, wp = 1.0;
        for (int k = 0; k <= order; ++k) {
            chi += e[static_cast<std::size_t>(k)] * wp;
            wp *= w;
        }
        resid[static_cast<std::size_t>(i)] = psi - chi;
    }
    double beta = beta_sup_estimate(resid, eps, r_eff);

    BoundInputs in{};
    in.lambda = lambda_used;
    in.r = r_eff;
    in.eps = eps;
    in.norm_psi_minus_chi_A = norm;
    in.beta_r1_eps = beta;
    in.gamma_eps = exponent.gamma_sup(eps);
    in.M = exponent.decay_constant();
    in.sigma2 = sigma2;
    in.phi_prime_sup = exponent.phi_prime_sup();

    double value;
    try {
        value = tv_norm_bound_1d(in);
    } catch (const bound_precondition_error&) {
        return std::nullopt;
    }

    // the experiment may run a different residue (limiting coefficients);
    // swap cost is measured exactly and added to keep the bound dominant
    std::vector<double> e_used(e.begin(), e.begin() + order + 1);
    LaurentResidue partial_residue = LaurentResidue::from_elementary(e_used);
    double defect = 0.0;
    {
        SignedLatticeMeasure a = scheme_measure(exponent, lambda_used, partial_residue, tol);
        SignedLatticeMeasure b = scheme_measure(exponent, lambda_used, scheme_residue, tol);
        DistanceResult d = distance_tv(a, b);
        defect = d.value + d.error_bar;
    }
    return BoundEvaluation{in, value + defect, defect};
}

std::vector<ExperimentRow> run_experiment(const ExperimentSpec& spec) {
    auto model = models::make_model(spec.model, spec.params);
    if (spec.n_values.empty()) throw std::invalid_argument("run_experiment: empty n grid");
    if (!(spec.tol > 0.0) || spec.tol > 1e-3)
        throw std::invalid_argument("run_experiment: tol must be in (0, 1e-3]");

    std::vector<std::string> kinds = spec.distances;
    if (kinds.empty()) {
        kinds = model->dimension() == 1
                    ? std::vector<std::string>{"kolmogorov", "local", "tv"}
                    : std::vector<std::string>{"local", "tv"};
    }
    std::sort(kinds.begin(), kinds.end());
    for (const auto& kind : kinds) {
        if (kind != "local" && kind != "kolmogorov" && kind != "tv")
            throw std::invalid_argument("run_experiment: unknown distance kind " + kind);
        if (kind == "kolmogorov" && model->dimension() != 1)
            throw std::invalid_argument("run_experiment: kolmogorov distance needs a 1D model");
    }

    std::vector<long> ns = spec.n_values;
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    for (long n : ns)
        if (n < 1 || n > model->max_n())
            throw std::invalid_argument("run_experiment: n out of the model's documented range");
    std::vector<int> orders = spec.orders;
    std::sort(orders.begin(), orders.end());
    orders.erase(std::unique(orders.begin(), orders.end()), orders.end());

    LevyExponent exponent = model->exponent();
    double sigma2_1d = model->dimension() == 1 ? exponent.variance(0) : 0.0;
    std::array<double, 2> sigma2d{};
    if (model->dimension() == 2)
        sigma2d = {std::sqrt(exponent.variance(0)), std::sqrt(exponent.variance(1))};

    std::vector<ExperimentRow> rows;
    for (long n : ns) {
        SignedLatticeMeasure law = model->exact_law(n);
        double lam_theorem = model->lambda(n);
        double lam = spec.lambda_convention == ExperimentSpec::Lambda::ExactSum
                         ? exact_sum_lambda(law, exponent)
                         : lam_theorem;
        for (int order : orders) {
            SchemeData sd = build_scheme(*model, n, order, lam, spec.tol);
            bool want_tv = std::find(kinds.begin(), kinds.end(), "tv") != kinds.end();
            std::optional<BoundEvaluation> be;
            if (want_tv && model->dimension() == 1)
                be = evaluate_norm_bound(*model, n, order, lam, sd.residue, 0.5, spec.tol);
            // classical bounds apply when the scheme is the plain Poisson law
            std::optional<double> classical;
            if (model->dimension() == 1 && sd.residue.order() == 0) {
                if (auto p = model->bernoulli_parameters(n)) {
                    double sum = 0.0;
                    for (double v : *p) sum += v;
                    if (std::abs(sum - lam) <= 1e-9 * std::max(1.0, sum))
                        classical = classical_tv_bounds(*p).chen_steele;
                }
            }
            for (const auto& kind : kinds) {
                ExperimentRow row;
                row.model = spec.model;
                row.n = n;
                row.lambda = lam;
                row.order = order;
                row.r_eff = sd.r_eff;
                row.kind = kind;
                DistanceResult d{};
                if (kind == "local")
                    d = distance_local(law, sd.scheme);
                else if (kind == "kolmogorov")
                    d = distance_kolmogorov(law, sd.scheme);
                else
                    d = distance_tv(law, sd.scheme);
                row.measured = d.value;
                row.error_bar = d.error_bar;
                if (model->predictions_available() && sd.have_beta) {
                    double pred = 0.0;
                    if (model->dimension() == 1) {
                        if (kind == "local")
                            pred = predict_local(sd.beta, sigma2_1d, lam, sd.r_eff);
                        else if (kind == "kolmogorov")
                            pred = predict_kolmogorov(sd.beta, sigma2_1d, lam, sd.r_eff);
                        else
                            pred = predict_tv(sd.beta, sigma2_1d, lam, sd.r_eff);
                    } else {
                        if (kind == "local")
                            pred = predict_local_md(sd.beta2d, sigma2d, lam, sd.r_eff);
                        else
                            pred = predict_tv_md(sd.beta2d, sigma2d, lam, sd.r_eff);
                    }
                    row.predicted = pred;
                    if (pred > 0.0) row.ratio = row.measured / pred;
                }
                if (kind == "tv") {
                    std::optional<double> b;
                    if (be) b = be->bound;
                    if (classical) b = b ? std::min(*b, *classical) : *classical;
                    row.bound = b;
                }
                rows.push_back(std::move(row));
            }
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const ExperimentRow& a, const ExperimentRow& b) {
        if (a.n != b.n) return a.n < b.n;
        if (a.order != b.order) return a.order < b.order;
        return a.kind < b.kind;
    });

    if (!spec.out.empty()) {
        write_text_file(spec.out, spec.format == ExperimentSpec::Format::Csv ? rows_to_csv(rows)
                                                                             : rows_to_json(rows));
    }
    return rows;
}

std::string rows_to_csv(const std::vector<ExperimentRow>& rows) {
    std::ostringstream os;
    os << "# latscheme-experiment-csv v1\n";
    os << "model,n,lambda,order,r_eff,kind,measured,error_bar,predicted,ratio,bound\n";
    for (const auto& r : rows) {
        os << r.model << "," << r.n << "," << fmt(r.lambda) << "," << r.order << "," << r.r_eff
           << "," << r.kind << "," << fmt(r.measured) << "," << fmt(r.error_bar) << ",";
        os << (r.predicted ? fmt(*r.predicted) : "n/a") << ",";
        os << (r.ratio ? fmt(*r.ratio) : "n/a") << ",";
        os << (r.bound ? fmt(*r.bound) : "n/a") << "\n";
    }
    return os.str();
}

std::string rows_to_json(const std::vector<ExperimentRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json o;
        o["model"] = r.model;
        o["n"] = r.n;
        o["lambda"] = r.lambda;
        o["order"] = r.order;
        o["r_eff"] = r.r_eff;
        o["kind"] = r.kind;
        o["measured"] = r.measured;
        o["error_bar"] = r.error_bar;
        if (r.predicted) o["predicted"] = *r.predicted;
        if (r.ratio) o["ratio"] = *r.ratio;
        if (r.bound) o["bound"] = *r.bound;
        arr.push_back(std::move(o));
    }
    return arr.dump(2) + "\n";
}

std::string emit_constants_table() {
    std::ostringstream os;
    os << "# latscheme-constants-csv v1\n";
    os << "r,z_r1,M_r,V_r\n";
    for (int r = 0; r <= 10; ++r)
        os << r << "," << fmt(smallest_abs_zero(r + 1)) << "," << fmt(M_const(r)) << ","
           << fmt(V_const(r)) << "\n";
    return os.str();
}

std::vector<std::string> emit_plot_data(const std::vector<ExperimentRow>& rows,
                                        const std::string& stem) {
    if (rows.empty()) throw std::invalid_argument("emit_plot_data: no rows");
    std::set<std::pair<std::string, std::string>> groups;
    for (const auto& r : rows) groups.insert({r.model, r.kind});
    std::vector<std::string> written;
    for (const auto& [model, kind] : groups) {
        std::ostringstream os;
        os << "# n lambda measured predicted\n";
        for (const auto& r : rows) {
            if (r.model != model || r.kind != kind) continue;
            os << r.n << " " << fmt(r.lambda) << " " << fmt(r.measured) << " "
               << (r.predicted ? fmt(*r.predicted) : "nan") << "\n";
        }
        std::string path = stem + "_" + model + "_" + kind + ".dat";
        write_text_file(path, os.str());
        written.push_back(path);
    }
    // scaled-constant comparison files for 2D models with quoted constants
    std::set<std::string> models_seen;
    for (const auto& r : rows) models_seen.insert(r.model);
    for (const auto& name : models_seen) {
        std::map<std::string, std::string> params;
        std::unique_ptr<models::Model> model;
        try {
            model = models::make_model(name, params);
        } catch (const std::exception&) {
            continue;
        }
        auto quoted = model->quoted_scaled_constants();
        if (!quoted) continue;
        for (const std::string kind : {"local", "tv"}) {
            std::ostringstream os;
            os << "# n scaled_measured quoted_constant direct_constant\n";
            bool any = false;
            for (const auto& r : rows) {
                if (r.model != name || r.kind != kind || r.order > 1) continue;
                double logn = std::log(static_cast<double>(r.n));
                double scaled = kind == "local" ? r.measured * logn * logn : r.measured * logn;
                double power = kind == "local" ? 2.0 : 1.0;
                double direct = r.predicted ? *r.predicted * std::pow(r.lambda, power)
                                            : std::nan("");
                double q = kind == "local" ? quoted->first : quoted->second;
                os << r.n << " " << fmt(scaled) << " " << fmt(q) << " " << fmt(direct) << "\n";
                any = true;
            }
            if (!any) continue;
            std::string path = stem + "_" + name + "_" + kind + "_candidates.dat";
            write_text_file(path, os.str());
            written.push_back(path);
        }
    }
    return written;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
}

}  // namespace latscheme

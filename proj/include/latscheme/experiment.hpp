#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "latscheme/bounds.hpp"
#include "latscheme/models.hpp"

namespace latscheme {

struct ExperimentSpec {
    std::string model;
    std::map<std::string, std::string> params;
    std::vector<long> n_values;
    std::vector<int> orders{0};
    std::vector<std::string> distances;   // default: all applicable to the model
    enum class Lambda { Theorem, ExactSum };
    Lambda lambda_convention = Lambda::Theorem;
    double tol = 1e-14;
    std::string out;   // output path; empty = in-memory only
    enum class Format { Csv, Json };
    Format format = Format::Csv;
};

struct ExperimentRow {
    std::string model;
    long n = 0;
    double lambda = 0.0;
    int order = 0;
    int r_eff = 0;
    std::string kind;
    double measured = 0.0;
    double error_bar = 0.0;
    std::optional<double> predicted;
    std::optional<double> ratio;    // measured / predicted
    std::optional<double> bound;    // applicable rigorous bound
};

/// Runs the (n, order) grid: exact law vs scheme measure, distances with
/// error bars, leading-term predictions, and rigorous bounds where their
/// preconditions hold. Rows are sorted by (n, order, kind).
std::vector<ExperimentRow> run_experiment(const ExperimentSpec& spec);

std::string rows_to_csv(const std::vector<ExperimentRow>& rows);
std::string rows_to_json(const std::vector<ExperimentRow>& rows);

/// CSV table of r, z_{r+1}, M_r, V_r for r <= 10.
std::string emit_constants_table();

/// One gnuplot-ready .dat file per (model, kind): columns n, lambda,
/// measured, predicted. For 2D models carrying quoted constants an extra
/// _candidates file compares the scaled measured values against both the
/// quoted and the directly substituted constant. Returns the file paths.
std::vector<std::string> emit_plot_data(const std::vector<ExperimentRow>& rows,
                                        const std::string& stem);

/// Rigorous-bound inputs for Bernoulli-sum models: the residue is rebuilt
/// from the n-dependent partial power sums (so the Taylor-match hypothesis
/// holds exactly), the A-norm input is the Laurent-coefficient upper bound
/// sum_{k>r} |e_k| 2^k, and beta_{r+1}(eps) is estimated from dense samples
/// of psi_n - chi_n.
struct BoundEvaluation {
    BoundInputs inputs;
    double bound;           // theorem bound plus the exact residue-swap defect
    double scheme_defect;   // d_TV between the partial-sum scheme and the scheme in use
};
std::optional<BoundEvaluation> evaluate_norm_bound(const models::Model& model, long n, int order,
                                                   double lambda_used,
                                                   const LaurentResidue& scheme_residue,
                                                   double eps, double tol);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace latscheme

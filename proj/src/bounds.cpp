#include "latscheme/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace latscheme {

ClassicalBounds classical_tv_bounds(std::span<const double> p) {
    double sum = 0.0, sum2 = 0.0;
    bool all_equal = !p.empty();
    for (double pi : p) {
        if (pi < 0.0 || pi > 1.0)
            throw std::invalid_argument("classical_tv_bounds: parameters must lie in [0, 1]");
        sum += pi;
        sum2 += pi * pi;
        if (pi != p[0]) all_equal = false;
    }
    ClassicalBounds out{};
    out.le_cam = 2.0 * sum2;
    out.chen_steele = sum > 0.0 ? 2.0 * (1.0 - std::exp(-sum)) * sum2 / sum : 0.0;
    if (all_equal && !p.empty()) out.prohorov = 2.0 * sum / static_cast<double>(p.size());
    return out;
}

double wiener_embedding_constant() { return std::numbers::pi / std::sqrt(3.0); }

double smoothing_constant(int r) {
    if (r < 0) throw std::invalid_argument("smoothing_constant: r must be >= 0");
    double fact = std::tgamma(static_cast<double>(r) + 2.0);   // (r+1)!
    return std::sqrt(2.0 * std::numbers::pi / 3.0 * std::tgamma(r + 1.5)) / fact;
}

double tv_norm_bound_1d(const BoundInputs& in) {
    if (!(in.eps > 0.0) || in.eps >= std::numbers::pi)
        throw std::invalid_argument("tv_norm_bound_1d: eps must lie in (0, pi)");
    if (in.lambda < 0.0 || in.sigma2 <= 0.0 || in.M <= 0.0 || in.beta_r1_eps < 0.0 ||
        in.norm_psi_minus_chi_A < 0.0 || in.gamma_eps < 0.0 || in.r < 0)
        throw std::invalid_argument("tv_norm_bound_1d: malformed inputs");
    if (in.gamma_eps > in.sigma2 / 2.0)
        throw bound_precondition_error("tv_norm_bound_1d: gamma(eps) exceeds sigma^2/2; shrink eps");
    if (in.lambda < 2.0 / in.sigma2)
        throw bound_precondition_error("tv_norm_bound_1d: lambda below 2/sigma^2");
    const double ch = wiener_embedding_constant();
    double term1 = in.norm_psi_minus_chi_A *
                   (1.0 + ch * (std::sqrt(2.0 / (std::numbers::pi * in.eps)) +
                                in.lambda * in.phi_prime_sup)) *
                   std::exp(-in.lambda * in.M * in.eps * in.eps / 4.0);
    double term2 = smoothing_constant(in.r) * in.beta_r1_eps *
                   (1.0 / in.eps + std::sqrt(5.0 * (in.r + 1.0))) /
                   std::pow(in.sigma2 * in.lambda / 2.0, in.r / 2.0 + 0.25);
    return term1 + term2;
}

double beta_sup_estimate(std::span<const std::complex<double>> samples, double eps, int r) {
    std::size_t want = static_cast<std::size_t>(4 * (r + 2));
    if (samples.size() < want)
        throw std::invalid_argument("beta_sup_estimate: need at least 4(r+2) samples");
    if (!(eps > 0.0)) throw std::invalid_argument("beta_sup_estimate: eps must be > 0");
    const int order = r + 1;
    const std::size_t n = samples.size();
    const double h = 2.0 * eps / static_cast<double>(n - 1);
    // order-(r+1) forward differences over sliding windows
    std::vector<std::complex<double>> diff(samples.begin(), samples.end());
    for (int level = 0; level < order; ++level) {
        for (std::size_t i = 0; i + 1 < n - static_cast<std::size_t>(level); ++i)
            diff[i] = diff[i + 1] - diff[i];
    }
    double best = 0.0;
    double scale = std::pow(h, order);
    for (std::size_t i = 0; i + static_cast<std::size_t>(order) < n; ++i)
        best = std::max(best, std::abs(diff[i]) / scale);
    return 1.05 * best;
}

}  // namespace latscheme

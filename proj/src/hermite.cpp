#include "latscheme/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace latscheme {

namespace {

constexpr int kMaxOrder = 24;   // internal table; public contract stops at 20/21

const std::vector<std::vector<long long>>& coeff_table() {
    static const std::vector<std::vector<long long>> table = [] {
        std::vector<std::vector<long long>> t;
        t.push_back({1});      // H_0
        t.push_back({0, 1});   // H_1
        for (int r = 1; r < kMaxOrder; ++r) {
            const auto& h = t.back();
            std::vector<long long> next(h.size() + 1, 0);
            // H_{r+1} = x H_r - H_r'
            for (std::size_t i = 0; i < h.size(); ++i) next[i + 1] += h[i];
            for (std::size_t i = 1; i < h.size(); ++i)
                next[i - 1] -= static_cast<long long>(i) * h[i];
            t.push_back(std::move(next));
        }
        return t;
    }();
    return table;
}

double eval_coeffs(const std::vector<long long>& c, double x) {
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * x + static_cast<double>(c[i]);
    return v;
}

}  // namespace

std::vector<long long> hermite_coeffs(int r) {
    if (r < 0 || r > 20) throw std::invalid_argument("hermite_coeffs: r must be in [0, 20]");
    return coeff_table()[static_cast<std::size_t>(r)];
}

double hermite_eval(int r, double alpha) {
    if (r < 0 || r > kMaxOrder) throw std::invalid_argument("hermite_eval: order out of range");
    return eval_coeffs(coeff_table()[static_cast<std::size_t>(r)], alpha);
}

double G_eval(int r, double alpha) {
    if (r < 0 || r > 20) throw std::invalid_argument("G_eval: r must be in [0, 20]");
    double sign = r % 2 == 0 ? 1.0 : -1.0;
    return sign * hermite_eval(r, alpha) * std::exp(-alpha * alpha / 2.0);
}

std::vector<double> hermite_zeros(int r) {
    if (r < 1 || r > 21) throw std::invalid_argument("hermite_zeros: r must be in [1, 21]");
    const auto& c = coeff_table()[static_cast<std::size_t>(r)];
    // sign scan on (0, 12] then bisection; zeros are simple and symmetric,
    // and the zero at 0 (odd r) is appended separately
    std::vector<double> pos;
    const double step = 1e-3;
    double prev = eval_coeffs(c, 1e-9);
    for (double x = step; x <= 12.0 + step / 2; x += step) {
        double cur = eval_coeffs(c, x);
        if ((prev < 0.0) != (cur < 0.0)) {
            double a = std::max(x - step, 1e-9), b = x;
            for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
                double mid = (a + b) / 2.0, fm = eval_coeffs(c, mid);
                if (fm == 0.0) { a = b = mid; break; }
                if ((eval_coeffs(c, a) < 0.0) != (fm < 0.0)) b = mid;
                else a = mid;
            }
            pos.push_back((a + b) / 2.0);
        }
        prev = cur;
    }
    std::vector<double> zeros;
    for (auto it = pos.rbegin(); it != pos.rend(); ++it) zeros.push_back(-*it);
    if (r % 2 == 1) zeros.push_back(0.0);
    zeros.insert(zeros.end(), pos.begin(), pos.end());
    return zeros;
}

double smallest_abs_zero(int r) {
    if (r < 1 || r > 21) throw std::invalid_argument("smallest_abs_zero: r must be in [1, 21]");
    if (r % 2 == 1) return 0.0;
    auto zeros = hermite_zeros(r);
    double best = zeros.front();
    for (double z : zeros) {
        if (std::abs(z) < std::abs(best)) best = z;
    }
    return std::abs(best);
}

double M_const(int r) {
    if (r < 0 || r > 16) throw std::invalid_argument("M_const: r must be in [0, 16]");
    return std::abs(G_eval(r, smallest_abs_zero(r + 1)));
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(static_cast<std::size_t>(n), 0.0);
    weights.assign(static_cast<std::size_t>(n), 0.0);
    int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        nodes[static_cast<std::size_t>(i)] = -z;
        nodes[static_cast<std::size_t>(n - 1 - i)] = z;
        double w = 2.0 / ((1.0 - z * z) * pp * pp);
        weights[static_cast<std::size_t>(i)] = w;
        weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
}

double V_const(int r) {
    if (r < 0 || r > 16) throw std::invalid_argument("V_const: r must be in [0, 16]");
    auto zeros = hermite_zeros(r + 1);
    std::vector<double> cuts{-12.0};
    for (double z : zeros)
        if (z > -12.0 && z < 12.0) cuts.push_back(z);
    cuts.push_back(12.0);
    std::vector<double> x, w;
    gauss_legendre(64, x, w);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double a = cuts[i], b = cuts[i + 1];
        double piece = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            double t = (x[j] + 1.0) * (b - a) / 2.0 + a;
            piece += w[j] * std::abs(G_eval(r + 1, t));
        }
        total += piece * (b - a) / 2.0;
    }
    return total;
}

double predict_local(double beta, double sigma2, double lambda, int r) {
    if (!(lambda > 0.0) || !(sigma2 > 0.0))
        throw std::invalid_argument("predict_local: lambda and sigma2 must be > 0");
    if (beta == 0.0) return 0.0;
    return std::abs(beta) * M_const(r + 1) /
           (std::sqrt(2.0 * std::numbers::pi) * std::pow(sigma2 * lambda, r / 2.0 + 1.0));
}

double predict_kolmogorov(double beta, double sigma2, double lambda, int r) {
    if (!(lambda > 0.0) || !(sigma2 > 0.0))
        throw std::invalid_argument("predict_kolmogorov: lambda and sigma2 must be > 0");
    if (beta == 0.0) return 0.0;
    return std::abs(beta) * M_const(r) /
           (std::sqrt(2.0 * std::numbers::pi) * std::pow(sigma2 * lambda, (r + 1.0) / 2.0));
}

double predict_tv(double beta, double sigma2, double lambda, int r) {
    if (!(lambda > 0.0) || !(sigma2 > 0.0))
        throw std::invalid_argument("predict_tv: lambda and sigma2 must be > 0");
    if (beta == 0.0) return 0.0;
    return std::abs(beta) * V_const(r) /
           (std::sqrt(2.0 * std::numbers::pi) * std::pow(sigma2 * lambda, (r + 1.0) / 2.0));
}

namespace {

double hermite_combo(const BetaMap& beta, std::array<double, 2> sigma, double x, double y) {
    double s = 0.0;
    for (const auto& [alpha, b] : beta) {
        if (b == 0.0) continue;
        double sa = std::pow(sigma[0], alpha[0]) * std::pow(sigma[1], alpha[1]);
        s += b * hermite_eval(alpha[0], x) * hermite_eval(alpha[1], y) / sa;
    }
    return s;
}

double weighted_combo_abs(const BetaMap& beta, std::array<double, 2> sigma, double x, double y) {
    return std::exp(-(x * x + y * y) / 2.0) * std::abs(hermite_combo(beta, sigma, x, y));
}

}  // namespace

double hermite_sup_2d(const BetaMap& beta, std::array<double, 2> sigma) {
    double best = 0.0, bx = 0.0, by = 0.0;
    const int n = 200;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            double x = -6.0 + 12.0 * i / n, y = -6.0 + 12.0 * j / n;
            double v = weighted_combo_abs(beta, sigma, x, y);
            if (v > best) { best = v; bx = x; by = y; }
        }
    double h = 12.0 / n;
    for (int round = 0; round < 8; ++round) {
        double cbx = bx, cby = by;
        for (int i = -10; i <= 10; ++i)
            for (int j = -10; j <= 10; ++j) {
                double x = cbx + h * i / 10.0, y = cby + h * j / 10.0;
                double v = weighted_combo_abs(beta, sigma, x, y);
                if (v > best) { best = v; bx = x; by = y; }
            }
        h /= 5.0;
    }
    return best;
}

double hermite_integral_2d(const BetaMap& beta, std::array<double, 2> sigma) {
    // outer axis: 10 panels x 40 Gauss-Legendre nodes = 400 nodes; inner axis:
    // the integrand |sum beta H| is a polynomial modulus, so each row is split
    // at the sign changes of that polynomial and integrated piecewise
    const int panels = 10, nodes = 40;
    std::vector<double> x0, w0;
    gauss_legendre(nodes, x0, w0);
    std::vector<double> ys, wy;
    for (int p = 0; p < panels; ++p) {
        double a = -10.0 + 20.0 * p / panels, b = -10.0 + 20.0 * (p + 1) / panels;
        for (int j = 0; j < nodes; ++j) {
            ys.push_back((x0[static_cast<std::size_t>(j)] + 1.0) * (b - a) / 2.0 + a);
            wy.push_back(w0[static_cast<std::size_t>(j)] * (b - a) / 2.0);
        }
    }
    auto row_integral = [&](double y) {
        // sign changes of x -> combo(x, y) on [-10, 10]
        std::vector<double> cuts{-10.0};
        const int scan = 800;
        double prev = hermite_combo(beta, sigma, -10.0, y);
        for (int i = 1; i <= scan; ++i) {
            double x = -10.0 + 20.0 * i / scan;
            double cur = hermite_combo(beta, sigma, x, y);
            if ((prev < 0.0) != (cur < 0.0)) {
                double a = x - 20.0 / scan, b = x;
                for (int it = 0; it < 80 && b - a > 1e-13; ++it) {
                    double mid = 0.5 * (a + b);
                    double fm = hermite_combo(beta, sigma, mid, y);
                    if ((fm < 0.0) == (prev < 0.0)) a = mid;
                    else b = mid;
                }
                cuts.push_back(0.5 * (a + b));
            }
            prev = cur;
        }
        cuts.push_back(10.0);
        double row = 0.0;
        for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
            double lo = cuts[c], hi = cuts[c + 1];
            // keep pieces short so 40 nodes resolve the Gaussian factor
            int sub = std::max(1, static_cast<int>((hi - lo) / 2.5) + 1);
            for (int s = 0; s < sub; ++s) {
                double a = lo + (hi - lo) * s / sub, b = lo + (hi - lo) * (s + 1) / sub;
                double piece = 0.0;
                for (int j = 0; j < nodes; ++j) {
                    double x = (x0[static_cast<std::size_t>(j)] + 1.0) * (b - a) / 2.0 + a;
                    piece += w0[static_cast<std::size_t>(j)] * weighted_combo_abs(beta, sigma, x, y);
                }
                row += piece * (b - a) / 2.0;
            }
        }
        return row;
    };
    double total = 0.0;
    for (std::size_t i = 0; i < ys.size(); ++i) total += wy[i] * row_integral(ys[i]);
    return total;
}

double predict_local_md(const BetaMap& beta, std::array<double, 2> sigma, double lambda, int r) {
    if (!(lambda > 0.0)) throw std::invalid_argument("predict_local_md: lambda must be > 0");
    for (const auto& [alpha, b] : beta) {
        if (b != 0.0 && alpha[0] + alpha[1] != r + 1)
            throw std::invalid_argument("predict_local_md: beta indices must have |alpha| = r+1");
    }
    double sup = hermite_sup_2d(beta, sigma);
    double pref = 2.0 * std::numbers::pi * sigma[0] * sigma[1] *
                  std::pow(lambda, (r + 3.0) / 2.0);   // (r + d + 1)/2 with d = 2
    return sup / pref;
}

double predict_tv_md(const BetaMap& beta, std::array<double, 2> sigma, double lambda, int r) {
    if (!(lambda > 0.0)) throw std::invalid_argument("predict_tv_md: lambda must be > 0");
    for (const auto& [alpha, b] : beta) {
        if (b != 0.0 && alpha[0] + alpha[1] != r + 1)
            throw std::invalid_argument("predict_tv_md: beta indices must have |alpha| = r+1");
    }
    double integral = hermite_integral_2d(beta, sigma);
    return integral / (2.0 * std::numbers::pi * std::pow(lambda, (r + 1.0) / 2.0));
}

double kolmogorov_to_gaussian(const SignedLatticeMeasure& law, double center, double scale) {
    if (law.dimension() != 1)
        throw std::invalid_argument("kolmogorov_to_gaussian: law must be 1D");
    if (!(scale > 0.0)) throw std::invalid_argument("kolmogorov_to_gaussian: scale must be > 0");
    auto Phi = [](double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); };
    long lo = law.offset()[0];
    long hi = lo + static_cast<long>(law.extent(0)) - 1;
    double best = 0.0, cdf = 0.0;
    for (long k = lo; k <= hi; ++k) {
        cdf += law.weight(k);
        // the lattice CDF is constant on [k, k+1); compare against Phi at both ends
        double zl = (static_cast<double>(k) - center) / scale;
        double zr = (static_cast<double>(k) + 1.0 - center) / scale;
        best = std::max({best, std::abs(cdf - Phi(zl)), std::abs(cdf - Phi(zr))});
    }
    best = std::max(best, Phi((static_cast<double>(lo) - center) / scale));
    return best;
}

double gaussian_kolmogorov(double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("gaussian_kolmogorov: lambda must be > 0");
    SignedLatticeMeasure pois = compound_poisson_measure(LevyExponent::poisson(), lambda, 1e-14);
    return kolmogorov_to_gaussian(pois, lambda, std::sqrt(lambda));
}

}  // namespace latscheme

#pragma once

#include <array>
#include <map>
#include <vector>

#include "latscheme/lattice_measure.hpp"

namespace latscheme {

/// Coefficients of the probabilists' Hermite polynomial H_r (ascending powers,
/// exact integers; recurrence H_{r+1} = x H_r - H_r'). 0 <= r <= 20.
std::vector<long long> hermite_coeffs(int r);

double hermite_eval(int r, double alpha);

/// G_r(alpha) = d^r/dalpha^r e^{-alpha^2/2} = (-1)^r H_r(alpha) e^{-alpha^2/2}.
double G_eval(int r, double alpha);

/// Smallest absolute value of a zero of H_r; 0 for odd r, bisection to 1e-13
/// for even r. 1 <= r <= 21.
double smallest_abs_zero(int r);

/// All real zeros of H_r, ascending. 1 <= r <= 21.
std::vector<double> hermite_zeros(int r);

/// M_r = |G_r(z_{r+1})|, the global extremum of |G_r|. r <= 16.
double M_const(int r);

/// V_r = integral over R of |G_{r+1}|, by sign-split Gauss-Legendre on
/// [-12, 12] (the Gaussian tail beyond is below every tolerance used here).
double V_const(int r);

/// Leading asymptotic distance terms for a scheme satisfying the order-r
/// Taylor-match condition with top coefficient beta.
double predict_local(double beta, double sigma2, double lambda, int r);
double predict_kolmogorov(double beta, double sigma2, double lambda, int r);
double predict_tv(double beta, double sigma2, double lambda, int r);

using BetaMap = std::map<std::array<int, 2>, double>;

/// 2D analogues. beta maps multi-indices alpha with |alpha| = r+1 to the
/// coefficients of (i xi_1)^{alpha_1} (i xi_2)^{alpha_2} in psi - chi;
/// sigma holds the per-coordinate standard deviations per unit lambda.
double predict_local_md(const BetaMap& beta, std::array<double, 2> sigma, double lambda, int r);
double predict_tv_md(const BetaMap& beta, std::array<double, 2> sigma, double lambda, int r);

/// sup_x exp(-|x|^2/2) |sum_alpha beta^alpha H_alpha(x) / sigma^alpha|,
/// coarse grid on [-6,6]^2 plus local refinement to 1e-8.
double hermite_sup_2d(const BetaMap& beta, std::array<double, 2> sigma);

/// Integral over R^2 of exp(-|x|^2/2) |sum_alpha beta^alpha H_alpha(x) / sigma^alpha|,
/// composite tensor Gauss-Legendre on [-10,10]^2 with 400 nodes per axis.
double hermite_integral_2d(const BetaMap& beta, std::array<double, 2> sigma);

/// Kolmogorov distance between a 1D lattice law standardized by
/// (center, scale) and the standard Gaussian.
double kolmogorov_to_gaussian(const SignedLatticeMeasure& law, double center, double scale);

/// d_K between the standardized Poisson(lambda) and N(0,1).
double gaussian_kolmogorov(double lambda);

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace latscheme

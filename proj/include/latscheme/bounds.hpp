#pragma once

#include <complex>
#include <optional>
#include <span>
#include <stdexcept>

namespace latscheme {

/// The hypotheses of the norm-estimate theorem are part of its statement;
/// violating them is reported as this error rather than a vacuous value.
class bound_precondition_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ClassicalBounds {
    std::optional<double> prohorov;   // only when all parameters coincide
    double le_cam;
    double chen_steele;
};

/// Classical Poisson-approximation bounds for a sum of independent Bernoulli
/// variables: Prohorov 2*lambda/n (identical parameters), Le Cam 2*sum p^2,
/// Chen-Steele 2*(1 - e^{-sum p}) * sum p^2 / sum p.
ClassicalBounds classical_tv_bounds(std::span<const double> p);

struct BoundInputs {
    double lambda;
    int r;
    double eps;
    double norm_psi_minus_chi_A;   // ||psi - chi||_A (or a safe upper estimate)
    double beta_r1_eps;            // sup_{|xi|<=eps} |(psi - chi)^{(r+1)}|
    double gamma_eps;              // sup_{|xi|<=eps} |phi'' + sigma^2|
    double M;                      // Re phi(xi) <= -M xi^2 on [-pi, pi]
    double sigma2;
    double phi_prime_sup;          // sup over the torus of |phi'|
};

/// C_H = pi / sqrt(3).
double wiener_embedding_constant();

/// C_{r+1} = 1/(r+1)! * sqrt(2 pi / 3 * Gamma(r + 3/2)).
double smoothing_constant(int r);

/// Two-term rigorous bound on ||mu^ - nu^||_A = d_TV(mu, nu):
///   ||psi-chi||_A (1 + C_H (sqrt(2/(pi eps)) + lambda ||phi'||_inf)) e^{-lambda M eps^2/4}
/// + C_{r+1} beta_{r+1}(eps) (1/eps + sqrt(5(r+1))) / (sigma^2 lambda / 2)^{r/2 + 1/4}.
/// Throws bound_precondition_error unless gamma(eps) <= sigma^2/2 and
/// lambda >= 2/sigma^2.
double tv_norm_bound_1d(const BoundInputs& in);

/// Conservative estimate of sup |(psi-chi)^{(r+1)}| on [-eps, eps] from
/// equally spaced samples, as 1.05 times the largest order-(r+1) divided
/// difference. Needs at least 4(r+2) samples.
double beta_sup_estimate(std::span<const std::complex<double>> samples, double eps, int r);

}  // namespace latscheme

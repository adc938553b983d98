#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace latscheme {

/// Finitely supported real-weighted measure on Z or Z^2. The support window
/// is kept minimal (boundary rows/columns with all |w| < 1e-300 are trimmed)
/// and any mass discarded by a truncation is carried in truncated_mass so
/// distances can report an error bar.
class SignedLatticeMeasure {
public:
    /// 1D measure: weights[i] sits at lattice point offset + i.
    SignedLatticeMeasure(long offset, std::vector<double> weights, double truncated_mass = 0.0);
    /// 2D measure: weights in row-major order, weights[ix*ny + iy] at
    /// (offset[0] + ix, offset[1] + iy).
    SignedLatticeMeasure(std::array<long, 2> offset, std::size_t nx, std::size_t ny,
                         std::vector<double> weights, double truncated_mass = 0.0);

    static SignedLatticeMeasure dirac(long k);
    static SignedLatticeMeasure dirac2(long k1, long k2);

    int dimension() const { return dim_; }
    std::array<long, 2> offset() const { return offset_; }
    std::size_t extent(int axis) const { return extent_[static_cast<std::size_t>(axis)]; }
    const std::vector<double>& weights() const { return w_; }
    double truncated_mass() const { return tm_; }

    double weight(long k) const;            // 1D
    double weight(long k1, long k2) const;  // 2D

    double total_mass() const;
    double tv_norm() const;                 // sum |w|
    double mean(int axis = 0) const;

private:
    int dim_;
    std::array<long, 2> offset_;
    std::array<std::size_t, 2> extent_;   // extent_[1] == 1 in 1D
    std::vector<double> w_;
    double tm_;

    void trim();
};

/// Compound-Poisson Levy exponent phi(xi) = sum_j c_j (e^{i j xi} - 1) on Z,
/// or a coordinate-factorized product of such exponents on Z^2. Carries the
/// derived constants m (mean per unit lambda), sigma^2 (variance per unit
/// lambda) and M with Re phi_i(theta) <= -M theta^2 on [-pi, pi].
class LevyExponent {
public:
    explicit LevyExponent(std::map<long, double> jumps);
    LevyExponent(std::map<long, double> jumps_x, std::map<long, double> jumps_y);

    static LevyExponent poisson();   // jumps {1: 1}

    int dimension() const { return dim_; }
    const std::map<long, double>& jumps(int axis = 0) const;
    double mean(int axis = 0) const;
    double variance(int axis = 0) const;
    /// M = 0.99 * min over a 4096-point grid on (0, pi] of -Re phi_i(theta)/theta^2.
    double decay_constant() const { return M_; }
    double total_jump_rate(int axis = 0) const;

    std::complex<double> phi_axis(int axis, double theta) const;
    std::complex<double> phi(double xi) const;                   // 1D
    std::complex<double> phi2(double xi, double zeta) const;     // 2D
    std::complex<double> phi_second_axis(int axis, double theta) const;
    /// sup over the torus of |phi'| (1D) or max over axes (2D), 4096-point grid.
    double phi_prime_sup() const;
    /// sup over [-eps, eps] of |phi'' + sigma^2| (max over axes in 2D).
    double gamma_sup(double eps) const;

private:
    int dim_;
    std::array<std::map<long, double>, 2> jumps_;
    std::array<double, 2> m_{};
    std::array<double, 2> sigma2_{};
    double M_ = 0.0;

    void validate_axis(int axis) const;
    void derive();
};

/// Coefficients of a Laurent polynomial residue chi. In 1D,
/// chi(xi) = sum_k b_k (e^{i xi} - 1)^k + sum_{k>=1} c_k (e^{-i xi} - 1)^k
/// with b_0 = 1 (so chi(0) = 1 and the scheme keeps total mass 1). In 2D the
/// coefficients are indexed by multi-indices alpha, for products
/// prod_i (e^{i xi_i} - 1)^{alpha_i}.
class LaurentResidue {
public:
    /// 1D residue; b has size order+1 with b[0] == 1, c has the same size
    /// with c[0] ignored (must be 0).
    LaurentResidue(std::vector<double> b, std::vector<double> c);
    /// 2D residue; coeffs[{0,0}] must be 1.
    explicit LaurentResidue(std::map<std::array<int, 2>, double> coeffs);

    static LaurentResidue identity(int dimension = 1);
    /// chi = sum_k e[k] (e^{i xi}-1)^k, e[0] must be 1.
    static LaurentResidue from_elementary(const std::vector<double>& e);

    int dimension() const { return dim_; }
    int order() const;
    const std::vector<double>& b() const { return b_; }
    const std::vector<double>& c() const { return c_; }
    const std::map<std::array<int, 2>, double>& coeffs2d() const { return coeffs2d_; }

    std::complex<double> chi(double xi) const;                  // 1D
    std::complex<double> chi2(double xi, double zeta) const;    // 2D

private:
    int dim_;
    std::vector<double> b_, c_;                       // 1D
    std::map<std::array<int, 2>, double> coeffs2d_;   // 2D
};

/// Full discrete convolution; truncated masses propagate as
/// a.tm * ||b||_TV + b.tm * ||a||_TV.
SignedLatticeMeasure convolve(const SignedLatticeMeasure& a, const SignedLatticeMeasure& b);

/// Law with Fourier transform e^{lambda phi(xi)}, built as the Poisson
/// mixture of jump-law convolution powers. The Poisson tail beyond the
/// truncation order is below tol and is recorded in truncated_mass.
/// Accepts lambda == 0 (returns the Dirac mass at 0).
SignedLatticeMeasure compound_poisson_measure(const LevyExponent& exponent, double lambda,
                                              double tol = 1e-14);

/// Finitely supported signed measure whose Fourier transform is chi.
SignedLatticeMeasure residue_atoms(const LaurentResidue& residue);

/// convolve(compound_poisson_measure(...), residue_atoms(residue)).
SignedLatticeMeasure scheme_measure(const LevyExponent& exponent, double lambda,
                                    const LaurentResidue& residue, double tol = 1e-14);

/// Correction added to the Poisson(lambda) weight at k by the residue
/// 1 + beta (e^{i xi}-1)^{r+1}: beta * c(r+1, k, lambda) * pois(lambda, k)
/// with the Poisson-Charlier polynomial
/// c(r+1, k, lambda) = sum_{l=0}^{(r+1) and k} (-1)^{r+1-l} C(r+1,l) lambda^-l k!/(k-l)!.
double charlier_scheme_values(double lambda, double beta, int r, long k);

struct DistanceResult {
    double value;
    double error_bar;   // sum of both truncated masses
};

DistanceResult distance_local(const SignedLatticeMeasure& a, const SignedLatticeMeasure& b);
DistanceResult distance_kolmogorov(const SignedLatticeMeasure& a, const SignedLatticeMeasure& b);
DistanceResult distance_tv(const SignedLatticeMeasure& a, const SignedLatticeMeasure& b);

/// Values of the Fourier transform on the uniform grid xi = 2 pi j / n
/// (tensor grid in 2D, row-major). Alias-free when n >= support width.
struct FourierGrid {
    int dimension;
    std::size_t n;                             // points per axis
    std::vector<std::complex<double>> values;  // size n (1D) or n*n (2D)
};

FourierGrid fourier_sample(const SignedLatticeMeasure& m, std::size_t n);

/// Inverse DFT followed by sum of absolute coefficients. For samples produced
/// by fourier_sample on a wide-enough grid this equals the TV norm.
double wiener_norm(const FourierGrid& samples);

/// Grid size used when none is imposed: next power of two >= 2 * width.
std::size_t default_grid_size(const SignedLatticeMeasure& m);

/// Line-oriented text format: header "dim offset... extent... truncated_mass",
/// then one weight per line in row-major order, 17 significant digits.
std::string serialize_measure(const SignedLatticeMeasure& m);
SignedLatticeMeasure parse_measure(const std::string& text);

}  // namespace latscheme

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "latscheme/bigint.hpp"
#include "latscheme/hermite.hpp"
#include "latscheme/lattice_measure.hpp"
#include "latscheme/symfun.hpp"

namespace latscheme::models {

inline constexpr double kEulerGamma = 0.57721566490153286;

double harmonic_number(long n);

/// Exact law of a sum of independent Bernoulli variables (iterated two-atom
/// convolution).
SignedLatticeMeasure bernoulli_exact_law(std::span<const double> p);

/// Exact law of the cycle count of an Ewens(theta) random permutation via the
/// Feller coupling p_j = theta / (theta + j - 1).
SignedLatticeMeasure ewens_cycle_law(long n, double theta);

/// (lambda, residue alphabet) for the Ewens cycle model: lambda = theta H_n + k_const,
/// p_k = sum_{j>=1} (theta/(theta+j-1))^k, p_1 = 0.
std::pair<double, FormalAlphabet> ewens_scheme_params(long n, double theta, double k_const, int K);

/// Unsigned Stirling numbers of the first kind |s(n, k)|, n <= 60.
BigInt stirling_first_kind(int n, int k);

/// Number of monic irreducible polynomials of each degree 1..n_max over F_q,
/// by the Moebius sum (1/n) sum_{d|n} mu(n/d) q^d. q <= 16, n_max <= 64.
std::vector<BigInt> irreducible_counts(int q, int n_max);

enum class FactorCounting { Distinct, WithMultiplicity };

/// Exact law of the number of irreducible factors of a uniform random monic
/// degree-n polynomial over F_q, big-integer DP over factor degrees.
/// q in {2,3,4,5}, n <= 40.
SignedLatticeMeasure fq_factor_law(int q, int n, FactorCounting counted);

/// (lambda, alphabet) per the factor-counting statistic:
/// distinct:        lambda = log n + R(1/q) + gamma, p_k = zeta(k) + I(q^-k);
/// with multiplicity: lambda = log n + S(1/q) + gamma,
///                  p_k = zeta(k) + (-1)^{k-1} sum_m |J_m| / (q^m - 1)^k.
std::pair<double, FormalAlphabet> fq_scheme_params(int q, long n, FactorCounting counted, int K);

/// Exact law of the number of connected components of a uniform random map
/// on n points: connected counts from exact rational series arithmetic, then
/// the exponential-formula DP. n <= 40.
SignedLatticeMeasure functional_graph_law(int n);

/// lambda = (log 2n + gamma)/2, p_k = (1 - 2^-k) zeta(k).
std::pair<double, FormalAlphabet> functional_graph_params(long n, int K);

/// Exact law of the number of distinct prime divisors of a uniform random
/// integer in [1, n], from a smallest-prime-factor sieve. n <= 10^7.
SignedLatticeMeasure prime_omega_law(long n);

/// lambda = log log n + gamma, p_k = zeta(k) + P(k).
std::pair<double, FormalAlphabet> prime_omega_params(long n, int K);

/// Exact 2D law of per-colour cycle counts of a uniform random 2-coloured
/// permutation, by convolving the n independent increment laws. n <= 3000.
SignedLatticeMeasure coloured_perm_law(long n, int d = 2);

struct ColouredPermParams {
    double lambda;              // H_n
    LevyExponent exponent;      // factorized, per-coordinate jump mass 1/d at +1
    FormalAlphabet alphabet;    // p_k = zeta(k), p_1 = 0
    BetaMap beta_order1;        // H1 coefficients of the basic scheme
};
ColouredPermParams coloured_perm_params(long n, int d, int K);

/// 2D residue of the coloured-permutation scheme: the expansion of
/// sum_k e_k ((u + v)/2)^k in the basis u^a v^b, truncated at the given order.
LaurentResidue coloured_residue(const FormalAlphabet& alphabet, int order);

/// Exact 2D law of prime divisors counted by residue class modulo a,
/// restricted to phi(a) = 2 (a in {3, 4, 6}). n <= 10^7.
SignedLatticeMeasure prime_residue_law(long n, int a);

/// Smallest-prime-factor sieve, built once and shared immutably.
class SpfSieve {
public:
    explicit SpfSieve(long n);
    long limit() const { return limit_; }
    int omega(long k) const;
    /// distinct prime divisors of k classified by residue class mod a;
    /// classes lists the unit residues, primes dividing a are skipped.
    void omega_by_residue(long k, int a, std::span<const int> classes, std::span<int> out) const;
    bool is_prime(long k) const;

private:
    long limit_;
    std::vector<std::uint32_t> spf_;
};

/// Shared sieve cache (grows to the largest requested limit).
std::shared_ptr<const SpfSieve> shared_sieve(long n);

// ---------------------------------------------------------------------------
// Uniform model interface for the experiment runner.

class Model {
public:
    virtual ~Model() = default;
    virtual const std::string& name() const = 0;
    virtual int dimension() const { return 1; }
    virtual long max_n() const = 0;
    virtual SignedLatticeMeasure exact_law(long n) const = 0;
    /// lambda(n) in the convention of the model's limit theorem.
    virtual double lambda(long n) const = 0;
    virtual LevyExponent exponent() const = 0;
    /// Residue alphabet used to build scheme coefficients. Models whose
    /// residues must track n (partial power sums) return the n-dependent
    /// alphabet; the others return the limiting one.
    virtual FormalAlphabet alphabet(long n, int K) const = 0;
    virtual bool uses_partial_alphabet() const { return false; }
    /// True when leading-term predictions are available (they are not for
    /// the prime residue-class model, whose limiting residue has no closed
    /// expression).
    virtual bool predictions_available() const { return true; }
    /// Feller/Bernoulli parameter sequence when the law is a Bernoulli sum;
    /// used to evaluate the residue pointwise for the rigorous norm bound.
    virtual std::optional<std::vector<double>> bernoulli_parameters(long n) const {
        (void)n;
        return std::nullopt;
    }
    /// 2D models: residue of the given order and the H1 coefficients of the
    /// next correction.
    virtual LaurentResidue residue2d(long n, int order, int K) const;
    virtual BetaMap beta_map2d(long n, int order, int K) const;
    /// Constants quoted in the source text for scaled distances, when they
    /// differ from direct theorem substitution (coloured permutations):
    /// first = d_L * (log n)^2 candidate, second = d_TV * log n candidate.
    virtual std::optional<std::pair<double, double>> quoted_scaled_constants() const {
        return std::nullopt;
    }
};

std::unique_ptr<Model> make_model(const std::string& name,
                                  const std::map<std::string, std::string>& params);
std::vector<std::string> model_names();

}  // namespace latscheme::models

#pragma once

#include <string>
#include <vector>

#include "latscheme/bigint.hpp"

namespace latscheme {

/// Integer partition, parts sorted non-increasing, all parts >= 1.
struct IntegerPartition {
    std::vector<int> parts;

    int size() const;        // |L|
    int length() const { return static_cast<int>(parts.size()); }
    /// multiplicity of part k
    int multiplicity(int k) const;
};

/// All partitions of k in reverse-lexicographic order. 0 <= k <= 40.
std::vector<IntegerPartition> partitions(int k);

/// z_L = prod_k k^{m_k} m_k!, the centralizer size of a permutation of cycle
/// type L.
BigInt z_of_partition(const IntegerPartition& L);

/// Numeric specialisation of the power-sum basis: p[k] holds the value
/// assigned to the k-th power sum, 1 <= k <= K.
struct FormalAlphabet {
    int K = 0;
    std::vector<double> p;   // index 0 unused, p[1..K]
    std::string label;

    double power_sum(int k) const;
};

FormalAlphabet make_alphabet(std::vector<double> power_sums_from_1, std::string label);

/// e_k = sum over partitions L of k of (-1)^{|L|-len(L)} / z_L * p_L.
double elementary_from_powers(const FormalAlphabet& a, int k);

/// Componentwise sum of power sums; truncates to the smaller K.
FormalAlphabet alphabet_sum(const FormalAlphabet& a, const FormalAlphabet& b);

/// Sign-alternated copy: p_k -> (-1)^{k-1} p_k.
FormalAlphabet alphabet_epsilon(const FormalAlphabet& a);

/// zeta(k) for integer 2 <= k <= 40, direct sum plus Euler-Maclaurin tail.
double zeta_value(int k);

/// Prime zeta P(k) = sum over primes p^-k, 2 <= k <= 40, via the Moebius
/// identity P(k) = sum_n mu(n)/n log zeta(nk).
double prime_zeta_value(int k);

/// Hurwitz-type sum_{j>=0} (shift+j)^-s for real s > 1, shift > 0.
double hurwitz_zeta_real(double s, double shift);

/// sum_{j>=1} j^-s for real s > 1 (Euler-Maclaurin).
double zeta_real(double s);

/// Moebius function for small arguments.
int moebius(int n);

/// Euler totient for small arguments.
int totient(int n);

/// key=value text block (label, K, p2..pK).
std::string serialize_alphabet(const FormalAlphabet& a);
FormalAlphabet parse_alphabet(const std::string& text);

}  // namespace latscheme

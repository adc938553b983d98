#include "latscheme/models.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace latscheme::models {

namespace {
constexpr double kZeroThreshold = 1e-300;
}

double harmonic_number(long n) {
    if (n < 0) throw std::invalid_argument("harmonic_number: n must be >= 0");
    double h = 0.0;
    for (long j = n; j >= 1; --j) h += 1.0 / static_cast<double>(j);
    return h;
}

SignedLatticeMeasure bernoulli_exact_law(std::span<const double> p) {
    std::vector<double> w{1.0};
    long offset = 0;
    double discarded = 0.0;
    for (double pj : p) {
        if (pj < 0.0 || pj > 1.0)
            throw std::invalid_argument("bernoulli_exact_law: parameters must lie in [0, 1]");
        std::vector<double> next(w.size() + 1, 0.0);
        double q = 1.0 - pj;
        for (std::size_t i = 0; i < w.size(); ++i) {
            next[i] += q * w[i];
            next[i + 1] += pj * w[i];
        }
        std::size_t lo = 0, hi = next.size();
        while (hi - lo > 1 && std::abs(next[hi - 1]) < kZeroThreshold) {
            discarded += std::abs(next[hi - 1]);
            --hi;
        }
        while (hi - lo > 1 && std::abs(next[lo]) < kZeroThreshold) {
            discarded += std::abs(next[lo]);
            ++lo;
        }
        offset += static_cast<long>(lo);
        w.assign(next.begin() + static_cast<std::ptrdiff_t>(lo),
                 next.begin() + static_cast<std::ptrdiff_t>(hi));
    }
    return SignedLatticeMeasure(offset, std::move(w), discarded);
}

SignedLatticeMeasure ewens_cycle_law(long n, double theta) {
    if (n < 1 || n > 200000) throw std::invalid_argument("ewens_cycle_law: n out of range");
    if (!(theta > 0.0)) throw std::invalid_argument("ewens_cycle_law: theta must be > 0");
    std::vector<double> p(static_cast<std::size_t>(n));
    for (long j = 1; j <= n; ++j)
        p[static_cast<std::size_t>(j - 1)] = theta / (theta + static_cast<double>(j - 1));
    return bernoulli_exact_law(p);
}

std::pair<double, FormalAlphabet> ewens_scheme_params(long n, double theta, double k_const, int K) {
    if (!(theta > 0.0)) throw std::invalid_argument("ewens_scheme_params: theta must be > 0");
    if (K < 2) throw std::invalid_argument("ewens_scheme_params: K must be >= 2");
    double lambda = theta * harmonic_number(n) + k_const;
    std::vector<double> p(static_cast<std::size_t>(K), 0.0);
    for (int k = 2; k <= K; ++k)
        p[static_cast<std::size_t>(k - 1)] =
            std::pow(theta, k) * hurwitz_zeta_real(static_cast<double>(k), theta);
    std::ostringstream label;
    label << "ewens(theta=" << theta << ")";
    return {lambda, make_alphabet(std::move(p), label.str())};
}

BigInt stirling_first_kind(int n, int k) {
    if (n < 0 || n > 60 || k < 0) throw std::invalid_argument("stirling_first_kind: out of range");
    if (k > n) return BigInt(0);
    if (n == 0) return BigInt(k == 0 ? 1 : 0);
    // |s(n+1, k)| = |s(n, k-1)| + n |s(n, k)|
    std::vector<BigInt> row(static_cast<std::size_t>(n) + 1, BigInt(0));
    row[0] = BigInt(1);   // row for n = 0
    for (int m = 1; m <= n; ++m) {
        std::vector<BigInt> next(static_cast<std::size_t>(n) + 1, BigInt(0));
        for (int j = 1; j <= m; ++j) {
            BigInt v = row[static_cast<std::size_t>(j - 1)];
            BigInt scaled = row[static_cast<std::size_t>(j)];
            scaled.mul_small(static_cast<std::uint32_t>(m - 1));
            v += scaled;
            next[static_cast<std::size_t>(j)] = std::move(v);
        }
        row = std::move(next);
    }
    return row[static_cast<std::size_t>(k)];
}

std::vector<BigInt> irreducible_counts(int q, int n_max) {
    if (q < 2 || q > 16) throw std::invalid_argument("irreducible_counts: q must be in [2, 16]");
    if (n_max < 1 || n_max > 64) throw std::invalid_argument("irreducible_counts: n_max must be in [1, 64]");
    std::vector<BigInt> counts(static_cast<std::size_t>(n_max) + 1, BigInt(0));
    for (int n = 1; n <= n_max; ++n) {
        BigInt sum(0);
        for (int d = 1; d <= n; ++d) {
            if (n % d != 0) continue;
            int mu = moebius(n / d);
            if (mu == 0) continue;
            BigInt term = BigInt::power(static_cast<unsigned long long>(q), static_cast<unsigned>(d));
            sum += mu > 0 ? term : -term;
        }
        std::uint32_t rem = sum.divmod_small(static_cast<std::uint32_t>(n));
        if (rem != 0) throw std::logic_error("irreducible_counts: Moebius sum not divisible by n");
        counts[static_cast<std::size_t>(n)] = std::move(sum);
    }
    return counts;
}

SignedLatticeMeasure fq_factor_law(int q, int n, FactorCounting counted) {
    if (q < 2 || q > 5) throw std::invalid_argument("fq_factor_law: q must be in [2, 5]");
    if (n < 1 || n > 40) throw std::invalid_argument("fq_factor_law: n must be in [1, 40]");
    auto irr = irreducible_counts(q, n);
    std::size_t dim = static_cast<std::size_t>(n) + 1;
    // A[deg][count]
    std::vector<std::vector<BigInt>> A(dim, std::vector<BigInt>(dim, BigInt(0)));
    A[0][0] = BigInt(1);
    for (int d = 1; d <= n; ++d) {
        const BigInt& jd = irr[static_cast<std::size_t>(d)];
        // factor polynomial for degree-d irreducibles: entries (deg, count, coeff)
        struct Term {
            int deg, cnt;
            BigInt coeff;
        };
        std::vector<Term> factor;
        if (counted == FactorCounting::Distinct) {
            for (int s = 0; s * d <= n; ++s) {
                BigInt choose = BigInt::binomial(jd, static_cast<unsigned>(s));
                if (choose.is_zero()) continue;
                if (s == 0) {
                    factor.push_back({0, 0, BigInt(1)});
                    continue;
                }
                for (int m = 0; d * (s + m) <= n; ++m) {
                    BigInt mult = BigInt::binomial(BigInt(m + s - 1), static_cast<unsigned>(s - 1));
                    factor.push_back({d * (s + m), s, choose * mult});
                }
            }
        } else {
            for (int t = 0; t * d <= n; ++t) {
                BigInt coeff = BigInt::binomial(jd + BigInt(t) - BigInt(1), static_cast<unsigned>(t));
                factor.push_back({d * t, t, std::move(coeff)});
            }
        }
        std::vector<std::vector<BigInt>> next(dim, std::vector<BigInt>(dim, BigInt(0)));
        for (std::size_t deg = 0; deg < dim; ++deg)
            for (std::size_t cnt = 0; cnt <= deg; ++cnt) {
                if (A[deg][cnt].is_zero()) continue;
                for (const auto& t : factor) {
                    std::size_t nd = deg + static_cast<std::size_t>(t.deg);
                    std::size_t nc = cnt + static_cast<std::size_t>(t.cnt);
                    if (nd >= dim || nc >= dim) continue;
                    next[nd][nc] += A[deg][cnt] * t.coeff;
                }
            }
        A = std::move(next);
    }
    BigInt total(0);
    for (std::size_t k = 0; k < dim; ++k) total += A[static_cast<std::size_t>(n)][k];
    if (!(total == BigInt::power(static_cast<unsigned long long>(q), static_cast<unsigned>(n))))
        throw std::logic_error("fq_factor_law: counts do not sum to q^n");
    double denom = total.to_double();
    std::vector<double> w(dim, 0.0);
    for (std::size_t k = 0; k < dim; ++k) w[k] = A[static_cast<std::size_t>(n)][k].to_double() / denom;
    return SignedLatticeMeasure(0, std::move(w));
}

std::pair<double, FormalAlphabet> fq_scheme_params(int q, long n, FactorCounting counted, int K) {
    if (q < 2 || q > 16) throw std::invalid_argument("fq_scheme_params: q must be in [2, 16]");
    if (n < 1) throw std::invalid_argument("fq_scheme_params: n must be >= 1");
    if (K < 2) throw std::invalid_argument("fq_scheme_params: K must be >= 2");
    auto irr = irreducible_counts(q, 64);
    auto irr_d = [&](int m) { return irr[static_cast<std::size_t>(m)].to_double(); };
    // R(z) = sum_{k>=2} mu(k)/k log(1/(1-q z^k)) and S likewise with phi(k)
    double z = 1.0 / static_cast<double>(q);
    auto series = [&](bool with_totient) {
        double s = 0.0;
        for (int k = 2; k <= 128; ++k) {
            double x = static_cast<double>(q) * std::pow(z, k);
            double lg = -std::log1p(-x);
            if (lg < 1e-18) break;
            double coeff = with_totient ? static_cast<double>(totient(k))
                                        : static_cast<double>(moebius(k));
            s += coeff / static_cast<double>(k) * lg;
        }
        return s;
    };
    double lambda;
    std::vector<double> p(static_cast<std::size_t>(K), 0.0);
    if (counted == FactorCounting::Distinct) {
        lambda = std::log(static_cast<double>(n)) + series(false) + kEulerGamma;
        for (int k = 2; k <= K; ++k) {
            double ik = 0.0;
            for (int m = 1; m <= 64; ++m) {
                double term = irr_d(m) * std::pow(z, static_cast<double>(m) * k);
                ik += term;
                if (term < 1e-18 && m > 4) break;
            }
            p[static_cast<std::size_t>(k - 1)] = zeta_value(k) + ik;
        }
    } else {
        lambda = std::log(static_cast<double>(n)) + series(true) + kEulerGamma;
        for (int k = 2; k <= K; ++k) {
            double sk = 0.0;
            for (int m = 1; m <= 64; ++m) {
                double denom = std::pow(static_cast<double>(q), m) - 1.0;
                double term = irr_d(m) / std::pow(denom, k);
                sk += term;
                if (term < 1e-18 && m > 4) break;
            }
            p[static_cast<std::size_t>(k - 1)] = zeta_value(k) + (k % 2 == 1 ? 1.0 : -1.0) * sk;
        }
    }
    std::ostringstream label;
    label << "fq(q=" << q << "," << (counted == FactorCounting::Distinct ? "distinct" : "mult") << ")";
    return {lambda, make_alphabet(std::move(p), label.str())};
}

SignedLatticeMeasure functional_graph_law(int n) {
    if (n < 1 || n > 40) throw std::invalid_argument("functional_graph_law: n must be in [1, 40]");
    std::size_t dim = static_cast<std::size_t>(n) + 1;
    // EGF of rooted trees: t_j = j^{j-1}/j!
    std::vector<BigRat> t(dim, BigRat(0));
    for (int j = 1; j <= n; ++j)
        t[static_cast<std::size_t>(j)] =
            BigRat(BigInt::power(static_cast<unsigned long long>(j), static_cast<unsigned>(j - 1)),
                   BigInt::factorial(static_cast<unsigned>(j)));
    // u = 1/(1 - t), c = log u
    std::vector<BigRat> u(dim, BigRat(0)), c(dim, BigRat(0));
    u[0] = BigRat(1);
    for (int m = 1; m <= n; ++m) {
        BigRat s(0);
        for (int k = 1; k <= m; ++k)
            s += t[static_cast<std::size_t>(k)] * u[static_cast<std::size_t>(m - k)];
        u[static_cast<std::size_t>(m)] = s;
    }
    for (int m = 1; m <= n; ++m) {
        BigRat s(0);
        for (int k = 1; k < m; ++k)
            s += BigRat(k) * c[static_cast<std::size_t>(k)] * u[static_cast<std::size_t>(m - k)];
        c[static_cast<std::size_t>(m)] = u[static_cast<std::size_t>(m)] - s / BigRat(m);
    }
    // conn_j = j! [z^j] c must be integral
    std::vector<BigInt> conn(dim, BigInt(0));
    for (int j = 1; j <= n; ++j) {
        BigRat v = c[static_cast<std::size_t>(j)] *
                   BigRat(BigInt::factorial(static_cast<unsigned>(j)), BigInt(1));
        if (!v.is_integer())
            throw std::logic_error("functional_graph_law: connected count is not an integer");
        conn[static_cast<std::size_t>(j)] = v.num();
    }
    // binomials up to n
    std::vector<std::vector<BigInt>> choose(dim, std::vector<BigInt>(dim, BigInt(0)));
    for (std::size_t i = 0; i < dim; ++i) {
        choose[i][0] = BigInt(1);
        for (std::size_t j = 1; j <= i; ++j)
            choose[i][j] = choose[i - 1][j - 1] + (j <= i - 1 ? choose[i - 1][j] : BigInt(0));
    }
    // exponential-formula DP on component counts
    std::vector<std::vector<BigInt>> f(dim, std::vector<BigInt>(dim, BigInt(0)));
    f[0][0] = BigInt(1);
    for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= j; ++k) {
            BigInt s(0);
            for (int sz = 1; sz + k - 1 <= j; ++sz) {
                BigInt term = choose[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(sz - 1)] *
                              conn[static_cast<std::size_t>(sz)] *
                              f[static_cast<std::size_t>(j - sz)][static_cast<std::size_t>(k - 1)];
                s += term;
            }
            f[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = std::move(s);
        }
    BigInt total(0);
    for (std::size_t k = 0; k < dim; ++k) total += f[static_cast<std::size_t>(n)][k];
    if (!(total == BigInt::power(static_cast<unsigned long long>(n), static_cast<unsigned>(n))))
        throw std::logic_error("functional_graph_law: counts do not sum to n^n");
    double denom = total.to_double();
    std::vector<double> w(dim, 0.0);
    for (std::size_t k = 0; k < dim; ++k) w[k] = f[static_cast<std::size_t>(n)][k].to_double() / denom;
    return SignedLatticeMeasure(0, std::move(w));
}

std::pair<double, FormalAlphabet> functional_graph_params(long n, int K) {
    if (n < 1) throw std::invalid_argument("functional_graph_params: n must be >= 1");
    if (K < 2) throw std::invalid_argument("functional_graph_params: K must be >= 2");
    double lambda = 0.5 * (std::log(2.0 * static_cast<double>(n)) + kEulerGamma);
    std::vector<double> p(static_cast<std::size_t>(K), 0.0);
    for (int k = 2; k <= K; ++k)
        p[static_cast<std::size_t>(k - 1)] = (1.0 - std::pow(2.0, -k)) * zeta_value(k);
    return {lambda, make_alphabet(std::move(p), "functional-graph")};
}

// ---------------------------------------------------------------------------
// Sieve-backed models

SpfSieve::SpfSieve(long n) : limit_(n) {
    if (n < 1 || n > 10000000L) throw std::invalid_argument("SpfSieve: n must be in [1, 1e7]");
    spf_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (long i = 2; i <= n; ++i) {
        if (spf_[static_cast<std::size_t>(i)] == 0) {
            for (long j = i; j <= n; j += i)
                if (spf_[static_cast<std::size_t>(j)] == 0)
                    spf_[static_cast<std::size_t>(j)] = static_cast<std::uint32_t>(i);
        }
    }
}

int SpfSieve::omega(long k) const {
    if (k < 1 || k > limit_) throw std::invalid_argument("SpfSieve::omega: out of range");
    int m = 0;
    long last = 0;
    while (k > 1) {
        long p = spf_[static_cast<std::size_t>(k)];
        if (p != last) {
            ++m;
            last = p;
        }
        k /= p;
    }
    return m;
}

void SpfSieve::omega_by_residue(long k, int a, std::span<const int> classes, std::span<int> out) const {
    for (auto& v : out) v = 0;
    long last = 0;
    while (k > 1) {
        long p = spf_[static_cast<std::size_t>(k)];
        if (p != last) {
            last = p;
            int res = static_cast<int>(p % a);
            for (std::size_t i = 0; i < classes.size(); ++i)
                if (classes[i] == res) ++out[i];
        }
        k /= p;
    }
}

bool SpfSieve::is_prime(long k) const {
    if (k < 2 || k > limit_) return false;
    return spf_[static_cast<std::size_t>(k)] == static_cast<std::uint32_t>(k);
}

std::shared_ptr<const SpfSieve> shared_sieve(long n) {
    static std::mutex mu;
    static std::shared_ptr<const SpfSieve> cached;
    std::lock_guard<std::mutex> lock(mu);
    if (!cached || cached->limit() < n) cached = std::make_shared<const SpfSieve>(n);
    return cached;
}

SignedLatticeMeasure prime_omega_law(long n) {
    if (n < 1 || n > 10000000L) throw std::invalid_argument("prime_omega_law: n must be in [1, 1e7]");
    auto sieve = shared_sieve(n);
    std::vector<long> counts(32, 0);
    int maxm = 0;
    for (long k = 1; k <= n; ++k) {
        int m = sieve->omega(k);
        ++counts[static_cast<std::size_t>(m)];
        maxm = std::max(maxm, m);
    }
    std::vector<double> w(static_cast<std::size_t>(maxm) + 1, 0.0);
    for (int m = 0; m <= maxm; ++m)
        w[static_cast<std::size_t>(m)] =
            static_cast<double>(counts[static_cast<std::size_t>(m)]) / static_cast<double>(n);
    return SignedLatticeMeasure(0, std::move(w));
}

std::pair<double, FormalAlphabet> prime_omega_params(long n, int K) {
    if (n < 3) throw std::invalid_argument("prime_omega_params: n must be >= 3");
    if (K < 2) throw std::invalid_argument("prime_omega_params: K must be >= 2");
    double lambda = std::log(std::log(static_cast<double>(n))) + kEulerGamma;
    std::vector<double> p(static_cast<std::size_t>(K), 0.0);
    for (int k = 2; k <= K; ++k)
        p[static_cast<std::size_t>(k - 1)] = zeta_value(k) + prime_zeta_value(k);
    return {lambda, make_alphabet(std::move(p), "prime-omega")};
}

SignedLatticeMeasure coloured_perm_law(long n, int d) {
    if (d != 2) throw std::invalid_argument("coloured_perm_law: only d = 2 is supported");
    if (n < 1 || n > 3000) throw std::invalid_argument("coloured_perm_law: n must be in [1, 3000]");
    SignedLatticeMeasure law = SignedLatticeMeasure::dirac2(0, 0);
    for (long j = 1; j <= n; ++j) {
        double stay = 1.0 - 1.0 / static_cast<double>(j);
        double grow = 1.0 / (2.0 * static_cast<double>(j));
        SignedLatticeMeasure step({0, 0}, 2, 2, {stay, grow, grow, 0.0});
        law = convolve(law, step);
    }
    return law;
}

ColouredPermParams coloured_perm_params(long n, int d, int K) {
    if (d != 2) throw std::invalid_argument("coloured_perm_params: only d = 2 is supported");
    if (K < 2) throw std::invalid_argument("coloured_perm_params: K must be >= 2");
    std::vector<double> p(static_cast<std::size_t>(K), 0.0);
    for (int k = 2; k <= K; ++k) p[static_cast<std::size_t>(k - 1)] = zeta_value(k);
    FormalAlphabet alphabet = make_alphabet(std::move(p), "coloured-perm");
    double e2 = elementary_from_powers(alphabet, 2);   // -zeta(2)/2
    BetaMap beta{{{2, 0}, e2 / 4.0}, {{1, 1}, e2 / 2.0}, {{0, 2}, e2 / 4.0}};
    std::map<long, double> jump{{1, 1.0 / d}};
    return ColouredPermParams{harmonic_number(n), LevyExponent(jump, jump), std::move(alphabet),
                              std::move(beta)};
}

LaurentResidue coloured_residue(const FormalAlphabet& alphabet, int order) {
    if (order < 0) throw std::invalid_argument("coloured_residue: order must be >= 0");
    std::map<std::array<int, 2>, double> coeffs{{{0, 0}, 1.0}};
    for (int k = 2; k <= order; ++k) {
        double ek = elementary_from_powers(alphabet, k);
        if (ek == 0.0) continue;
        double scale = std::pow(0.5, k);
        for (int a = 0; a <= k; ++a) {
            double ch = 1.0;
            for (int i = 0; i < a; ++i) ch = ch * (k - i) / (i + 1);
            coeffs[{a, k - a}] += ek * scale * std::round(ch);
        }
    }
    return LaurentResidue(std::move(coeffs));
}

SignedLatticeMeasure prime_residue_law(long n, int a) {
    if (a != 3 && a != 4 && a != 6)
        throw std::invalid_argument("prime_residue_law: a must be one of {3, 4, 6}");
    if (n < 1 || n > 10000000L) throw std::invalid_argument("prime_residue_law: n must be in [1, 1e7]");
    auto sieve = shared_sieve(n);
    std::array<int, 2> classes{1, a - 1};   // unit residues for a in {3, 4, 6}
    std::vector<std::vector<long>> counts(32, std::vector<long>(32, 0));
    int max1 = 0, max2 = 0;
    std::array<int, 2> om{};
    for (long k = 1; k <= n; ++k) {
        sieve->omega_by_residue(k, a, classes, om);
        ++counts[static_cast<std::size_t>(om[0])][static_cast<std::size_t>(om[1])];
        max1 = std::max(max1, om[0]);
        max2 = std::max(max2, om[1]);
    }
    std::size_t nx = static_cast<std::size_t>(max1) + 1, ny = static_cast<std::size_t>(max2) + 1;
    std::vector<double> w(nx * ny, 0.0);
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < ny; ++j)
            w[i * ny + j] = static_cast<double>(counts[i][j]) / static_cast<double>(n);
    return SignedLatticeMeasure({0, 0}, nx, ny, std::move(w));
}

// ---------------------------------------------------------------------------
// Model registry

namespace {

double param_double(const std::map<std::string, std::string>& params, const std::string& key,
                    double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : std::strtod(it->second.c_str(), nullptr);
}

int param_int(const std::map<std::string, std::string>& params, const std::string& key, int fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : std::stoi(it->second);
}

std::string param_string(const std::map<std::string, std::string>& params, const std::string& key,
                         const std::string& fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

class BernoulliModel final : public Model {
public:
    explicit BernoulliModel(const std::map<std::string, std::string>& params) {
        rule_ = param_string(params, "rule", "power");
        s_ = param_double(params, "s", 0.6);
        lambda_rate_ = param_double(params, "lambda", 1.0);
        if (rule_ == "list") {
            std::istringstream is(param_string(params, "p", ""));
            std::string item;
            while (std::getline(is, item, ','))
                if (!item.empty()) plist_.push_back(std::strtod(item.c_str(), nullptr));
            if (plist_.empty()) throw std::invalid_argument("bernoulli: rule=list needs p=...");
        } else if (rule_ == "power") {
            if (!(s_ > 0.5) || !(s_ <= 1.0))
                throw std::invalid_argument("bernoulli: power rule needs s in (0.5, 1]");
        } else if (rule_ != "harmonic" && rule_ != "uniform") {
            throw std::invalid_argument("bernoulli: unknown rule " + rule_);
        }
        name_ = "bernoulli";
    }

    const std::string& name() const override { return name_; }
    long max_n() const override { return rule_ == "list" ? static_cast<long>(plist_.size()) : 500000; }

    std::vector<double> p_values(long n) const {
        if (n < 1 || n > max_n()) throw std::invalid_argument("bernoulli: n out of range");
        std::vector<double> p(static_cast<std::size_t>(n));
        for (long j = 1; j <= n; ++j) {
            double v;
            if (rule_ == "harmonic")
                v = 1.0 / static_cast<double>(j);
            else if (rule_ == "power")
                v = std::pow(static_cast<double>(j), -s_);
            else if (rule_ == "uniform")
                v = lambda_rate_ / static_cast<double>(n);
            else
                v = plist_[static_cast<std::size_t>(j - 1)];
            p[static_cast<std::size_t>(j - 1)] = v;
        }
        return p;
    }

    SignedLatticeMeasure exact_law(long n) const override { return bernoulli_exact_law(p_values(n)); }

    double lambda(long n) const override {
        auto p = p_values(n);
        double s = 0.0;
        for (auto it = p.rbegin(); it != p.rend(); ++it) s += *it;
        return s;
    }

    LevyExponent exponent() const override { return LevyExponent::poisson(); }

    FormalAlphabet alphabet(long n, int K) const override {
        auto p = p_values(n);
        std::vector<double> powers(static_cast<std::size_t>(K), 0.0);
        std::vector<double> cur(p.begin(), p.end());
        for (int k = 2; k <= K; ++k) {
            double s = 0.0;
            for (std::size_t j = 0; j < cur.size(); ++j) {
                cur[j] *= p[j];
                s += cur[j];
            }
            powers[static_cast<std::size_t>(k - 1)] = s;
        }
        return make_alphabet(std::move(powers), "bernoulli(" + rule_ + ",n)");
    }

    bool uses_partial_alphabet() const override { return true; }

    std::optional<std::vector<double>> bernoulli_parameters(long n) const override {
        return p_values(n);
    }

private:
    std::string name_, rule_;
    double s_, lambda_rate_;
    std::vector<double> plist_;
};

class EwensModel final : public Model {
public:
    explicit EwensModel(const std::map<std::string, std::string>& params)
        : theta_(param_double(params, "theta", 1.0)), k_const_(param_double(params, "kconst", 0.0)) {
        if (!(theta_ > 0.0)) throw std::invalid_argument("ewens: theta must be > 0");
        name_ = "ewens";
    }

    const std::string& name() const override { return name_; }
    long max_n() const override { return 200000; }
    SignedLatticeMeasure exact_law(long n) const override { return ewens_cycle_law(n, theta_); }
    double lambda(long n) const override { return theta_ * harmonic_number(n) + k_const_; }
    LevyExponent exponent() const override { return LevyExponent::poisson(); }
    FormalAlphabet alphabet(long n, int K) const override {
        (void)n;
        return ewens_scheme_params(1, theta_, k_const_, K).second;
    }
    std::optional<std::vector<double>> bernoulli_parameters(long n) const override {
        std::vector<double> p(static_cast<std::size_t>(n));
        for (long j = 1; j <= n; ++j)
            p[static_cast<std::size_t>(j - 1)] = theta_ / (theta_ + static_cast<double>(j - 1));
        return p;
    }

private:
    std::string name_;
    double theta_, k_const_;
};

class FgraphModel final : public Model {
public:
    explicit FgraphModel(const std::map<std::string, std::string>&) { name_ = "fgraph"; }
    const std::string& name() const override { return name_; }
    long max_n() const override { return 40; }
    SignedLatticeMeasure exact_law(long n) const override {
        return functional_graph_law(static_cast<int>(n));
    }
    double lambda(long n) const override { return functional_graph_params(n, 2).first; }
    LevyExponent exponent() const override { return LevyExponent::poisson(); }
    FormalAlphabet alphabet(long n, int K) const override {
        return functional_graph_params(n, K).second;
    }

private:
    std::string name_;
};

class FqModel final : public Model {
public:
    FqModel(const std::map<std::string, std::string>& params, FactorCounting counted)
        : q_(param_int(params, "q", 2)), counted_(counted) {
        name_ = counted == FactorCounting::Distinct ? "fqpoly-distinct" : "fqpoly-mult";
    }
    const std::string& name() const override { return name_; }
    long max_n() const override { return 40; }
    SignedLatticeMeasure exact_law(long n) const override {
        return fq_factor_law(q_, static_cast<int>(n), counted_);
    }
    double lambda(long n) const override { return fq_scheme_params(q_, n, counted_, 2).first; }
    LevyExponent exponent() const override { return LevyExponent::poisson(); }
    FormalAlphabet alphabet(long n, int K) const override {
        return fq_scheme_params(q_, n, counted_, K).second;
    }

private:
    std::string name_;
    int q_;
    FactorCounting counted_;
};

class OmegaModel final : public Model {
public:
    explicit OmegaModel(const std::map<std::string, std::string>&) { name_ = "omega"; }
    const std::string& name() const override { return name_; }
    long max_n() const override { return 10000000L; }
    SignedLatticeMeasure exact_law(long n) const override { return prime_omega_law(n); }
    double lambda(long n) const override { return prime_omega_params(n, 2).first; }
    LevyExponent exponent() const override { return LevyExponent::poisson(); }
    FormalAlphabet alphabet(long n, int K) const override { return prime_omega_params(n, K).second; }

private:
    std::string name_;
};

class ColouredPermModel final : public Model {
public:
    explicit ColouredPermModel(const std::map<std::string, std::string>& params)
        : d_(param_int(params, "d", 2)) {
        if (d_ != 2) throw std::invalid_argument("coloured-perm: only d = 2 is supported");
        name_ = "coloured-perm";
    }
    const std::string& name() const override { return name_; }
    int dimension() const override { return 2; }
    long max_n() const override { return 3000; }
    SignedLatticeMeasure exact_law(long n) const override { return coloured_perm_law(n, d_); }
    double lambda(long n) const override { return harmonic_number(n); }
    LevyExponent exponent() const override {
        std::map<long, double> jump{{1, 1.0 / d_}};
        return LevyExponent(jump, jump);
    }
    FormalAlphabet alphabet(long n, int K) const override {
        return coloured_perm_params(n, d_, K).alphabet;
    }
    LaurentResidue residue2d(long n, int order, int K) const override {
        return coloured_residue(alphabet(n, K), order);
    }
    BetaMap beta_map2d(long n, int order, int K) const override {
        FormalAlphabet a = alphabet(n, std::max(K, order + 3));
        int next = 0;
        double ek = 0.0;
        for (int k = order + 1; k <= a.K; ++k) {
            double v = elementary_from_powers(a, k);
            if (std::abs(v) > 1e-13) {
                next = k;
                ek = v;
                break;
            }
        }
        BetaMap beta;
        if (next == 0) return beta;
        double scale = std::pow(0.5, next);
        for (int i = 0; i <= next; ++i) {
            double ch = 1.0;
            for (int t = 0; t < i; ++t) ch = ch * (next - t) / (t + 1);
            beta[{i, next - i}] = ek * scale * std::round(ch);
        }
        return beta;
    }
    std::optional<std::pair<double, double>> quoted_scaled_constants() const override {
        // d_L * (log n)^2 -> pi/3 and d_TV * log n -> (pi/24) * 12.162 as
        // quoted; direct substitution into the distance theorems gives
        // different values, so both candidates are reported.
        return std::make_pair(std::numbers::pi / 3.0, std::numbers::pi / 24.0 * 12.162);
    }

private:
    std::string name_;
    int d_;
};

class OmegaResidueModel final : public Model {
public:
    explicit OmegaResidueModel(const std::map<std::string, std::string>& params)
        : a_(param_int(params, "a", 4)) {
        if (a_ != 3 && a_ != 4 && a_ != 6)
            throw std::invalid_argument("omega-residue: a must be one of {3, 4, 6}");
        name_ = "omega-residue";
    }
    const std::string& name() const override { return name_; }
    int dimension() const override { return 2; }
    long max_n() const override { return 10000000L; }
    SignedLatticeMeasure exact_law(long n) const override { return prime_residue_law(n, a_); }
    double lambda(long n) const override { return std::log(std::log(static_cast<double>(n))); }
    LevyExponent exponent() const override {
        std::map<long, double> jump{{1, 0.5}};
        return LevyExponent(jump, jump);
    }
    FormalAlphabet alphabet(long, int K) const override {
        // the limiting residue has no closed expression; the basic scheme is
        // the only one constructed, so the alphabet is identically zero
        return make_alphabet(std::vector<double>(static_cast<std::size_t>(K), 0.0),
                             "omega-residue(a=" + std::to_string(a_) + ")");
    }
    bool predictions_available() const override { return false; }
    LaurentResidue residue2d(long, int, int) const override { return LaurentResidue::identity(2); }
    BetaMap beta_map2d(long, int, int) const override { return {}; }

private:
    std::string name_;
    int a_;
};

}  // namespace

LaurentResidue Model::residue2d(long, int, int) const {
    throw std::invalid_argument("residue2d: model is not 2-dimensional");
}

BetaMap Model::beta_map2d(long, int, int) const {
    throw std::invalid_argument("beta_map2d: model is not 2-dimensional");
}

std::unique_ptr<Model> make_model(const std::string& name,
                                  const std::map<std::string, std::string>& params) {
    if (name == "bernoulli") return std::make_unique<BernoulliModel>(params);
    if (name == "ewens") return std::make_unique<EwensModel>(params);
    if (name == "fgraph") return std::make_unique<FgraphModel>(params);
    if (name == "fqpoly-distinct") return std::make_unique<FqModel>(params, FactorCounting::Distinct);
    if (name == "fqpoly-mult") return std::make_unique<FqModel>(params, FactorCounting::WithMultiplicity);
    if (name == "omega") return std::make_unique<OmegaModel>(params);
    if (name == "coloured-perm") return std::make_unique<ColouredPermModel>(params);
    if (name == "omega-residue") return std::make_unique<OmegaResidueModel>(params);
    throw std::invalid_argument("make_model: unknown model " + name);
}

std::vector<std::string> model_names() {
    return {"bernoulli", "ewens",         "fgraph",        "fqpoly-distinct",
            "fqpoly-mult", "omega",       "coloured-perm", "omega-residue"};
}

}  // namespace latscheme::models

#include "latscheme/symfun.hpp"

#include <cmath>
#include <cstdio>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace latscheme {

int IntegerPartition::size() const {
    return std::accumulate(parts.begin(), parts.end(), 0);
}

int IntegerPartition::multiplicity(int k) const {
    int m = 0;
    for (int part : parts)
        if (part == k) ++m;
    return m;
}

namespace {

void enumerate_partitions(int remaining, int max_part, std::vector<int>& cur,
                          std::vector<IntegerPartition>& out) {
    if (remaining == 0) {
        out.push_back(IntegerPartition{cur});
        return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
        cur.push_back(part);
        enumerate_partitions(remaining - part, part, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<IntegerPartition> partitions(int k) {
    if (k < 0 || k > 40) throw std::invalid_argument("partitions: k must be in [0, 40]");
    std::vector<IntegerPartition> out;
    std::vector<int> cur;
    enumerate_partitions(k, k == 0 ? 1 : k, cur, out);
    if (k == 0) out.assign(1, IntegerPartition{});
    return out;
}

BigInt z_of_partition(const IntegerPartition& L) {
    BigInt z(1);
    int prev = -1, run = 0;
    auto flush = [&](int part, int mult) {
        for (int i = 0; i < mult; ++i) z.mul_small(static_cast<std::uint32_t>(part));
        for (int i = 2; i <= mult; ++i) z.mul_small(static_cast<std::uint32_t>(i));
    };
    for (int part : L.parts) {
        if (part <= 0) throw std::invalid_argument("z_of_partition: parts must be positive");
        if (part == prev) {
            ++run;
        } else {
            if (prev > 0) flush(prev, run);
            prev = part;
            run = 1;
        }
    }
    if (prev > 0) flush(prev, run);
    return z;
}

double FormalAlphabet::power_sum(int k) const {
    if (k < 1 || k > K) throw std::invalid_argument("FormalAlphabet::power_sum: k out of range");
    return p[static_cast<std::size_t>(k)];
}

FormalAlphabet make_alphabet(std::vector<double> power_sums_from_1, std::string label) {
    FormalAlphabet a;
    a.K = static_cast<int>(power_sums_from_1.size());
    if (a.K < 1) throw std::invalid_argument("make_alphabet: K must be >= 1");
    a.p.resize(static_cast<std::size_t>(a.K) + 1, 0.0);
    for (int k = 1; k <= a.K; ++k) {
        double v = power_sums_from_1[static_cast<std::size_t>(k - 1)];
        if (!std::isfinite(v)) throw std::invalid_argument("make_alphabet: non-finite power sum");
        a.p[static_cast<std::size_t>(k)] = v;
    }
    a.label = std::move(label);
    return a;
}

double elementary_from_powers(const FormalAlphabet& a, int k) {
    if (k < 0) throw std::invalid_argument("elementary_from_powers: k must be >= 0");
    if (k == 0) return 1.0;
    if (k > a.K) throw std::invalid_argument("elementary_from_powers: k exceeds alphabet truncation order");
    double e = 0.0;
    for (const auto& L : partitions(k)) {
        double pL = 1.0;
        for (int part : L.parts) pL *= a.power_sum(part);
        if (pL == 0.0) continue;
        double sign = ((k - L.length()) % 2 == 0) ? 1.0 : -1.0;
        e += sign * pL / z_of_partition(L).to_double();
    }
    return e;
}

FormalAlphabet alphabet_sum(const FormalAlphabet& a, const FormalAlphabet& b) {
    int K = std::min(a.K, b.K);
    std::vector<double> p(static_cast<std::size_t>(K));
    for (int k = 1; k <= K; ++k)
        p[static_cast<std::size_t>(k - 1)] = a.power_sum(k) + b.power_sum(k);
    return make_alphabet(std::move(p), a.label + "+" + b.label);
}

FormalAlphabet alphabet_epsilon(const FormalAlphabet& a) {
    std::vector<double> p(static_cast<std::size_t>(a.K));
    for (int k = 1; k <= a.K; ++k)
        p[static_cast<std::size_t>(k - 1)] = (k % 2 == 1 ? 1.0 : -1.0) * a.power_sum(k);
    return make_alphabet(std::move(p), "eps(" + a.label + ")");
}

double hurwitz_zeta_real(double s, double shift) {
    if (s <= 1.0) throw std::invalid_argument("hurwitz_zeta_real: requires s > 1");
    if (shift <= 0.0) throw std::invalid_argument("hurwitz_zeta_real: requires shift > 0");
    const long N = s >= 6.0 ? 4096 : 100000;
    double sum = 0.0;
    for (long j = N - 1; j >= 0; --j) sum += std::pow(shift + static_cast<double>(j), -s);
    double x = shift + static_cast<double>(N);
    double tail = std::pow(x, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(x, -s) +
                  s * std::pow(x, -s - 1.0) / 12.0 -
                  s * (s + 1.0) * (s + 2.0) * std::pow(x, -s - 3.0) / 720.0 +
                  s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * std::pow(x, -s - 5.0) / 30240.0;
    return sum + tail;
}

double zeta_real(double s) { return hurwitz_zeta_real(s, 1.0); }

namespace {
std::mutex cache_mutex;
}

double zeta_value(int k) {
    if (k < 2 || k > 40) throw std::invalid_argument("zeta_value: k must be in [2, 40]");
    static double cache[41] = {};
    std::lock_guard<std::mutex> lock(cache_mutex);
    if (cache[k] == 0.0) cache[k] = zeta_real(static_cast<double>(k));
    return cache[k];
}

int moebius(int n) {
    if (n < 1) throw std::invalid_argument("moebius: n must be >= 1");
    int mu = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            mu = -mu;
        }
    }
    if (n > 1) mu = -mu;
    return mu;
}

int totient(int n) {
    if (n < 1) throw std::invalid_argument("totient: n must be >= 1");
    int result = n;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

double prime_zeta_value(int k) {
    if (k < 2 || k > 40) throw std::invalid_argument("prime_zeta_value: k must be in [2, 40]");
    static double cache[41] = {};
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        if (cache[k] != 0.0) return cache[k];
    }
    double sum = 0.0;
    for (int n = 1;; ++n) {
        int mu = moebius(n);
        if (mu == 0) continue;
        double arg = static_cast<double>(n) * k;
        double term = std::log(zeta_real(arg)) / n;
        if (term < 1e-16) {
            if (mu != 0) sum += mu * term;
            break;
        }
        sum += mu * term;
    }
    std::lock_guard<std::mutex> lock(cache_mutex);
    cache[k] = sum;
    return sum;
}

std::string serialize_alphabet(const FormalAlphabet& a) {
    std::ostringstream os;
    os << "label=" << a.label << "\n";
    os << "K=" << a.K << "\n";
    char buf[40];
    for (int k = 1; k <= a.K; ++k) {
        std::snprintf(buf, sizeof buf, "%.17g", a.power_sum(k));
        os << "p" << k << "=" << buf << "\n";
    }
    return os.str();
}

FormalAlphabet parse_alphabet(const std::string& text) {
    std::istringstream is(text);
    std::string line, label;
    int K = -1;
    std::vector<double> p;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("parse_alphabet: malformed line: " + line);
        std::string key = line.substr(0, eq), value = line.substr(eq + 1);
        if (key == "label") {
            label = value;
        } else if (key == "K") {
            K = std::stoi(value);
            p.assign(static_cast<std::size_t>(K), 0.0);
        } else if (key.size() > 1 && key[0] == 'p') {
            int k = std::stoi(key.substr(1));
            if (K < 0 || k < 1 || k > K) throw std::invalid_argument("parse_alphabet: index out of range: " + key);
            p[static_cast<std::size_t>(k - 1)] = std::strtod(value.c_str(), nullptr);
        } else {
            throw std::invalid_argument("parse_alphabet: unknown key: " + key);
        }
    }
    if (K < 1) throw std::invalid_argument("parse_alphabet: missing K");
    return make_alphabet(std::move(p), std::move(label));
}

}  // namespace latscheme

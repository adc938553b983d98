#include "latscheme/lattice_measure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace latscheme {

namespace {

constexpr double kZeroThreshold = 1e-300;

double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return std::round(r);
}

double poisson_log_weight(double rate, long m) {
    return -rate + static_cast<double>(m) * std::log(rate) - std::lgamma(static_cast<double>(m) + 1.0);
}

}  // namespace

SignedLatticeMeasure::SignedLatticeMeasure(long offset, std::vector<double> weights, double truncated_mass)
    : dim_(1), offset_{offset, 0}, extent_{weights.size(), 1}, w_(std::move(weights)), tm_(truncated_mass) {
    if (w_.empty()) throw std::invalid_argument("SignedLatticeMeasure: empty weight array");
    if (tm_ < 0.0) throw std::invalid_argument("SignedLatticeMeasure: negative truncated mass");
    trim();
}

SignedLatticeMeasure::SignedLatticeMeasure(std::array<long, 2> offset, std::size_t nx, std::size_t ny,
                                           std::vector<double> weights, double truncated_mass)
    : dim_(2), offset_(offset), extent_{nx, ny}, w_(std::move(weights)), tm_(truncated_mass) {
    if (nx == 0 || ny == 0 || w_.size() != nx * ny)
        throw std::invalid_argument("SignedLatticeMeasure: weight array does not match extents");
    if (tm_ < 0.0) throw std::invalid_argument("SignedLatticeMeasure: negative truncated mass");
    trim();
}

SignedLatticeMeasure SignedLatticeMeasure::dirac(long k) {
    return SignedLatticeMeasure(k, {1.0});
}

SignedLatticeMeasure SignedLatticeMeasure::dirac2(long k1, long k2) {
    return SignedLatticeMeasure({k1, k2}, 1, 1, {1.0});
}

void SignedLatticeMeasure::trim() {
    auto row_below = [&](std::size_t ix) {
        for (std::size_t iy = 0; iy < extent_[1]; ++iy)
            if (std::abs(w_[ix * extent_[1] + iy]) >= kZeroThreshold) return false;
        return true;
    };
    auto col_below = [&](std::size_t iy) {
        for (std::size_t ix = 0; ix < extent_[0]; ++ix)
            if (std::abs(w_[ix * extent_[1] + iy]) >= kZeroThreshold) return false;
        return true;
    };
    std::size_t x0 = 0, x1 = extent_[0], y0 = 0, y1 = extent_[1];
    while (x1 - x0 > 1 && row_below(x1 - 1)) --x1;
    while (x1 - x0 > 1 && row_below(x0)) ++x0;
    while (y1 - y0 > 1 && col_below(y1 - 1)) --y1;
    while (y1 - y0 > 1 && col_below(y0)) ++y0;
    if (x0 == 0 && y0 == 0 && x1 == extent_[0] && y1 == extent_[1]) return;
    double discarded = 0.0;
    std::vector<double> nw((x1 - x0) * (y1 - y0));
    for (std::size_t ix = 0; ix < extent_[0]; ++ix)
        for (std::size_t iy = 0; iy < extent_[1]; ++iy) {
            double v = w_[ix * extent_[1] + iy];
            if (ix >= x0 && ix < x1 && iy >= y0 && iy < y1)
                nw[(ix - x0) * (y1 - y0) + (iy - y0)] = v;
            else
                discarded += std::abs(v);
        }
    offset_[0] += static_cast<long>(x0);
    offset_[1] += static_cast<long>(y0);
    extent_ = {x1 - x0, y1 - y0};
    w_ = std::move(nw);
    tm_ += discarded;
}

double SignedLatticeMeasure::weight(long k) const {
    if (dim_ != 1) throw std::invalid_argument("weight(k): measure is not 1D");
    long i = k - offset_[0];
    if (i < 0 || i >= static_cast<long>(extent_[0])) return 0.0;
    return w_[static_cast<std::size_t>(i)];
}

double SignedLatticeMeasure::weight(long k1, long k2) const {
    if (dim_ != 2) throw std::invalid_argument("weight(k1,k2): measure is not 2D");
    long i = k1 - offset_[0], j = k2 - offset_[1];
    if (i < 0 || i >= static_cast<long>(extent_[0]) || j < 0 || j >= static_cast<long>(extent_[1]))
        return 0.0;
    return w_[static_cast<std::size_t>(i) * extent_[1] + static_cast<std::size_t>(j)];
}

double SignedLatticeMeasure::total_mass() const {
    return std::accumulate(w_.begin(), w_.end(), 0.0);
}

double SignedLatticeMeasure::tv_norm() const {
    double s = 0.0;
    for (double v : w_) s += std::abs(v);
    return s;
}

double SignedLatticeMeasure::mean(int axis) const {
    if (axis < 0 || axis >= dim_) throw std::invalid_argument("mean: axis out of range");
    double s = 0.0;
    for (std::size_t ix = 0; ix < extent_[0]; ++ix)
        for (std::size_t iy = 0; iy < extent_[1]; ++iy) {
            long k = axis == 0 ? offset_[0] + static_cast<long>(ix) : offset_[1] + static_cast<long>(iy);
            s += static_cast<double>(k) * w_[ix * extent_[1] + iy];
        }
    return s;
}

// ---------------------------------------------------------------------------
// LevyExponent

LevyExponent::LevyExponent(std::map<long, double> jumps) : dim_(1) {
    jumps_[0] = std::move(jumps);
    derive();
}

LevyExponent::LevyExponent(std::map<long, double> jumps_x, std::map<long, double> jumps_y) : dim_(2) {
    jumps_[0] = std::move(jumps_x);
    jumps_[1] = std::move(jumps_y);
    derive();
}

LevyExponent LevyExponent::poisson() {
    return LevyExponent(std::map<long, double>{{1, 1.0}});
}

void LevyExponent::validate_axis(int axis) const {
    if (axis < 0 || axis >= dim_) throw std::invalid_argument("LevyExponent: axis out of range");
}

void LevyExponent::derive() {
    for (int axis = 0; axis < dim_; ++axis) {
        const auto& jm = jumps_[static_cast<std::size_t>(axis)];
        if (jm.empty()) throw std::invalid_argument("LevyExponent: empty jump map");
        bool any_positive = false;
        long g = 0;
        long prev = 0;
        bool have_prev = false;
        for (const auto& [j, c] : jm) {
            if (j == 0) throw std::invalid_argument("LevyExponent: jump at 0 is not allowed");
            if (c < 0.0) throw std::invalid_argument("LevyExponent: negative jump intensity");
            if (c > 0.0) {
                any_positive = true;
                g = std::gcd(g, std::abs(j));
                if (have_prev) g = std::gcd(g, std::abs(j - prev));
                prev = j;
                have_prev = true;
            }
            m_[static_cast<std::size_t>(axis)] += static_cast<double>(j) * c;
            sigma2_[static_cast<std::size_t>(axis)] += static_cast<double>(j) * static_cast<double>(j) * c;
        }
        if (!any_positive) throw std::invalid_argument("LevyExponent: all jump intensities vanish");
        if (g != 1) throw std::invalid_argument("LevyExponent: jump support generates a sublattice of Z");
    }
    // M from a grid scan per axis; the 0.99 factor absorbs grid error
    double mmin = std::numeric_limits<double>::infinity();
    constexpr int kGrid = 4096;
    for (int axis = 0; axis < dim_; ++axis) {
        for (int i = 1; i <= kGrid; ++i) {
            double theta = std::numbers::pi * static_cast<double>(i) / kGrid;
            double val = -phi_axis(axis, theta).real() / (theta * theta);
            mmin = std::min(mmin, val);
        }
    }
    M_ = 0.99 * mmin;
    if (!(M_ > 0.0)) throw std::invalid_argument("LevyExponent: computed decay constant is not positive");
}

const std::map<long, double>& LevyExponent::jumps(int axis) const {
    validate_axis(axis);
    return jumps_[static_cast<std::size_t>(axis)];
}

double LevyExponent::mean(int axis) const {
    validate_axis(axis);
    return m_[static_cast<std::size_t>(axis)];
}

double LevyExponent::variance(int axis) const {
    validate_axis(axis);
    return sigma2_[static_cast<std::size_t>(axis)];
}

double LevyExponent::total_jump_rate(int axis) const {
    validate_axis(axis);
    double s = 0.0;
    for (const auto& [j, c] : jumps_[static_cast<std::size_t>(axis)]) s += c;
    return s;
}

std::complex<double> LevyExponent::phi_axis(int axis, double theta) const {
    validate_axis(axis);
    std::complex<double> s = 0.0;
    for (const auto& [j, c] : jumps_[static_cast<std::size_t>(axis)])
        s += c * (std::polar(1.0, static_cast<double>(j) * theta) - 1.0);
    return s;
}

std::complex<double> LevyExponent::phi(double xi) const {
    if (dim_ != 1) throw std::invalid_argument("LevyExponent::phi: exponent is not 1D");
    return phi_axis(0, xi);
}

std::complex<double> LevyExponent::phi2(double xi, double zeta) const {
    if (dim_ != 2) throw std::invalid_argument("LevyExponent::phi2: exponent is not 2D");
    return phi_axis(0, xi) + phi_axis(1, zeta);
}

std::complex<double> LevyExponent::phi_second_axis(int axis, double theta) const {
    validate_axis(axis);
    std::complex<double> s = 0.0;
    for (const auto& [j, c] : jumps_[static_cast<std::size_t>(axis)]) {
        double dj = static_cast<double>(j);
        s += -c * dj * dj * std::polar(1.0, dj * theta);
    }
    return s;
}

double LevyExponent::phi_prime_sup() const {
    constexpr int kGrid = 4096;
    double best = 0.0;
    for (int axis = 0; axis < dim_; ++axis) {
        for (int i = 0; i < kGrid; ++i) {
            double theta = -std::numbers::pi + 2.0 * std::numbers::pi * i / kGrid;
            std::complex<double> d = 0.0;
            for (const auto& [j, c] : jumps_[static_cast<std::size_t>(axis)]) {
                double dj = static_cast<double>(j);
                d += std::complex<double>(0.0, dj) * c * std::polar(1.0, dj * theta);
            }
            best = std::max(best, std::abs(d));
        }
    }
    return best;
}

double LevyExponent::gamma_sup(double eps) const {
    constexpr int kGrid = 2048;
    double best = 0.0;
    for (int axis = 0; axis < dim_; ++axis) {
        double s2 = variance(axis);
        for (int i = 0; i <= kGrid; ++i) {
            double theta = -eps + 2.0 * eps * i / kGrid;
            best = std::max(best, std::abs(phi_second_axis(axis, theta) + s2));
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// LaurentResidue

LaurentResidue::LaurentResidue(std::vector<double> b, std::vector<double> c)
    : dim_(1), b_(std::move(b)), c_(std::move(c)) {
    if (b_.empty()) throw std::invalid_argument("LaurentResidue: empty coefficient list");
    if (b_[0] != 1.0) throw std::invalid_argument("LaurentResidue: b_0 must equal 1");
    if (c_.empty()) c_.assign(b_.size(), 0.0);
    if (c_.size() != b_.size()) throw std::invalid_argument("LaurentResidue: b and c sizes differ");
    if (c_[0] != 0.0) throw std::invalid_argument("LaurentResidue: c_0 must be 0");
}

LaurentResidue::LaurentResidue(std::map<std::array<int, 2>, double> coeffs)
    : dim_(2), coeffs2d_(std::move(coeffs)) {
    auto it = coeffs2d_.find({0, 0});
    if (it == coeffs2d_.end() || it->second != 1.0)
        throw std::invalid_argument("LaurentResidue: coefficient of the empty product must be 1");
    for (const auto& [alpha, v] : coeffs2d_) {
        (void)v;
        if (alpha[0] < 0 || alpha[1] < 0)
            throw std::invalid_argument("LaurentResidue: negative multi-index");
    }
}

LaurentResidue LaurentResidue::identity(int dimension) {
    if (dimension == 1) return LaurentResidue(std::vector<double>{1.0}, std::vector<double>{0.0});
    return LaurentResidue(std::map<std::array<int, 2>, double>{{{0, 0}, 1.0}});
}

LaurentResidue LaurentResidue::from_elementary(const std::vector<double>& e) {
    return LaurentResidue(e, std::vector<double>(e.size(), 0.0));
}

int LaurentResidue::order() const {
    if (dim_ == 1) return static_cast<int>(b_.size()) - 1;
    int r = 0;
    for (const auto& [alpha, v] : coeffs2d_) {
        (void)v;
        r = std::max(r, alpha[0] + alpha[1]);
    }
    return r;
}

std::complex<double> LaurentResidue::chi(double xi) const {
    if (dim_ != 1) throw std::invalid_argument("LaurentResidue::chi: residue is not 1D");
    std::complex<double> wp = std::polar(1.0, xi) - 1.0;
    std::complex<double> wm = std::polar(1.0, -xi) - 1.0;
    std::complex<double> s = 0.0, pp = 1.0, pm = 1.0;
    for (std::size_t k = 0; k < b_.size(); ++k) {
        s += b_[k] * pp;
        if (k >= 1) s += c_[k] * pm;
        pp *= wp;
        pm *= wm;
    }
    return s;
}

std::complex<double> LaurentResidue::chi2(double xi, double zeta) const {
    if (dim_ != 2) throw std::invalid_argument("LaurentResidue::chi2: residue is not 2D");
    std::complex<double> u = std::polar(1.0, xi) - 1.0;
    std::complex<double> v = std::polar(1.0, zeta) - 1.0;
    std::complex<double> s = 0.0;
    for (const auto& [alpha, coeff] : coeffs2d_) {
        std::complex<double> t = coeff;
        for (int i = 0; i < alpha[0]; ++i) t *= u;
        for (int i = 0; i < alpha[1]; ++i) t *= v;
        s += t;
    }
    return s;
}

// ---------------------------------------------------------------------------
// Convolution and scheme construction

SignedLatticeMeasure convolve(const SignedLatticeMeasure& a, const SignedLatticeMeasure& b) {
    if (a.dimension() != b.dimension())
        throw std::invalid_argument("convolve: dimension mismatch");
    const SignedLatticeMeasure& outer = a.weights().size() <= b.weights().size() ? a : b;
    const SignedLatticeMeasure& inner = a.weights().size() <= b.weights().size() ? b : a;
    std::size_t nx = inner.extent(0) + outer.extent(0) - 1;
    std::size_t ny = a.dimension() == 2 ? inner.extent(1) + outer.extent(1) - 1 : 1;
    std::vector<double> w(nx * ny, 0.0);
    const auto& wi = inner.weights();
    for (std::size_t ox = 0; ox < outer.extent(0); ++ox)
        for (std::size_t oy = 0; oy < outer.extent(1); ++oy) {
            double wo = outer.weights()[ox * outer.extent(1) + oy];
            if (wo == 0.0) continue;
            for (std::size_t ix = 0; ix < inner.extent(0); ++ix) {
                double* dst = w.data() + (ix + ox) * ny + oy;
                const double* src = wi.data() + ix * inner.extent(1);
                for (std::size_t iy = 0; iy < inner.extent(1); ++iy) dst[iy] += wo * src[iy];
            }
        }
    double tm = a.truncated_mass() * b.tv_norm() + b.truncated_mass() * a.tv_norm();
    if (a.dimension() == 1)
        return SignedLatticeMeasure(a.offset()[0] + b.offset()[0], std::move(w), tm);
    return SignedLatticeMeasure({a.offset()[0] + b.offset()[0], a.offset()[1] + b.offset()[1]},
                                nx, ny, std::move(w), tm);
}

namespace {

SignedLatticeMeasure compound_poisson_1d(const std::map<long, double>& jumps, double lambda, double tol) {
    double rate = 0.0;
    for (const auto& [j, c] : jumps) {
        (void)j;
        rate += c;
    }
    rate *= lambda;
    if (rate == 0.0) return SignedLatticeMeasure::dirac(0);

    // jump law
    long jmin = jumps.begin()->first, jmax = jumps.rbegin()->first;
    jmin = std::min(jmin, 0L);
    std::vector<double> q(static_cast<std::size_t>(jmax - jmin) + 1, 0.0);
    double total = 0.0;
    for (const auto& [j, c] : jumps) {
        (void)j;
        total += c;
    }
    for (const auto& [j, c] : jumps) q[static_cast<std::size_t>(j - jmin)] = c / total;

    // truncation order: Poisson tail beyond mmax is < tol
    long cap = static_cast<long>(rate + 40.0 * std::sqrt(rate + 1.0) + 200.0);
    std::vector<double> pw;
    pw.reserve(static_cast<std::size_t>(cap) + 1);
    double cum = 0.0, comp = 0.0;
    long mmax = cap;
    for (long m = 0; m <= cap; ++m) {
        double p = std::exp(poisson_log_weight(rate, m));
        double y = p - comp;   // Kahan
        double t = cum + y;
        comp = (t - cum) - y;
        cum = t;
        pw.push_back(p);
        if (1.0 - cum < tol && m >= static_cast<long>(rate)) {
            mmax = m;
            break;
        }
    }
    double tail = std::max(0.0, 1.0 - cum);

    // accumulate sum_m pw[m] * Q^{*m}
    long lo = std::min(0L, jmin * mmax);
    long hi = std::max(0L, jmax * mmax);
    std::vector<double> acc(static_cast<std::size_t>(hi - lo) + 1, 0.0);
    std::vector<double> power{1.0};
    long poff = 0;   // offset of power relative to lattice
    acc[static_cast<std::size_t>(-lo)] = pw[0];
    for (long m = 1; m <= mmax; ++m) {
        std::vector<double> next(power.size() + q.size() - 1, 0.0);
        for (std::size_t i = 0; i < power.size(); ++i) {
            if (power[i] == 0.0) continue;
            for (std::size_t k = 0; k < q.size(); ++k) next[i + k] += power[i] * q[k];
        }
        power = std::move(next);
        poff += jmin;
        // keep the active window small
        std::size_t first = 0, last = power.size();
        while (last - first > 1 && std::abs(power[last - 1]) < kZeroThreshold) --last;
        while (last - first > 1 && std::abs(power[first]) < kZeroThreshold) ++first;
        if (first > 0 || last < power.size()) {
            power = std::vector<double>(power.begin() + static_cast<std::ptrdiff_t>(first),
                                        power.begin() + static_cast<std::ptrdiff_t>(last));
            poff += static_cast<long>(first);
        }
        double pm = pw[static_cast<std::size_t>(m)];
        for (std::size_t i = 0; i < power.size(); ++i)
            acc[static_cast<std::size_t>(poff + static_cast<long>(i) - lo)] += pm * power[i];
    }
    return SignedLatticeMeasure(lo, std::move(acc), tail);
}

SignedLatticeMeasure product_measure(const SignedLatticeMeasure& mx, const SignedLatticeMeasure& my) {
    std::size_t nx = mx.extent(0), ny = my.extent(0);
    std::vector<double> w(nx * ny);
    for (std::size_t ix = 0; ix < nx; ++ix)
        for (std::size_t iy = 0; iy < ny; ++iy) w[ix * ny + iy] = mx.weights()[ix] * my.weights()[iy];
    double tm = mx.truncated_mass() * my.tv_norm() + my.truncated_mass() * mx.tv_norm();
    return SignedLatticeMeasure({mx.offset()[0], my.offset()[0]}, nx, ny, std::move(w), tm);
}

}  // namespace

SignedLatticeMeasure compound_poisson_measure(const LevyExponent& exponent, double lambda, double tol) {
    if (lambda < 0.0) throw std::invalid_argument("compound_poisson_measure: lambda must be >= 0");
    if (!(tol > 0.0) || tol > 1e-3)
        throw std::invalid_argument("compound_poisson_measure: tol must be in (0, 1e-3]");
    if (exponent.dimension() == 1) return compound_poisson_1d(exponent.jumps(0), lambda, tol);
    SignedLatticeMeasure mx = compound_poisson_1d(exponent.jumps(0), lambda, tol / 2.0);
    SignedLatticeMeasure my = compound_poisson_1d(exponent.jumps(1), lambda, tol / 2.0);
    return product_measure(mx, my);
}

SignedLatticeMeasure residue_atoms(const LaurentResidue& residue) {
    if (residue.dimension() == 1) {
        int r = residue.order();
        std::vector<double> w(static_cast<std::size_t>(2 * r) + 1, 0.0);
        auto at = [&](long k) -> double& { return w[static_cast<std::size_t>(k + r)]; };
        for (int k = 0; k <= r; ++k) {
            double bk = residue.b()[static_cast<std::size_t>(k)];
            double ck = k >= 1 ? residue.c()[static_cast<std::size_t>(k)] : 0.0;
            for (int l = 0; l <= k; ++l) {
                double term = ((k - l) % 2 == 0 ? 1.0 : -1.0) * binom(k, l);
                if (bk != 0.0) at(l) += bk * term;
                if (ck != 0.0) at(-l) += ck * term;
            }
        }
        return SignedLatticeMeasure(-r, std::move(w));
    }
    int r = residue.order();
    std::size_t n = static_cast<std::size_t>(r) + 1;
    std::vector<double> w(n * n, 0.0);
    for (const auto& [alpha, coeff] : residue.coeffs2d()) {
        if (coeff == 0.0) continue;
        for (int l1 = 0; l1 <= alpha[0]; ++l1)
            for (int l2 = 0; l2 <= alpha[1]; ++l2) {
                double term = ((alpha[0] - l1 + alpha[1] - l2) % 2 == 0 ? 1.0 : -1.0) *
                              binom(alpha[0], l1) * binom(alpha[1], l2);
                w[static_cast<std::size_t>(l1) * n + static_cast<std::size_t>(l2)] += coeff * term;
            }
    }
    return SignedLatticeMeasure({0, 0}, n, n, std::move(w));
}

SignedLatticeMeasure scheme_measure(const LevyExponent& exponent, double lambda,
                                    const LaurentResidue& residue, double tol) {
    if (exponent.dimension() != residue.dimension())
        throw std::invalid_argument("scheme_measure: exponent and residue dimensions differ");
    return convolve(compound_poisson_measure(exponent, lambda, tol), residue_atoms(residue));
}

double charlier_scheme_values(double lambda, double beta, int r, long k) {
    if (!(lambda > 0.0)) throw std::invalid_argument("charlier_scheme_values: lambda must be > 0");
    if (r < 0 || k < 0) throw std::invalid_argument("charlier_scheme_values: r and k must be >= 0");
    if (beta == 0.0) return 0.0;
    int top = r + 1;
    double c = 0.0;
    for (int l = 0; l <= std::min<long>(top, k); ++l) {
        double falling = 1.0;
        for (int i = 0; i < l; ++i) falling *= static_cast<double>(k - i);
        double term = binom(top, l) * std::pow(lambda, -l) * falling;
        c += ((top - l) % 2 == 0 ? 1.0 : -1.0) * term;
    }
    return beta * c * std::exp(poisson_log_weight(lambda, k));
}

// ---------------------------------------------------------------------------
// Distances

namespace {

struct Window {
    long lo[2], hi[2];
};

Window union_window(const SignedLatticeMeasure& a, const SignedLatticeMeasure& b) {
    Window w;
    for (int axis = 0; axis < a.dimension(); ++axis) {
        w.lo[axis] = std::min(a.offset()[static_cast<std::size_t>(axis)],
                              b.offset()[static_cast<std::size_t>(axis)]);
        w.hi[axis] = std::max(a.offset()[static_cast<std::size_t>(axis)] + static_cast<long>(a.extent(axis)),
                              b.offset()[static_cast<std::size_t>(axis)] + static_cast<long>(b.extent(axis))) - 1;
    }
    return w;
}

void check_pair(const SignedLatticeMeasure& a, const SignedLatticeMeasure& b) {
    if (a.dimension() != b.dimension())
        throw std::invalid_argument("distance: dimension mismatch");
}

}  // namespace

DistanceResult distance_local(const SignedLatticeMeasure& a, const SignedLatticeMeasure& b) {
    check_pair(a, b);
    Window w = union_window(a, b);
    double best = 0.0;
    if (a.dimension() == 1) {
        for (long k = w.lo[0]; k <= w.hi[0]; ++k)
            best = std::max(best, std::abs(a.weight(k) - b.weight(k)));
    } else {
        for (long k1 = w.lo[0]; k1 <= w.hi[0]; ++k1)
            for (long k2 = w.lo[1]; k2 <= w.hi[1]; ++k2)
                best = std::max(best, std::abs(a.weight(k1, k2) - b.weight(k1, k2)));
    }
    return {best, a.truncated_mass() + b.truncated_mass()};
}

DistanceResult distance_kolmogorov(const SignedLatticeMeasure& a, const SignedLatticeMeasure& b) {
    check_pair(a, b);
    if (a.dimension() != 1)
        throw std::invalid_argument("distance_kolmogorov: only defined for 1D measures");
    Window w = union_window(a, b);
    double ta = 0.0, tb = 0.0, best = 0.0;
    for (long k = w.hi[0]; k >= w.lo[0]; --k) {
        ta += a.weight(k);
        tb += b.weight(k);
        best = std::max(best, std::abs(ta - tb));
    }
    return {best, a.truncated_mass() + b.truncated_mass()};
}

DistanceResult distance_tv(const SignedLatticeMeasure& a, const SignedLatticeMeasure& b) {
    check_pair(a, b);
    Window w = union_window(a, b);
    double s = 0.0;
    if (a.dimension() == 1) {
        for (long k = w.lo[0]; k <= w.hi[0]; ++k) s += std::abs(a.weight(k) - b.weight(k));
    } else {
        for (long k1 = w.lo[0]; k1 <= w.hi[0]; ++k1)
            for (long k2 = w.lo[1]; k2 <= w.hi[1]; ++k2)
                s += std::abs(a.weight(k1, k2) - b.weight(k1, k2));
    }
    return {s, a.truncated_mass() + b.truncated_mass()};
}

// ---------------------------------------------------------------------------
// Fourier transforms on the grid

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// in-place radix-2 transform, sign = +1 computes sum x_m e^{+2 pi i j m / n}
void fft_inplace(std::vector<std::complex<double>>& x, int sign) {
    std::size_t n = x.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        std::complex<double> wl = std::polar(1.0, ang);
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w = 1.0;
            for (std::size_t j = 0; j < len / 2; ++j) {
                std::complex<double> u = x[i + j], v = x[i + j + len / 2] * w;
                x[i + j] = u + v;
                x[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

void dft(std::vector<std::complex<double>>& x, int sign) {
    if (is_power_of_two(x.size())) {
        fft_inplace(x, sign);
        return;
    }
    std::size_t n = x.size();
    std::vector<std::complex<double>> out(n, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t m = 0; m < n; ++m)
            out[j] += x[m] * std::polar(1.0, sign * 2.0 * std::numbers::pi *
                                                 static_cast<double>(j) * static_cast<double>(m) /
                                                 static_cast<double>(n));
    x = std::move(out);
}

void dft_2d(std::vector<std::complex<double>>& x, std::size_t n, int sign) {
    std::vector<std::complex<double>> line(n);
    for (std::size_t row = 0; row < n; ++row) {
        std::copy(x.begin() + static_cast<std::ptrdiff_t>(row * n),
                  x.begin() + static_cast<std::ptrdiff_t>((row + 1) * n), line.begin());
        dft(line, sign);
        std::copy(line.begin(), line.end(), x.begin() + static_cast<std::ptrdiff_t>(row * n));
    }
    for (std::size_t col = 0; col < n; ++col) {
        for (std::size_t row = 0; row < n; ++row) line[row] = x[row * n + col];
        dft(line, sign);
        for (std::size_t row = 0; row < n; ++row) x[row * n + col] = line[row];
    }
}

long positive_mod(long k, long n) {
    long r = k % n;
    return r < 0 ? r + n : r;
}

}  // namespace

std::size_t default_grid_size(const SignedLatticeMeasure& m) {
    std::size_t width = std::max(m.extent(0), m.dimension() == 2 ? m.extent(1) : 1);
    std::size_t n = 1;
    while (n < 2 * width) n <<= 1;
    return n;
}

FourierGrid fourier_sample(const SignedLatticeMeasure& m, std::size_t n) {
    if (n < m.extent(0) || (m.dimension() == 2 && n < m.extent(1)))
        throw std::invalid_argument("fourier_sample: grid size below support width");
    long ln = static_cast<long>(n);
    if (m.dimension() == 1) {
        std::vector<std::complex<double>> x(n, 0.0);
        for (std::size_t i = 0; i < m.extent(0); ++i)
            x[static_cast<std::size_t>(positive_mod(m.offset()[0] + static_cast<long>(i), ln))] +=
                m.weights()[i];
        dft(x, +1);
        return FourierGrid{1, n, std::move(x)};
    }
    std::vector<std::complex<double>> x(n * n, 0.0);
    for (std::size_t ix = 0; ix < m.extent(0); ++ix)
        for (std::size_t iy = 0; iy < m.extent(1); ++iy) {
            std::size_t rx = static_cast<std::size_t>(positive_mod(m.offset()[0] + static_cast<long>(ix), ln));
            std::size_t ry = static_cast<std::size_t>(positive_mod(m.offset()[1] + static_cast<long>(iy), ln));
            x[rx * n + ry] += m.weights()[ix * m.extent(1) + iy];
        }
    dft_2d(x, n, +1);
    return FourierGrid{2, n, std::move(x)};
}

double wiener_norm(const FourierGrid& samples) {
    std::vector<std::complex<double>> x = samples.values;
    if (samples.dimension == 1) {
        if (x.size() != samples.n) throw std::invalid_argument("wiener_norm: inconsistent grid");
        dft(x, -1);
        double s = 0.0;
        for (const auto& v : x) s += std::abs(v);
        return s / static_cast<double>(samples.n);
    }
    if (x.size() != samples.n * samples.n) throw std::invalid_argument("wiener_norm: inconsistent grid");
    dft_2d(x, samples.n, -1);
    double s = 0.0;
    for (const auto& v : x) s += std::abs(v);
    return s / (static_cast<double>(samples.n) * static_cast<double>(samples.n));
}

// ---------------------------------------------------------------------------
// Serialization

std::string serialize_measure(const SignedLatticeMeasure& m) {
    std::ostringstream os;
    char buf[40];
    os << m.dimension();
    for (int axis = 0; axis < m.dimension(); ++axis) os << " " << m.offset()[static_cast<std::size_t>(axis)];
    for (int axis = 0; axis < m.dimension(); ++axis) os << " " << m.extent(axis);
    std::snprintf(buf, sizeof buf, "%.17g", m.truncated_mass());
    os << " " << buf << "\n";
    for (double v : m.weights()) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        os << buf << "\n";
    }
    return os.str();
}

SignedLatticeMeasure parse_measure(const std::string& text) {
    std::istringstream is(text);
    int dim = 0;
    if (!(is >> dim) || (dim != 1 && dim != 2))
        throw std::invalid_argument("parse_measure: bad dimension");
    std::array<long, 2> offset{0, 0};
    std::array<std::size_t, 2> extent{1, 1};
    for (int axis = 0; axis < dim; ++axis) is >> offset[static_cast<std::size_t>(axis)];
    for (int axis = 0; axis < dim; ++axis) is >> extent[static_cast<std::size_t>(axis)];
    double tm = 0.0;
    is >> tm;
    if (!is) throw std::invalid_argument("parse_measure: malformed header");
    std::size_t count = extent[0] * (dim == 2 ? extent[1] : 1);
    std::vector<double> w(count);
    for (std::size_t i = 0; i < count; ++i) {
        if (!(is >> w[i])) throw std::invalid_argument("parse_measure: missing weights");
    }
    if (dim == 1) return SignedLatticeMeasure(offset[0], std::move(w), tm);
    return SignedLatticeMeasure(offset, extent[0], extent[1], std::move(w), tm);
}

}  // namespace latscheme

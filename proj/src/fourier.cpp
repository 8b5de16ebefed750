#include "qpc/fourier.hpp"

#include "qpc/errors.hpp"

#include <algorithm>
#include <cmath>

namespace qpc {

void fft(std::vector<cplx>& a, bool inverse) {
    const size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw InvalidConfig("fft: size must be a power of two");
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        double ang = kTwoPi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
        cplx wl(std::cos(ang), std::sin(ang));
        for (size_t i = 0; i < n; i += len) {
            cplx w(1.0);
            for (size_t j = 0; j < len / 2; ++j) {
                cplx u = a[i + j], v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse)
        for (auto& x : a) x /= static_cast<double>(n);
}

FourierMap FourierMap::constant(cplx c, double strip_radius) {
    FourierMap f(strip_radius);
    f.c_ = {c};
    f.K_ = 0;
    return f;
}

FourierMap FourierMap::from_modes(std::vector<cplx> coef, double strip_radius) {
    if (coef.empty() || coef.size() % 2 == 0)
        throw InvalidConfig("from_modes: need an odd number of coefficients");
    FourierMap f(strip_radius);
    f.K_ = static_cast<int>(coef.size() / 2);
    f.c_ = std::move(coef);
    return f;
}

FourierMap FourierMap::fit(const std::vector<cplx>& samples, double strip_radius) {
    const size_t n = samples.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw InvalidConfig("fit: grid size must be a power of two");
    for (const auto& s : samples)
        if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
            throw NonFinite("fit: non-finite sample");

    std::vector<cplx> hat = samples;
    fft(hat, false);
    const int half = static_cast<int>(n / 2);
    FourierMap f(strip_radius);
    f.K_ = half;
    f.c_.assign(2 * static_cast<size_t>(half) + 1, cplx(0.0));
    double inv = 1.0 / static_cast<double>(n);
    for (int j = 0; j < static_cast<int>(n); ++j) {
        int k = j < half ? j : j - static_cast<int>(n);  // bin n/2 -> mode -n/2
        f.c_[static_cast<size_t>(k + half)] = hat[static_cast<size_t>(j)] * inv;
    }
    // Trim the all-but-noise outer modes so hot loops stay short.
    double top = 0.0;
    for (const auto& c : f.c_) top = std::max(top, std::abs(c));
    int K = f.K_;
    while (K > 0 && std::abs(f.coef(K)) < 1e-15 * top &&
           std::abs(f.coef(-K)) < 1e-15 * top)
        --K;
    if (K < f.K_) f = f.truncate(K).first;
    return f;
}

FourierMap FourierMap::fit_function(const std::function<cplx(double)>& f,
                                    int grid, double strip_radius) {
    std::vector<cplx> samples(static_cast<size_t>(grid));
    for (int j = 0; j < grid; ++j)
        samples[static_cast<size_t>(j)] = f(static_cast<double>(j) / grid);
    return fit(samples, strip_radius);
}

void FourierMap::check_strip(double t) const {
    if (std::abs(t) > eps0_ + 1e-12)
        throw OutsideStrip("evaluation outside |Im z| <= strip_radius");
}

cplx FourierMap::eval(cplx z) const {
    check_strip(z.imag());
    if (K_ < 0) return 0.0;
    cplx w = std::exp(cplx(0.0, kTwoPi) * z);
    cplx winv = 1.0 / w;
    cplx acc = c_[static_cast<size_t>(K_)];
    cplx wp(1.0), wm(1.0);
    for (int k = 1; k <= K_; ++k) {
        wp *= w;
        wm *= winv;
        acc += c_[static_cast<size_t>(K_ + k)] * wp + c_[static_cast<size_t>(K_ - k)] * wm;
    }
    return acc;
}

double FourierMap::line_norm(double t, int grid) const {
    check_strip(t);
    double m = 0.0;
    for (int j = 0; j < grid; ++j) {
        double x = static_cast<double>(j) / grid;
        m = std::max(m, std::abs(eval(cplx(x, t))));
    }
    return m;
}

double FourierMap::strip_norm(double eps, int grid) const {
    return std::max(line_norm(eps, grid), line_norm(-eps, grid));
}

FourierMap FourierMap::reflect() const {
    FourierMap g(eps0_);
    g.K_ = K_;
    g.c_.resize(c_.size());
    for (int k = -K_; k <= K_; ++k)
        g.c_[static_cast<size_t>(k + K_)] = std::conj(coef(-k));
    return g;
}

bool FourierMap::is_real_symmetric(double tol) const {
    for (int k = 0; k <= K_; ++k)
        if (std::abs(coef(-k) - std::conj(coef(k))) > tol) return false;
    return true;
}

double FourierMap::tail_ratio(double tail_frac) const {
    if (K_ <= 0) return 0.0;
    int cut = static_cast<int>(std::ceil((1.0 - tail_frac) * K_));
    double head = 0.0, tail = 0.0;
    for (int k = -K_; k <= K_; ++k)
        (std::abs(k) >= cut ? tail : head) += std::abs(coef(k));
    return head + tail > 0.0 ? tail / (head + tail) : 0.0;
}

std::pair<FourierMap, double> FourierMap::truncate(int K) const {
    if (K < 0) throw InvalidConfig("truncate: K must be >= 0");
    FourierMap g(eps0_);
    int newK = std::min(K, std::max(K_, 0));
    g.K_ = newK;
    g.c_.assign(2 * static_cast<size_t>(newK) + 1, cplx(0.0));
    for (int k = -newK; k <= newK; ++k)
        g.c_[static_cast<size_t>(k + newK)] = coef(k);
    double tail = 0.0;
    for (int k = -K_; k <= K_; ++k)
        if (std::abs(k) > K) tail += std::abs(coef(k));
    return {g, tail};
}

FourierMap FourierMap::denoise(double rel_floor, double abs_floor) const {
    if (K_ <= 0) return *this;
    double mx = 0.0;
    for (const cplx& c : c_) mx = std::max(mx, std::abs(c));
    double floor = std::max(rel_floor * mx, abs_floor);
    int K = 0;
    for (int k = -K_; k <= K_; ++k)
        if (std::abs(coef(k)) >= floor) K = std::max(K, std::abs(k));
    return truncate(K).first;
}

FourierMap FourierMap::with_strip_radius(double eps0) const {
    FourierMap g = *this;
    g.eps0_ = eps0;
    return g;
}

FourierMap operator+(const FourierMap& f, const FourierMap& g) {
    int K = std::max(std::max(f.K_, g.K_), 0);
    std::vector<cplx> c(2 * static_cast<size_t>(K) + 1);
    for (int k = -K; k <= K; ++k)
        c[static_cast<size_t>(k + K)] = f.coef(k) + g.coef(k);
    return FourierMap::from_modes(std::move(c), std::min(f.eps0_, g.eps0_));
}

FourierMap operator-(const FourierMap& f, const FourierMap& g) {
    return f + (cplx(-1.0) * g);
}

FourierMap operator*(cplx s, const FourierMap& f) {
    FourierMap g = f;
    for (auto& c : g.c_) c *= s;
    return g;
}

FourierMap operator*(const FourierMap& f, const FourierMap& g) {
    if (f.K_ < 0 || g.K_ < 0) return FourierMap::constant(0.0, std::min(f.eps0_, g.eps0_));
    int K = f.K_ + g.K_;
    std::vector<cplx> c(2 * static_cast<size_t>(K) + 1, cplx(0.0));
    for (int i = -f.K_; i <= f.K_; ++i)
        for (int j = -g.K_; j <= g.K_; ++j)
            c[static_cast<size_t>(i + j + K)] += f.coef(i) * g.coef(j);
    return FourierMap::from_modes(std::move(c), std::min(f.eps0_, g.eps0_));
}

MatFourier::MatFourier(FourierMap a, FourierMap b, FourierMap c, FourierMap d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {}

MatFourier MatFourier::constant(const Mat2& m, double strip_radius) {
    return MatFourier(FourierMap::constant(m.a, strip_radius),
                      FourierMap::constant(m.b, strip_radius),
                      FourierMap::constant(m.c, strip_radius),
                      FourierMap::constant(m.d, strip_radius));
}

MatFourier MatFourier::fit_function(const std::function<Mat2(double)>& f,
                                    int grid, double strip_radius) {
    std::vector<cplx> sa(static_cast<size_t>(grid)), sb(static_cast<size_t>(grid)),
        sc(static_cast<size_t>(grid)), sd(static_cast<size_t>(grid));
    for (int j = 0; j < grid; ++j) {
        Mat2 m = f(static_cast<double>(j) / grid);
        sa[static_cast<size_t>(j)] = m.a;
        sb[static_cast<size_t>(j)] = m.b;
        sc[static_cast<size_t>(j)] = m.c;
        sd[static_cast<size_t>(j)] = m.d;
    }
    return MatFourier(FourierMap::fit(sa, strip_radius), FourierMap::fit(sb, strip_radius),
                      FourierMap::fit(sc, strip_radius), FourierMap::fit(sd, strip_radius));
}

int MatFourier::max_mode() const {
    return std::max(std::max(a_.max_mode(), b_.max_mode()),
                    std::max(c_.max_mode(), d_.max_mode()));
}

Mat2 MatFourier::eval(cplx z) const {
    return Mat2{a_.eval(z), b_.eval(z), c_.eval(z), d_.eval(z)};
}

double MatFourier::line_norm(double t, int grid) const {
    double m = 0.0;
    for (int j = 0; j < grid; ++j) {
        double x = static_cast<double>(j) / grid;
        m = std::max(m, eval(cplx(x, t)).norm());
    }
    return m;
}

double MatFourier::strip_norm(double eps, int grid) const {
    return std::max(line_norm(eps, grid), line_norm(-eps, grid));
}

double MatFourier::det_defect(double eps, int grid) const {
    double m = 0.0;
    for (double t : {-eps, 0.0, eps}) {
        for (int j = 0; j < grid; ++j) {
            double x = static_cast<double>(j) / grid;
            m = std::max(m, std::abs(eval(cplx(x, t)).det() - cplx(1.0)));
        }
    }
    return m;
}

MatFourier MatFourier::reflect() const {
    return MatFourier(a_.reflect(), b_.reflect(), c_.reflect(), d_.reflect());
}

bool MatFourier::is_real_symmetric(double tol) const {
    return a_.is_real_symmetric(tol) && b_.is_real_symmetric(tol) &&
           c_.is_real_symmetric(tol) && d_.is_real_symmetric(tol);
}

MatFourier MatFourier::adjugate() const {
    cplx minus(-1.0);
    return MatFourier(d_, minus * b_, minus * c_, a_);
}

MatFourier MatFourier::denoise(double rel_floor) const {
    // The floor is relative to the matrix scale, not per entry: an entry that
    // is identically zero up to interpolation noise must still be cleaned.
    double mx = 0.0;
    for (const FourierMap* f : {&a_, &b_, &c_, &d_})
        for (int k = -f->max_mode(); k <= f->max_mode(); ++k)
            mx = std::max(mx, std::abs(f->coef(k)));
    double floor = rel_floor * mx;
    return MatFourier(a_.denoise(rel_floor, floor), b_.denoise(rel_floor, floor),
                      c_.denoise(rel_floor, floor), d_.denoise(rel_floor, floor));
}

MatFourier operator*(const MatFourier& m, const MatFourier& n) {
    return MatFourier(m.a_ * n.a_ + m.b_ * n.c_, m.a_ * n.b_ + m.b_ * n.d_,
                      m.c_ * n.a_ + m.d_ * n.c_, m.c_ * n.b_ + m.d_ * n.d_);
}

MatFourier operator*(const Mat2& m, const MatFourier& n) {
    return MatFourier(m.a * n.a_ + m.b * n.c_, m.a * n.b_ + m.b * n.d_,
                      m.c * n.a_ + m.d * n.c_, m.c * n.b_ + m.d * n.d_);
}

MatFourier operator*(const MatFourier& m, const Mat2& n) {
    return MatFourier(n.a * m.a_ + n.c * m.b_, n.b * m.a_ + n.d * m.b_,
                      n.a * m.c_ + n.c * m.d_, n.b * m.c_ + n.d * m.d_);
}

}  // namespace qpc

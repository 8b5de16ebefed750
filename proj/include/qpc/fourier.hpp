#ifndef QPC_FOURIER_HPP
#define QPC_FOURIER_HPP

#include <array>
#include <functional>
#include <vector>

#include "qpc/mat2.hpp"

namespace qpc {

inline constexpr int kDefaultGrid = 1024;
inline constexpr int kDefaultModeCap = 256;

// In-place radix-2 FFT, e^{-2 pi i jk/n} convention; n a power of two.
void fft(std::vector<cplx>& a, bool inverse);

// 1-periodic analytic scalar function as a finite Fourier series
//   f(z) = sum_{|k| <= K} c_k e^{2 pi i k z},
// usable on the strip |Im z| <= strip_radius.  Periodicity is structural.
// Immutable after construction; evaluation is pure.
class FourierMap {
public:
    FourierMap() = default;
    explicit FourierMap(double strip_radius) : eps0_(strip_radius) {}

    static FourierMap constant(cplx c, double strip_radius);
    // c_k for k = -K..K given as a flat vector of length 2K+1.
    static FourierMap from_modes(std::vector<cplx> coef, double strip_radius);
    // Trigonometric interpolation through samples on the grid j/n, n = 2^m.
    static FourierMap fit(const std::vector<cplx>& samples, double strip_radius);
    static FourierMap fit_function(const std::function<cplx(double)>& f,
                                   int grid, double strip_radius);

    int max_mode() const { return K_; }
    double strip_radius() const { return eps0_; }
    cplx coef(int k) const {
        return (k < -K_ || k > K_) ? cplx(0.0) : c_[static_cast<size_t>(k + K_)];
    }

    cplx eval(cplx z) const;
    double strip_norm(double eps, int grid = kDefaultGrid) const;
    double line_norm(double t, int grid = kDefaultGrid) const;  // single line Im z = t

    // f*(z) = conj(f(conj z)):  c_k -> conj(c_{-k}).
    FourierMap reflect() const;
    bool is_real_symmetric(double tol = 1e-10) const;
    // Coefficient-decay witness: sum of |c_k| over the outer `tail_frac`
    // fraction of modes divided by the total mass.
    double tail_ratio(double tail_frac = 0.25) const;

    // Drop modes |k| > K; second member is sum_{|k| > K} |c_k|, a rigorous
    // sup-norm bound for the discarded tail on the real axis.
    std::pair<FourierMap, double> truncate(int K) const;

    FourierMap with_strip_radius(double eps0) const;

    // Drop outer modes below rel_floor * max|c_k|: interpolation noise sits
    // near machine epsilon on the axis but is amplified by e^{2pi|k|eps} off
    // it, so strip evaluations need a noise-floor cut after every grid fit.
    FourierMap denoise(double rel_floor = 1e-12, double abs_floor = 0.0) const;

    friend FourierMap operator+(const FourierMap& f, const FourierMap& g);
    friend FourierMap operator-(const FourierMap& f, const FourierMap& g);
    friend FourierMap operator*(cplx s, const FourierMap& f);
    // Coefficient convolution (pointwise product of the functions).
    friend FourierMap operator*(const FourierMap& f, const FourierMap& g);

private:
    void check_strip(double t) const;

    std::vector<cplx> c_;  // c_[-K..K] stored with offset K
    int K_ = -1;           // K_ = -1 encodes the zero map
    double eps0_ = 0.0;
};

// 2x2 matrix map stored as four scalar Fourier series.
class MatFourier {
public:
    MatFourier() = default;
    MatFourier(FourierMap a, FourierMap b, FourierMap c, FourierMap d);

    static MatFourier constant(const Mat2& m, double strip_radius);
    static MatFourier fit_function(const std::function<Mat2(double)>& f,
                                   int grid, double strip_radius);

    const FourierMap& a() const { return a_; }
    const FourierMap& b() const { return b_; }
    const FourierMap& c() const { return c_; }
    const FourierMap& d() const { return d_; }
    double strip_radius() const { return a_.strip_radius(); }
    int max_mode() const;

    Mat2 eval(cplx z) const;
    double strip_norm(double eps, int grid = kDefaultGrid) const;
    double line_norm(double t, int grid = kDefaultGrid) const;
    double det_defect(double eps, int grid = kDefaultGrid) const;  // sup |det - 1|

    MatFourier reflect() const;
    bool is_real_symmetric(double tol = 1e-10) const;
    MatFourier adjugate() const;
    MatFourier denoise(double rel_floor = 1e-12) const;

    friend MatFourier operator*(const MatFourier& m, const MatFourier& n);
    friend MatFourier operator*(const Mat2& m, const MatFourier& n);
    friend MatFourier operator*(const MatFourier& m, const Mat2& n);

private:
    FourierMap a_, b_, c_, d_;
};

}  // namespace qpc

#endif

#include "qpc/cocycle.hpp"

#include <cmath>

namespace qpc {

void Cocycle::validate(int grid, double tol) const {
    double eps = strip_radius();
    if (map.det_defect(eps, grid) > tol)
        throw InvalidConfig("cocycle map is not unimodular on the grid");
    if (real_symmetric) {
        for (int j = 0; j < grid; ++j) {
            double x = static_cast<double>(j) / grid;
            if (map.eval(cplx(x, 0.0)).real_defect() > tol)
                throw InvalidConfig("cocycle flagged real_symmetric has complex entries on the axis");
        }
    }
}

Cocycle schrodinger_map(const Frequency& alpha, double E, const FourierMap& v) {
    double eps = v.strip_radius();
    FourierMap a = FourierMap::constant(E, eps) - v;
    return Cocycle{alpha,
                   MatFourier(a, FourierMap::constant(-1.0, eps),
                              FourierMap::constant(1.0, eps),
                              FourierMap::constant(0.0, eps)),
                   true};
}

FourierMap amo_potential(double lambda, double strip_radius) {
    return FourierMap::from_modes({lambda, 0.0, lambda}, strip_radius);
}

Cocycle rotate_cocycle(const Cocycle& c, cplx theta) {
    Mat2 r = rotation(theta);
    bool real_sym = c.real_symmetric && std::abs(theta.imag()) == 0.0;
    return Cocycle{c.frequency, r * c.map, real_sym};
}

Cocycle shear_cocycle(const Cocycle& c, int j, cplx lambda, const FourierMap& w) {
    if (j != 2 && j != 3) throw InvalidConfig("shear_cocycle: j must be 2 or 3");
    double eps = std::min(c.strip_radius(), w.strip_radius());
    FourierMap one = FourierMap::constant(1.0, eps);
    FourierMap zero = FourierMap::constant(0.0, eps);
    FourierMap s = lambda * w;
    MatFourier T = (j == 2) ? MatFourier(one, zero, s, one)
                            : MatFourier(one, s, zero, one);
    bool real_sym = c.real_symmetric && std::abs(lambda.imag()) == 0.0 &&
                    w.is_real_symmetric();
    return Cocycle{c.frequency, c.map * T, real_sym};
}

ProductResult product(const Cocycle& c, long long n, cplx z) {
    if (n < 0) throw InvalidConfig("product: n must be >= 0");
    if (std::abs(z.imag()) > c.strip_radius() + 1e-12)
        throw OutsideStrip("product: orbit line outside the strip");

    Mat2 m = Mat2::identity();
    double log_scale = 0.0;
    const long double alpha = c.frequency.value_ld();
    long double x = static_cast<long double>(z.real());
    x -= std::floor(static_cast<double>(x));
    const double t = z.imag();

    for (long long k = 0; k < n; ++k) {
        Mat2 a = c.map.eval(cplx(static_cast<double>(x), t));
        m = a * m;
        x += alpha;
        if (x >= 1.0L) x -= 1.0L;
        if ((k & 31) == 31) {
            double s = m.max_abs_entry();
            if (!std::isfinite(s) || s == 0.0)
                throw NonFinite("product: degenerate partial product");
            m = (1.0 / s) * m;
            log_scale += std::log(s);
        }
    }
    double s = m.max_abs_entry();
    if (!std::isfinite(s) || s == 0.0)
        throw NonFinite("product: degenerate partial product");
    m = (1.0 / s) * m;
    log_scale += std::log(s);
    return ProductResult{m, log_scale, n};
}

}  // namespace qpc

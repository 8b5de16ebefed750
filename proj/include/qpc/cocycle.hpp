#ifndef QPC_COCYCLE_HPP
#define QPC_COCYCLE_HPP

#include "qpc/arithmetic.hpp"
#include "qpc/fourier.hpp"

namespace qpc {

// A quasiperiodic cocycle (alpha, A): the skew product
//   (x, y) -> (x + alpha, A(x) y)
// with A an analytic periodic SL(2,C) matrix map on |Im z| <= strip_radius.
struct Cocycle {
    Frequency frequency;
    MatFourier map;
    bool real_symmetric = false;

    double strip_radius() const { return map.strip_radius(); }

    // Checks |det A - 1| and (if flagged) realness on the grid.
    void validate(int grid = kDefaultGrid, double tol = 1e-10) const;
};

// Schrodinger cocycle for energy E and real-symmetric analytic potential v:
// A(z) = ((E - v(z), -1), (1, 0)).
Cocycle schrodinger_map(const Frequency& alpha, double E, const FourierMap& v);

// Almost Mathieu potential v(x) = 2 lambda cos(2 pi x) as a FourierMap.
FourierMap amo_potential(double lambda, double strip_radius);

// The cocycle (alpha, R_{-i theta} A): a constant complex rotation applied
// on the left.  theta may be any complex number.
Cocycle rotate_cocycle(const Cocycle& c, cplx minus_i_theta);

// Sheared cocycle (alpha, A(z) T_j(lambda w(z))) used by the Lyapunov
// derivative probes, with
//   T_2(s) = ((1, 0), (s, 1))   (lower-left shear),
//   T_3(s) = ((1, s), (0, 1))   (upper-right shear).
Cocycle shear_cocycle(const Cocycle& c, int j, cplx lambda, const FourierMap& w);

struct ProductResult {
    Mat2 matrix;        // renormalized so max entry magnitude ~ 1
    double log_scale;   // true product = matrix * e^{log_scale}
    long long n;

    double log_norm() const { return log_scale + std::log(matrix.norm()); }
};

// Renormalized transfer-matrix product A(z+(n-1)a) ... A(z).
ProductResult product(const Cocycle& c, long long n, cplx z);

}  // namespace qpc

#endif

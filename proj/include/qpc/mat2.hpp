#ifndef QPC_MAT2_HPP
#define QPC_MAT2_HPP

#include <complex>
#include <cmath>

#include "qpc/errors.hpp"

namespace qpc {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

// 2x2 complex matrix, row major: [[a, b], [c, d]].
struct Mat2 {
    cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};

    static Mat2 identity() { return Mat2{}; }

    cplx det() const { return a * d - b * c; }
    cplx trace() const { return a + d; }

    double frobenius_sq() const {
        return std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d);
    }

    // Spectral (operator) norm, closed form for 2x2.
    double norm() const {
        double f = frobenius_sq();
        double dd = std::norm(det());
        double disc = f * f - 4.0 * dd;
        if (disc < 0.0) disc = 0.0;
        return std::sqrt(0.5 * (f + std::sqrt(disc)));
    }

    // Smallest singular value.
    double sigma_min() const {
        double f = frobenius_sq();
        double dd = std::norm(det());
        double disc = f * f - 4.0 * dd;
        if (disc < 0.0) disc = 0.0;
        double s = 0.5 * (f - std::sqrt(disc));
        return std::sqrt(s > 0.0 ? s : 0.0);
    }

    Mat2 adjugate() const { return Mat2{d, -b, -c, a}; }

    Mat2 inverse() const {
        cplx dt = det();
        if (std::abs(dt) < 1e-300) throw SingularMatrix();
        return Mat2{d / dt, -b / dt, -c / dt, a / dt};
    }

    Mat2 transpose() const { return Mat2{a, c, b, d}; }

    Mat2 conj() const {
        return Mat2{std::conj(a), std::conj(b), std::conj(c), std::conj(d)};
    }

    double max_abs_entry() const {
        return std::max(std::max(std::abs(a), std::abs(b)),
                        std::max(std::abs(c), std::abs(d)));
    }

    double real_defect() const {
        return std::max(std::max(std::abs(a.imag()), std::abs(b.imag())),
                        std::max(std::abs(c.imag()), std::abs(d.imag())));
    }

    friend Mat2 operator*(const Mat2& m, const Mat2& n) {
        return Mat2{m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
                    m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
    }
    friend Mat2 operator*(cplx s, const Mat2& m) {
        return Mat2{s * m.a, s * m.b, s * m.c, s * m.d};
    }
    friend Mat2 operator+(const Mat2& m, const Mat2& n) {
        return Mat2{m.a + n.a, m.b + n.b, m.c + n.c, m.d + n.d};
    }
    friend Mat2 operator-(const Mat2& m, const Mat2& n) {
        return Mat2{m.a - n.a, m.b - n.b, m.c - n.c, m.d - n.d};
    }
    Mat2& operator*=(double s) {
        a *= s; b *= s; c *= s; d *= s;
        return *this;
    }
};

// Complex rotation R_theta = [[cos 2*pi*theta, -sin 2*pi*theta],
//                             [sin 2*pi*theta,  cos 2*pi*theta]].
Mat2 rotation(cplx theta);

// Point of the projective line P(C^2), kept in homogeneous coordinates so
// that iteration loops never special-case the pole of the chart.
struct ProjPoint {
    cplx xi1{0.0}, xi2{1.0};

    ProjPoint() = default;
    ProjPoint(cplx x1, cplx x2);

    static ProjPoint from_chart(cplx z) { return ProjPoint(z, cplx(1.0)); }
    static ProjPoint infinity() { return ProjPoint(cplx(1.0), cplx(0.0)); }

    bool is_infinity(double tol = 1e-14) const {
        return std::abs(xi2) <= tol * std::abs(xi1);
    }
    // Chart value xi1/xi2; very large for points near infinity.
    cplx chart() const { return xi1 / xi2; }

    ProjPoint reflected() const {  // z -> conj(z) on the sphere
        return ProjPoint(std::conj(xi1), std::conj(xi2));
    }
};

// Projective action of a nonsingular matrix.
ProjPoint act(const Mat2& m, const ProjPoint& p);

// |sin angle| between two directions; SU(2)-invariant, in [0, 1].
double sphere_distance(const ProjPoint& u, const ProjPoint& s);

// Moebius chart H -> D, z -> (z - i) / (z + i), in homogeneous form.
cplx disk_chart(const ProjPoint& p);
inline cplx disk_chart(cplx z) { return disk_chart(ProjPoint::from_chart(z)); }

}  // namespace qpc

#endif

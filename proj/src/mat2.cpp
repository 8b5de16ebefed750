#include "qpc/mat2.hpp"

namespace qpc {

Mat2 rotation(cplx theta) {
    cplx ang = kTwoPi * theta;
    cplx co = std::cos(ang), si = std::sin(ang);
    return Mat2{co, -si, si, co};
}

ProjPoint::ProjPoint(cplx x1, cplx x2) : xi1(x1), xi2(x2) {
    double m = std::max(std::abs(xi1), std::abs(xi2));
    if (!(m > 0.0) || !std::isfinite(m)) throw NonFinite("ProjPoint: invalid homogeneous pair");
    xi1 /= m;
    xi2 /= m;
}

ProjPoint act(const Mat2& m, const ProjPoint& p) {
    if (std::abs(m.det()) < 1e-280) throw SingularMatrix("act: singular matrix");
    return ProjPoint(m.a * p.xi1 + m.b * p.xi2, m.c * p.xi1 + m.d * p.xi2);
}

double sphere_distance(const ProjPoint& u, const ProjPoint& s) {
    double nu = std::sqrt(std::norm(u.xi1) + std::norm(u.xi2));
    double ns = std::sqrt(std::norm(s.xi1) + std::norm(s.xi2));
    double w = std::abs(u.xi1 * s.xi2 - u.xi2 * s.xi1);
    double d = w / (nu * ns);
    return d > 1.0 ? 1.0 : d;
}

cplx disk_chart(const ProjPoint& p) {
    const cplx i(0.0, 1.0);
    cplx num = p.xi1 - i * p.xi2;
    cplx den = p.xi1 + i * p.xi2;
    if (std::abs(den) == 0.0) return cplx(std::numeric_limits<double>::infinity(), 0.0);
    return num / den;
}

}  // namespace qpc

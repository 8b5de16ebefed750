#include "qpc/hyperbolicity.hpp"

#include <algorithm>
#include <cmath>

namespace qpc {

namespace {

ProjPoint larger_column(const Mat2& m) {
    double c1 = std::norm(m.a) + std::norm(m.c);
    double c2 = std::norm(m.b) + std::norm(m.d);
    return c1 >= c2 ? ProjPoint(m.a, m.c) : ProjPoint(m.b, m.d);
}

double contraction_ratio(const Mat2& m) {
    double n = m.norm();
    return n > 0.0 ? m.sigma_min() / n : 1.0;
}

long double frac(long double x) {
    x -= std::floor(static_cast<double>(x));
    if (x < 0.0L) x += 1.0L;
    if (x >= 1.0L) x -= 1.0L;
    return x;
}

}  // namespace

DirectionField directions(const Cocycle& c, double t, long long iterations,
                          double tol, int grid) {
    if (std::abs(t) > c.strip_radius() + 1e-12)
        throw OutsideStrip("directions: line outside the strip");
    if (tol <= 0.0) throw InvalidConfig("directions: tol must be positive");

    const long double alpha = c.frequency.value_ld();
    long long lag = std::max<long long>(1, c.frequency.select_scale_ll(100));
    const long long burn_in = std::max<long long>(lag, 200);

    // Main grid followed by the alpha-shifted copy used for the residuals.
    const int npts = 2 * grid;
    std::vector<long double> xb(static_cast<size_t>(npts));  // backward phase
    std::vector<long double> xf(static_cast<size_t>(npts));  // forward phase
    std::vector<double> x0(static_cast<size_t>(npts));
    for (int j = 0; j < npts; ++j) {
        long double base = static_cast<long double>(j % grid) / grid;
        if (j >= grid) base = frac(base + alpha);
        x0[static_cast<size_t>(j)] = static_cast<double>(base);
        xb[static_cast<size_t>(j)] = base;
        xf[static_cast<size_t>(j)] = base;
    }
    std::vector<Mat2> Mu(static_cast<size_t>(npts));  // A(x-a) ... A(x-na)
    std::vector<Mat2> Pf(static_cast<size_t>(npts));  // A(x+(n-1)a) ... A(x)

    auto extend = [&](long long steps) {
        for (int j = 0; j < npts; ++j) {
            auto& mu = Mu[static_cast<size_t>(j)];
            auto& pf = Pf[static_cast<size_t>(j)];
            auto& b = xb[static_cast<size_t>(j)];
            auto& f = xf[static_cast<size_t>(j)];
            for (long long k = 0; k < steps; ++k) {
                b = frac(b - alpha);
                mu = mu * c.map.eval(cplx(static_cast<double>(b), t));
                pf = c.map.eval(cplx(static_cast<double>(f), t)) * pf;
                f = frac(f + alpha);
                if ((k & 31) == 31) {
                    mu = (1.0 / mu.max_abs_entry()) * mu;
                    pf = (1.0 / pf.max_abs_entry()) * pf;
                }
            }
            mu = (1.0 / mu.max_abs_entry()) * mu;
            pf = (1.0 / pf.max_abs_entry()) * pf;
        }
    };

    extend(burn_in);
    long long n = burn_in;
    std::vector<ProjPoint> u(static_cast<size_t>(npts)), s(static_cast<size_t>(npts));
    for (int j = 0; j < npts; ++j) {
        u[static_cast<size_t>(j)] = larger_column(Mu[static_cast<size_t>(j)]);
        s[static_cast<size_t>(j)] = larger_column(Pf[static_cast<size_t>(j)].adjugate());
    }

    double gap = 1.0;
    bool converged = false;
    while (n + lag <= iterations + burn_in) {
        extend(lag);
        n += lag;
        gap = 0.0;
        for (int j = 0; j < npts; ++j) {
            ProjPoint nu = larger_column(Mu[static_cast<size_t>(j)]);
            ProjPoint ns = larger_column(Pf[static_cast<size_t>(j)].adjugate());
            gap = std::max(gap, sphere_distance(u[static_cast<size_t>(j)], nu));
            gap = std::max(gap, sphere_distance(s[static_cast<size_t>(j)], ns));
            u[static_cast<size_t>(j)] = nu;
            s[static_cast<size_t>(j)] = ns;
        }
        if (gap < tol) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw NoConvergence("directions: lagged sweeps did not settle within the budget");
    double worst_ratio = 0.0;
    for (int j = 0; j < npts; ++j)
        worst_ratio = std::max(worst_ratio, contraction_ratio(Mu[static_cast<size_t>(j)]));
    if (worst_ratio > 0.5)
        throw NoConvergence("directions: no contraction detected (elliptic or critical input)");

    DirectionField out;
    out.t = t;
    out.gap = gap;
    out.n_used = n;
    out.x.assign(x0.begin(), x0.begin() + grid);
    out.u.assign(u.begin(), u.begin() + grid);
    out.s.assign(s.begin(), s.begin() + grid);
    for (int j = 0; j < grid; ++j) {
        Mat2 a = c.map.eval(cplx(out.x[static_cast<size_t>(j)], t));
        out.r_u = std::max(out.r_u, sphere_distance(act(a, out.u[static_cast<size_t>(j)]),
                                                    u[static_cast<size_t>(grid + j)]));
        out.r_s = std::max(out.r_s, sphere_distance(act(a, out.s[static_cast<size_t>(j)]),
                                                    s[static_cast<size_t>(grid + j)]));
    }
    // Exactly periodic elliptic products can make the lagged sweeps agree
    // without any genuine convergence; invariance of the fields is the
    // ground truth, so reject candidates that fail it outright.
    if (std::max(out.r_u, out.r_s) > std::sqrt(tol))
        throw NoConvergence("directions: candidate fields are not invariant (elliptic or critical input)");
    return out;
}

UHCertificate uh_certificate(const Cocycle& c, double t, double theta,
                             long long iterations, double tol_inv,
                             double tol_angle, int grid) {
    UHCertificate cert;
    DirectionField f;
    try {
        f = directions(c, t, iterations, std::min(tol_inv, 1e-8), grid);
    } catch (const NoConvergence& e) {
        cert.failure = e.what();
        return cert;
    }
    cert.r_u = f.r_u;
    cert.r_s = f.r_s;
    cert.margin = 1.0;
    for (size_t j = 0; j < f.u.size(); ++j) {
        cert.margin = std::min(cert.margin, sphere_distance(f.u[j], f.s[j]));
        cert.disk_bound = std::max(cert.disk_bound, std::abs(disk_chart(f.u[j])));
    }
    if (theta > 0.0)
        cert.disk_ok = cert.disk_bound <= std::exp(-4.0 * kPi * theta) + 1e-6;
    cert.verdict = cert.margin > tol_angle && cert.r_u < tol_inv &&
                   cert.r_s < tol_inv && cert.disk_ok;
    if (!cert.verdict && cert.failure.empty()) {
        if (cert.margin <= tol_angle) cert.failure = "angle margin below threshold";
        else if (!cert.disk_ok) cert.failure = "unstable field violates the disk bound";
        else cert.failure = "invariance residual above threshold";
    }
    return cert;
}

double herman_field_le(const Cocycle& a, double theta, long long iterations,
                       double tol, int grid) {
    if (theta <= 0.0) throw InvalidConfig("herman_field_le: theta must be positive");
    Cocycle rc = rotate_cocycle(a, cplx(0.0, -theta));
    DirectionField f = directions(rc, 0.0, iterations, tol, grid);
    double e8 = std::exp(8.0 * kPi * theta);
    double acc = 0.0;
    for (const auto& up : f.u) {
        double du2 = std::norm(disk_chart(up));
        double denom = 1.0 - e8 * du2;
        if (denom <= 0.0)
            throw NonFinite("herman_field_le: unstable field escapes the admissible disk");
        acc += std::log((1.0 - du2) / denom);
    }
    return kTwoPi * theta + 0.5 * acc / static_cast<double>(f.u.size());
}

AngleProfile angle_profile(const Cocycle& c, const std::vector<double>& heights,
                           double theta, long long iterations, double tol,
                           int grid) {
    AngleProfile p;
    p.heights = heights;
    for (double t : heights) {
        DirectionField f = directions(c, t, iterations, tol, grid);
        std::vector<double> d(f.u.size()), rho(f.u.size());
        double mind = 1.0;
        for (size_t j = 0; j < f.u.size(); ++j) {
            d[j] = sphere_distance(f.u[j], f.s[j]);
            rho[j] = -std::log(d[j]);
            mind = std::min(mind, d[j]);
        }
        p.min_d.push_back(mind);
        p.d.push_back(std::move(d));
        p.rho.push_back(std::move(rho));
        p.exponent.push_back(theta > 0.0 && theta < 1.0 && mind > 0.0
                                 ? std::log(mind) / std::log(theta)
                                 : 0.0);
    }
    return p;
}

QPair q_pair(const ProjPoint& mu, const ProjPoint& nu) {
    double nm = std::sqrt(std::norm(mu.xi1) + std::norm(mu.xi2));
    double nn = std::sqrt(std::norm(nu.xi1) + std::norm(nu.xi2));
    cplx m1 = mu.xi1 / nm, m2 = mu.xi2 / nm;
    cplx n1 = nu.xi1 / nn, n2 = nu.xi2 / nn;
    cplx W = m1 * n2 - m2 * n1;
    if (std::abs(W) < 1e-14)
        throw CoincidentDirections("q_pair: directions coincide");
    QPair q;
    q.Q2 = -m1 * n1 / W;
    q.Q3 = m2 * n2 / W;
    q.eta = std::max(1.0, std::max(std::abs(q.Q2), std::abs(q.Q3)));
    return q;
}

DerivativeCheck derivative_check(const Cocycle& c, const FourierMap& w, int j,
                                 double h, double t, long long iterations,
                                 double le_tol, long long N_max, int grid) {
    if (j != 2 && j != 3) throw InvalidConfig("derivative_check: j must be 2 or 3");
    if (h <= 0.0) throw InvalidConfig("derivative_check: h must be positive");
    DirectionField f = directions(c, t, iterations, 1e-9, grid);
    cplx acc(0.0);
    for (size_t k = 0; k < f.u.size(); ++k) {
        QPair q = q_pair(f.u[k], f.s[k]);
        acc += (j == 2 ? q.Q2 : q.Q3) * w.eval(cplx(f.x[k], t));
    }
    DerivativeCheck out;
    out.formula = (acc / static_cast<double>(f.u.size())).real();
    double Lp = le_estimate(shear_cocycle(c, j, h, w), t, le_tol, N_max).value;
    double Lm = le_estimate(shear_cocycle(c, j, -h, w), t, le_tol, N_max).value;
    out.fd = (Lp - Lm) / (2.0 * h);
    out.gap = std::abs(out.fd - kDerivativeSign * out.formula);
    return out;
}

}  // namespace qpc

#include "qpc/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qpc {

LineExponent finite_le(const Cocycle& c, long long N, double t, int grid) {
    if (N < 1) throw InvalidConfig("finite_le: N must be >= 1");
    if (std::abs(t) > c.strip_radius() + 1e-12)
        throw OutsideStrip("finite_le: line outside the strip");
    double acc = 0.0;
    for (int j = 0; j < grid; ++j) {
        double x = static_cast<double>(j) / grid;
        acc += product(c, N, cplx(x, t)).log_norm();
    }
    return LineExponent{N, t, acc / (static_cast<double>(N) * grid), grid};
}

LeEstimate le_estimate(const Cocycle& c, double t, double tol,
                       long long N_max, long long N0, int grid) {
    if (tol <= 0.0) throw InvalidConfig("le_estimate: tol must be positive");
    LeEstimate out;
    long long N = N0;
    double prev = finite_le(c, N, t, grid).value;
    out.sequence.push_back(prev);
    double gap = std::abs(prev);
    while (2 * N <= N_max) {
        N *= 2;
        double cur = finite_le(c, N, t, grid).value;
        out.sequence.push_back(cur);
        gap = std::abs(cur - prev);
        prev = cur;
        if (gap < tol) {
            out.converged = true;
            break;
        }
    }
    out.value = prev;
    out.achieved_gap = gap;
    out.N = N;
    // Grid-refinement delta: compare against the even-subgrid average at the
    // final scale (half the grid), an estimate of quadrature error.
    double coarse = finite_le(c, N, t, grid / 2).value;
    out.err = 0.5 * gap + std::abs(prev - coarse);
    return out;
}

StripProfile strip_profile(const Cocycle& c, const std::vector<double>& heights,
                           double tol, long long N_max, int grid) {
    StripProfile p;
    p.heights = heights;
    for (double eps : heights) {
        LeEstimate e = le_estimate(c, eps, tol, N_max, 256, grid);
        p.exponents.push_back(e.value);
        p.errors.push_back(e.err);
    }
    p.slopes_over_2pi.assign(heights.size(), 0.0);
    for (size_t i = 1; i < heights.size(); ++i) {
        double dh = heights[i] - heights[i - 1];
        p.slopes_over_2pi[i] =
            dh != 0.0 ? (p.exponents[i] - p.exponents[i - 1]) / (kTwoPi * dh) : 0.0;
    }
    if (c.real_symmetric) {
        for (size_t i = 0; i < heights.size(); ++i) {
            if (heights[i] == 0.0) continue;
            LeEstimate m = le_estimate(c, -heights[i], tol, N_max, 256, grid);
            if (std::abs(m.value - p.exponents[i]) > 2.0 * (m.err + p.errors[i]) + tol)
                p.even_ok = false;
        }
    }
    for (size_t i = 1; i + 1 < heights.size(); ++i) {
        double h1 = heights[i - 1], h2 = heights[i], h3 = heights[i + 1];
        if (h3 == h1) continue;
        double lam = (h2 - h1) / (h3 - h1);
        double chord = (1.0 - lam) * p.exponents[i - 1] + lam * p.exponents[i + 1];
        double bar = p.errors[i - 1] + p.errors[i] + p.errors[i + 1];
        if (p.exponents[i] > chord + bar + tol) p.convex_ok = false;
    }
    return p;
}

const char* to_string(Regularity r) {
    switch (r) {
        case Regularity::regular: return "regular";
        case Regularity::non_regular: return "non_regular";
        default: return "inconclusive";
    }
}

Regularity regularity_test(const StripProfile& p, double delta, double tol) {
    if (p.heights.empty()) throw InvalidConfig("regularity_test: empty profile");
    double L0 = 0.0;
    bool have0 = false;
    for (size_t i = 0; i < p.heights.size(); ++i)
        if (p.heights[i] == 0.0) { L0 = p.exponents[i]; have0 = true; }
    if (!have0) throw InvalidConfig("regularity_test: profile must include height 0");
    double maxdev = 0.0;
    bool covered = false;
    bool steep = false;
    for (size_t i = 0; i < p.heights.size(); ++i) {
        double h = p.heights[i];
        if (h < 0.0 || h > delta + 1e-15) continue;
        covered = covered || h > 0.0;
        maxdev = std::max(maxdev, std::abs(p.exponents[i] - L0));
        if (i > 0 && p.heights[i - 1] >= 0.0 && p.slopes_over_2pi[i] > 0.5 + 0.1)
            steep = true;
    }
    if (!covered) throw InvalidConfig("regularity_test: profile does not cover (0, delta]");
    if (maxdev < tol) return Regularity::regular;
    if (steep) return Regularity::non_regular;
    return Regularity::inconclusive;
}

double kappa_exponent(double theta, double L_theta) {
    if (theta <= 0.0 || theta >= 1.0)
        throw InvalidConfig("kappa_exponent: theta must be in (0,1)");
    if (L_theta <= 0.0) return std::numeric_limits<double>::infinity();
    return std::log(L_theta) / std::log(theta);
}

BjReport bj_defect(const Cocycle& c, long long N, long long N_prime,
                   long long q, int grid) {
    if (N < 1 || N_prime < 1 || N_prime % N != 0)
        throw NotMultiple("bj_defect: N' must be a positive multiple of N");
    BjReport r;
    r.L_N = finite_le(c, N, 0.0, grid).value;
    r.L_2N = finite_le(c, 2 * N, 0.0, grid).value;
    r.L_Np = finite_le(c, N_prime, 0.0, grid).value;
    r.defect = std::abs(r.L_Np + r.L_N - 2.0 * r.L_2N);
    double kappa = 1.0 / static_cast<double>(q);
    r.hypotheses_held = (r.L_2N > 0.9 * r.L_N) && (r.L_N > 100.0 * kappa);
    return r;
}

}  // namespace qpc

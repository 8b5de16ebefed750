#ifndef QPC_LYAPUNOV_HPP
#define QPC_LYAPUNOV_HPP

#include <vector>

#include "qpc/cocycle.hpp"

namespace qpc {

// Finite-scale Lyapunov exponent on the line Im z = t:
// the grid average of (1/N) ln ||A_N(x + it)||.
struct LineExponent {
    long long N = 0;
    double t = 0.0;
    double value = 0.0;
    int grid_size = 0;
};

LineExponent finite_le(const Cocycle& c, long long N, double t,
                       int grid = kDefaultGrid);

struct LeEstimate {
    double value = 0.0;        // L at the final (largest) scale
    double achieved_gap = 0.0; // |L_{2N} - L_N| at the last doubling
    double err = 0.0;          // gap/2 + grid-refinement delta
    long long N = 0;           // final scale
    bool converged = false;
    std::vector<double> sequence;  // L at scales N0, 2 N0, 4 N0, ...
};

// Doubling estimator: starts at N0 and doubles until the gap drops below
// tol or N exceeds N_max; the monotone sequence L_{2^k N0} is reported.
LeEstimate le_estimate(const Cocycle& c, double t, double tol,
                       long long N_max, long long N0 = 256,
                       int grid = kDefaultGrid);

struct StripProfile {
    std::vector<double> heights;
    std::vector<double> exponents;
    std::vector<double> errors;
    std::vector<double> slopes_over_2pi;  // between consecutive heights; first entry 0
    bool even_ok = true;                  // |L(eps) - L(-eps)| within error bars
    bool convex_ok = true;                // midpoints below chords within error bars
    double kappa = 0.0;                   // set by kappa_exponent when applicable
};

// L(eps) with error bars over the given heights, finite-difference slopes
// divided by 2 pi, and evenness/convexity checks (evenness is measured
// against the mirrored heights for real-symmetric cocycles).
StripProfile strip_profile(const Cocycle& c, const std::vector<double>& heights,
                           double tol, long long N_max = 1 << 20,
                           int grid = kDefaultGrid);

enum class Regularity { regular, non_regular, inconclusive };
const char* to_string(Regularity r);

// Surrogate for constancy of L under small imaginary perturbation:
// regular if L moves by less than tol on [0, delta]; non_regular if some
// slope/2pi below delta exceeds 1/2 with margin; else inconclusive.
Regularity regularity_test(const StripProfile& p, double delta, double tol);

// kappa with L_theta = theta^kappa: ln L_theta / ln theta.  Returns +inf
// when L_theta <= 0 (flagged by the caller as a degenerate probe).
double kappa_exponent(double theta, double L_theta);

struct BjReport {
    double defect = 0.0;    // |L_{N'} + L_N - 2 L_{2N}|
    bool hypotheses_held = false;
    double L_N = 0.0, L_2N = 0.0, L_Np = 0.0;
};

// Telescoping defect at scales N, 2N, N' (N' a multiple of N), with a
// diagnostic record of whether L_{2N} > (9/10) L_N and L_N > 100 kappa
// held at kappa = 1/q.
BjReport bj_defect(const Cocycle& c, long long N, long long N_prime,
                   long long q, int grid = kDefaultGrid);

}  // namespace qpc

#endif

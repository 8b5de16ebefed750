#ifndef QPC_CONJUGACY_HPP
#define QPC_CONJUGACY_HPP

#include <functional>
#include <string>
#include <vector>

#include "qpc/hyperbolicity.hpp"

namespace qpc {

// The SU(2) matrix mapping infinity -> i and 0 -> -i; the frame in which
// maps fixing +-i become diagonal.
Mat2 u_frame();

struct MinimizerData {
    ProjPoint x, y;
    double k = 1.0;   // k(x, y) = 1/eps where d(x, y) = 2 eps / (1 + eps^2)
    Mat2 B;           // det 1, B x = i, B y = -i, norm-minimizing
};

// Minimizing conjugation of a transverse pair of directions to (i, -i).
MinimizerData minimizer(const ProjPoint& x, const ProjPoint& y);

// Direction fields in pole-free charts: p = disk_chart(u) (|p| < 1 for
// u in the upper half plane) and m = 1/disk_chart(s) (|m| < 1 for s in the
// lower half plane); both holomorphic when the fields are.
struct ChartedFields {
    FourierMap p;
    FourierMap m;
    double min_d = 0.0;  // min over grid of d(u, s)
};

// Fourier-fits the charts from grid samples of a converged field and
// validates holomorphy by coefficient decay (tail below tail_tol of mass).
ChartedFields fit_fields(const DirectionField& f, double strip_radius,
                         double tail_tol = 1e-6);

// Unit-determinant periodic B0 with B0 u = i, B0 s = -i, built from the
// homogeneous lifts of the charted fields with an exp-gauge balancing the
// column norms at low order (no square-root branch cuts by construction).
MatFourier straighten(const ChartedFields& fields, double delta,
                      double min_angle_tol = 1e-4, int gauge_order = 8,
                      int grid = kDefaultGrid);

// Corrects B0 by G = U diag(e^{nu/2}, e^{-nu/2}) U^{-1} where the
// holomorphic 1-periodic nu solves Re nu = boundary norm-ratio data on the
// lines Im z = +-delta via per-mode 2x2 systems (mode 0 real, its imaginary
// constant set to 0).  The result is minimizing on both boundary lines.
MatFourier hilbert_minimize(const MatFourier& B0, double delta,
                            int grid = kDefaultGrid);

struct PeriodizeResult {
    MatFourier B;          // R_{-mu z} B1(z), periodic
    cplx mu{0.0};          // measured constant twist
    double mismatch = 0.0; // sup distance of B1(z+1) B1(z)^{-1} from R_mu
};

// Measures the constant rotation twist mu with B1(z+1) = R_mu B1(z) and
// removes it.  Fourier-native inputs are already periodic (mu = 0).
PeriodizeResult periodize(const std::function<Mat2(cplx)>& B1, double delta,
                          double tol = 1e-6, int grid = kDefaultGrid);

struct RotationData {
    int k = 0;                  // winding number of the rotation angle
    FourierMap phi;             // psi(x) - k x
    double off_residual = 0.0;  // sup distance from the rotation family
};

// Reads off A'(x) = R_{psi(x)} from axis samples: psi unwrapped along the
// grid, k the total winding, phi = psi - k x Fourier-fitted.
RotationData rotation_extract(const std::function<Mat2(double)>& Ap,
                              double strip_radius, double off_tol = 1e-3,
                              int grid = kDefaultGrid);

struct RejectedMode {
    int k = 0;
    double divisor = 0.0;    // |e^{2 pi i k alpha} - 1|
    double magnitude = 0.0;  // |phi_hat_k|
};

struct CohomSolution {
    FourierMap w;
    cplx lambda{0.0};
    int K = 0;
    std::vector<RejectedMode> rejected;
    double residual = 0.0;  // sup |phi - (w(x+alpha) - w(x) + lambda)|
    bool partial = false;   // some mass was rejected or truncated
};

// Solves phi(x) = w(x+alpha) - w(x) + lambda mode by mode up to order K,
// rejecting modes whose divisor falls below delta_min.  SmallDivisor is
// thrown only when a rejected mode carries more than tail_tol of mass.
CohomSolution cohom_solve(const FourierMap& phi, const Frequency& alpha,
                          int K, double delta_min, double tail_tol = 1e-8,
                          int grid = kDefaultGrid);

struct ConjugacyConfig {
    long long dir_iterations = 1 << 14;
    double dir_tol = 1e-10;
    int grid = kDefaultGrid;
    double fit_tail_tol = 1e-6;      // holomorphy witness for fitted fields
    double weak_angle_tol = 1e-3;    // minimal usable d(u, s) / d(u, u')
    double off_tol = 1e-2;           // rotation_extract gate, complex pipeline
    double real_off_tol = 0.45;      // looser gate for the real pipeline
    double delta_min = 1e-8;         // small-divisor cutoff
    double cohom_tail_tol = 1e-8;    // fatal rejected-mode mass
    int mode_budget = kDefaultModeCap;
    double le_tol = 1e-4;            // tolerance for the L_theta estimate
    long long le_N_max = 1 << 20;
    int real_refine = 3;             // recentering passes in the real pipeline
};

struct ConjugacyResult {
    MatFourier B;
    cplx lambda{0.0};
    int winding = 0;
    double residual_R = 0.0;      // sup || B(x+a) M(x) B(x)^{-1} - R_lambda ||
    double tilde_residual = 0.0;  // distance of B(x+a) A(x) B(x)^{-1} to R_{Re lambda}
    double tilde_exponent = 0.0;  // log_theta of the above
    double norm_budget = 0.0;     // ||B||_eps^2
    double kappa = 0.0;           // ln L_theta / ln theta
    double L_theta = 0.0;
    double theta = 0.0;
    double eps = 0.0;
    bool im_lambda_ok = false;    // |Im lambda + L_theta/2pi| <= 0.1 L_theta/2pi
    CohomSolution cohom;
    Frequency alpha;
    bool real_symmetric_source = false;
    bool real_output = false;     // produced by the real-symmetric pipeline
    int branch = 0;               // real pipeline: 0 = (u, u'), 1 = (s, s')
    double axis_real_defect = 0.0;  // realness of B on the axis (real pipeline)
};

// Full complex pipeline for (alpha, R_{-i theta} A) with A real-symmetric:
// directions -> straighten -> hilbert_minimize -> periodize ->
// rotation_extract (winding must vanish) -> cohom_solve ->
// B(x) = R_{-w(x)} B1(x), so that B(x+alpha) R_{-i theta} A(x) B(x)^{-1}
// is the constant rotation R_lambda up to residual_R.
ConjugacyResult complex_conjugacy(const Cocycle& c, double theta, double eps,
                                  const ConjugacyConfig& cfg = {});

struct SymmetryDiagnostics {
    std::vector<double> x;
    FourierMap Delta;               // det of columns U, U'
    std::vector<double> omega;      // ||U|| ||U'|| on the axis grid
    std::vector<double> d_uu;       // d(u, u') on the axis grid
    int N_theta = 0;                // smallest truncation with tail < theta^2
    double i_delta_real_defect = 0.0;  // realness of i Delta on the axis
    double det_US_defect = 0.0;        // sup |det(U, S) - 2i|
    double identity_defect = 0.0;      // sup | |Delta|/omega - d(u, u') |
};

// U = B^{-1} (i, 1)^T, S = B^{-1} (-i, 1)^T and their reflections, with the
// determinant/angle identities of the symmetric theory.
SymmetryDiagnostics symmetry_diagnostics(const ConjugacyResult& r,
                                         int grid = kDefaultGrid);

struct RealStraightening {
    MatFourier Bp;    // real-symmetric, det 1; maps the chosen pair to (i, -i)
    int branch = 0;   // 0: pair (u, u'); 1: pair (s, s')
    double min_d = 0.0;
};

// Branch rule of the real-symmetric pipeline: straighten (u, u') when
// sup_x ||U(x)||^2 >= 2 on the axis, else (s, s'); falls back to the other
// pair if the chosen one is angle-degenerate, and throws WeakSymmetricAngle
// when both are.
RealStraightening real_straighten(const MatFourier& B, double eps,
                                  double weak_tol = 1e-3,
                                  int grid = kDefaultGrid);

// Real-symmetric conjugacy of (alpha, A) itself: complex pipeline, branch
// rule, real-symmetric straightening and cohomological solve, and
// B_r(x) = R_{w(x)} B'(x) with real lambda; B_r is real on the axis.
ConjugacyResult real_conjugacy(const Cocycle& c, double theta,
                               double eps_prime,
                               const ConjugacyConfig& cfg = {});

}  // namespace qpc

#endif

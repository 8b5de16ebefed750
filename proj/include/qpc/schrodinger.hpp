#ifndef QPC_SCHRODINGER_HPP
#define QPC_SCHRODINGER_HPP

#include <string>
#include <vector>

#include "qpc/hyperbolicity.hpp"

namespace qpc {

enum class EnergyClass { gap, subcritical, critical, supercritical, unresolved };
const char* to_string(EnergyClass c);

struct ClassifyConfig {
    double tol_L = 1e-2;        // positivity threshold for L(E, 0)
    double delta = 0.05;        // regularity probe depth
    double slope_tol = 0.05;    // acceleration quantization tolerance
    double le_tol = 1e-3;
    long long le_N_max = 1 << 19;
    long long uh_iterations = 1 << 12;
    int grid = 512;
    long long rho_N = 100000;
};

struct EnergyRecord {
    double E = 0.0;
    bool uh = false;           // true <=> gap (not in the spectrum)
    double L0 = 0.0;
    double L0_err = 0.0;
    StripProfile profile;      // empty when uh
    double acceleration = 0.0; // slope/2pi over [delta/2, delta]
    EnergyClass cls = EnergyClass::unresolved;
    double rho = 0.0;          // rotation number in [0, 1/2]
    double rho_err = 0.0;
    double ids = 0.0;          // 1 - 2 rho
    std::string status = "ok"; // per-record error note in reports
};

// Spectral classification of one energy: spectrum membership is
// operationally "not uniformly hyperbolic"; on-spectrum energies are split
// by L(E, 0) against tol_L and by the regularity surrogate on [0, delta].
EnergyRecord classify_energy(const Frequency& alpha, const FourierMap& v,
                             double E, const ClassifyConfig& cfg = {});

// Rotation number in [0, 1/2] from the sign-change density of solutions of
// the difference equation, averaged over 8 initial phases; the error bar is
// the windowed standard error.
struct RotationNumber {
    double rho = 0.0;
    double err = 0.0;
};
RotationNumber rotation_number(const Frequency& alpha, const FourierMap& v,
                               double E, long long N);

enum class IdsMethod { rotation, eigencount };

// Integrated density of states: N(E) = 1 - 2 rho(E), or the phase-averaged
// eigenvalue-counting fraction of the size x size Dirichlet truncation
// (Sturm negative-count on the tridiagonal).
double ids(const Frequency& alpha, const FourierMap& v, double E,
           IdsMethod method, long long size);

struct DichotomyReport {
    std::vector<EnergyRecord> records;  // ordered by E
    int n_gap = 0, n_sub = 0, n_crit = 0, n_super = 0, n_unresolved = 0;
    int n_error = 0;
};

// classify_energy per grid point; per-record failures are recorded in the
// status field and the report is still emitted.
DichotomyReport dichotomy_report(const Frequency& alpha, const FourierMap& v,
                                 const std::vector<double>& E_grid,
                                 const ClassifyConfig& cfg = {});

}  // namespace qpc

#endif

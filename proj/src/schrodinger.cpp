#include "qpc/schrodinger.hpp"

#include <algorithm>
#include <cmath>

namespace qpc {

const char* to_string(EnergyClass c) {
    switch (c) {
        case EnergyClass::gap: return "gap";
        case EnergyClass::subcritical: return "subcritical";
        case EnergyClass::critical: return "critical";
        case EnergyClass::supercritical: return "supercritical";
        default: return "unresolved";
    }
}

RotationNumber rotation_number(const Frequency& alpha, const FourierMap& v,
                               double E, long long N) {
    if (N < 1000) throw InvalidConfig("rotation_number: N too small");
    const long double a = alpha.value_ld();
    const int n_phases = 8;
    const int n_windows = 10;
    std::vector<double> densities;
    densities.reserve(n_phases * n_windows);
    double total = 0.0;
    for (int p = 0; p < n_phases; ++p) {
        long double x = static_cast<long double>(p) / n_phases;
        double y0 = 0.0, y1 = 1.0;
        long long flips = 0;
        long long window = N / n_windows;
        long long win_flips = 0;
        // Compare against the sign of the last nonzero value so that exact
        // floating-point zeros (periodic orbits at special energies) do not
        // swallow crossings.
        int last_sign = 1;
        for (long long n = 0; n < N; ++n) {
            double y2 = (E - v.eval(cplx(static_cast<double>(x), 0.0)).real()) * y1 - y0;
            int s = (y2 > 0.0) - (y2 < 0.0);
            if (s != 0 && s != last_sign) {
                ++flips;
                ++win_flips;
                last_sign = s;
            }
            y0 = y1;
            y1 = y2;
            double m = std::max(std::abs(y0), std::abs(y1));
            if (m > 1e100) {
                y0 /= m;
                y1 /= m;
            }
            x += a;
            if (x >= 1.0L) x -= 1.0L;
            if ((n + 1) % window == 0) {
                densities.push_back(static_cast<double>(win_flips) / window);
                win_flips = 0;
            }
        }
        total += static_cast<double>(flips) / static_cast<double>(N);
    }
    RotationNumber out;
    out.rho = 0.5 * total / n_phases;  // sign-change density = 2 rho
    double mean = 0.0;
    for (double d : densities) mean += d;
    mean /= densities.size();
    double var = 0.0;
    for (double d : densities) var += (d - mean) * (d - mean);
    var /= densities.size();
    out.err = 0.5 * std::sqrt(var / densities.size());
    return out;
}

double ids(const Frequency& alpha, const FourierMap& v, double E,
           IdsMethod method, long long size) {
    if (method == IdsMethod::rotation)
        return 1.0 - 2.0 * rotation_number(alpha, v, E, size).rho;
    if (size < 100) throw InvalidConfig("ids: eigencount needs size >= 100");
    const long double a = alpha.value_ld();
    const int n_phases = 8;
    double total = 0.0;
    for (int p = 0; p < n_phases; ++p) {
        long double x = static_cast<long double>(p) / n_phases;
        // Sturm negative count of the LDL pivots of H - E (Dirichlet ends).
        long long count = 0;
        double d = 0.0;
        for (long long n = 0; n < size; ++n) {
            double vn = v.eval(cplx(static_cast<double>(x), 0.0)).real();
            double piv = vn - E;
            if (n > 0) piv -= 1.0 / d;
            if (std::abs(piv) < 1e-300) piv = -1e-300;
            if (piv < 0.0) ++count;
            d = piv;
            x += a;
            if (x >= 1.0L) x -= 1.0L;
        }
        total += static_cast<double>(count) / static_cast<double>(size);
    }
    return total / n_phases;
}

EnergyRecord classify_energy(const Frequency& alpha, const FourierMap& v,
                             double E, const ClassifyConfig& cfg) {
    EnergyRecord rec;
    rec.E = E;
    Cocycle c = schrodinger_map(alpha, E, v);
    if (c.strip_radius() < cfg.delta)
        throw InvalidConfig("classify_energy: potential strip too narrow for the probe depth");

    UHCertificate cert = uh_certificate(c, 0.0, 0.0, cfg.uh_iterations,
                                        1e-6, 1e-5, cfg.grid);
    rec.uh = cert.verdict;

    LeEstimate l0 = le_estimate(c, 0.0, cfg.le_tol, cfg.le_N_max, 256, cfg.grid);
    rec.L0 = l0.value;
    rec.L0_err = l0.err;
    RotationNumber rn = rotation_number(alpha, v, E, cfg.rho_N);
    rec.rho = rn.rho;
    rec.rho_err = rn.err;
    rec.ids = 1.0 - 2.0 * rec.rho;

    if (rec.uh) {
        rec.cls = EnergyClass::gap;
        return rec;
    }
    rec.profile = strip_profile(c, {0.0, 0.5 * cfg.delta, cfg.delta},
                                cfg.le_tol, cfg.le_N_max, cfg.grid);
    rec.acceleration = rec.profile.slopes_over_2pi.back();
    if (rec.L0 > cfg.tol_L) {
        rec.cls = EnergyClass::supercritical;
        return rec;
    }
    switch (regularity_test(rec.profile, cfg.delta, cfg.tol_L)) {
        case Regularity::regular: rec.cls = EnergyClass::subcritical; break;
        case Regularity::non_regular: rec.cls = EnergyClass::critical; break;
        default: rec.cls = EnergyClass::unresolved; break;
    }
    return rec;
}

DichotomyReport dichotomy_report(const Frequency& alpha, const FourierMap& v,
                                 const std::vector<double>& E_grid,
                                 const ClassifyConfig& cfg) {
    DichotomyReport rep;
    std::vector<double> grid = E_grid;
    std::sort(grid.begin(), grid.end());
    for (double E : grid) {
        EnergyRecord rec;
        try {
            rec = classify_energy(alpha, v, E, cfg);
        } catch (const Error& e) {
            rec.E = E;
            rec.status = e.code();
            ++rep.n_error;
            rep.records.push_back(rec);
            continue;
        }
        switch (rec.cls) {
            case EnergyClass::gap: ++rep.n_gap; break;
            case EnergyClass::subcritical: ++rep.n_sub; break;
            case EnergyClass::critical: ++rep.n_crit; break;
            case EnergyClass::supercritical: ++rep.n_super; break;
            default: ++rep.n_unresolved; break;
        }
        rep.records.push_back(rec);
    }
    return rep;
}

}  // namespace qpc

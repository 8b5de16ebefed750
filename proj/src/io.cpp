#include "qpc/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>

namespace qpc {

const char* kVersion = "qpcocycle 1.0.0";

std::string config_hash(const std::string& text) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
    return buf;
}

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

ordered_json fourier_to_json(const FourierMap& f) {
    ordered_json arr = ordered_json::array();
    for (int k = -f.max_mode(); k <= f.max_mode(); ++k) {
        cplx c = f.coef(k);
        arr.push_back({k, c.real(), c.imag()});
    }
    return ordered_json{{"strip_radius", f.strip_radius()}, {"modes", arr}};
}

FourierMap fourier_from_json(const nlohmann::json& j, double strip_radius) {
    const auto& arr = j.is_array() ? j : j.at("modes");
    int K = 0;
    for (const auto& row : arr) K = std::max(K, std::abs(row.at(0).get<int>()));
    std::vector<cplx> modes(2 * static_cast<size_t>(K) + 1, cplx(0.0));
    for (const auto& row : arr) {
        int k = row.at(0).get<int>();
        modes[static_cast<size_t>(k + K)] =
            cplx(row.at(1).get<double>(), row.at(2).get<double>());
    }
    if (!j.is_array() && j.contains("strip_radius"))
        strip_radius = j.at("strip_radius").get<double>();
    return FourierMap::from_modes(std::move(modes), strip_radius);
}

ordered_json mat_fourier_to_json(const MatFourier& m) {
    return ordered_json{{"a", fourier_to_json(m.a())},
                        {"b", fourier_to_json(m.b())},
                        {"c", fourier_to_json(m.c())},
                        {"d", fourier_to_json(m.d())}};
}

ordered_json strip_profile_to_json(const StripProfile& p) {
    return ordered_json{{"heights", p.heights},
                        {"exponents", p.exponents},
                        {"errors", p.errors},
                        {"slopes_over_2pi", p.slopes_over_2pi},
                        {"even_ok", p.even_ok},
                        {"convex_ok", p.convex_ok}};
}

ordered_json certificate_to_json(const UHCertificate& cert) {
    return ordered_json{{"verdict", cert.verdict},
                        {"margin", cert.margin},
                        {"r_u", cert.r_u},
                        {"r_s", cert.r_s},
                        {"disk_bound", cert.disk_bound},
                        {"disk_ok", cert.disk_ok},
                        {"failure", cert.failure}};
}

ordered_json conjugacy_to_json(const ConjugacyResult& r) {
    ordered_json rejected = ordered_json::array();
    for (const auto& m : r.cohom.rejected)
        rejected.push_back({m.k, m.divisor, m.magnitude});
    return ordered_json{
        {"lambda", {r.lambda.real(), r.lambda.imag()}},
        {"winding", r.winding},
        {"residual_R", r.residual_R},
        {"tilde_residual", r.tilde_residual},
        {"tilde_exponent", r.tilde_exponent},
        {"norm_budget", r.norm_budget},
        {"kappa", r.kappa},
        {"L_theta", r.L_theta},
        {"theta", r.theta},
        {"eps", r.eps},
        {"im_lambda_ok", r.im_lambda_ok},
        {"real_output", r.real_output},
        {"branch", r.branch},
        {"axis_real_defect", r.axis_real_defect},
        {"cohom",
         {{"lambda", {r.cohom.lambda.real(), r.cohom.lambda.imag()}},
          {"K", r.cohom.K},
          {"residual", r.cohom.residual},
          {"partial", r.cohom.partial},
          {"rejected", rejected}}},
        {"B", mat_fourier_to_json(r.B)}};
}

ordered_json record_to_json(const EnergyRecord& rec) {
    return ordered_json{{"E", rec.E},
                        {"class", to_string(rec.cls)},
                        {"uh", rec.uh},
                        {"L0", rec.L0},
                        {"L0_err", rec.L0_err},
                        {"accel", rec.acceleration},
                        {"rho", rec.rho},
                        {"rho_err", rec.rho_err},
                        {"ids", rec.ids},
                        {"status", rec.status}};
}

ordered_json report_to_json(const DichotomyReport& rep) {
    ordered_json records = ordered_json::array();
    for (const auto& r : rep.records) records.push_back(record_to_json(r));
    return ordered_json{{"records", records},
                        {"summary",
                         {{"gap", rep.n_gap},
                          {"subcritical", rep.n_sub},
                          {"critical", rep.n_crit},
                          {"supercritical", rep.n_super},
                          {"unresolved", rep.n_unresolved},
                          {"error", rep.n_error}}}};
}

std::string profile_csv(const StripProfile& p) {
    std::string out = "epsilon,L,err,slope_over_2pi\n";
    for (size_t i = 0; i < p.heights.size(); ++i)
        out += fmt(p.heights[i]) + "," + fmt(p.exponents[i]) + "," +
               fmt(p.errors[i]) + "," + fmt(p.slopes_over_2pi[i]) + "\n";
    return out;
}

std::string angle_profile_csv(const AngleProfile& p) {
    std::string out = "x,t,d,rho\n";
    for (size_t h = 0; h < p.heights.size(); ++h) {
        const auto& d = p.d[h];
        for (size_t j = 0; j < d.size(); ++j) {
            double x = static_cast<double>(j) / d.size();
            out += fmt(x) + "," + fmt(p.heights[h]) + "," + fmt(d[j]) + "," +
                   fmt(p.rho[h][j]) + "\n";
        }
    }
    return out;
}

std::string diagnostics_csv(const SymmetryDiagnostics& d) {
    std::string out = "x,d_uu,abs_delta,omega\n";
    for (size_t j = 0; j < d.x.size(); ++j)
        out += fmt(d.x[j]) + "," + fmt(d.d_uu[j]) + "," +
               fmt(std::abs(d.Delta.eval(cplx(d.x[j], 0.0)))) + "," +
               fmt(d.omega[j]) + "\n";
    return out;
}

std::string report_csv(const DichotomyReport& rep) {
    std::string out = "E,class,L0,accel,rho,ids,err,status\n";
    for (const auto& r : rep.records)
        out += fmt(r.E) + "," + std::string(to_string(r.cls)) + "," +
               fmt(r.L0) + "," + fmt(r.acceleration) + "," + fmt(r.rho) + "," +
               fmt(r.ids) + "," + fmt(r.L0_err) + "," + r.status + "\n";
    return out;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InvalidConfig("cannot open output file: " + path);
    f << text;
}

}  // namespace qpc

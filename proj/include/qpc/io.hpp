#ifndef QPC_IO_HPP
#define QPC_IO_HPP

#include <string>

#include <nlohmann/json.hpp>

#include "qpc/conjugacy.hpp"
#include "qpc/schrodinger.hpp"

namespace qpc {

using ordered_json = nlohmann::ordered_json;

extern const char* kVersion;

// FNV-1a of the canonical config text; embedded in every emitted file.
std::string config_hash(const std::string& text);

// Fourier coefficients as [[k, re, im], ...] sorted by k.
ordered_json fourier_to_json(const FourierMap& f);
FourierMap fourier_from_json(const nlohmann::json& j, double strip_radius);
ordered_json mat_fourier_to_json(const MatFourier& m);

ordered_json strip_profile_to_json(const StripProfile& p);
ordered_json certificate_to_json(const UHCertificate& cert);
ordered_json conjugacy_to_json(const ConjugacyResult& r);
ordered_json record_to_json(const EnergyRecord& rec);
ordered_json report_to_json(const DichotomyReport& rep);

// CSV emitters; fixed column orders, LF endings, full double precision.
std::string profile_csv(const StripProfile& p);                      // epsilon,L,err,slope_over_2pi
std::string angle_profile_csv(const AngleProfile& p);                // x,t,d,rho
std::string diagnostics_csv(const SymmetryDiagnostics& d);           // x,d_uu,abs_delta,omega
std::string report_csv(const DichotomyReport& rep);                  // E,class,L0,accel,rho,ids,err,status

void write_file(const std::string& path, const std::string& text);

}  // namespace qpc

#endif

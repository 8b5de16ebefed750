// qpcoc: command-line driver for the quasiperiodic cocycle library.
// Every command reads one JSON config, writes JSON/CSV artifacts embedding
// the config hash and tool version, and is byte-identical across reruns.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qpc/io.hpp"

namespace {

using nlohmann::json;
using qpc::cplx;
using qpc::ordered_json;

constexpr int kSchemaVersion = 1;

struct RunConfig {
    qpc::Frequency alpha;
    qpc::FourierMap potential;
    bool has_potential = false;
    std::vector<double> energies;
    double theta = 0.05;
    double eps = 0.02;
    std::vector<double> heights;
    double tol = 1e-3;
    long long N_max = 1 << 20;
    long long N = 100000;
    long long size = 2048;
    int grid = qpc::kDefaultGrid;
    double delta = 0.05;
    double tol_L = 1e-2;
    std::string output_dir = ".";
    std::string hash;
    json raw;
};

bool power_of_two(long long n) { return n > 0 && (n & (n - 1)) == 0; }

qpc::Frequency parse_frequency(const json& j) {
    std::string type = j.value("type", "decimal");
    int depth = j.value("depth", 64);
    if (type == "golden") return qpc::Frequency::golden(depth);
    if (type == "sqrt2m1") return qpc::Frequency::sqrt2m1(depth);
    if (type == "decimal")
        return qpc::Frequency::from_decimal(j.at("value").get<std::string>(), depth);
    if (type == "rational")
        return qpc::Frequency::from_rational(
            qpc::bigrat(qpc::bigint(j.at("p").get<std::string>()),
                        qpc::bigint(j.at("q").get<std::string>())),
            depth);
    throw qpc::InvalidConfig("unknown frequency type: " + type);
}

qpc::FourierMap parse_potential(const json& j) {
    double strip = j.value("strip_radius", 0.1);
    if (strip <= 0.0) throw qpc::InvalidConfig("potential strip_radius must be positive");
    std::string type = j.value("type", "trig");
    if (type == "amo")
        return qpc::amo_potential(j.at("lambda").get<double>(), strip);
    if (type != "trig") throw qpc::InvalidConfig("unknown potential type: " + type);
    double lambda = j.value("lambda", 1.0);
    std::vector<double> cs = j.value("cos", std::vector<double>{});
    std::vector<double> sn = j.value("sin", std::vector<double>{});
    int K = static_cast<int>(std::max(cs.size(), sn.size()));
    std::vector<cplx> modes(2 * static_cast<size_t>(K) + 1, cplx(0.0));
    modes[static_cast<size_t>(K)] = j.value("mean", 0.0);
    for (int k = 1; k <= K; ++k) {
        double a = k <= static_cast<int>(cs.size()) ? cs[static_cast<size_t>(k - 1)] : 0.0;
        double b = k <= static_cast<int>(sn.size()) ? sn[static_cast<size_t>(k - 1)] : 0.0;
        modes[static_cast<size_t>(K + k)] = cplx(0.5 * a, -0.5 * b);
        modes[static_cast<size_t>(K - k)] = cplx(0.5 * a, 0.5 * b);
    }
    qpc::FourierMap v = qpc::FourierMap::from_modes(std::move(modes), strip);
    return lambda == 1.0 ? v : cplx(lambda) * v;
}

RunConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw qpc::InvalidConfig("cannot open config: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    json j = json::parse(ss.str());
    if (j.value("schema_version", -1) != kSchemaVersion)
        throw qpc::InvalidConfig("schema_version mismatch: this binary supports version " +
                                 std::to_string(kSchemaVersion));
    RunConfig cfg;
    cfg.raw = j;
    cfg.hash = qpc::config_hash(ss.str());
    cfg.alpha = parse_frequency(j.at("frequency"));
    if (j.contains("potential")) {
        cfg.potential = parse_potential(j.at("potential"));
        cfg.has_potential = true;
    }
    if (j.contains("energy")) cfg.energies = {j.at("energy").get<double>()};
    if (j.contains("energies")) {
        const json& e = j.at("energies");
        if (e.is_array()) {
            cfg.energies = e.get<std::vector<double>>();
        } else {
            double lo = e.at("min").get<double>(), hi = e.at("max").get<double>();
            int n = e.at("count").get<int>();
            if (n < 1 || hi < lo) throw qpc::InvalidConfig("bad energy range");
            for (int i = 0; i < n; ++i)
                cfg.energies.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
        }
    }
    cfg.theta = j.value("theta", cfg.theta);
    cfg.eps = j.value("eps", cfg.eps);
    cfg.heights = j.value("heights", cfg.heights);
    cfg.tol = j.value("tol", cfg.tol);
    cfg.N_max = j.value("N_max", cfg.N_max);
    cfg.N = j.value("N", cfg.N);
    cfg.size = j.value("size", cfg.size);
    cfg.grid = j.value("grid", cfg.grid);
    cfg.delta = j.value("delta", cfg.delta);
    cfg.tol_L = j.value("tol_L", cfg.tol_L);
    cfg.output_dir = j.value("output_dir", cfg.output_dir);
    if (cfg.tol <= 0.0 || cfg.tol_L <= 0.0 || cfg.delta <= 0.0)
        throw qpc::InvalidConfig("tolerances must be positive");
    if (!power_of_two(cfg.grid)) throw qpc::InvalidConfig("grid must be a power of two");
    return cfg;
}

ordered_json stamp(const RunConfig& cfg, ordered_json body) {
    ordered_json out;
    out["version"] = qpc::kVersion;
    out["config_hash"] = cfg.hash;
    for (auto& [k, v] : body.items()) out[k] = std::move(v);
    return out;
}

void emit_json(const RunConfig& cfg, const std::string& name, const ordered_json& body) {
    std::filesystem::create_directories(cfg.output_dir);
    qpc::write_file(cfg.output_dir + "/" + name, stamp(cfg, body).dump(2) + "\n");
}

void emit_csv(const RunConfig& cfg, const std::string& name, const std::string& body) {
    std::filesystem::create_directories(cfg.output_dir);
    std::string head = std::string("# ") + qpc::kVersion + " config=" + cfg.hash + "\n";
    qpc::write_file(cfg.output_dir + "/" + name, head + body);
}

qpc::Cocycle make_cocycle(const RunConfig& cfg, double E) {
    if (!cfg.has_potential) throw qpc::InvalidConfig("command requires a potential");
    return qpc::schrodinger_map(cfg.alpha, E, cfg.potential);
}

double need_energy(const RunConfig& cfg) {
    if (cfg.energies.size() != 1)
        throw qpc::InvalidConfig("command requires a single energy");
    return cfg.energies[0];
}

std::vector<double> default_heights(const RunConfig& cfg) {
    if (!cfg.heights.empty()) return cfg.heights;
    return {0.0, 0.5 * cfg.delta, cfg.delta};
}

void cmd_cf(const RunConfig& cfg) {
    const qpc::Frequency& a = cfg.alpha;
    ordered_json qs = ordered_json::array(), as = ordered_json::array();
    for (int n = 0; n <= a.depth(); ++n) qs.push_back(a.q(n).str());
    for (const auto& pq : a.partial_quotients()) as.push_back(pq.str());
    int hi = a.depth() - 2;
    ordered_json body{{"depth", a.depth()},
                      {"rational", a.rational()},
                      {"value", static_cast<double>(a.value())},
                      {"partial_quotients", as},
                      {"q", qs}};
    if (hi >= 1) body["beta_upper"] = a.beta_upper(1, hi);
    emit_json(cfg, "cf.json", body);
}

void cmd_lyap(const RunConfig& cfg) {
    qpc::Cocycle c = make_cocycle(cfg, need_energy(cfg));
    qpc::StripProfile p =
        qpc::strip_profile(c, default_heights(cfg), cfg.tol, cfg.N_max, cfg.grid);
    emit_json(cfg, "lyap.json", qpc::strip_profile_to_json(p));
    emit_csv(cfg, "lyap.csv", qpc::profile_csv(p));
}

void cmd_accel(const RunConfig& cfg) {
    qpc::Cocycle c = make_cocycle(cfg, need_energy(cfg));
    qpc::StripProfile p =
        qpc::strip_profile(c, default_heights(cfg), cfg.tol, cfg.N_max, cfg.grid);
    double accel = p.slopes_over_2pi.back();
    double nearest = std::round(accel);
    ordered_json body = qpc::strip_profile_to_json(p);
    body["acceleration"] = accel;
    body["nearest_integer"] = nearest;
    body["quantization_gap"] = std::abs(accel - nearest);
    emit_json(cfg, "accel.json", body);
    emit_csv(cfg, "accel.csv", qpc::profile_csv(p));
}

void cmd_uh(const RunConfig& cfg) {
    qpc::Cocycle c = make_cocycle(cfg, need_energy(cfg));
    qpc::Cocycle probe = cfg.theta > 0.0
                             ? qpc::rotate_cocycle(c, cplx(0.0, -cfg.theta))
                             : c;
    qpc::UHCertificate cert =
        qpc::uh_certificate(probe, 0.0, cfg.theta, 1 << 14, 1e-6, 1e-5, cfg.grid);
    emit_json(cfg, "uh.json", qpc::certificate_to_json(cert));
}

void require_irrational(const RunConfig& cfg) {
    if (cfg.alpha.rational())
        throw qpc::InvalidConfig(
            "conjugacy requires an irrational frequency (rational alpha given)");
}

void cmd_conjugate(const RunConfig& cfg) {
    require_irrational(cfg);
    qpc::Cocycle c = make_cocycle(cfg, need_energy(cfg));
    qpc::ConjugacyConfig cc;
    cc.grid = cfg.grid;
    qpc::ConjugacyResult r = qpc::complex_conjugacy(c, cfg.theta, cfg.eps, cc);
    emit_json(cfg, "conjugate.json", qpc::conjugacy_to_json(r));
    emit_csv(cfg, "conjugate_diagnostics.csv",
             qpc::diagnostics_csv(qpc::symmetry_diagnostics(r, cfg.grid)));
}

void cmd_real_conjugate(const RunConfig& cfg) {
    require_irrational(cfg);
    qpc::Cocycle c = make_cocycle(cfg, need_energy(cfg));
    qpc::ConjugacyConfig cc;
    cc.grid = cfg.grid;
    qpc::ConjugacyResult r = qpc::real_conjugacy(c, cfg.theta, cfg.eps, cc);
    emit_json(cfg, "real_conjugate.json", qpc::conjugacy_to_json(r));
}

void cmd_ids(const RunConfig& cfg) {
    if (!cfg.has_potential || cfg.energies.empty())
        throw qpc::InvalidConfig("ids requires a potential and energies");
    std::string csv = "E,rho,ids_rotation,ids_eigencount\n";
    ordered_json rows = ordered_json::array();
    for (double E : cfg.energies) {
        qpc::RotationNumber rn = qpc::rotation_number(cfg.alpha, cfg.potential, E, cfg.N);
        double ir = 1.0 - 2.0 * rn.rho;
        double ie = qpc::ids(cfg.alpha, cfg.potential, E, qpc::IdsMethod::eigencount,
                             cfg.size);
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", E, rn.rho, ir, ie);
        csv += buf;
        rows.push_back({{"E", E}, {"rho", rn.rho}, {"rho_err", rn.err},
                        {"ids_rotation", ir}, {"ids_eigencount", ie}});
    }
    emit_json(cfg, "ids.json", ordered_json{{"records", rows}});
    emit_csv(cfg, "ids.csv", csv);
}

qpc::ClassifyConfig classify_config(const RunConfig& cfg) {
    qpc::ClassifyConfig cc;
    cc.tol_L = cfg.tol_L;
    cc.delta = cfg.delta;
    cc.le_tol = cfg.tol;
    cc.rho_N = cfg.N;
    cc.grid = std::min(cfg.grid, 512);
    return cc;
}

void cmd_classify(const RunConfig& cfg) {
    if (!cfg.has_potential) throw qpc::InvalidConfig("classify requires a potential");
    qpc::EnergyRecord rec =
        qpc::classify_energy(cfg.alpha, cfg.potential, need_energy(cfg),
                             classify_config(cfg));
    ordered_json body = qpc::record_to_json(rec);
    if (!rec.uh) body["profile"] = qpc::strip_profile_to_json(rec.profile);
    emit_json(cfg, "classify.json", body);
}

void cmd_report(const RunConfig& cfg) {
    if (!cfg.has_potential || cfg.energies.empty())
        throw qpc::InvalidConfig("report requires a potential and an energy grid");
    qpc::DichotomyReport rep =
        qpc::dichotomy_report(cfg.alpha, cfg.potential, cfg.energies,
                              classify_config(cfg));
    emit_json(cfg, "report.json", qpc::report_to_json(rep));
    emit_csv(cfg, "report.csv", qpc::report_csv(rep));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quasiperiodic SL(2) cocycle toolkit"};
    app.require_subcommand(1);
    std::string config_path;

    struct Cmd {
        const char* name;
        const char* desc;
        void (*fn)(const RunConfig&);
    };
    const Cmd cmds[] = {
        {"cf", "continued fraction report for the frequency", cmd_cf},
        {"lyap", "Lyapunov exponents over a height ladder", cmd_lyap},
        {"accel", "strip profile and acceleration quantization", cmd_accel},
        {"uh", "uniform hyperbolicity certificate", cmd_uh},
        {"conjugate", "complex conjugacy to constant rotations", cmd_conjugate},
        {"real-conjugate", "real-symmetric conjugacy pipeline", cmd_real_conjugate},
        {"ids", "rotation number and integrated density of states", cmd_ids},
        {"classify", "spectral classification of one energy", cmd_classify},
        {"report", "spectral dichotomy report over an energy grid", cmd_report},
    };
    void (*selected)(const RunConfig&) = nullptr;
    for (const auto& c : cmds) {
        CLI::App* sub = app.add_subcommand(c.name, c.desc);
        sub->add_option("-c,--config", config_path, "JSON config file")->required();
        sub->callback([&selected, &c]() { selected = c.fn; });
    }
    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg = load_config(config_path);
        selected(cfg);
        return 0;
    } catch (const qpc::Error& e) {
        nlohmann::ordered_json err{{"error", e.code()}, {"message", e.what()}};
        if (e.verdict()) {
            std::cout << err.dump() << std::endl;
            return 2;
        }
        std::cerr << err.dump() << std::endl;
        return 1;
    } catch (const std::exception& e) {
        std::cerr << R"({"error":"Exception","message":")" << e.what() << "\"}"
                  << std::endl;
        return 1;
    }
}

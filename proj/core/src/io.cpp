#include "dropsim/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "dropsim/errors.hpp"

namespace dropsim {

namespace {

using nlohmann::json;

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path);
    if (!out) throw Error("io: cannot open '" + path.string() + "' for writing");
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("io: cannot open '" + path.string() + "' for reading");
    return in;
}

}  // namespace

void write_curve_csv(const std::filesystem::path& path, const GeneratingCurve& curve) {
    std::ofstream out = open_out(path);
    out << "theta_index,r,z\n";
    out << std::setprecision(17);
    for (std::size_t i = 0; i < curve.nodes.size(); ++i) {
        out << i << ',' << curve.nodes[i].r << ',' << curve.nodes[i].z << '\n';
    }
}

GeneratingCurve read_curve_csv(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("theta_index,r,z", 0) != 0) {
        throw Error("io: '" + path.string() + "' is not a curve CSV");
    }
    GeneratingCurve curve;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string idx, r, z;
        if (!std::getline(row, idx, ',') || !std::getline(row, r, ',') || !std::getline(row, z)) {
            throw Error("io: malformed curve row '" + line + "'");
        }
        curve.nodes.push_back({std::stod(r), std::stod(z)});
    }
    return curve;
}

void write_diagnostics_csv(const std::filesystem::path& path,
                           const std::vector<DiagnosticsRecord>& records) {
    std::ofstream out = open_out(path);
    out << "t,z_f,k_f,v_f,sigma_max,V,Re,volume,area\n";
    out << std::setprecision(17);
    for (const auto& r : records) {
        out << r.t << ',' << r.z_f << ',' << r.k_f << ',' << r.v_f << ',' << r.sigma_max << ','
            << r.V << ',' << r.Re << ',' << r.volume << ',' << r.area << '\n';
    }
}

std::vector<DiagnosticsRecord> read_diagnostics_csv(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("t,z_f,k_f,v_f,sigma_max,V,Re,volume,area", 0) != 0) {
        throw Error("io: '" + path.string() + "' is not a diagnostics CSV");
    }
    std::vector<DiagnosticsRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        DiagnosticsRecord r;
        char comma;
        row >> r.t >> comma >> r.z_f >> comma >> r.k_f >> comma >> r.v_f >> comma >>
            r.sigma_max >> comma >> r.V >> comma >> r.Re >> comma >> r.volume >> comma >> r.area;
        if (row.fail()) throw Error("io: malformed diagnostics row '" + line + "'");
        records.push_back(r);
    }
    return records;
}

void write_snapshot_json(const std::filesystem::path& path, const Snapshot& snapshot) {
    json j;
    j["t"] = snapshot.t;
    auto& nodes = j["nodes"] = json::array();
    for (const auto& p : snapshot.curve.nodes) nodes.push_back({p.r, p.z});
    j["sigma"] = snapshot.sigma;
    auto& u = j["u"] = json::array();
    for (std::size_t i = 0; i < snapshot.u.ur.size(); ++i) {
        u.push_back({snapshot.u.ur[i], snapshot.u.uz[i]});
    }
    j["V"] = snapshot.V;
    j["kf"] = snapshot.kf;
    j["zf"] = snapshot.zf;
    std::ofstream out = open_out(path);
    out << j.dump(2) << '\n';
}

Snapshot read_snapshot_json(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    json j = json::parse(in);
    Snapshot snap;
    snap.t = j.at("t").get<double>();
    for (const auto& p : j.at("nodes")) {
        snap.curve.nodes.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    }
    snap.sigma = j.at("sigma").get<std::vector<double>>();
    for (const auto& p : j.at("u")) {
        snap.u.ur.push_back(p.at(0).get<double>());
        snap.u.uz.push_back(p.at(1).get<double>());
    }
    snap.V = j.at("V").get<double>();
    snap.kf = j.at("kf").get<double>();
    snap.zf = j.at("zf").get<double>();
    return snap;
}

namespace {

json diagnostics_to_json(const DiagnosticsRecord& r) {
    return json{{"t", r.t},         {"z_f", r.z_f},           {"k_f", r.k_f},
                {"v_f", r.v_f},     {"sigma_max", r.sigma_max}, {"V", r.V},
                {"Re", r.Re},       {"volume", r.volume},     {"area", r.area}};
}

DiagnosticsRecord diagnostics_from_json(const json& j) {
    DiagnosticsRecord r;
    r.t = j.at("t").get<double>();
    r.z_f = j.at("z_f").get<double>();
    r.k_f = j.at("k_f").get<double>();
    r.v_f = j.at("v_f").get<double>();
    r.sigma_max = j.at("sigma_max").get<double>();
    r.V = j.at("V").get<double>();
    r.Re = j.at("Re").get<double>();
    r.volume = j.at("volume").get<double>();
    r.area = j.at("area").get<double>();
    return r;
}

}  // namespace

void write_run_report(const std::filesystem::path& path, const RunReport& report) {
    json j;
    j["stop_reason"] = report.stop_reason;
    j["final"] = diagnostics_to_json(report.final_diagnostics);
    j["steps"] = report.steps;
    j["remesh_count"] = report.remesh_count;
    j["volume_drift_rel"] = report.volume_drift_rel;
    if (!report.failure_message.empty()) j["failure"] = report.failure_message;

    json cfg;
    cfg["mu1"] = report.config.params.mu1;
    cfg["mu2"] = report.config.params.mu2;
    cfg["gamma"] = report.config.params.gamma;
    cfg["eps0"] = report.config.params.eps0;
    cfg["Q_factor"] = report.config.Q_factor;
    cfg["Q"] = report.config.params.Q;
    cfg["N"] = report.config.sim.N;
    cfg["eps_perturb"] = report.config.sim.eps_perturb;
    cfg["cfl"] = report.config.sim.cfl;
    cfg["t_max"] = report.config.sim.t_max;
    cfg["stop_curvature"] = report.config.sim.stop_curvature;
    cfg["stop_dt"] = report.config.sim.stop_dt;
    cfg["snapshot_every"] = report.config.sim.snapshot_every;
    cfg["output_dir"] = report.config.output_dir;
    cfg["seed"] = report.config.seed;
    j["config"] = cfg;

    std::ofstream out = open_out(path);
    out << j.dump(2) << '\n';
}

RunReport read_run_report(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    json j = json::parse(in);
    RunReport report;
    report.stop_reason = j.at("stop_reason").get<std::string>();
    report.final_diagnostics = diagnostics_from_json(j.at("final"));
    report.steps = j.at("steps").get<long>();
    report.remesh_count = j.at("remesh_count").get<long>();
    report.volume_drift_rel = j.at("volume_drift_rel").get<double>();
    if (j.contains("failure")) report.failure_message = j.at("failure").get<std::string>();

    const json& cfg = j.at("config");
    report.config.params.mu1 = cfg.at("mu1").get<double>();
    report.config.params.mu2 = cfg.at("mu2").get<double>();
    report.config.params.gamma = cfg.at("gamma").get<double>();
    report.config.params.eps0 = cfg.at("eps0").get<double>();
    report.config.Q_factor = cfg.at("Q_factor").get<double>();
    report.config.params.Q = cfg.at("Q").get<double>();
    report.config.sim.N = cfg.at("N").get<int>();
    report.config.sim.eps_perturb = cfg.at("eps_perturb").get<double>();
    report.config.sim.cfl = cfg.at("cfl").get<double>();
    report.config.sim.t_max = cfg.at("t_max").get<double>();
    report.config.sim.stop_curvature = cfg.at("stop_curvature").get<double>();
    report.config.sim.stop_dt = cfg.at("stop_dt").get<double>();
    report.config.sim.snapshot_every = cfg.at("snapshot_every").get<int>();
    report.config.output_dir = cfg.at("output_dir").get<std::string>();
    report.config.seed = cfg.at("seed").get<long>();
    return report;
}

}  // namespace dropsim

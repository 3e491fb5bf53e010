#include "dropsim/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "dropsim/errors.hpp"

namespace dropsim {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw InvalidParameterError("config: malformed numeric value for '" + key + "'", key);
    }
}

long parse_long(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw InvalidParameterError("config: malformed integer value for '" + key + "'", key);
    }
}

}  // namespace

void RunConfig::finalize() {
    if (!(Q_factor >= 0.0)) {
        throw InvalidParameterError("config: Q_factor must be nonnegative", "Q_factor");
    }
    params.Q = 0.0;  // validate the rest before deriving Q
    params.validate();
    params.Q = Q_factor * critical_charge(params, 1.0);
    sim.validate();
    if (output_dir.empty()) {
        throw InvalidParameterError("config: output_dir must not be empty", "output_dir");
    }
}

RunConfig parse_config_text(const std::string& text) {
    RunConfig config;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw InvalidParameterError("config: line " + std::to_string(line_no) +
                                        " is not of the form key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw InvalidParameterError("config: empty key or value on line " +
                                        std::to_string(line_no));
        }

        if (key == "mu1") config.params.mu1 = parse_double(key, value);
        else if (key == "mu2") config.params.mu2 = parse_double(key, value);
        else if (key == "gamma") config.params.gamma = parse_double(key, value);
        else if (key == "eps0") config.params.eps0 = parse_double(key, value);
        else if (key == "Q_factor") config.Q_factor = parse_double(key, value);
        else if (key == "N") config.sim.N = static_cast<int>(parse_long(key, value));
        else if (key == "eps_perturb") config.sim.eps_perturb = parse_double(key, value);
        else if (key == "cfl") config.sim.cfl = parse_double(key, value);
        else if (key == "t_max") config.sim.t_max = parse_double(key, value);
        else if (key == "stop_curvature") config.sim.stop_curvature = parse_double(key, value);
        else if (key == "stop_dt") config.sim.stop_dt = parse_double(key, value);
        else if (key == "snapshot_every") config.sim.snapshot_every = static_cast<int>(parse_long(key, value));
        else if (key == "output_dir") config.output_dir = value;
        else if (key == "seed") config.seed = parse_long(key, value);
        else throw InvalidParameterError("config: unknown key '" + key + "'", key);
    }
    config.finalize();
    return config;
}

RunConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidParameterError("config: cannot open '" + path.string() + "'", "config");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

std::string serialize_config(const RunConfig& config) {
    std::ostringstream out;
    out.precision(17);
    out << "mu1 = " << config.params.mu1 << "\n"
        << "mu2 = " << config.params.mu2 << "\n"
        << "gamma = " << config.params.gamma << "\n"
        << "eps0 = " << config.params.eps0 << "\n"
        << "Q_factor = " << config.Q_factor << "\n"
        << "N = " << config.sim.N << "\n"
        << "eps_perturb = " << config.sim.eps_perturb << "\n"
        << "cfl = " << config.sim.cfl << "\n"
        << "t_max = " << config.sim.t_max << "\n"
        << "stop_curvature = " << config.sim.stop_curvature << "\n"
        << "stop_dt = " << config.sim.stop_dt << "\n"
        << "snapshot_every = " << config.sim.snapshot_every << "\n"
        << "output_dir = " << config.output_dir << "\n"
        << "seed = " << config.seed << "\n";
    return out.str();
}

}  // namespace dropsim

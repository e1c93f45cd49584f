#include "rom/config.hpp"

#include <fstream>
#include <sstream>

#include "rom/io.hpp"

namespace rom {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw config_error(key + ": not a number: '" + value + "'");
    }
}

int parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw config_error(key + ": not an integer: '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw config_error(key + ": expected true/false: '" + value + "'");
}

template <typename T, typename Parse>
std::vector<T> parse_list(const std::string& key, const std::string& value, Parse parse) {
    std::vector<T> out;
    std::stringstream ss(value);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (!tok.empty()) out.push_back(parse(key, tok));
    }
    if (out.empty()) throw config_error(key + ": empty list");
    return out;
}

void require(bool cond, const std::string& message) {
    if (!cond) throw config_error(message);
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin) {
    ExperimentConfig cfg;
    std::stringstream stream(text);
    std::string line;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error(origin + ":" + std::to_string(line_no) +
                               ": expected 'section.key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw config_error(origin + ":" + std::to_string(line_no) + ": empty key or value");

        if (key == "model.n_grid") cfg.n_grid = parse_int(key, value);
        else if (key == "model.length") cfg.length = parse_double(key, value);
        else if (key == "model.viscosity") cfg.viscosity = parse_double(key, value);
        else if (key == "model.ic_root1") cfg.ic_root1 = parse_double(key, value);
        else if (key == "model.ic_root2") cfg.ic_root2 = parse_double(key, value);
        else if (key == "model.ic_root3") cfg.ic_root3 = parse_double(key, value);
        else if (key == "model.ic_peak") cfg.ic_peak = parse_double(key, value);
        else if (key == "model.ic_sign") cfg.ic_sign = parse_double(key, value);
        else if (key == "time.t_final") cfg.t_final = parse_double(key, value);
        else if (key == "time.num_steps") cfg.num_steps = parse_int(key, value);
        else if (key == "time.scheme") {
            if (value == "explicit") cfg.scheme = Scheme::explicit_euler;
            else if (value == "implicit") cfg.scheme = Scheme::implicit_euler;
            else throw config_error(key + ": expected explicit or implicit: '" + value + "'");
        } else if (key == "rom.pod_dim") cfg.pod_dim = parse_int(key, value);
        else if (key == "rom.pod_energy") cfg.pod_energy = parse_double(key, value);
        else if (key == "rom.deim_points") cfg.deim_points = parse_int(key, value);
        else if (key == "rom.adaptive") cfg.adaptive = parse_bool(key, value);
        else if (key == "rom.alpha") cfg.alpha = parse_double(key, value);
        else if (key == "rom.dwr_modes") cfg.dwr_modes = parse_int(key, value);
        else if (key == "qoi.interval_lo") cfg.qoi_lo = parse_double(key, value);
        else if (key == "qoi.interval_hi") cfg.qoi_hi = parse_double(key, value);
        else if (key == "sweep.k_values") cfg.sweep_k = parse_list<int>(key, value, parse_int);
        else if (key == "sweep.m_values") cfg.sweep_m = parse_list<int>(key, value, parse_int);
        else if (key == "sweep.alpha_values")
            cfg.sweep_alpha = parse_list<double>(key, value, parse_double);
        else if (key == "sweep.mu_values")
            cfg.sweep_mu = parse_list<double>(key, value, parse_double);
        else if (key == "output.dir") cfg.output_dir = value;
        else if (key == "run.seed") {
            int s = parse_int(key, value);
            require(s >= 0, "run.seed: must be non-negative");
            cfg.seed = static_cast<unsigned long>(s);
        } else
            throw config_error(origin + ":" + std::to_string(line_no) + ": unknown key '" + key +
                               "'");
    }

    require(cfg.n_grid >= 4, "model.n_grid: must be >= 4");
    require(cfg.length > 0.0, "model.length: must be positive");
    require(cfg.viscosity > 0.0, "model.viscosity: must be positive");
    require(cfg.ic_peak > 0.0, "model.ic_peak: must be positive");
    require(cfg.ic_sign == 1.0 || cfg.ic_sign == -1.0, "model.ic_sign: must be +1 or -1");
    require(cfg.t_final > 0.0, "time.t_final: must be positive");
    require(cfg.num_steps > 0, "time.num_steps: must be positive");
    require(!(cfg.pod_dim && cfg.pod_energy),
            "rom.pod_dim and rom.pod_energy are mutually exclusive");
    if (cfg.pod_dim) require(*cfg.pod_dim >= 1, "rom.pod_dim: must be >= 1");
    if (cfg.pod_energy)
        require(*cfg.pod_energy > 0.0 && *cfg.pod_energy <= 1.0,
                "rom.pod_energy: must lie in (0, 1]");
    require(cfg.deim_points >= 1, "rom.deim_points: must be >= 1");
    require(cfg.alpha >= 0.0 && cfg.alpha <= 1.0, "rom.alpha: must lie in [0, 1]");
    require(cfg.dwr_modes >= 1, "rom.dwr_modes: must be >= 1");
    require(cfg.qoi_lo < cfg.qoi_hi, "qoi interval: lo must be < hi");
    require(cfg.qoi_lo >= 0.0 && cfg.qoi_hi <= cfg.length, "qoi interval: must lie in [0, L]");
    for (int k : cfg.sweep_k) require(k >= 1, "sweep.k_values: entries must be >= 1");
    for (int m : cfg.sweep_m) require(m >= 1, "sweep.m_values: entries must be >= 1");
    for (double a : cfg.sweep_alpha)
        require(a >= 0.0 && a <= 1.0, "sweep.alpha_values: entries must lie in [0, 1]");
    for (double mu : cfg.sweep_mu)
        require(mu > 0.0, "sweep.mu_values: entries must be positive");
    return cfg;
}

ExperimentConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw missing_artifact_error("cannot open config " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path.string());
}

std::string config_to_text(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "model.n_grid = " << cfg.n_grid << '\n';
    out << "model.length = " << format_double(cfg.length) << '\n';
    out << "model.viscosity = " << format_double(cfg.viscosity) << '\n';
    out << "model.ic_root1 = " << format_double(cfg.ic_root1) << '\n';
    out << "model.ic_root2 = " << format_double(cfg.ic_root2) << '\n';
    out << "model.ic_root3 = " << format_double(cfg.ic_root3) << '\n';
    out << "model.ic_peak = " << format_double(cfg.ic_peak) << '\n';
    out << "model.ic_sign = " << format_double(cfg.ic_sign) << '\n';
    out << "time.t_final = " << format_double(cfg.t_final) << '\n';
    out << "time.num_steps = " << cfg.num_steps << '\n';
    out << "time.scheme = " << scheme_name(cfg.scheme) << '\n';
    if (cfg.pod_dim) out << "rom.pod_dim = " << *cfg.pod_dim << '\n';
    if (cfg.pod_energy) out << "rom.pod_energy = " << format_double(*cfg.pod_energy) << '\n';
    out << "rom.deim_points = " << cfg.deim_points << '\n';
    out << "rom.adaptive = " << (cfg.adaptive ? "true" : "false") << '\n';
    out << "rom.alpha = " << format_double(cfg.alpha) << '\n';
    out << "rom.dwr_modes = " << cfg.dwr_modes << '\n';
    out << "qoi.interval_lo = " << format_double(cfg.qoi_lo) << '\n';
    out << "qoi.interval_hi = " << format_double(cfg.qoi_hi) << '\n';
    auto list_int = [&](const char* key, const std::vector<int>& v) {
        if (v.empty()) return;
        out << key << " = ";
        for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
        out << '\n';
    };
    auto list_double = [&](const char* key, const std::vector<double>& v) {
        if (v.empty()) return;
        out << key << " = ";
        for (std::size_t i = 0; i < v.size(); ++i)
            out << (i ? "," : "") << format_double(v[i]);
        out << '\n';
    };
    list_int("sweep.k_values", cfg.sweep_k);
    list_int("sweep.m_values", cfg.sweep_m);
    list_double("sweep.alpha_values", cfg.sweep_alpha);
    list_double("sweep.mu_values", cfg.sweep_mu);
    out << "output.dir = " << cfg.output_dir.string() << '\n';
    out << "run.seed = " << cfg.seed << '\n';
    return out.str();
}

}  // namespace rom

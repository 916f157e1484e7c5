#include "naq/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace naq {

std::vector<double> ExperimentConfig::default_field_grid() {
    std::vector<double> g;
    for (int i = 0; i <= 40; ++i) g.push_back(i * 0.025);
    return g;
}

void ExperimentConfig::validate() const {
    system.validate();
    integrator.validate();
    if (mode == RunMode::sweep_kappa && kappa_list.empty())
        throw std::invalid_argument("config: kappa_list must be non-empty in sweep-kappa mode");
    for (size_t i = 1; i < field_grid.size(); ++i)
        if (!(field_grid[i] > field_grid[i - 1]))
            throw std::invalid_argument("config: field_grid must be strictly increasing");
    if (workers < 1) throw std::invalid_argument("config: workers must be >= 1");
}

bool ExperimentConfig::operator==(const ExperimentConfig& o) const {
    const auto& a = system;
    const auto& b = o.system;
    return a.j_coupling == b.j_coupling && a.h1 == b.h1 && a.h2 == b.h2 && a.g1 == b.g1 &&
           a.g2 == b.g2 && a.gamma_plus == b.gamma_plus && a.eps_plus == b.eps_plus &&
           a.kappa == b.kappa && a.zero_temperature == b.zero_temperature &&
           integrator.dt == o.integrator.dt && integrator.t_max == o.integrator.t_max &&
           integrator.record_stride == o.integrator.record_stride &&
           integrator.cp_tol == o.integrator.cp_tol && kappa_list == o.kappa_list &&
           field_grid == o.field_grid && output_dir == o.output_dir && seed == o.seed &&
           workers == o.workers;
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s, const std::string& key) {
    size_t pos = 0;
    double v;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad numeric value for " + key + ": '" + s + "'");
    }
    if (pos != s.size())
        throw std::invalid_argument("config: trailing junk in value for " + key + ": '" + s + "'");
    return v;
}

std::vector<double> parse_list(const std::string& s, const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(trim(item), key));
    if (out.empty()) throw std::invalid_argument("config: empty list for " + key);
    return out;
}

std::string join_list(const std::vector<double>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += fmt17(v[i]);
    }
    return s;
}

void set_key(ExperimentConfig& c, const std::string& key, const std::string& value) {
    auto num = [&] { return parse_double(value, key); };
    if (key == "system.J") c.system.j_coupling = num();
    else if (key == "system.h1") c.system.h1 = num();
    else if (key == "system.h2") c.system.h2 = num();
    else if (key == "system.g1") c.system.g1 = num();
    else if (key == "system.g2") c.system.g2 = num();
    else if (key == "system.gamma_plus1") c.system.gamma_plus[0] = num();
    else if (key == "system.gamma_plus2") c.system.gamma_plus[1] = num();
    else if (key == "system.eps_plus1") c.system.eps_plus[0] = num();
    else if (key == "system.eps_plus2") c.system.eps_plus[1] = num();
    else if (key == "system.kappa1") c.system.kappa[0] = num();
    else if (key == "system.kappa2") c.system.kappa[1] = num();
    else if (key == "system.zero_temperature") c.system.zero_temperature = num() != 0.0;
    else if (key == "integrator.dt") c.integrator.dt = num();
    else if (key == "integrator.t_max") c.integrator.t_max = num();
    else if (key == "integrator.record_stride") c.integrator.record_stride = static_cast<int>(num());
    else if (key == "integrator.cp_tol") c.integrator.cp_tol = num();
    else if (key == "sweep.kappa_list") c.kappa_list = parse_list(value, key);
    else if (key == "sweep.field_grid") c.field_grid = parse_list(value, key);
    else if (key == "output.dir") c.output_dir = value;
    else if (key == "run.seed") c.seed = static_cast<unsigned long>(num());
    else if (key == "run.workers") c.workers = static_cast<int>(num());
    else throw std::invalid_argument("config: unknown key '" + key + "'");
}

} // namespace

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig c;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                        " is not key=value: '" + t + "'");
        set_key(c, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return c;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const ExperimentConfig& c) {
    std::ostringstream o;
    o << "system.J=" << fmt17(c.system.j_coupling) << "\n";
    o << "system.h1=" << fmt17(c.system.h1) << "\n";
    o << "system.h2=" << fmt17(c.system.h2) << "\n";
    o << "system.g1=" << fmt17(c.system.g1) << "\n";
    o << "system.g2=" << fmt17(c.system.g2) << "\n";
    o << "system.gamma_plus1=" << fmt17(c.system.gamma_plus[0]) << "\n";
    o << "system.gamma_plus2=" << fmt17(c.system.gamma_plus[1]) << "\n";
    o << "system.eps_plus1=" << fmt17(c.system.eps_plus[0]) << "\n";
    o << "system.eps_plus2=" << fmt17(c.system.eps_plus[1]) << "\n";
    o << "system.kappa1=" << fmt17(c.system.kappa[0]) << "\n";
    o << "system.kappa2=" << fmt17(c.system.kappa[1]) << "\n";
    o << "system.zero_temperature=" << (c.system.zero_temperature ? 1 : 0) << "\n";
    o << "integrator.dt=" << fmt17(c.integrator.dt) << "\n";
    o << "integrator.t_max=" << fmt17(c.integrator.t_max) << "\n";
    o << "integrator.record_stride=" << c.integrator.record_stride << "\n";
    o << "integrator.cp_tol=" << fmt17(c.integrator.cp_tol) << "\n";
    o << "sweep.kappa_list=" << join_list(c.kappa_list) << "\n";
    o << "sweep.field_grid=" << join_list(c.field_grid) << "\n";
    o << "output.dir=" << c.output_dir << "\n";
    o << "run.seed=" << c.seed << "\n";
    o << "run.workers=" << c.workers << "\n";
    return o.str();
}

void apply_override(ExperimentConfig& c, const std::string& key_value) {
    const auto eq = key_value.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("override is not key=value: '" + key_value + "'");
    set_key(c, trim(key_value.substr(0, eq)), trim(key_value.substr(eq + 1)));
}

} // namespace naq

#include "pmre/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace pmre::config {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& v, int line) {
    try {
        size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError(line, "expected a number, got '" + v + "'");
    }
}

int to_int(const std::string& v, int line) {
    try {
        size_t pos = 0;
        const int x = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError(line, "expected an integer, got '" + v + "'");
    }
}

std::vector<double> to_double_list(const std::string& v, int line) {
    std::vector<double> out;
    std::istringstream ss(v);
    std::string tok;
    while (ss >> tok) out.push_back(to_double(tok, line));
    return out;
}

// "m:ratio m:ratio ..."
std::vector<std::pair<int, double>> to_lines(const std::string& v, int line) {
    std::vector<std::pair<int, double>> out;
    std::istringstream ss(v);
    std::string tok;
    while (ss >> tok) {
        const auto colon = tok.find(':');
        if (colon == std::string::npos)
            throw ConfigError(line, "line entry '" + tok + "' is not m:ratio");
        out.emplace_back(to_int(tok.substr(0, colon), line),
                         to_double(tok.substr(colon + 1), line));
    }
    if (out.empty()) throw ConfigError(line, "lines key has no entries");
    return out;
}

void apply_state_key(StateSpec& st, const std::string& key, const std::string& value,
                     int line) {
    static const std::set<std::string> kinds = {"vacuum",  "number",   "coherent",
                                                "thermal", "squeezed", "squeezed_coherent"};
    if (key == "kind") {
        if (!kinds.count(value)) throw ConfigError(line, "unknown state kind '" + value + "'");
        st.kind = value;
    } else if (key == "n") {
        st.n = to_int(value, line);
    } else if (key == "nbar") {
        st.nbar = to_double(value, line);
    } else if (key == "r") {
        st.r = to_double(value, line);
    } else if (key == "alpha_re") {
        st.alpha = Cplx(to_double(value, line), st.alpha.imag());
    } else if (key == "alpha_im") {
        st.alpha = Cplx(st.alpha.real(), to_double(value, line));
    } else {
        throw ConfigError(line, "unknown state key '" + key + "'");
    }
}

void apply_channel_key(ChannelConfig& ch, const std::string& key,
                       const std::string& value, int line) {
    static const std::set<std::string> presets = {"cooling",  "heating",
                                                  "coherent", "squeezed",
                                                  "squeezed_coherent", "thermal_pair"};
    static const std::set<std::string> ideals = {"damping", "heating", "coherent",
                                                 "squeezed", "squeezed_coherent"};
    if (key == "preset") {
        if (!presets.count(value)) throw ConfigError(line, "unknown preset '" + value + "'");
        ch.preset = value;
    } else if (key == "ideal") {
        if (!ideals.count(value))
            throw ConfigError(line, "unknown ideal operator '" + value + "'");
        ch.ideal = value;
    } else if (key == "lines") {
        ch.lines = to_lines(value, line);
    } else if (key == "r") {
        ch.r = to_double(value, line);
    } else if (key == "nbar") {
        ch.nbar = to_double(value, line);
    } else if (key == "alpha_re") {
        ch.alpha = Cplx(to_double(value, line), ch.alpha.imag());
    } else if (key == "alpha_im") {
        ch.alpha = Cplx(ch.alpha.real(), to_double(value, line));
    } else if (key == "tau_r_omega_r") {
        ch.tau_r_omega_r = to_double(value, line);
    } else if (key == "epsilon") {
        ch.epsilon = to_double(value, line);
    } else {
        throw ConfigError(line, "unknown channel key '" + key + "'");
    }
}

void apply_otto_key(OttoConfig& o, const std::string& key, const std::string& value,
                    int line) {
    static const std::set<std::string> sweeps = {"none", "chi", "alpha_im", "nu_ratio"};
    if (key == "nu0") o.nu0 = to_double(value, line);
    else if (key == "nu1") o.nu1 = to_double(value, line);
    else if (key == "nu_ratio") o.nu1 = o.nu0 * to_double(value, line);
    else if (key == "zeta_re") o.zeta = Cplx(to_double(value, line), o.zeta.imag());
    else if (key == "zeta_im") o.zeta = Cplx(o.zeta.real(), to_double(value, line));
    else if (key == "nbar_A") o.nbar_A = to_double(value, line);
    else if (key == "alpha_re") o.alpha = Cplx(to_double(value, line), o.alpha.imag());
    else if (key == "alpha_im") o.alpha = Cplx(o.alpha.real(), to_double(value, line));
    else if (key == "theta") o.theta = to_double_list(value, line);
    else if (key == "sweep") {
        if (!sweeps.count(value)) throw ConfigError(line, "unknown sweep '" + value + "'");
        o.sweep = value;
    } else if (key == "sweep_start") o.sweep_start = to_double(value, line);
    else if (key == "sweep_stop") o.sweep_stop = to_double(value, line);
    else if (key == "sweep_points") o.sweep_points = to_int(value, line);
    else throw ConfigError(line, "unknown otto key '" + key + "'");
}

void apply_reset_key(ResetConfig& r, const std::string& key, const std::string& value,
                     int line) {
    if (key == "omega_tilde") r.omega_tilde = to_double(value, line);
    else if (key == "gamma30") r.gamma30 = to_double(value, line);
    else if (key == "t_end") r.t_end = to_double(value, line);
    else if (key == "dt") r.dt = to_double(value, line);
    else if (key == "target_level") r.target_level = to_int(value, line);
    else if (key == "sample_every") r.sample_every = to_int(value, line);
    else throw ConfigError(line, "unknown reset key '" + key + "'");
}

void apply_top_key(ExperimentConfig& cfg, const std::string& key,
                   const std::string& value, int line) {
    if (key == "dim") cfg.dim = to_int(value, line);
    else if (key == "eta") cfg.eta = to_double(value, line);
    else if (key == "pulse_area") cfg.pulse_area = to_double(value, line);
    else if (key == "n_stages") cfg.n_stages = to_int(value, line);
    else if (key == "record_every") cfg.record_every = to_int(value, line);
    else if (key == "stepper") {
        if (value != "recursion" && value != "kraus" && value != "exponential")
            throw ConfigError(line, "unknown stepper '" + value + "'");
        cfg.stepper = value;
    } else if (key == "output") cfg.output = value;
    else throw ConfigError(line, "unknown key '" + key + "'");
}

} // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    std::string section;  // "" = top level
    bool seen_initial = false, seen_target = false, seen_otto = false, seen_reset = false;

    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(lineno, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section == "channel") {
                cfg.channels.emplace_back();
                cfg.channels.back().config_line = lineno;
            } else if (section == "initial_state") {
                if (seen_initial) throw ConfigError(lineno, "duplicate [initial_state]");
                seen_initial = true;
                cfg.initial_state.present = true;
            } else if (section == "target_state") {
                if (seen_target) throw ConfigError(lineno, "duplicate [target_state]");
                seen_target = true;
                cfg.target_state.present = true;
            } else if (section == "otto") {
                if (seen_otto) throw ConfigError(lineno, "duplicate [otto]");
                seen_otto = true;
                cfg.otto.present = true;
            } else if (section == "reset") {
                if (seen_reset) throw ConfigError(lineno, "duplicate [reset]");
                seen_reset = true;
                cfg.reset.present = true;
            } else {
                throw ConfigError(lineno, "unknown section '" + section + "'");
            }
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(lineno, "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(lineno, "empty key");
        if (value.empty()) throw ConfigError(lineno, "empty value for '" + key + "'");

        if (section.empty()) apply_top_key(cfg, key, value, lineno);
        else if (section == "channel") apply_channel_key(cfg.channels.back(), key, value, lineno);
        else if (section == "initial_state") apply_state_key(cfg.initial_state, key, value, lineno);
        else if (section == "target_state") apply_state_key(cfg.target_state, key, value, lineno);
        else if (section == "otto") apply_otto_key(cfg.otto, key, value, lineno);
        else if (section == "reset") apply_reset_key(cfg.reset, key, value, lineno);
    }

    if (cfg.dim < 8 || cfg.dim > 128)
        throw ConfigError(0, "dim must lie in [8, 128]");
    if (cfg.record_every < 1) throw ConfigError(0, "record_every must be >= 1");
    if (cfg.n_stages < 0) throw ConfigError(0, "n_stages must be >= 0");
    for (const auto& ch : cfg.channels) {
        const int forms = (!ch.preset.empty()) + (!ch.lines.empty()) + (!ch.ideal.empty());
        if (forms == 0)
            throw ConfigError(ch.config_line,
                              "channel needs a preset, raw lines, or an ideal operator");
        if (forms > 1)
            throw ConfigError(ch.config_line,
                              "channel forms are mutually exclusive");
        if (!ch.ideal.empty() && ch.epsilon < 0.0)
            throw ConfigError(ch.config_line, "ideal channels need an explicit epsilon");
    }
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError(0, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

} // namespace pmre::config

#include "tcm/run_config.hpp"

#include "tcm/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace tcm::cli {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos)
        return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& v, int line) {
    double out = 0.0;
    const char* b = v.data();
    const char* e = v.data() + v.size();
    auto res = std::from_chars(b, e, out);
    if (res.ec != std::errc() || res.ptr != e)
        throw ConfigError(line, "expected a number, got '" + v + "'");
    return out;
}

long long parse_int(const std::string& v, int line) {
    long long out = 0;
    const char* b = v.data();
    const char* e = v.data() + v.size();
    auto res = std::from_chars(b, e, out);
    if (res.ec != std::errc() || res.ptr != e)
        throw ConfigError(line, "expected an integer, got '" + v + "'");
    return out;
}

std::uint64_t parse_u64(const std::string& v, int line) {
    std::uint64_t out = 0;
    const char* b = v.data();
    const char* e = v.data() + v.size();
    auto res = std::from_chars(b, e, out);
    if (res.ec != std::errc() || res.ptr != e)
        throw ConfigError(line, "expected an unsigned integer, got '" + v + "'");
    return out;
}

bool parse_bool(const std::string& v, int line) {
    if (v == "true" || v == "on" || v == "1")
        return true;
    if (v == "false" || v == "off" || v == "0")
        return false;
    throw ConfigError(line, "expected a boolean, got '" + v + "'");
}

const std::vector<std::string>& run_keys() {
    static const std::vector<std::string> keys = {
        "grid.n1", "grid.n2", "grid.n3", "grid.l1", "grid.l2", "grid.l3",
        "model.alpha", "model.beta",
        "model.switches.horizontal_viscosity",
        "model.switches.fractional_dissipation",
        "model.switches.thermal_diffusion",
        "model.switches.damping",
        "model.switches.advection",
        "model.switches.coupling",
        "step.scheme", "step.dt", "step.adaptive", "step.cfl_safety",
        "step.dt_max", "step.t_end",
        "ic.kind", "ic.amplitude", "ic.seed", "ic.path",
        "out.dir", "out.cadence", "out.checkpoint_every",
    };
    return keys;
}

} // namespace

ParsedFile parse_key_value_text(const std::string& text) {
    ParsedFile file;
    std::istringstream is(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(is, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        if (hash != std::string::npos)
            raw = raw.substr(0, hash);
        const std::string line = trim(raw);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(line_no, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(line_no, "empty key");
        if (value.empty())
            throw ConfigError(line_no, "empty value for key '" + key + "'");
        file.entries[key] = {value, line_no};
    }
    return file;
}

void apply_run_keys(const ParsedFile& file, RunConfig& cfg,
                    const std::vector<std::string>& extra_allowed) {
    const auto& keys = run_keys();
    for (const auto& [key, entry] : file.entries) {
        const auto& [value, line] = entry;
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
            if (std::find(extra_allowed.begin(), extra_allowed.end(), key) !=
                extra_allowed.end())
                continue;
            throw ConfigError(line, "unknown key '" + key + "'");
        }

        if (key == "grid.n1")
            cfg.n1 = static_cast<int>(parse_int(value, line));
        else if (key == "grid.n2")
            cfg.n2 = static_cast<int>(parse_int(value, line));
        else if (key == "grid.n3")
            cfg.n3 = static_cast<int>(parse_int(value, line));
        else if (key == "grid.l1")
            cfg.l1 = parse_double(value, line);
        else if (key == "grid.l2")
            cfg.l2 = parse_double(value, line);
        else if (key == "grid.l3")
            cfg.l3 = parse_double(value, line);
        else if (key == "model.alpha")
            cfg.model.alpha = parse_double(value, line);
        else if (key == "model.beta")
            cfg.model.beta = parse_double(value, line);
        else if (key == "model.switches.horizontal_viscosity")
            cfg.model.horizontal_viscosity = parse_bool(value, line);
        else if (key == "model.switches.fractional_dissipation")
            cfg.model.fractional_dissipation = parse_bool(value, line);
        else if (key == "model.switches.thermal_diffusion")
            cfg.model.thermal_diffusion = parse_bool(value, line);
        else if (key == "model.switches.damping")
            cfg.model.damping = parse_bool(value, line);
        else if (key == "model.switches.advection")
            cfg.model.advection = parse_bool(value, line);
        else if (key == "model.switches.coupling")
            cfg.model.coupling = parse_bool(value, line);
        else if (key == "step.scheme") {
            try {
                cfg.step.scheme = parse_scheme(value);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(line, e.what());
            }
        } else if (key == "step.dt")
            cfg.step.dt = parse_double(value, line);
        else if (key == "step.adaptive")
            cfg.step.adaptive = parse_bool(value, line);
        else if (key == "step.cfl_safety")
            cfg.step.cfl_safety = parse_double(value, line);
        else if (key == "step.dt_max")
            cfg.step.dt_max = parse_double(value, line);
        else if (key == "step.t_end")
            cfg.step.t_end = parse_double(value, line);
        else if (key == "ic.kind")
            cfg.ic_kind = value;
        else if (key == "ic.amplitude")
            cfg.ic_amplitude = parse_double(value, line);
        else if (key == "ic.seed")
            cfg.ic_seed = parse_u64(value, line);
        else if (key == "ic.path")
            cfg.ic_path = value;
        else if (key == "out.dir")
            cfg.out_dir = value;
        else if (key == "out.cadence")
            cfg.step.callback_every = static_cast<int>(parse_int(value, line));
        else if (key == "out.checkpoint_every")
            cfg.checkpoint_every = static_cast<int>(parse_int(value, line));
    }
}

bool RunConfig::operator==(const RunConfig& other) const {
    return n1 == other.n1 && n2 == other.n2 && n3 == other.n3 &&
           l1 == other.l1 && l2 == other.l2 && l3 == other.l3 &&
           model.alpha == other.model.alpha && model.beta == other.model.beta &&
           model.horizontal_viscosity == other.model.horizontal_viscosity &&
           model.fractional_dissipation == other.model.fractional_dissipation &&
           model.thermal_diffusion == other.model.thermal_diffusion &&
           model.damping == other.model.damping &&
           model.advection == other.model.advection &&
           model.coupling == other.model.coupling &&
           step.scheme == other.step.scheme && step.dt == other.step.dt &&
           step.adaptive == other.step.adaptive &&
           step.cfl_safety == other.step.cfl_safety &&
           step.dt_max == other.step.dt_max && step.t_end == other.step.t_end &&
           step.callback_every == other.step.callback_every &&
           ic_kind == other.ic_kind && ic_amplitude == other.ic_amplitude &&
           ic_seed == other.ic_seed && ic_path == other.ic_path &&
           out_dir == other.out_dir && checkpoint_every == other.checkpoint_every;
}

void RunConfig::validate() const {
    auto bad = [](const std::string& msg) { throw ConfigError(0, msg); };
    for (int n : {n1, n2, n3})
        if (n < 4 || n % 2 != 0)
            bad("grid.n* must be even and >= 4");
    for (double l : {l1, l2, l3})
        if (!(l > 0.0) || !std::isfinite(l))
            bad("grid.l* must be positive");
    try {
        model.validate();
        step.validate();
        (void)parse_ic_kind(ic_kind);
    } catch (const std::invalid_argument& e) {
        bad(e.what());
    }
    if (!(ic_amplitude >= 0.0))
        bad("ic.amplitude must be >= 0");
    if (ic_kind == "from_checkpoint" && ic_path.empty())
        bad("ic.kind = from_checkpoint requires ic.path");
    if (checkpoint_every < 0)
        bad("out.checkpoint_every must be >= 0");
    if (out_dir.empty())
        bad("out.dir must be nonempty");
}

GridPtr RunConfig::make_run_grid() const {
    return make_grid(n1, n2, n3, l1, l2, l3);
}

IcSpec RunConfig::ic_spec() const {
    IcSpec spec;
    spec.kind = parse_ic_kind(ic_kind);
    spec.amplitude = ic_amplitude;
    spec.seed = ic_seed;
    spec.checkpoint_path = ic_path;
    return spec;
}

RunConfig parse_run_config_text(const std::string& text) {
    RunConfig cfg;
    apply_run_keys(parse_key_value_text(text), cfg);
    cfg.validate();
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream is(path);
    if (!is)
        throw ConfigError(0, "cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << is.rdbuf();
    return parse_run_config_text(buf.str());
}

std::string emit_run_config(const RunConfig& cfg) {
    std::ostringstream os;
    os << "# resolved run configuration\n";
    os << "grid.n1 = " << cfg.n1 << "\n";
    os << "grid.n2 = " << cfg.n2 << "\n";
    os << "grid.n3 = " << cfg.n3 << "\n";
    os << "grid.l1 = " << format_double(cfg.l1) << "\n";
    os << "grid.l2 = " << format_double(cfg.l2) << "\n";
    os << "grid.l3 = " << format_double(cfg.l3) << "\n";
    os << "model.alpha = " << format_double(cfg.model.alpha) << "\n";
    os << "model.beta = " << format_double(cfg.model.beta) << "\n";
    auto flag = [](bool b) { return b ? "true" : "false"; };
    os << "model.switches.horizontal_viscosity = "
       << flag(cfg.model.horizontal_viscosity) << "\n";
    os << "model.switches.fractional_dissipation = "
       << flag(cfg.model.fractional_dissipation) << "\n";
    os << "model.switches.thermal_diffusion = "
       << flag(cfg.model.thermal_diffusion) << "\n";
    os << "model.switches.damping = " << flag(cfg.model.damping) << "\n";
    os << "model.switches.advection = " << flag(cfg.model.advection) << "\n";
    os << "model.switches.coupling = " << flag(cfg.model.coupling) << "\n";
    os << "step.scheme = " << scheme_name(cfg.step.scheme) << "\n";
    os << "step.dt = " << format_double(cfg.step.dt) << "\n";
    os << "step.adaptive = " << flag(cfg.step.adaptive) << "\n";
    os << "step.cfl_safety = " << format_double(cfg.step.cfl_safety) << "\n";
    os << "step.dt_max = " << format_double(cfg.step.dt_max) << "\n";
    os << "step.t_end = " << format_double(cfg.step.t_end) << "\n";
    os << "ic.kind = " << cfg.ic_kind << "\n";
    os << "ic.amplitude = " << format_double(cfg.ic_amplitude) << "\n";
    os << "ic.seed = " << cfg.ic_seed << "\n";
    if (!cfg.ic_path.empty())
        os << "ic.path = " << cfg.ic_path << "\n";
    os << "out.dir = " << cfg.out_dir << "\n";
    os << "out.cadence = " << cfg.step.callback_every << "\n";
    os << "out.checkpoint_every = " << cfg.checkpoint_every << "\n";
    return os.str();
}

} // namespace tcm::cli

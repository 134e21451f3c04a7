// run_config.cpp

#include "run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace qdsps::cli {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(std::string_view v, int line) {
    double x = 0.0;
    const auto* end = v.data() + v.size();
    const auto [p, ec] = std::from_chars(v.data(), end, x);
    if (ec != std::errc{} || p != end || !std::isfinite(x))
        throw ConfigError("expected a number, got '" + std::string(v) + "'", line);
    return x;
}

int to_int(std::string_view v, int line) {
    int x = 0;
    const auto* end = v.data() + v.size();
    const auto [p, ec] = std::from_chars(v.data(), end, x);
    if (ec != std::errc{} || p != end) throw ConfigError("expected an integer, got '" + std::string(v) + "'", line);
    return x;
}

bool to_bool(std::string_view v, int line) {
    if (v == "true") return true;
    if (v == "false") return false;
    throw ConfigError("expected true or false, got '" + std::string(v) + "'", line);
}

std::string fmt(double x) {
    char buf[64];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, p);
}

struct Key {
    std::string name;
    std::function<void(RunConfig&, std::string_view, int)> set;
    std::function<std::string(const RunConfig&)> get;
};

#define QDSPS_NUMBER(key, field)                                                         \
    Key { key, [](RunConfig& c, std::string_view v, int l) { c.field = to_double(v, l); }, \
          [](const RunConfig& c) { return fmt(c.field); } }
#define QDSPS_INTEGER(key, field)                                                      \
    Key { key, [](RunConfig& c, std::string_view v, int l) { c.field = to_int(v, l); }, \
          [](const RunConfig& c) { return std::to_string(c.field); } }
#define QDSPS_BOOLEAN(key, field)                                                       \
    Key { key, [](RunConfig& c, std::string_view v, int l) { c.field = to_bool(v, l); }, \
          [](const RunConfig& c) { return std::string(c.field ? "true" : "false"); } }

const std::vector<Key>& schema() {
    static const std::vector<Key> keys = {
        QDSPS_NUMBER("phonon.alpha_ps2", alpha_ps2),
        QDSPS_NUMBER("phonon.xi_meV", xi_meV),
        QDSPS_NUMBER("phonon.T_K", T_K),
        QDSPS_NUMBER("qd.Gamma_ueV", Gamma_ueV),
        QDSPS_NUMBER("qd.gamma_ueV", gamma_ueV),
        QDSPS_NUMBER("qd.omega_X_meV", omega_X_meV),
        Key{"arch.type",
            [](RunConfig& c, std::string_view v, int l) {
                try {
                    c.arch = parse_arch(v);
                } catch (const ConfigError& e) {
                    throw ConfigError(e.what(), l);
                }
            },
            [](const RunConfig& c) { return std::string(arch_name(c.arch)); }},
        QDSPS_NUMBER("arch.F_wg", F_wg),
        Key{"arch.Gamma_O_ueV",
            [](RunConfig& c, std::string_view v, int l) {
                if (v == "auto")
                    c.Gamma_O_ueV.reset();
                else
                    c.Gamma_O_ueV = to_double(v, l);
            },
            [](const RunConfig& c) { return c.Gamma_O_ueV ? fmt(*c.Gamma_O_ueV) : std::string("auto"); }},
        QDSPS_NUMBER("arch.kappa_f_ueV", kappa_f_ueV),
        QDSPS_NUMBER("arch.filter_detuning_ueV", filter_detuning_ueV),
        QDSPS_NUMBER("arch.g_ueV", g_ueV),
        QDSPS_NUMBER("arch.kappa_c_ueV", kappa_c_ueV),
        QDSPS_NUMBER("numerics.rel_tol", rel_tol),
        QDSPS_NUMBER("numerics.tau_step_ps", tau_step_ps),
        QDSPS_NUMBER("numerics.tau_cap_ps", tau_cap_ps),
        QDSPS_NUMBER("numerics.kernel_half_width_xi", kernel_half_width_xi),
        QDSPS_INTEGER("numerics.kernel_points_per_xi", kernel_points_per_xi),
        QDSPS_INTEGER("numerics.diagonal_order", diagonal_order),
        Key{"numerics.sideband_model",
            [](RunConfig& c, std::string_view v, int l) {
                if (v == "exact")
                    c.sideband_model = SidebandModel::exact;
                else if (v == "factorised")
                    c.sideband_model = SidebandModel::factorised;
                else
                    throw ConfigError("sideband_model must be exact or factorised", l);
            },
            [](const RunConfig& c) {
                return std::string(c.sideband_model == SidebandModel::exact ? "exact" : "factorised");
            }},
        QDSPS_BOOLEAN("numerics.include_chi_z", include_chi_z),
        Key{"numerics.cavity_rates",
            [](RunConfig& c, std::string_view v, int l) {
                if (v == "renormalised")
                    c.cavity_rates = CavityRateConvention::renormalised;
                else if (v == "bare")
                    c.cavity_rates = CavityRateConvention::bare;
                else
                    throw ConfigError("cavity_rates must be renormalised or bare", l);
            },
            [](const RunConfig& c) {
                return std::string(c.cavity_rates == CavityRateConvention::renormalised ? "renormalised" : "bare");
            }},
        QDSPS_NUMBER("sweep.kappa_min_ueV", kappa_min_ueV),
        QDSPS_NUMBER("sweep.kappa_max_ueV", kappa_max_ueV),
        QDSPS_INTEGER("sweep.points", points),
        QDSPS_BOOLEAN("sweep.linear", linear),
        QDSPS_NUMBER("sweep.omega_c_meV", omega_c_meV),
        QDSPS_NUMBER("benchmark.max_gap", max_gap),
        Key{"output.path", [](RunConfig& c, std::string_view v, int) { c.out = std::string(v); },
            [](const RunConfig& c) { return c.out; }},
    };
    return keys;
}

#undef QDSPS_NUMBER
#undef QDSPS_INTEGER
#undef QDSPS_BOOLEAN

} // namespace

std::string_view arch_name(ArchType type) {
    switch (type) {
    case ArchType::waveguide: return "waveguide";
    case ArchType::filtered: return "filtered";
    case ArchType::cavity: return "cavity";
    }
    return "?";
}

ArchType parse_arch(std::string_view name) {
    if (name == "waveguide") return ArchType::waveguide;
    if (name == "filtered") return ArchType::filtered;
    if (name == "cavity") return ArchType::cavity;
    throw ConfigError("unknown architecture '" + std::string(name) + "' (waveguide, filtered, cavity)");
}

RunConfig preset(std::string_view name) {
    RunConfig c;
    if (name == "fig3") return c;
    if (name == "figS1") {
        c.arch = ArchType::cavity;
        c.alpha_ps2 = 0.032;
        c.xi_meV = 0.95;
        c.T_K = 0.0;
        c.g_ueV = 50.0;
        c.Gamma_O_ueV = 1.0;
        c.points = 30;
        return c;
    }
    throw ConfigError("unknown preset '" + std::string(name) + "' (fig3, figS1)");
}

void apply(RunConfig& config, std::string_view key, std::string_view value, int line) {
    for (const auto& k : schema()) {
        if (k.name == key) {
            if (value.empty()) throw ConfigError("empty value for '" + std::string(key) + "'", line);
            k.set(config, value, line);
            return;
        }
    }
    throw ConfigError("unknown key '" + std::string(key) + "'", line);
}

void apply_assignment(RunConfig& config, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected key=value, got '" + std::string(assignment) + "'");
    apply(config, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

RunConfig parse_config(std::string_view text, RunConfig base) {
    int line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError("expected key = value", line_no);
        apply(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), line_no);
    }
    return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_config(ss.str(), std::move(base));
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

std::vector<std::string> config_lines(const RunConfig& config) {
    std::vector<std::string> out;
    for (const auto& k : schema()) out.push_back(k.name + "=" + k.get(config));
    return out;
}

RunConfig parse_echo(std::string_view text) {
    std::string body;
    bool inside = false;
    std::istringstream in{std::string(text)};
    for (std::string line; std::getline(in, line);) {
        if (line.rfind("#", 0) != 0) break;
        std::string_view content = trim(std::string_view(line).substr(1));
        if (content == "config") {
            inside = true;
            continue;
        }
        if (inside && content.find('=') != std::string_view::npos) {
            body += content;
            body += '\n';
        }
    }
    if (!inside) throw ConfigError("no '# config' block in header");
    return parse_config(body);
}

void validate(const RunConfig& c) {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw ConfigError(what);
    };
    require(c.alpha_ps2 >= 0.0, "phonon.alpha_ps2 must be >= 0");
    require(c.xi_meV > 0.0, "phonon.xi_meV must be > 0");
    require(c.T_K >= 0.0, "phonon.T_K must be >= 0");
    require(c.Gamma_ueV > 0.0, "qd.Gamma_ueV must be > 0");
    require(c.gamma_ueV >= 0.0, "qd.gamma_ueV must be >= 0");
    require(c.F_wg > 0.0, "arch.F_wg must be > 0");
    require(!c.Gamma_O_ueV || *c.Gamma_O_ueV >= 0.0, "arch.Gamma_O_ueV must be >= 0");
    require(c.kappa_f_ueV > 0.0, "arch.kappa_f_ueV must be > 0");
    require(c.g_ueV > 0.0, "arch.g_ueV must be > 0");
    require(c.kappa_c_ueV > 0.0, "arch.kappa_c_ueV must be > 0");
    require(c.rel_tol > 0.0 && c.rel_tol < 1.0, "numerics.rel_tol must lie in (0, 1)");
    require(c.tau_step_ps > 0.0 && c.tau_step_ps <= 0.1, "numerics.tau_step_ps must lie in (0, 0.1]");
    require(c.tau_cap_ps > 10.0, "numerics.tau_cap_ps must be > 10");
    require(c.kernel_half_width_xi >= 6.0, "numerics.kernel_half_width_xi must be >= 6");
    require(c.kernel_points_per_xi >= 50, "numerics.kernel_points_per_xi must be >= 50");
    require(c.diagonal_order == 10 || c.diagonal_order == 15 || c.diagonal_order == 20 || c.diagonal_order == 25 ||
                c.diagonal_order == 30,
            "numerics.diagonal_order must be one of 10, 15, 20, 25, 30");
    require(c.kappa_min_ueV >= 1.0 && c.kappa_max_ueV <= 10000.0 && c.kappa_min_ueV < c.kappa_max_ueV,
            "sweep range must satisfy 1 <= kappa_min_ueV < kappa_max_ueV <= 10000");
    require(c.points >= 2, "sweep.points must be >= 2");
    require(c.omega_c_meV > 0.0, "sweep.omega_c_meV must be > 0");
    require(c.max_gap > 0.0, "benchmark.max_gap must be > 0");
    require(!c.out.empty(), "output.path must not be empty");
    try {
        qdsps::validate(qd_parameters(c));
        qdsps::validate(architecture(c));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

PhononParameters phonon_parameters(const RunConfig& c) { return {c.alpha_ps2, c.xi_meV, c.T_K}; }

PhononGridOptions grid_options(const RunConfig& c) {
    PhononGridOptions o;
    o.tau_step_ps = c.tau_step_ps;
    o.tau_cap_ps = c.tau_cap_ps;
    return o;
}

QDParams qd_parameters(const RunConfig& c) { return {c.omega_X_meV, c.Gamma_ueV, c.gamma_ueV}; }

SourceArchitecture architecture(const RunConfig& c) { return architecture(c, c.arch); }

SourceArchitecture architecture(const RunConfig& c, ArchType type) {
    const double Gamma_D = c.F_wg * c.Gamma_ueV;
    switch (type) {
    case ArchType::waveguide: return BareWaveguide{Gamma_D, c.Gamma_O_ueV.value_or(0.0)};
    case ArchType::filtered:
        return FilteredWaveguide{Gamma_D, c.Gamma_O_ueV.value_or(0.0), c.kappa_f_ueV, c.filter_detuning_ueV};
    case ArchType::cavity: return ResonantCavity{c.g_ueV, c.kappa_c_ueV, c.Gamma_O_ueV.value_or(c.Gamma_ueV)};
    }
    throw ConfigError("unknown architecture");
}

MeritOptions merit_options(const RunConfig& c) {
    MeritOptions o;
    o.spectrum.sideband_model = c.sideband_model;
    o.spectrum.kernel.half_width_xi = c.kernel_half_width_xi;
    o.spectrum.kernel.points_per_xi = c.kernel_points_per_xi;
    o.polaron.include_chi_z = c.include_chi_z;
    o.convention = c.cavity_rates;
    o.relative_tolerance = c.rel_tol;
    o.diagonal_order = c.diagonal_order;
    return o;
}

} // namespace qdsps::cli

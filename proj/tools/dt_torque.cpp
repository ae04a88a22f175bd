// dt-torque: sweeps, figure presets, spatial maps, regime classification
// and time-domain evolution for the double-tripod torque model.
//
// Exit codes: 0 clean, 2 partial NaN rows, 3 invalid request, 4 timeout.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dttorque.h"

namespace {

using nlohmann::json;

// Parses "pi", "-pi/2", "5pi/6", "0.25pi" or a plain number.
double parse_angle(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw CLI::ValidationError("empty angle");

    double sign = 1.0;
    size_t pos = 0;
    if (s[pos] == '+' || s[pos] == '-') {
        if (s[pos] == '-') sign = -1.0;
        ++pos;
    }
    size_t pi_pos = s.find("pi", pos);
    if (pi_pos == std::string::npos) {
        size_t used = 0;
        double v = std::stod(s.substr(pos), &used);
        if (used != s.size() - pos)
            throw CLI::ValidationError("bad angle: " + text);
        return sign * v;
    }
    double coef = 1.0;
    if (pi_pos > pos) coef = std::stod(s.substr(pos, pi_pos - pos));
    double den = 1.0;
    size_t rest = pi_pos + 2;
    if (rest < s.size()) {
        if (s[rest] != '/')
            throw CLI::ValidationError("bad angle: " + text);
        den = std::stod(s.substr(rest + 1));
    }
    return sign * coef * M_PI / den;
}

struct Range {
    double lo, hi;
    int n;
};

Range parse_range(const std::string& text) {
    size_t c1 = text.find(':');
    size_t c2 = text.find(':', c1 == std::string::npos ? 0 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw CLI::ValidationError("range must be lo:hi:n, got " + text);
    Range r;
    r.lo = parse_angle(text.substr(0, c1));
    r.hi = parse_angle(text.substr(c1 + 1, c2 - c1 - 1));
    r.n = std::stoi(text.substr(c2 + 1));
    return r;
}

int parse_axis(const std::string& s) {
    if (s == "delta") return DTT_AXIS_DELTA;
    if (s == "phi") return DTT_AXIS_PHI;
    if (s == "theta") return DTT_AXIS_THETA;
    if (s == "delta2") return DTT_AXIS_DELTA2;
    throw CLI::ValidationError("unknown axis: " + s);
}

int parse_solver(const std::string& s) {
    if (s == "closed") return DTT_SOLVER_CLOSED;
    if (s == "general") return DTT_SOLVER_GENERAL;
    if (s == "auto") return DTT_SOLVER_AUTO;
    throw CLI::ValidationError("unknown solver: " + s);
}

int parse_format(const std::string& s) {
    if (s == "csv") return DTT_FORMAT_CSV;
    if (s == "json") return DTT_FORMAT_JSON;
    throw CLI::ValidationError("unknown format: " + s);
}

// Shared physical-parameter options. Flag > config file > default.
struct Settings {
    std::optional<std::vector<std::string>> phases;
    std::optional<double> omega, probe_a, probe_b;
    std::optional<double> delta, delta2, gamma;
    std::optional<int> l;
    std::optional<double> k, waist;
    std::optional<std::string> range, out, format, solver, axis;
    std::optional<double> tol, tmax;
};

template <typename T>
void merge(std::optional<T>& into, const std::optional<T>& from) {
    if (!into && from) into = from;
}

Settings load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("cannot read config file: " + path);
    json doc = json::parse(in);
    Settings s;
    if (doc.contains("phases")) {
        std::vector<std::string> ph;
        for (const auto& v : doc["phases"])
            ph.push_back(v.is_string() ? v.get<std::string>()
                                       : std::to_string(v.get<double>()));
        s.phases = ph;
    }
    auto get_d = [&](const char* key, std::optional<double>& out) {
        if (doc.contains(key)) out = doc[key].get<double>();
    };
    auto get_s = [&](const char* key, std::optional<std::string>& out) {
        if (doc.contains(key)) out = doc[key].get<std::string>();
    };
    get_d("omega", s.omega);
    get_d("probe_a", s.probe_a);
    get_d("probe_b", s.probe_b);
    get_d("delta", s.delta);
    get_d("delta2", s.delta2);
    get_d("gamma", s.gamma);
    if (doc.contains("l")) s.l = doc["l"].get<int>();
    get_d("k", s.k);
    get_d("waist", s.waist);
    get_s("range", s.range);
    get_s("out", s.out);
    get_s("format", s.format);
    get_s("solver", s.solver);
    get_s("axis", s.axis);
    get_d("tol", s.tol);
    get_d("tmax", s.tmax);
    return s;
}

void apply_physics(dtt_params* p, const Settings& s) {
    double ctl[8];
    dtt_params_get_controls(p, ctl);
    if (s.phases || s.omega) {
        std::vector<double> ph(4);
        if (s.phases) {
            if (s.phases->size() != 4)
                throw CLI::ValidationError(
                    "--phases needs four values a1,b1,a2,b2");
            for (int i = 0; i < 4; ++i) ph[i] = parse_angle((*s.phases)[i]);
        } else {
            // keep current phases, rescale amplitude only
            ph[0] = std::atan2(ctl[1], ctl[0]);
            ph[1] = std::atan2(ctl[5], ctl[4]);
            ph[2] = std::atan2(ctl[3], ctl[2]);
            ph[3] = std::atan2(ctl[7], ctl[6]);
        }
        double omega =
            s.omega.value_or(std::hypot(ctl[0], ctl[1]) > 0
                                 ? std::hypot(ctl[0], ctl[1])
                                 : 1.0);
        int rc = dtt_params_set_controls(p, omega, ph[0], ph[1], ph[2], ph[3]);
        if (rc != DTT_OK) throw CLI::ValidationError(dtt_last_error());
    }
    if (s.probe_a || s.probe_b) {
        double pa, pb;
        dtt_params_get_probes(p, &pa, &pb);
        int rc = dtt_params_set_probes(p, s.probe_a.value_or(pa),
                                       s.probe_b.value_or(pb));
        if (rc != DTT_OK) throw CLI::ValidationError(dtt_last_error());
    }
    if (s.l || s.k || s.waist) {
        int l;
        double k, w;
        dtt_params_get_beam(p, &l, &k, &w);
        int rc = dtt_params_set_beam(p, s.l.value_or(l), s.k.value_or(k),
                                     s.waist.value_or(w));
        if (rc != DTT_OK) throw CLI::ValidationError(dtt_last_error());
    }
    if (s.delta || s.delta2 || s.gamma) {
        double d, d2, g;
        dtt_params_get_detuning(p, &d, &d2, &g);
        int rc = dtt_params_set_detuning(p, s.delta.value_or(d),
                                         s.delta2.value_or(d2),
                                         s.gamma.value_or(g));
        if (rc != DTT_OK) throw CLI::ValidationError(dtt_last_error());
    }
}

int exit_code(int rc) {
    switch (rc) {
        case DTT_OK: return 0;
        case DTT_ERR_PARTIAL: return 2;
        case DTT_ERR_TIMEOUT: return 4;
        case DTT_ERR_INVALID:
        case DTT_ERR_IO:
        case DTT_ERR_DOMAIN:
        case DTT_ERR_PRECONDITION: return 3;
        default: return 1;
    }
}

struct ParamsHolder {
    dtt_params* p = dtt_params_create();
    ~ParamsHolder() { dtt_params_destroy(p); }
    ParamsHolder(const ParamsHolder&) = delete;
    ParamsHolder() = default;
};

void add_settings_options(CLI::App* cmd, Settings& s,
                          std::string& config_path) {
    cmd->add_option("--config", config_path, "JSON config file");
    cmd->add_option("--phases", [&s](const std::vector<std::string>& v) {
        std::string joined;
        for (const auto& part : v) joined += part;
        std::vector<std::string> split;
        std::string cur;
        for (char c : joined) {
            if (c == ',') {
                split.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        split.push_back(cur);
        s.phases = split;
        return true;
    }, "Control phases a1,b1,a2,b2 (radians; pi literals allowed)");
    auto opt_d = [cmd](const char* name, std::optional<double>& v,
                       const char* desc) {
        cmd->add_option_function<double>(
            name, [&v](const double& x) { v = x; }, desc);
    };
    opt_d("--omega", s.omega, "Control amplitude Omega (units Gamma)");
    opt_d("--probe-a", s.probe_a, "|Omega_A0| (units Gamma)");
    opt_d("--probe-b", s.probe_b, "|Omega_B0| (units Gamma)");
    opt_d("--delta", s.delta, "Probe detuning Delta (units Gamma)");
    opt_d("--delta2", s.delta2, "Two-photon detuning delta (units Gamma)");
    opt_d("--gamma", s.gamma, "Decay rate Gamma (scale, default 1)");
    cmd->add_option_function<int>(
        "--l", [&s](const int& x) { s.l = x; }, "OAM charge l");
    opt_d("--k", s.k, "Wave number k (units 1/w)");
    opt_d("--waist", s.waist, "Beam waist w");
    cmd->add_option_function<std::string>(
        "--range", [&s](const std::string& x) { s.range = x; },
        "Sweep range lo:hi:n");
    cmd->add_option_function<std::string>(
        "--out", [&s](const std::string& x) { s.out = x; }, "Output path");
    cmd->add_option_function<std::string>(
        "--format", [&s](const std::string& x) { s.format = x; },
        "Output format csv|json");
    cmd->add_option_function<std::string>(
        "--solver", [&s](const std::string& x) { s.solver = x; },
        "Solver closed|general|auto");
    cmd->add_option_function<std::string>(
        "--axis", [&s](const std::string& x) { s.axis = x; },
        "Sweep axis delta|phi|theta|delta2");
    opt_d("--tol", s.tol, "Convergence tolerance (evolve)");
    opt_d("--tmax", s.tmax, "Integration time limit (evolve)");
}

Settings finalize(Settings flags, const std::string& config_path) {
    if (!config_path.empty()) {
        Settings cfg = load_config(config_path);
        merge(flags.phases, cfg.phases);
        merge(flags.omega, cfg.omega);
        merge(flags.probe_a, cfg.probe_a);
        merge(flags.probe_b, cfg.probe_b);
        merge(flags.delta, cfg.delta);
        merge(flags.delta2, cfg.delta2);
        merge(flags.gamma, cfg.gamma);
        merge(flags.l, cfg.l);
        merge(flags.k, cfg.k);
        merge(flags.waist, cfg.waist);
        merge(flags.range, cfg.range);
        merge(flags.out, cfg.out);
        merge(flags.format, cfg.format);
        merge(flags.solver, cfg.solver);
        merge(flags.axis, cfg.axis);
        merge(flags.tol, cfg.tol);
        merge(flags.tmax, cfg.tmax);
    }
    return flags;
}

int run_spectrum_cmd(const Settings& s, dtt_params* p,
                     const std::string& default_out) {
    Range range{-6.0, 6.0, 1201};
    if (s.range) range = parse_range(*s.range);
    int axis = s.axis ? parse_axis(*s.axis) : DTT_AXIS_DELTA;
    int solver = s.solver ? parse_solver(*s.solver) : DTT_SOLVER_AUTO;
    int format = s.format ? parse_format(*s.format) : DTT_FORMAT_CSV;
    std::string out = s.out.value_or(default_out);

    int rc = dtt_spectrum_run(p, axis, range.lo, range.hi, range.n, solver,
                              format, out.c_str());
    if (rc == DTT_ERR_PARTIAL) {
        std::cerr << "warning: " << dtt_last_error() << "\n";
    } else if (rc != DTT_OK) {
        std::cerr << "error: " << dtt_last_error() << "\n";
    }
    if (rc == DTT_OK || rc == DTT_ERR_PARTIAL)
        std::cout << "wrote " << out << "\n";
    return exit_code(rc);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Phase-controlled OAM torque in the double-tripod scheme"};
    app.require_subcommand(1);

    Settings spec_s, map_s, cls_s, evo_s, pre_s;
    std::string spec_cfg, map_cfg, cls_cfg, evo_cfg, pre_cfg;
    std::string preset_id;
    std::string traj_path;
    double map_nphi = 8;

    CLI::App* spectrum =
        app.add_subcommand("spectrum", "Sweep the torque function");
    add_settings_options(spectrum, spec_s, spec_cfg);

    CLI::App* preset_cmd =
        app.add_subcommand("preset", "Run a figure preset sweep");
    preset_cmd->add_option("id", preset_id, "Preset id (fig2a..fig6b)")
        ->required();
    add_settings_options(preset_cmd, pre_s, pre_cfg);

    CLI::App* map_cmd =
        app.add_subcommand("map", "Spatial force/torque map (CSV)");
    add_settings_options(map_cmd, map_s, map_cfg);
    map_cmd->add_option("--nphi", map_nphi, "Azimuthal grid size");

    CLI::App* classify_cmd =
        app.add_subcommand("classify", "Phase-induced regime classification");
    add_settings_options(classify_cmd, cls_s, cls_cfg);

    CLI::App* evolve_cmd = app.add_subcommand(
        "evolve", "Integrate the Bloch equations to steady state");
    add_settings_options(evolve_cmd, evo_s, evo_cfg);
    evolve_cmd->add_option("--traj", traj_path, "Trajectory CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (spectrum->parsed()) {
            Settings s = finalize(spec_s, spec_cfg);
            ParamsHolder h;
            apply_physics(h.p, s);
            return run_spectrum_cmd(s, h.p, "spectrum.csv");
        }
        if (preset_cmd->parsed()) {
            Settings s = finalize(pre_s, pre_cfg);
            ParamsHolder h;
            int axis;
            double lo, hi;
            int n;
            int rc = dtt_params_load_preset(h.p, preset_id.c_str(), &axis,
                                            &lo, &hi, &n);
            if (rc != DTT_OK) {
                std::cerr << "error: " << dtt_last_error() << "\n";
                return exit_code(rc);
            }
            apply_physics(h.p, s);  // flags override preset parameters
            if (!s.range) {
                char buf[80];
                std::snprintf(buf, sizeof buf, "%g:%g:%d", lo, hi, n);
                s.range = buf;
            }
            if (!s.axis) s.axis = "delta";
            return run_spectrum_cmd(s, h.p, preset_id + ".csv");
        }
        if (map_cmd->parsed()) {
            Settings s = finalize(map_s, map_cfg);
            ParamsHolder h;
            apply_physics(h.p, s);
            Range r{0.05, 2.5, 50};
            if (s.range) r = parse_range(*s.range);
            std::string out = s.out.value_or("map.csv");
            int rc = dtt_map_run(h.p, r.lo, r.hi, r.n,
                                 static_cast<int>(map_nphi), out.c_str());
            if (rc != DTT_OK) {
                std::cerr << "error: " << dtt_last_error() << "\n";
                return exit_code(rc);
            }
            std::cout << "wrote " << out << "\n";
            return 0;
        }
        if (classify_cmd->parsed()) {
            Settings s = finalize(cls_s, cls_cfg);
            ParamsHolder h;
            apply_physics(h.p, s);
            int regime;
            double c_b, c_d, c_x, overlap, phi, theta;
            int rc = dtt_classify(h.p, &regime, &c_b, &c_d, &c_x, &overlap);
            if (rc != DTT_OK) {
                std::cerr << "error: " << dtt_last_error() << "\n";
                return exit_code(rc);
            }
            dtt_reduce_phases(h.p, &phi, &theta);
            json out = {{"label", dtt_regime_name(regime)},
                        {"c_b", c_b},
                        {"c_d", c_d},
                        {"c_x", c_x},
                        {"bright_overlap", overlap},
                        {"phi", phi},
                        {"theta", theta}};
            std::cout << out.dump(2) << "\n";
            return 0;
        }
        if (evolve_cmd->parsed()) {
            Settings s = finalize(evo_s, evo_cfg);
            ParamsHolder h;
            apply_physics(h.p, s);
            double state[8], t_final = 0.0, deviation = 0.0;
            int rc = dtt_evolve(h.p, s.tol.value_or(1e-8),
                                s.tmax.value_or(1e3),
                                traj_path.empty() ? nullptr : traj_path.c_str(),
                                state, &t_final, &deviation);
            if (rc != DTT_OK) {
                std::cerr << "error: " << dtt_last_error() << "\n";
                return exit_code(rc);
            }
            json out = {{"t_final", t_final},
                        {"deviation_from_steady_solve", deviation},
                        {"rho_a", {state[0], state[1]}},
                        {"rho_b", {state[2], state[3]}},
                        {"rho_1", {state[4], state[5]}},
                        {"rho_2", {state[6], state[7]}}};
            std::cout << out.dump(2) << "\n";
            return 0;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}

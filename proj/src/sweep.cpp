#include "dttorque/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <thread>

#include <nlohmann/json.hpp>

namespace dtt {

namespace {

constexpr double kPi = std::numbers::pi;

struct PointParams {
    ControlFieldSet fields;
    DetuningConfig det;
};

PointParams at_axis_value(const SweepRequest& req, double v) {
    PointParams p{req.fields, req.det};
    switch (req.axis) {
        case Axis::Delta:
            p.det.delta = v;
            break;
        case Axis::DeltaTwoPhoton:
            p.det.delta2 = v;
            break;
        case Axis::Phi: {
            double theta = reduce_phases(req.fields).theta;
            p.fields = ControlFieldSet::from_phases(
                req.fields.amplitude(), v + theta, 0.0, theta, 0.0);
            break;
        }
        case Axis::Theta: {
            double phi = reduce_phases(req.fields).phi;
            p.fields = ControlFieldSet::from_phases(
                req.fields.amplitude(), phi + v, 0.0, v, 0.0);
            break;
        }
    }
    return p;
}

SpectrumRow evaluate_point(const SweepRequest& req, double v) {
    SpectrumRow row;
    row.axis_value = v;
    PointParams p = at_axis_value(req, v);
    const double pa = req.probes.amp_a, pb = req.probes.amp_b;

    Complex rho_a, rho_b;
    switch (req.solver) {
        case Solver::ClosedForm: {
            auto [a, b] = coherences_closed_form(p.fields, pa, pb, p.det);
            rho_a = a;
            rho_b = b;
            break;
        }
        case Solver::General: {
            CoherenceState c = solve_general(p.fields, pa, pb, p.det);
            rho_a = c.rho_a;
            rho_b = c.rho_b;
            break;
        }
        case Solver::Auto: {
            if (closed_form_applicable(p.fields, p.det)) {
                auto [a, b] = coherences_closed_form(p.fields, pa, pb, p.det);
                rho_a = a;
                rho_b = b;
            } else {
                CoherenceState c = solve_general(p.fields, pa, pb, p.det);
                rho_a = c.rho_a;
                rho_b = c.rho_b;
            }
            break;
        }
    }
    row.im_rho_a = rho_a.imag();
    row.im_rho_b = rho_b.imag();
    row.re_rho_a = rho_a.real();
    row.re_rho_b = rho_b.real();
    row.tau = pa * row.im_rho_a + pb * row.im_rho_b;
    return row;
}

void fill_nan(SpectrumRow& row) {
    double nan = std::numeric_limits<double>::quiet_NaN();
    row.tau = row.im_rho_a = row.im_rho_b = row.re_rho_a = row.re_rho_b = nan;
    row.ok = false;
}

nlohmann::json complex_json(const Complex& z) {
    return nlohmann::json::array({z.real(), z.imag()});
}

const char* solver_name(Solver s) {
    switch (s) {
        case Solver::ClosedForm: return "closed";
        case Solver::General: return "general";
        case Solver::Auto: return "auto";
    }
    return "auto";
}

}  // namespace

const char* axis_name(Axis a) {
    switch (a) {
        case Axis::Delta: return "delta";
        case Axis::Phi: return "phi";
        case Axis::Theta: return "theta";
        case Axis::DeltaTwoPhoton: return "delta2";
    }
    return "delta";
}

void SweepRequest::validate() const {
    if (count < 2)
        throw DtError(ErrorCode::InvalidRequest, "sweep: count must be >= 2");
    if (!(start < stop))
        throw DtError(ErrorCode::InvalidRequest, "sweep: start must be < stop");
    probes.validate();
    det.validate();
    if (axis == Axis::Phi || axis == Axis::Theta) {
        if (!fields.equal_amplitudes(1e-9))
            throw DtError(ErrorCode::InvalidRequest,
                          "sweep: phase axes require equal control amplitudes");
    }
}

TorqueSpectrum run_spectrum(const SweepRequest& req) {
    req.validate();
    TorqueSpectrum spectrum;
    spectrum.request = req;
    spectrum.rows.resize(req.count);

    const double step = (req.stop - req.start) / (req.count - 1);
    auto worker = [&](int begin, int end) {
        for (int i = begin; i < end; ++i) {
            double v = req.start + step * i;
            try {
                spectrum.rows[i] = evaluate_point(req, v);
            } catch (const DtError&) {
                spectrum.rows[i].axis_value = v;
                fill_nan(spectrum.rows[i]);
            }
        }
    };

    unsigned n_threads = std::min<unsigned>(
        std::max(1u, std::thread::hardware_concurrency()),
        static_cast<unsigned>(req.count));
    if (n_threads <= 1) {
        worker(0, req.count);
    } else {
        std::vector<std::thread> pool;
        int chunk = (req.count + n_threads - 1) / n_threads;
        for (unsigned t = 0; t < n_threads; ++t) {
            int begin = t * chunk;
            int end = std::min(req.count, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(worker, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    for (const SpectrumRow& r : spectrum.rows)
        if (!r.ok) ++spectrum.failures;
    return spectrum;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_spectrum_csv(const TorqueSpectrum& spectrum, std::ostream& out) {
    out << axis_name(spectrum.request.axis)
        << ",tau,im_rho_a,im_rho_b,re_rho_a,re_rho_b\n";
    for (const SpectrumRow& r : spectrum.rows) {
        out << format_double(r.axis_value) << ',' << format_double(r.tau)
            << ',' << format_double(r.im_rho_a) << ','
            << format_double(r.im_rho_b) << ',' << format_double(r.re_rho_a)
            << ',' << format_double(r.re_rho_b) << '\n';
    }
}

void write_spectrum_json(const TorqueSpectrum& spectrum, std::ostream& out) {
    const SweepRequest& req = spectrum.request;
    nlohmann::json params;
    params["axis"] = axis_name(req.axis);
    params["start"] = req.start;
    params["stop"] = req.stop;
    params["count"] = req.count;
    params["solver"] = solver_name(req.solver);
    params["control"] = {{"omega_a1", complex_json(req.fields.omega_a1)},
                         {"omega_a2", complex_json(req.fields.omega_a2)},
                         {"omega_b1", complex_json(req.fields.omega_b1)},
                         {"omega_b2", complex_json(req.fields.omega_b2)}};
    auto [phi, theta] = reduce_phases(req.fields);
    params["phi"] = phi;
    params["theta"] = theta;
    params["probes"] = {{"amp_a", req.probes.amp_a},
                        {"amp_b", req.probes.amp_b},
                        {"l", req.probes.l},
                        {"k", req.probes.k},
                        {"waist", req.probes.waist}};
    params["detuning"] = {{"delta", req.det.delta},
                          {"delta2", req.det.delta2},
                          {"gamma", req.det.gamma}};

    nlohmann::json rows = nlohmann::json::array();
    for (const SpectrumRow& r : spectrum.rows) {
        rows.push_back({r.axis_value, r.tau, r.im_rho_a, r.im_rho_b,
                        r.re_rho_a, r.re_rho_b});
    }
    nlohmann::json doc;
    doc["params"] = params;
    doc["rows"] = rows;
    out << doc.dump(2) << '\n';
}

void write_spectrum_file(const TorqueSpectrum& spectrum,
                         const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw DtError(ErrorCode::IoError, "cannot open output file: " + path);
    if (spectrum.request.format == OutputFormat::Csv)
        write_spectrum_csv(spectrum, out);
    else
        write_spectrum_json(spectrum, out);
    if (!out)
        throw DtError(ErrorCode::IoError, "write failed: " + path);
}

std::vector<std::string> preset_ids() {
    return {"fig2a", "fig2b", "fig2c", "fig2d", "fig2e", "fig2f",
            "fig3a", "fig3b", "fig3c", "fig3d", "fig4a", "fig4b",
            "fig4c", "fig4d", "fig5a", "fig5b", "fig5c", "fig5d",
            "fig6a", "fig6b"};
}

SweepRequest preset(const std::string& id) {
    struct Entry {
        double phi_a1, phi_b1, phi_a2, phi_b2;
        double delta2;
    };
    static const std::map<std::string, Entry> table = {
        {"fig2a", {kPi, 0, 0, 0, 1.0}},
        {"fig2b", {kPi, 0, 0, 0, 2.0}},
        {"fig2c", {kPi, 0, 0, 0, 3.0}},
        {"fig2d", {kPi, 0, 0, 0, -1.0}},
        {"fig2e", {kPi, 0, 0, 0, -2.0}},
        {"fig2f", {kPi, 0, 0, 0, -3.0}},
        {"fig3a", {kPi / 2, 0, 0, kPi / 2, 1.0}},
        {"fig3b", {kPi / 6, 0, 0, 5 * kPi / 6, 1.0}},
        {"fig3c", {kPi / 3, 0, 0, 2 * kPi / 3, 1.0}},
        {"fig3d", {5 * kPi / 6, 0, 0, kPi / 6, 1.0}},
        {"fig4a", {0, 0, 0, 0, 1.0}},
        {"fig4b", {0, 0, 0, 0, 2.0}},
        {"fig4c", {0, 0, 0, 0, 3.0}},
        {"fig4d", {0, 0, 0, 0, 4.0}},
        {"fig5a", {kPi / 6, 0, 0, 0, 1.0}},
        {"fig5b", {kPi / 4, 0, 0, 0, 1.0}},
        {"fig5c", {kPi / 2, 0, 0, 0, 1.0}},
        {"fig5d", {5 * kPi / 6, 0, 0, 0, 1.0}},
        {"fig6a", {kPi, 0, 0, 0, 0.0}},
        {"fig6b", {0, 0, 0, 0, 0.0}},
    };
    auto it = table.find(id);
    if (it == table.end())
        throw DtError(ErrorCode::InvalidRequest, "unknown preset: " + id);
    const Entry& e = it->second;

    SweepRequest req;
    req.axis = Axis::Delta;
    req.start = -6.0;
    req.stop = 6.0;
    req.count = 1201;
    req.fields = ControlFieldSet::from_phases(1.0, e.phi_a1, e.phi_b1,
                                              e.phi_a2, e.phi_b2);
    req.probes.amp_a = 0.1;
    req.probes.amp_b = 0.1;
    req.det.delta2 = e.delta2;
    return req;
}

void MapRequest::validate() const {
    if (!(r_start > 0.0))
        throw DtError(ErrorCode::InvalidRequest, "map: r grid must be > 0");
    if (r_count < 1 || azimuth_count < 1)
        throw DtError(ErrorCode::InvalidRequest, "map: grid counts must be >= 1");
    if (r_count > 1 && !(r_start < r_stop))
        throw DtError(ErrorCode::InvalidRequest, "map: r_start must be < r_stop");
    probes.validate();
    det.validate();
}

void run_map(const MapRequest& req, std::ostream& out) {
    req.validate();
    out << "r,azimuth,F_phi,F_z,T_z\n";
    double dr = req.r_count > 1
                    ? (req.r_stop - req.r_start) / (req.r_count - 1)
                    : 0.0;
    for (int i = 0; i < req.r_count; ++i) {
        double r = req.r_start + i * dr;
        for (int j = 0; j < req.azimuth_count; ++j) {
            double az = 2.0 * kPi * j / req.azimuth_count;
            SpatialPoint p{r, az, 0.0};
            ForceSample f = force(req.fields, req.probes, req.det, p);
            double tz = torque(req.fields, req.probes, req.det, p);
            out << format_double(r) << ',' << format_double(az) << ','
                << format_double(f.f_phi) << ',' << format_double(f.f_z)
                << ',' << format_double(tz) << '\n';
        }
    }
}

void run_map_file(const MapRequest& req, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw DtError(ErrorCode::IoError, "cannot open output file: " + path);
    run_map(req, out);
    if (!out) throw DtError(ErrorCode::IoError, "write failed: " + path);
}

EvolveReport run_evolve(const ControlFieldSet& fields, const ProbeConfig& probes,
                        const DetuningConfig& det, double tol, double t_max,
                        const std::optional<std::string>& trajectory_path) {
    BlochTrajectory traj =
        integrate_to_steady(fields, probes.amp_a, probes.amp_b, det, tol,
                            t_max);

    if (trajectory_path) {
        std::ofstream out(*trajectory_path, std::ios::binary);
        if (!out)
            throw DtError(ErrorCode::IoError,
                          "cannot open output file: " + *trajectory_path);
        out << "t,re_rho_a,im_rho_a,re_rho_b,im_rho_b,re_rho_1,im_rho_1,"
               "re_rho_2,im_rho_2\n";
        for (size_t i = 0; i < traj.times.size(); ++i) {
            const CoherenceState& c = traj.states[i];
            out << format_double(traj.times[i]) << ','
                << format_double(c.rho_a.real()) << ','
                << format_double(c.rho_a.imag()) << ','
                << format_double(c.rho_b.real()) << ','
                << format_double(c.rho_b.imag()) << ','
                << format_double(c.rho_1.real()) << ','
                << format_double(c.rho_1.imag()) << ','
                << format_double(c.rho_2.real()) << ','
                << format_double(c.rho_2.imag()) << '\n';
        }
    }

    EvolveReport report;
    report.final_state = traj.states.back();
    report.t_final = traj.times.back();
    report.metric = traj.final_metric;
    report.converged = traj.converged;

    CoherenceState exact = solve_general(fields, probes.amp_a, probes.amp_b,
                                         det);
    report.deviation = std::max(
        {std::abs(report.final_state.rho_a - exact.rho_a),
         std::abs(report.final_state.rho_b - exact.rho_b),
         std::abs(report.final_state.rho_1 - exact.rho_1),
         std::abs(report.final_state.rho_2 - exact.rho_2)});
    return report;
}

}  // namespace dtt

#include "dttorque.h"

#include <cstring>
#include <exception>
#include <optional>
#include <string>

#include "dttorque/regime_analysis.hpp"
#include "dttorque/sweep.hpp"

namespace {

thread_local std::string g_last_error;

int code_of(const dtt::DtError& e) {
    using dtt::ErrorCode;
    switch (e.code()) {
        case ErrorCode::DomainError: return DTT_ERR_DOMAIN;
        case ErrorCode::PoleError: return DTT_ERR_POLE;
        case ErrorCode::SingularSystem: return DTT_ERR_SINGULAR;
        case ErrorCode::PreconditionViolation: return DTT_ERR_PRECONDITION;
        case ErrorCode::DegenerateBasis: return DTT_ERR_DEGENERATE;
        case ErrorCode::Timeout: return DTT_ERR_TIMEOUT;
        case ErrorCode::InvalidRequest: return DTT_ERR_INVALID;
        case ErrorCode::IoError: return DTT_ERR_IO;
    }
    return DTT_ERR_INVALID;
}

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        g_last_error.clear();
        return fn();
    } catch (const dtt::DtError& e) {
        g_last_error = e.what();
        return code_of(e);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return DTT_ERR_INVALID;
    }
}

void pack_complex(const dtt::Complex& z, double* out) {
    out[0] = z.real();
    out[1] = z.imag();
}

}  // namespace

struct dtt_params {
    dtt::ControlFieldSet fields =
        dtt::ControlFieldSet::from_phases(1.0, 0.0, 0.0, 0.0, 0.0);
    dtt::ProbeConfig probes;
    dtt::DetuningConfig det;
};

extern "C" {

const char* dtt_last_error(void) { return g_last_error.c_str(); }

const char* dtt_regime_name(int regime) {
    switch (regime) {
        case DTT_REGIME_COUPLED_LAMBDA: return "CoupledLambda";
        case DTT_REGIME_DOUBLE_LAMBDA: return "DoubleLambda";
        case DTT_REGIME_DECOUPLED_LAMBDAS: return "DecoupledLambdas";
        case DTT_REGIME_GENERIC: return "Generic";
    }
    return "Unknown";
}

dtt_params* dtt_params_create(void) { return new dtt_params(); }

void dtt_params_destroy(dtt_params* p) { delete p; }

dtt_params* dtt_params_clone(const dtt_params* p) {
    return p ? new dtt_params(*p) : nullptr;
}

int dtt_params_set_controls(dtt_params* p, double omega, double phi_a1,
                            double phi_b1, double phi_a2, double phi_b2) {
    if (!p) return DTT_ERR_INVALID;
    return guarded([&] {
        p->fields = dtt::ControlFieldSet::from_phases(omega, phi_a1, phi_b1,
                                                      phi_a2, phi_b2);
        return DTT_OK;
    });
}

int dtt_params_set_controls_complex(dtt_params* p, double a1_re, double a1_im,
                                    double a2_re, double a2_im, double b1_re,
                                    double b1_im, double b2_re, double b2_im) {
    if (!p) return DTT_ERR_INVALID;
    p->fields = dtt::ControlFieldSet::general(
        {a1_re, a1_im}, {a2_re, a2_im}, {b1_re, b1_im}, {b2_re, b2_im});
    return DTT_OK;
}

int dtt_params_set_probes(dtt_params* p, double amp_a, double amp_b) {
    if (!p) return DTT_ERR_INVALID;
    return guarded([&] {
        dtt::ProbeConfig probes = p->probes;
        probes.amp_a = amp_a;
        probes.amp_b = amp_b;
        probes.validate();
        p->probes = probes;
        return DTT_OK;
    });
}

int dtt_params_set_beam(dtt_params* p, int l, double k, double waist) {
    if (!p) return DTT_ERR_INVALID;
    return guarded([&] {
        dtt::ProbeConfig probes = p->probes;
        probes.l = l;
        probes.k = k;
        probes.waist = waist;
        probes.validate();
        p->probes = probes;
        return DTT_OK;
    });
}

int dtt_params_set_detuning(dtt_params* p, double delta, double delta2,
                            double gamma) {
    if (!p) return DTT_ERR_INVALID;
    return guarded([&] {
        dtt::DetuningConfig det{delta, delta2, gamma};
        det.validate();
        p->det = det;
        return DTT_OK;
    });
}

int dtt_params_get_controls(const dtt_params* p, double out[8]) {
    if (!p || !out) return DTT_ERR_INVALID;
    pack_complex(p->fields.omega_a1, out);
    pack_complex(p->fields.omega_a2, out + 2);
    pack_complex(p->fields.omega_b1, out + 4);
    pack_complex(p->fields.omega_b2, out + 6);
    return DTT_OK;
}

int dtt_params_get_probes(const dtt_params* p, double* amp_a, double* amp_b) {
    if (!p) return DTT_ERR_INVALID;
    if (amp_a) *amp_a = p->probes.amp_a;
    if (amp_b) *amp_b = p->probes.amp_b;
    return DTT_OK;
}

int dtt_params_get_beam(const dtt_params* p, int* l, double* k,
                        double* waist) {
    if (!p) return DTT_ERR_INVALID;
    if (l) *l = p->probes.l;
    if (k) *k = p->probes.k;
    if (waist) *waist = p->probes.waist;
    return DTT_OK;
}

int dtt_params_get_detuning(const dtt_params* p, double* delta, double* delta2,
                            double* gamma) {
    if (!p) return DTT_ERR_INVALID;
    if (delta) *delta = p->det.delta;
    if (delta2) *delta2 = p->det.delta2;
    if (gamma) *gamma = p->det.gamma;
    return DTT_OK;
}

int dtt_reduce_phases(const dtt_params* p, double* phi, double* theta) {
    if (!p) return DTT_ERR_INVALID;
    auto pair = dtt::reduce_phases(p->fields);
    if (phi) *phi = pair.phi;
    if (theta) *theta = pair.theta;
    return DTT_OK;
}

int dtt_lg_profile(int l, double waist, double r, double* out) {
    if (!out) return DTT_ERR_INVALID;
    return guarded([&] {
        *out = dtt::lg_profile(l, waist, r);
        return DTT_OK;
    });
}

int dtt_steady_state(const dtt_params* p, double out[8]) {
    if (!p || !out) return DTT_ERR_INVALID;
    return guarded([&] {
        dtt::CoherenceState c = dtt::solve_general(p->fields, p->probes.amp_a,
                                                   p->probes.amp_b, p->det);
        pack_complex(c.rho_a, out);
        pack_complex(c.rho_b, out + 2);
        pack_complex(c.rho_1, out + 4);
        pack_complex(c.rho_2, out + 6);
        return DTT_OK;
    });
}

int dtt_closed_form(const dtt_params* p, double out[4]) {
    if (!p || !out) return DTT_ERR_INVALID;
    return guarded([&] {
        auto [a, b] = dtt::coherences_closed_form(
            p->fields, p->probes.amp_a, p->probes.amp_b, p->det);
        pack_complex(a, out);
        pack_complex(b, out + 2);
        return DTT_OK;
    });
}

int dtt_torque_function(const dtt_params* p, double* tau) {
    if (!p || !tau) return DTT_ERR_INVALID;
    return guarded([&] {
        *tau = dtt::torque_function(p->fields, p->probes, p->det);
        return DTT_OK;
    });
}

int dtt_torque_at(const dtt_params* p, double r, double* t_z) {
    if (!p || !t_z) return DTT_ERR_INVALID;
    return guarded([&] {
        *t_z = dtt::torque(p->fields, p->probes, p->det,
                           dtt::SpatialPoint{r, 0.0, 0.0});
        return DTT_OK;
    });
}

int dtt_force_at(const dtt_params* p, double r, double* f_phi, double* f_z) {
    if (!p) return DTT_ERR_INVALID;
    return guarded([&] {
        dtt::ForceSample s = dtt::force(p->fields, p->probes, p->det,
                                        dtt::SpatialPoint{r, 0.0, 0.0});
        if (f_phi) *f_phi = s.f_phi;
        if (f_z) *f_z = s.f_z;
        return DTT_OK;
    });
}

int dtt_classify(const dtt_params* p, int* regime, double* c_b, double* c_d,
                 double* c_x, double* bright_overlap) {
    if (!p) return DTT_ERR_INVALID;
    return guarded([&] {
        dtt::RegimeReport r = dtt::classify(p->fields, p->det);
        if (regime) *regime = static_cast<int>(r.label);
        if (c_b) *c_b = r.coeffs.c_b;
        if (c_d) *c_d = r.coeffs.c_d;
        if (c_x) *c_x = r.coeffs.c_x;
        if (bright_overlap) *bright_overlap = r.bright_overlap;
        return DTT_OK;
    });
}

int dtt_spectrum_run(const dtt_params* p, int axis, double start, double stop,
                     int count, int solver, int format, const char* path) {
    if (!p || !path) return DTT_ERR_INVALID;
    if (axis < 0 || axis > 3 || solver < 0 || solver > 2 || format < 0 ||
        format > 1) {
        g_last_error = "dtt_spectrum_run: invalid axis/solver/format";
        return DTT_ERR_INVALID;
    }
    return guarded([&] {
        dtt::SweepRequest req;
        req.axis = static_cast<dtt::Axis>(axis);
        req.start = start;
        req.stop = stop;
        req.count = count;
        req.fields = p->fields;
        req.probes = p->probes;
        req.det = p->det;
        req.solver = static_cast<dtt::Solver>(solver);
        req.format = static_cast<dtt::OutputFormat>(format);
        dtt::TorqueSpectrum spectrum = dtt::run_spectrum(req);
        dtt::write_spectrum_file(spectrum, path);
        if (spectrum.failures > 0) {
            g_last_error = std::to_string(spectrum.failures) +
                           " sweep points failed and were written as NaN";
            return DTT_ERR_PARTIAL;
        }
        return DTT_OK;
    });
}

int dtt_params_load_preset(dtt_params* p, const char* id, int* axis,
                           double* start, double* stop, int* count) {
    if (!p || !id) return DTT_ERR_INVALID;
    return guarded([&] {
        dtt::SweepRequest req = dtt::preset(id);
        p->fields = req.fields;
        p->probes = req.probes;
        p->det = req.det;
        if (axis) *axis = static_cast<int>(req.axis);
        if (start) *start = req.start;
        if (stop) *stop = req.stop;
        if (count) *count = req.count;
        return DTT_OK;
    });
}

int dtt_preset_count(void) {
    return static_cast<int>(dtt::preset_ids().size());
}

const char* dtt_preset_id(int index) {
    static const std::vector<std::string> ids = dtt::preset_ids();
    if (index < 0 || index >= static_cast<int>(ids.size())) return nullptr;
    return ids[static_cast<size_t>(index)].c_str();
}

int dtt_map_run(const dtt_params* p, double r_start, double r_stop,
                int r_count, int azimuth_count, const char* path) {
    if (!p || !path) return DTT_ERR_INVALID;
    return guarded([&] {
        dtt::MapRequest req;
        req.fields = p->fields;
        req.probes = p->probes;
        req.det = p->det;
        req.r_start = r_start;
        req.r_stop = r_stop;
        req.r_count = r_count;
        req.azimuth_count = azimuth_count;
        dtt::run_map_file(req, path);
        return DTT_OK;
    });
}

int dtt_evolve(const dtt_params* p, double tol, double t_max,
               const char* trajectory_path_or_null, double out_state[8],
               double* t_final, double* deviation) {
    if (!p) return DTT_ERR_INVALID;
    return guarded([&] {
        std::optional<std::string> traj_path;
        if (trajectory_path_or_null) traj_path = trajectory_path_or_null;
        try {
            dtt::EvolveReport rep = dtt::run_evolve(p->fields, p->probes,
                                                    p->det, tol, t_max,
                                                    traj_path);
            if (out_state) {
                pack_complex(rep.final_state.rho_a, out_state);
                pack_complex(rep.final_state.rho_b, out_state + 2);
                pack_complex(rep.final_state.rho_1, out_state + 4);
                pack_complex(rep.final_state.rho_2, out_state + 6);
            }
            if (t_final) *t_final = rep.t_final;
            if (deviation) *deviation = rep.deviation;
            return DTT_OK;
        } catch (const dtt::TimeoutError& e) {
            if (out_state) {
                pack_complex(e.last_state.rho_a, out_state);
                pack_complex(e.last_state.rho_b, out_state + 2);
                pack_complex(e.last_state.rho_1, out_state + 4);
                pack_complex(e.last_state.rho_2, out_state + 6);
            }
            if (t_final) *t_final = e.t_reached;
            throw;
        }
    });
}

}  // extern "C"

#pragma once

// Parameter sweeps, figure presets, spatial maps and serialization.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dttorque/mechanics.hpp"
#include "dttorque/time_dynamics.hpp"

namespace dtt {

enum class Axis { Delta, Phi, Theta, DeltaTwoPhoton };
enum class Solver { ClosedForm, General, Auto };
enum class OutputFormat { Csv, Json };

const char* axis_name(Axis a);

struct SweepRequest {
    Axis axis = Axis::Delta;
    double start = -6.0;
    double stop = 6.0;
    int count = 1201;
    ControlFieldSet fields =
        ControlFieldSet::from_phases(1.0, 0.0, 0.0, 0.0, 0.0);
    ProbeConfig probes;
    DetuningConfig det;
    OutputFormat format = OutputFormat::Csv;
    Solver solver = Solver::Auto;

    void validate() const;  // count >= 2, start < stop
};

struct SpectrumRow {
    double axis_value = 0.0;
    double tau = 0.0;
    double im_rho_a = 0.0;
    double im_rho_b = 0.0;
    double re_rho_a = 0.0;
    double re_rho_b = 0.0;
    bool ok = true;  // false rows are serialized as NaN
};

struct TorqueSpectrum {
    SweepRequest request;
    std::vector<SpectrumRow> rows;
    int failures = 0;
};

// Evaluates tau and the optical coherences (at unit radial profile) across
// the axis. Points are computed concurrently; rows come back in axis order.
TorqueSpectrum run_spectrum(const SweepRequest& req);

void write_spectrum_csv(const TorqueSpectrum& spectrum, std::ostream& out);
void write_spectrum_json(const TorqueSpectrum& spectrum, std::ostream& out);
void write_spectrum_file(const TorqueSpectrum& spectrum,
                         const std::string& path);

// Figure presets: parameters reproduce the published sweep configurations.
std::vector<std::string> preset_ids();
SweepRequest preset(const std::string& id);  // throws InvalidRequest

struct MapRequest {
    ControlFieldSet fields =
        ControlFieldSet::from_phases(1.0, 0.0, 0.0, 0.0, 0.0);
    ProbeConfig probes;
    DetuningConfig det;
    double r_start = 0.05;
    double r_stop = 2.5;
    int r_count = 50;
    int azimuth_count = 8;

    void validate() const;  // r_start > 0
};

// Spatial map rows (r, azimuth, F_phi, F_z, T_z).
void run_map(const MapRequest& req, std::ostream& out);
void run_map_file(const MapRequest& req, const std::string& path);

struct EvolveReport {
    CoherenceState final_state;
    double t_final = 0.0;
    double metric = 0.0;
    double deviation = 0.0;  // max componentwise distance to solve_general
    bool converged = false;
};

// Integrates to steady state and compares against the algebraic solution;
// optionally dumps the trajectory as CSV (t, Re/Im of each coherence).
EvolveReport run_evolve(const ControlFieldSet& fields, const ProbeConfig& probes,
                        const DetuningConfig& det, double tol, double t_max,
                        const std::optional<std::string>& trajectory_path);

// 17-significant-digit float formatting shared by all writers.
std::string format_double(double v);

}  // namespace dtt

#include "dttorque/mechanics.hpp"

#include <cmath>

namespace dtt {

namespace {

// Azimuthal force at radius r (independent of azimuth and z).
double azimuthal_force(const ControlFieldSet& fields, const ProbeConfig& probes,
                       const DetuningConfig& det, double r) {
    if (probes.l == 0) return 0.0;
    double g = lg_profile(probes.l, probes.waist, r);
    double pa = probes.amp_a * g, pb = probes.amp_b * g;
    CoherenceState c = solve_general(fields, pa, pb, det);
    return -2.0 * (probes.l / r) *
           (pa * std::imag(c.rho_a) + pb * std::imag(c.rho_b));
}

}  // namespace

std::pair<CylVec, CylVec> phase_gradients(const ProbeConfig& probes,
                                          const SpatialPoint& point) {
    if (!(point.r > 0.0))
        throw domain_error("phase_gradients: singular on the vortex axis r = 0");
    double az = -static_cast<double>(probes.l) / point.r;
    return {CylVec{0.0, az, probes.k}, CylVec{0.0, az, -probes.k}};
}

ForceSample force(const ControlFieldSet& fields, const ProbeConfig& probes,
                  const DetuningConfig& det, const SpatialPoint& point) {
    if (!(point.r > 0.0))
        throw domain_error("force: singular on the vortex axis r = 0");
    probes.validate();
    double g = lg_profile(probes.l, probes.waist, point.r);
    double pa = probes.amp_a * g, pb = probes.amp_b * g;
    CoherenceState c = solve_general(fields, pa, pb, det);
    double ia = std::imag(c.rho_a), ib = std::imag(c.rho_b);
    ForceSample s;
    s.position = point;
    s.f_z = 2.0 * probes.k * (pa * ia - pb * ib);
    s.f_phi = -2.0 * (probes.l / point.r) * (pa * ia + pb * ib);
    return s;
}

double torque_function(const ControlFieldSet& fields, const ProbeConfig& probes,
                       const DetuningConfig& det) {
    probes.validate();
    CoherenceState c = solve_general(fields, probes.amp_a, probes.amp_b, det);
    return probes.amp_a * std::imag(c.rho_a) +
           probes.amp_b * std::imag(c.rho_b);
}

double torque(const ControlFieldSet& fields, const ProbeConfig& probes,
              const DetuningConfig& det, const SpatialPoint& point) {
    if (point.r < 0.0) throw domain_error("torque: radius must be >= 0");
    if (probes.l == 0) return 0.0;
    double g = lg_profile(probes.l, probes.waist, point.r);
    return -2.0 * g * g * probes.l * torque_function(fields, probes, det);
}

EnsembleTrajectory rotate_ensemble(const ControlFieldSet& fields,
                                   const ProbeConfig& probes,
                                   const DetuningConfig& det,
                                   std::vector<Atom> atoms, double dt,
                                   int steps) {
    if (!(dt > 0.0)) throw domain_error("rotate_ensemble: dt must be > 0");
    const double r_min = 1e-6 * probes.waist;
    for (const Atom& a : atoms)
        if (std::hypot(a.x, a.y) <= 0.0)
            throw domain_error("rotate_ensemble: atom on the vortex axis");

    EnsembleTrajectory traj;
    traj.accumulated_angle.assign(atoms.size(), 0.0);
    std::vector<double> prev_phi(atoms.size());
    for (size_t i = 0; i < atoms.size(); ++i)
        prev_phi[i] = std::atan2(atoms[i].y, atoms[i].x);

    auto accel = [&](const Atom& a, double& ax, double& ay) {
        double r = std::hypot(a.x, a.y);
        if (r < r_min) r = r_min;
        double f = azimuthal_force(fields, probes, det, r);
        double phi = std::atan2(a.y, a.x);
        ax = -f * std::sin(phi) / a.mass;
        ay = f * std::cos(phi) / a.mass;
    };

    std::vector<double> ax(atoms.size()), ay(atoms.size());
    for (size_t i = 0; i < atoms.size(); ++i) accel(atoms[i], ax[i], ay[i]);

    traj.times.push_back(0.0);
    traj.frames.push_back(atoms);

    for (int s = 0; s < steps; ++s) {
        for (size_t i = 0; i < atoms.size(); ++i) {
            Atom& a = atoms[i];
            a.x += a.vx * dt + 0.5 * ax[i] * dt * dt;
            a.y += a.vy * dt + 0.5 * ay[i] * dt * dt;
            double r = std::hypot(a.x, a.y);
            if (r < r_min) {
                // clamp back onto the minimum radius circle
                double phi = std::atan2(a.y, a.x);
                a.x = r_min * std::cos(phi);
                a.y = r_min * std::sin(phi);
                traj.radius_clamped = true;
            }
            double nax, nay;
            accel(a, nax, nay);
            a.vx += 0.5 * (ax[i] + nax) * dt;
            a.vy += 0.5 * (ay[i] + nay) * dt;
            ax[i] = nax;
            ay[i] = nay;

            double phi = std::atan2(a.y, a.x);
            double dphi = std::remainder(phi - prev_phi[i], 2.0 * M_PI);
            traj.accumulated_angle[i] += dphi;
            prev_phi[i] = phi;
        }
        traj.times.push_back((s + 1) * dt);
        traj.frames.push_back(atoms);
    }

    traj.azimuthal_velocity.resize(atoms.size());
    for (size_t i = 0; i < atoms.size(); ++i) {
        const Atom& a = atoms[i];
        double phi = std::atan2(a.y, a.x);
        traj.azimuthal_velocity[i] =
            -a.vx * std::sin(phi) + a.vy * std::cos(phi);
    }
    return traj;
}

}  // namespace dtt

#pragma once

// Phase-gradient force, OAM-induced torque, and a small semiclassical
// ensemble integrator for the in-plane atomic motion.

#include <utility>
#include <vector>

#include "dttorque/bloch_steady.hpp"

namespace dtt {

// Vector in cylindrical components (r, phi, z).
struct CylVec {
    double r = 0.0;
    double phi = 0.0;
    double z = 0.0;
};

struct ForceSample {
    SpatialPoint position;
    double f_r = 0.0;  // identically zero: the probe phases carry no r-dependence
    double f_phi = 0.0;
    double f_z = 0.0;
};

// Gradients of the two probe phase profiles,
// grad Phi_A0 = (-l/r) phi_hat + k z_hat, grad Phi_B0 = (-l/r) phi_hat - k z_hat.
std::pair<CylVec, CylVec> phase_gradients(const ProbeConfig& probes,
                                          const SpatialPoint& point);

// Radiation-pressure force at a point, with coherences evaluated at the
// position-dependent probe amplitudes |Omega| G(r). Dipole force is omitted.
ForceSample force(const ControlFieldSet& fields, const ProbeConfig& probes,
                  const DetuningConfig& det, const SpatialPoint& point);

// Torque function tau = |Omega_A0| Im(rho_A) + |Omega_B0| Im(rho_B) with the
// radial profile divided out (coherences at unit G).
double torque_function(const ControlFieldSet& fields,
                       const ProbeConfig& probes, const DetuningConfig& det);

// Axial torque T_z = -2 G^2(r) l tau.
double torque(const ControlFieldSet& fields, const ProbeConfig& probes,
              const DetuningConfig& det, const SpatialPoint& point);

struct Atom {
    double x = 1.0;
    double y = 0.0;
    double vx = 0.0;
    double vy = 0.0;
    double mass = 1.0;
};

struct EnsembleTrajectory {
    std::vector<double> times;
    std::vector<std::vector<Atom>> frames;     // one snapshot per time sample
    std::vector<double> azimuthal_velocity;    // final v_phi per atom
    std::vector<double> accumulated_angle;     // unwrapped phi(t_end) - phi(0)
    bool radius_clamped = false;               // any atom hit r_min
};

// Velocity-Verlet integration in the z = 0 plane under the azimuthal force
// component. Atoms reaching r < 1e-6 w are clamped to that radius.
EnsembleTrajectory rotate_ensemble(const ControlFieldSet& fields,
                                   const ProbeConfig& probes,
                                   const DetuningConfig& det,
                                   std::vector<Atom> atoms, double dt,
                                   int steps);

}  // namespace dtt

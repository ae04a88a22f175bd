#pragma once

// Physical configuration types for the five-level double-tripod scheme.
// All frequencies are in units of the excited-state decay rate Gamma = 1,
// lengths in units of the beam waist w = 1.

#include <complex>

#include <Eigen/Dense>

#include "dttorque/errors.hpp"

namespace dtt {

using Complex = std::complex<double>;

// Wraps an angle into (-pi, pi]; -pi is canonicalized to +pi.
double wrap_phase(double x);

struct PhasePair {
    double phi;    // total relative phase (phi_A1 - phi_B1) - theta
    double theta;  // additional phase phi_A2 - phi_B2
};

// The four control-field Rabi frequencies driving |A>,|B> <-> |1>,|2>.
struct ControlFieldSet {
    Complex omega_a1;
    Complex omega_a2;
    Complex omega_b1;
    Complex omega_b2;

    // Equal-amplitude constructor: Omega_i = omega * exp(i phi_i), omega > 0.
    static ControlFieldSet from_phases(double omega, double phi_a1,
                                       double phi_b1, double phi_a2,
                                       double phi_b2);

    // General constructor, four independent complex Rabi frequencies.
    static ControlFieldSet general(Complex a1, Complex a2, Complex b1,
                                   Complex b2);

    bool equal_amplitudes(double rel_tol = 1e-12) const;

    // Common modulus of an equal-amplitude set (throws otherwise).
    double amplitude() const;
};

// Probe-beam parameters: amplitudes at the radial peak scale, OAM charge,
// wave number and waist of the shared Laguerre-Gaussian profile.
struct ProbeConfig {
    double amp_a = 0.1;  // |Omega_A0|
    double amp_b = 0.1;  // |Omega_B0|
    int l = 1;           // OAM / topological charge
    double k = 1.0;      // wave number, units 1/w
    double waist = 1.0;  // beam waist w

    void validate() const;

    // Weak-probe validity: max probe amplitude below 0.3 * control amplitude.
    bool weak_probe_ok(double control_amplitude) const;
};

struct DetuningConfig {
    double delta = 0.0;   // probe detuning
    double delta2 = 0.0;  // two-photon detuning
    double gamma = 1.0;   // decay rate, fixed scale

    void validate() const;
};

struct SpatialPoint {
    double r = 1.0;        // radius >= 0, units w
    double azimuth = 0.0;  // [0, 2pi)
    double z = 0.0;
};

// Laguerre-Gaussian radial mode G(r) = (r/w)^|l| exp(-r^2/w^2), unnormalized.
double lg_profile(int l, double waist, double r);

// Derived relative phases of a control-field set, wrapped into (-pi, pi].
PhasePair reduce_phases(const ControlFieldSet& set);

// Field interaction matrix [[Omega_A1, Omega_A2], [Omega_B1, Omega_B2]].
Eigen::Matrix2cd omega_matrix(const ControlFieldSet& set);

}  // namespace dtt

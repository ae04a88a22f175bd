#pragma once

// Steady-state optical Bloch equations of the double-tripod scheme:
// general 4x4 linear solve plus the closed-form coherence expressions
// and their special-case reductions.

#include <utility>

#include "dttorque/core_model.hpp"

namespace dtt {

// Optical (rho_a, rho_b) and ground-state (rho_1, rho_2) coherences.
struct CoherenceState {
    Complex rho_a;
    Complex rho_b;
    Complex rho_1;
    Complex rho_2;

    // Weak-probe sanity bound |rho| <= 10 * max probe / Gamma.
    bool within_weak_probe_bound(double max_probe, double gamma) const;
};

enum class SpecialCase {
    PhiPi,            // phi = pi, theta = 0, delta arbitrary
    PhiZero,          // phi = 0, theta = 0, delta arbitrary
    DeltaZeroPhiPi,   // delta = 0, phi = pi, theta = 0
    DeltaZeroPhiZero  // delta = 0, phi = 0, theta = 0
};

// Unique steady state of the four coupled linear equations. Assembled as a
// full 4x4 system, never inverting (Delta I + delta_hat), so Delta = +-delta
// is admissible. probe_a/probe_b are the effective (position-dependent)
// probe amplitudes.
CoherenceState solve_general(const ControlFieldSet& fields, double probe_a,
                             double probe_b, const DetuningConfig& det);

// Interaction kernel K = Omega_hat (Delta I + delta_hat)^-1 Omega_hat^dagger
// in its equal-amplitude closed form; Hermitian away from |Delta| = |delta|.
Eigen::Matrix2cd kernel(const ControlFieldSet& fields,
                        const DetuningConfig& det);

// Closed-form optical coherences (equal control amplitudes, away from poles).
std::pair<Complex, Complex> coherences_closed_form(const ControlFieldSet& fields,
                                                   double probe_a,
                                                   double probe_b,
                                                   const DetuningConfig& det);

// Printed special-case coherence matrices; preconditions on (phi, theta,
// delta) are checked to 1e-12.
std::pair<Complex, Complex> coherences_special(SpecialCase c,
                                               const ControlFieldSet& fields,
                                               double probe_a, double probe_b,
                                               const DetuningConfig& det);

// Ground-state coherences by back-substitution,
// [rho_1; rho_2] = -(Delta I + delta_hat)^-1 Omega_hat^dagger [rho_a; rho_b].
std::pair<Complex, Complex> ground_coherences(const ControlFieldSet& fields,
                                              const DetuningConfig& det,
                                              Complex rho_a, Complex rho_b);

// True when the closed-form expressions are safely evaluable at this point.
bool closed_form_applicable(const ControlFieldSet& fields,
                            const DetuningConfig& det);

}  // namespace dtt

#pragma once

// Bright/dark basis transformation and classification of the phase-induced
// effective level structure (coupled-Lambda, double-Lambda, decoupled).

#include <string>

#include "dttorque/core_model.hpp"

namespace dtt {

struct BrightDarkBasis {
    // Components over (|1>, |2>), unit norm, bright _|_ dark per subsystem.
    Eigen::Vector2cd bright_a;
    Eigen::Vector2cd dark_a;
    Eigen::Vector2cd bright_b;
    Eigen::Vector2cd dark_b;
    double omega_a;  // sqrt(|Omega_A1|^2 + |Omega_A2|^2)
    double omega_b;
};

struct CouplingCoeffs {
    double c_b;  // |Omega_A2|^2 - |Omega_A1|^2
    double c_d;  // -c_b
    double c_x;  // -(Omega_A1 Omega_A2 + c.c.) / (|Omega_A1|^2 + |Omega_A2|^2)
};

enum class Regime { CoupledLambda, DoubleLambda, DecoupledLambdas, Generic };

const char* regime_name(Regime r);

struct RegimeReport {
    Regime label;
    CouplingCoeffs coeffs;
    double bright_overlap;  // |<B_A|B_B>|
    double phi;
    double theta;
};

BrightDarkBasis bright_dark(const ControlFieldSet& fields);

CouplingCoeffs coupling_coeffs(const ControlFieldSet& fields);

// Requires equal control amplitudes; phase comparisons to 1e-9.
RegimeReport classify(const ControlFieldSet& fields,
                      const DetuningConfig& det);

using Matrix5cd = Eigen::Matrix<Complex, 5, 5>;

// Interaction Hamiltonian in the lab basis (|0>, |A>, |B>, |1>, |2>), with
// probe couplings evaluated at the given effective amplitudes.
Matrix5cd lab_hamiltonian(const ControlFieldSet& fields,
                          const DetuningConfig& det, double probe_a,
                          double probe_b);

// Same Hamiltonian rotated into (|0>, |A>, |B>, |B_A>, |D_A>); at phi = pi,
// theta = 0 the bright/dark pair is (|->, |+>) and the matrix reduces to the
// two-coupled-Lambda form with couplings sqrt(2) Omega.
Matrix5cd transformed_hamiltonian(const ControlFieldSet& fields,
                                  const DetuningConfig& det, double probe_a,
                                  double probe_b);

}  // namespace dtt

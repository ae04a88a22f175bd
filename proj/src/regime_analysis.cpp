#include "dttorque/regime_analysis.hpp"

#include <cmath>
#include <numbers>

namespace dtt {

namespace {
constexpr double kPi = std::numbers::pi;
}

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::CoupledLambda: return "CoupledLambda";
        case Regime::DoubleLambda: return "DoubleLambda";
        case Regime::DecoupledLambdas: return "DecoupledLambdas";
        case Regime::Generic: return "Generic";
    }
    return "Unknown";
}

BrightDarkBasis bright_dark(const ControlFieldSet& fields) {
    double oa = std::sqrt(std::norm(fields.omega_a1) +
                          std::norm(fields.omega_a2));
    double ob = std::sqrt(std::norm(fields.omega_b1) +
                          std::norm(fields.omega_b2));
    if (!(oa > 0.0) || !(ob > 0.0))
        throw DtError(ErrorCode::DegenerateBasis,
                      "bright_dark: zero effective coupling");
    BrightDarkBasis basis;
    basis.omega_a = oa;
    basis.omega_b = ob;
    basis.bright_a << std::conj(fields.omega_a1) / oa,
        std::conj(fields.omega_a2) / oa;
    basis.dark_a << fields.omega_a2 / oa, -fields.omega_a1 / oa;
    basis.bright_b << std::conj(fields.omega_b1) / ob,
        std::conj(fields.omega_b2) / ob;
    basis.dark_b << fields.omega_b2 / ob, -fields.omega_b1 / ob;
    return basis;
}

CouplingCoeffs coupling_coeffs(const ControlFieldSet& fields) {
    double n1 = std::norm(fields.omega_a1), n2 = std::norm(fields.omega_a2);
    if (n1 + n2 <= 0.0)
        throw DtError(ErrorCode::DegenerateBasis,
                      "coupling_coeffs: Omega_A1 and Omega_A2 both zero");
    double c_b = n2 - n1;
    double c_x = -2.0 * std::real(fields.omega_a1 * fields.omega_a2) /
                 (n1 + n2);
    return CouplingCoeffs{c_b, -c_b, c_x};
}

RegimeReport classify(const ControlFieldSet& fields,
                      const DetuningConfig& det) {
    if (!fields.equal_amplitudes(1e-9))
        throw precondition_error(
            "classify: defined only for equal control amplitudes");
    auto basis = bright_dark(fields);
    auto [phi, theta] = reduce_phases(fields);
    double overlap =
        std::abs(basis.bright_a.dot(basis.bright_b));  // |<B_A|B_B>|

    constexpr double tol = 1e-9;
    Regime label = Regime::Generic;
    if (std::abs(wrap_phase(phi - kPi)) < tol) {
        label = std::abs(det.delta2) < tol ? Regime::DecoupledLambdas
                                           : Regime::CoupledLambda;
    } else if (std::abs(phi) < tol) {
        label = Regime::DoubleLambda;
    }
    return RegimeReport{label, coupling_coeffs(fields), overlap, phi, theta};
}

Matrix5cd lab_hamiltonian(const ControlFieldSet& fields,
                          const DetuningConfig& det, double probe_a,
                          double probe_b) {
    // Basis order (|0>, |A>, |B>, |1>, |2>); the Delta |0><0| term is
    // dropped, matching the interaction-frame convention used throughout.
    Matrix5cd h = Matrix5cd::Zero();
    h(1, 0) = -probe_a;
    h(2, 0) = -probe_b;
    h(1, 3) = -fields.omega_a1;
    h(1, 4) = -fields.omega_a2;
    h(2, 3) = -fields.omega_b1;
    h(2, 4) = -fields.omega_b2;
    Matrix5cd full = h + h.adjoint();
    full(3, 3) = det.delta2;
    full(4, 4) = -det.delta2;
    return full;
}

Matrix5cd transformed_hamiltonian(const ControlFieldSet& fields,
                                  const DetuningConfig& det, double probe_a,
                                  double probe_b) {
    if (!fields.equal_amplitudes(1e-9))
        throw precondition_error(
            "transformed_hamiltonian: requires equal control amplitudes");
    auto basis = bright_dark(fields);
    Matrix5cd u = Matrix5cd::Identity();
    u.block<2, 1>(3, 3) = basis.bright_a;
    u.block<2, 1>(3, 4) = basis.dark_a;
    Matrix5cd lab = lab_hamiltonian(fields, det, probe_a, probe_b);
    return u.adjoint() * lab * u;
}

}  // namespace dtt

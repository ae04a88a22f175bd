#include "dttorque/bloch_steady.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace dtt {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

// Characteristic frequency-squared scale used by pole thresholds.
double char_scale(double omega, const DetuningConfig& det) {
    double s = std::max(omega * omega, det.gamma * det.gamma);
    s = std::max(s, det.delta * det.delta);
    s = std::max(s, det.delta2 * det.delta2);
    return s;
}

void require_phase(double actual, double expected, const char* what) {
    if (std::abs(wrap_phase(actual - expected)) > 1e-12) {
        std::ostringstream os;
        os << "coherences_special: constraint " << what
           << " violated (got " << actual << ")";
        throw precondition_error(os.str());
    }
}

}  // namespace

bool CoherenceState::within_weak_probe_bound(double max_probe,
                                             double gamma) const {
    double bound = 10.0 * max_probe / gamma;
    return std::abs(rho_a) <= bound && std::abs(rho_b) <= bound &&
           std::abs(rho_1) <= bound && std::abs(rho_2) <= bound;
}

CoherenceState solve_general(const ControlFieldSet& fields, double probe_a,
                             double probe_b, const DetuningConfig& det) {
    const double D = det.delta, d = det.delta2, G = det.gamma;

    // Unknowns ordered (rho_a, rho_b, rho_1, rho_2).
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    Eigen::Vector4cd b = Eigen::Vector4cd::Zero();
    m(0, 0) = kI * D - G / 2.0;
    m(0, 2) = kI * fields.omega_a1;
    m(0, 3) = kI * fields.omega_a2;
    b(0) = -kI * probe_a;
    m(1, 1) = kI * D - G / 2.0;
    m(1, 2) = kI * fields.omega_b1;
    m(1, 3) = kI * fields.omega_b2;
    b(1) = -kI * probe_b;
    m(2, 0) = kI * std::conj(fields.omega_a1);
    m(2, 1) = kI * std::conj(fields.omega_b1);
    m(2, 2) = kI * (D + d);
    m(3, 0) = kI * std::conj(fields.omega_a2);
    m(3, 1) = kI * std::conj(fields.omega_b2);
    m(3, 3) = kI * (D - d);

    double row_scale = 1.0;
    for (int i = 0; i < 4; ++i)
        row_scale *= m.row(i).cwiseAbs().maxCoeff();

    Eigen::PartialPivLU<Eigen::Matrix4cd> lu(m);
    if (std::abs(lu.determinant()) <= 1e-14 * row_scale) {
        std::ostringstream os;
        os << "solve_general: singular steady-state system at Delta=" << D
           << ", delta=" << d << ", Gamma=" << G;
        throw DtError(ErrorCode::SingularSystem, os.str());
    }
    Eigen::Vector4cd x = lu.solve(b);
    return CoherenceState{x(0), x(1), x(2), x(3)};
}

Eigen::Matrix2cd kernel(const ControlFieldSet& fields,
                        const DetuningConfig& det) {
    if (!fields.equal_amplitudes())
        throw precondition_error("kernel: requires equal control amplitudes");
    const double omega = fields.amplitude();
    const double D = det.delta, d = det.delta2;
    const double scale = char_scale(omega, det);
    if (std::abs(D * D - d * d) < 1e-12 * scale ||
        std::abs(D) < 1e-12 * std::sqrt(scale))
        throw pole_error(
            "kernel: pole at |Delta| = |delta| or Delta = 0; use "
            "solve_general");

    auto [phi, theta] = reduce_phases(fields);
    const double c = 2.0 * omega * omega * D / (D * D - d * d);
    const Complex off = std::exp(kI * (theta + phi / 2.0)) *
                        (std::cos(phi / 2.0) -
                         kI * (d / D) * std::sin(phi / 2.0));
    Eigen::Matrix2cd k;
    k << 1.0, off, std::conj(off), 1.0;
    return c * k;
}

std::pair<Complex, Complex> coherences_closed_form(
    const ControlFieldSet& fields, double probe_a, double probe_b,
    const DetuningConfig& det) {
    if (!fields.equal_amplitudes())
        throw precondition_error(
            "coherences_closed_form: requires equal control amplitudes");
    const double omega = fields.amplitude();
    const double D = det.delta, d = det.delta2, G = det.gamma;
    const double scale = char_scale(omega, det);
    if (std::abs(D) < 1e-12 * std::sqrt(scale))
        throw pole_error("coherences_closed_form: pole at Delta = 0");
    if (std::abs(D * D - d * d) < 1e-12 * scale)
        throw pole_error("coherences_closed_form: pole at |Delta| = |delta|");

    auto [phi, theta] = reduce_phases(fields);
    const double o2 = omega * omega;
    const Complex x = (D * D - d * d) * (2.0 * D + kI * G) / (4.0 * o2 * D);
    const double co = std::cos(phi / 2.0), si = std::sin(phi / 2.0);
    const Complex den = (1.0 - x) * (1.0 - x) - co * co -
                        (d * d / (D * D)) * si * si;
    const Complex one_minus = Complex(1.0) - x;
    if (std::abs(den) <
        1e-12 * std::max(1.0, std::abs(one_minus * one_minus)))
        throw pole_error("coherences_closed_form: vanishing denominator");

    const double pref_r = (D * D - d * d) / (2.0 * o2 * D * D);
    const Complex pref = pref_r / den;
    const Complex diag = D - (D * D - d * d) * (2.0 * D + kI * G) / (4.0 * o2);
    const Complex off_upper =
        -D * std::exp(kI * (theta + phi / 2.0)) * (co - kI * (d / D) * si);
    const Complex off_lower =
        -D * std::exp(-kI * (theta + phi / 2.0)) * (co + kI * (d / D) * si);

    Complex rho_a = pref * (diag * probe_a + off_upper * probe_b);
    Complex rho_b = pref * (off_lower * probe_a + diag * probe_b);
    return {rho_a, rho_b};
}

std::pair<Complex, Complex> coherences_special(SpecialCase c,
                                               const ControlFieldSet& fields,
                                               double probe_a, double probe_b,
                                               const DetuningConfig& det) {
    if (!fields.equal_amplitudes())
        throw precondition_error(
            "coherences_special: requires equal control amplitudes");
    const double omega = fields.amplitude();
    const double D = det.delta, d = det.delta2, G = det.gamma;
    const double o2 = omega * omega;
    const double scale = char_scale(omega, det);
    auto [phi, theta] = reduce_phases(fields);
    require_phase(theta, 0.0, "theta = 0");

    const bool wants_phi_pi =
        (c == SpecialCase::PhiPi || c == SpecialCase::DeltaZeroPhiPi);
    require_phase(phi, wants_phi_pi ? kPi : 0.0,
                  wants_phi_pi ? "phi = pi" : "phi = 0");
    if (c == SpecialCase::DeltaZeroPhiPi || c == SpecialCase::DeltaZeroPhiZero) {
        if (std::abs(d) > 1e-12)
            throw precondition_error(
                "coherences_special: constraint delta = 0 violated");
    }

    const Complex gd = 2.0 * D + kI * G;
    Complex pref, diag, off;
    switch (c) {
        case SpecialCase::PhiPi: {
            const Complex den =
                (4.0 * o2 - gd * (D + d)) * (4.0 * o2 - gd * (D - d));
            if (std::abs(den) < 1e-12 * scale * scale)
                throw pole_error("coherences_special: PhiPi denominator pole");
            pref = 8.0 * o2 / den;
            diag = D - (D * D - d * d) * gd / (4.0 * o2);
            off = -d;
            break;
        }
        case SpecialCase::PhiZero: {
            if (std::abs(D) < 1e-12 * std::sqrt(scale))
                throw pole_error("coherences_special: PhiZero pole at Delta = 0");
            const Complex den =
                D * gd * (2.0 - (D * D - d * d) * gd / (4.0 * o2 * D));
            if (std::abs(den) < 1e-12 * scale)
                throw pole_error("coherences_special: PhiZero denominator pole");
            pref = -2.0 / den;
            diag = D - (D * D - d * d) * gd / (4.0 * o2);
            off = -D;
            break;
        }
        case SpecialCase::DeltaZeroPhiPi: {
            const Complex bracket = 4.0 * o2 - D * gd;
            if (std::abs(bracket * bracket) < 1e-12 * scale * scale)
                throw pole_error(
                    "coherences_special: DeltaZeroPhiPi denominator pole");
            pref = 8.0 * o2 / (bracket * bracket);
            diag = D - D * D * gd / (4.0 * o2);
            off = 0.0;
            break;
        }
        case SpecialCase::DeltaZeroPhiZero: {
            if (std::abs(D) < 1e-12 * std::sqrt(scale))
                throw pole_error(
                    "coherences_special: DeltaZeroPhiZero pole at Delta = 0");
            const Complex den = D * gd * (2.0 - D * gd / (4.0 * o2));
            if (std::abs(den) < 1e-12 * scale)
                throw pole_error(
                    "coherences_special: DeltaZeroPhiZero denominator pole");
            pref = -2.0 / den;
            diag = D - D * D * gd / (4.0 * o2);
            off = -D;
            break;
        }
    }
    return {pref * (diag * probe_a + off * probe_b),
            pref * (off * probe_a + diag * probe_b)};
}

std::pair<Complex, Complex> ground_coherences(const ControlFieldSet& fields,
                                              const DetuningConfig& det,
                                              Complex rho_a, Complex rho_b) {
    const double D = det.delta, d = det.delta2;
    double scale = std::sqrt(char_scale(std::abs(fields.omega_a1), det));
    if (std::abs(D + d) < 1e-12 * scale || std::abs(D - d) < 1e-12 * scale)
        throw pole_error(
            "ground_coherences: pole at |Delta| = |delta|; use solve_general");
    Complex rho_1 = -(std::conj(fields.omega_a1) * rho_a +
                      std::conj(fields.omega_b1) * rho_b) /
                    (D + d);
    Complex rho_2 = -(std::conj(fields.omega_a2) * rho_a +
                      std::conj(fields.omega_b2) * rho_b) /
                    (D - d);
    return {rho_1, rho_2};
}

bool closed_form_applicable(const ControlFieldSet& fields,
                            const DetuningConfig& det) {
    if (!fields.equal_amplitudes(1e-9)) return false;
    const double omega = fields.amplitude();
    const double D = det.delta, d = det.delta2, G = det.gamma;
    const double scale = char_scale(omega, det);
    if (std::abs(D) < 1e-6 * std::sqrt(scale)) return false;
    if (std::abs(D * D - d * d) < 1e-6 * scale) return false;
    auto [phi, theta] = reduce_phases(fields);
    const Complex x =
        (D * D - d * d) * (2.0 * D + kI * G) / (4.0 * omega * omega * D);
    const double co = std::cos(phi / 2.0), si = std::sin(phi / 2.0);
    const Complex den =
        (1.0 - x) * (1.0 - x) - co * co - (d * d / (D * D)) * si * si;
    return std::abs(den) > 1e-6 * std::max(1.0, std::norm(1.0 - x));
}

}  // namespace dtt

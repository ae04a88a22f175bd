#include "dttorque/core_model.hpp"

#include <cmath>
#include <numbers>

namespace dtt {

namespace {
constexpr double kPi = std::numbers::pi;
}

double wrap_phase(double x) {
    double y = std::remainder(x, 2.0 * kPi);
    if (y <= -kPi) y += 2.0 * kPi;
    return y;
}

ControlFieldSet ControlFieldSet::from_phases(double omega, double phi_a1,
                                             double phi_b1, double phi_a2,
                                             double phi_b2) {
    if (!(omega > 0.0))
        throw domain_error("ControlFieldSet: amplitude must be positive");
    auto pol = [omega](double p) { return std::polar(omega, p); };
    return ControlFieldSet{pol(phi_a1), pol(phi_a2), pol(phi_b1), pol(phi_b2)};
}

ControlFieldSet ControlFieldSet::general(Complex a1, Complex a2, Complex b1,
                                         Complex b2) {
    return ControlFieldSet{a1, a2, b1, b2};
}

bool ControlFieldSet::equal_amplitudes(double rel_tol) const {
    double m[4] = {std::abs(omega_a1), std::abs(omega_a2), std::abs(omega_b1),
                   std::abs(omega_b2)};
    double lo = m[0], hi = m[0];
    for (double v : m) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return hi - lo <= rel_tol * std::max(hi, 1e-300);
}

double ControlFieldSet::amplitude() const {
    if (!equal_amplitudes())
        throw precondition_error(
            "ControlFieldSet::amplitude: amplitudes are not equal");
    return std::abs(omega_a1);
}

void ProbeConfig::validate() const {
    if (amp_a < 0.0 || amp_b < 0.0)
        throw domain_error("ProbeConfig: probe amplitudes must be >= 0");
    if (!(waist > 0.0)) throw domain_error("ProbeConfig: waist must be > 0");
}

bool ProbeConfig::weak_probe_ok(double control_amplitude) const {
    return std::max(amp_a, amp_b) <= 0.3 * control_amplitude;
}

void DetuningConfig::validate() const {
    if (!(gamma > 0.0)) throw domain_error("DetuningConfig: Gamma must be > 0");
}

double lg_profile(int l, double waist, double r) {
    if (!(waist > 0.0)) throw domain_error("lg_profile: waist must be > 0");
    if (r < 0.0) throw domain_error("lg_profile: radius must be >= 0");
    double u = r / waist;
    double radial = (l == 0) ? 1.0 : std::pow(u, std::abs(l));
    return radial * std::exp(-u * u);
}

PhasePair reduce_phases(const ControlFieldSet& set) {
    double theta = wrap_phase(std::arg(set.omega_a2) - std::arg(set.omega_b2));
    double phi = wrap_phase(std::arg(set.omega_a1) - std::arg(set.omega_b1) -
                            theta);
    return PhasePair{phi, theta};
}

Eigen::Matrix2cd omega_matrix(const ControlFieldSet& set) {
    Eigen::Matrix2cd m;
    m << set.omega_a1, set.omega_a2, set.omega_b1, set.omega_b2;
    return m;
}

}  // namespace dtt

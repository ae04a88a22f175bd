#include "dttorque/time_dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include <boost/numeric/odeint.hpp>

namespace dtt {

namespace {

constexpr Complex kI{0.0, 1.0};

using State = std::array<double, 8>;

State pack(const CoherenceState& c) {
    return {c.rho_a.real(), c.rho_a.imag(), c.rho_b.real(), c.rho_b.imag(),
            c.rho_1.real(), c.rho_1.imag(), c.rho_2.real(), c.rho_2.imag()};
}

CoherenceState unpack(const State& s) {
    return CoherenceState{{s[0], s[1]}, {s[2], s[3]}, {s[4], s[5]}, {s[6], s[7]}};
}

double metric(const CoherenceState& d, double gamma) {
    return std::max({std::abs(d.rho_a), std::abs(d.rho_b), std::abs(d.rho_1),
                     std::abs(d.rho_2)}) /
           gamma;
}

}  // namespace

CoherenceState rhs(const CoherenceState& state, const ControlFieldSet& fields,
                   double probe_a, double probe_b, const DetuningConfig& det) {
    const double D = det.delta, d = det.delta2, G = det.gamma;
    const Complex damp = kI * D - G / 2.0;
    CoherenceState out;
    out.rho_a = kI * (fields.omega_a1 * state.rho_1 +
                      fields.omega_a2 * state.rho_2) +
                damp * state.rho_a + kI * probe_a;
    out.rho_b = kI * (fields.omega_b1 * state.rho_1 +
                      fields.omega_b2 * state.rho_2) +
                damp * state.rho_b + kI * probe_b;
    out.rho_1 = kI * (std::conj(fields.omega_a1) * state.rho_a +
                      std::conj(fields.omega_b1) * state.rho_b) +
                kI * (D + d) * state.rho_1;
    out.rho_2 = kI * (std::conj(fields.omega_a2) * state.rho_a +
                      std::conj(fields.omega_b2) * state.rho_b) +
                kI * (D - d) * state.rho_2;
    return out;
}

BlochTrajectory integrate_to_steady(const ControlFieldSet& fields,
                                    double probe_a, double probe_b,
                                    const DetuningConfig& det, double tol,
                                    double t_max) {
    if (!(tol > 0.0)) throw domain_error("integrate_to_steady: tol must be > 0");
    if (!(t_max > 0.0))
        throw domain_error("integrate_to_steady: t_max must be > 0");
    det.validate();

    namespace odeint = boost::numeric::odeint;
    auto system = [&](const State& s, State& dsdt, double /*t*/) {
        dsdt = pack(rhs(unpack(s), fields, probe_a, probe_b, det));
    };

    auto stepper = odeint::make_controlled<
        odeint::runge_kutta_cash_karp54<State>>(1e-14, 1e-12);

    BlochTrajectory traj;
    State s = pack(CoherenceState{});  // atom starts in |0>, zero coherences
    double t = 0.0, dt = 0.05 / det.gamma;
    // without a cap the controlled stepper grows dt without bound once the
    // transient has died, and the per-step error then dominates the
    // convergence metric
    const double dt_cap = 10.0 / det.gamma;
    traj.times.push_back(t);
    traj.states.push_back(unpack(s));
    traj.final_metric = metric(rhs(unpack(s), fields, probe_a, probe_b, det),
                               det.gamma);
    if (traj.final_metric < tol) {
        traj.converged = true;
        return traj;
    }

    while (t < t_max) {
        auto res = stepper.try_step(system, s, t, dt);
        if (res == odeint::fail) continue;  // retry with reduced dt
        if (dt > dt_cap) dt = dt_cap;
        CoherenceState c = unpack(s);
        traj.times.push_back(t);
        traj.states.push_back(c);
        traj.final_metric = metric(rhs(c, fields, probe_a, probe_b, det),
                                   det.gamma);
        if (traj.final_metric < tol) {
            traj.converged = true;
            return traj;
        }
    }

    std::ostringstream os;
    os << "integrate_to_steady: no convergence by t_max = " << t_max
       << " (metric " << traj.final_metric << ", tol " << tol << ")";
    throw TimeoutError(os.str(), traj.states.back(), t);
}

}  // namespace dtt

#pragma once

// Time-domain integration of the optical Bloch equations, used as an
// independent oracle for the steady-state algebra.

#include <vector>

#include "dttorque/bloch_steady.hpp"

namespace dtt {

struct BlochTrajectory {
    std::vector<double> times;               // units 1/Gamma, strictly increasing
    std::vector<CoherenceState> states;
    double final_metric = 0.0;               // max |drho/dt| / Gamma at the end
    bool converged = false;
};

// Thrown when the convergence metric fails to drop below tol by t_max;
// carries the last reached state.
class TimeoutError : public DtError {
public:
    TimeoutError(const std::string& what, CoherenceState last, double t)
        : DtError(ErrorCode::Timeout, what), last_state(last), t_reached(t) {}
    CoherenceState last_state;
    double t_reached;
};

// Right-hand side of the optical Bloch equations.
CoherenceState rhs(const CoherenceState& state, const ControlFieldSet& fields,
                   double probe_a, double probe_b, const DetuningConfig& det);

// Adaptive embedded Runge-Kutta integration from zero coherences until
// max |drho/dt| / Gamma < tol.
BlochTrajectory integrate_to_steady(const ControlFieldSet& fields,
                                    double probe_a, double probe_b,
                                    const DetuningConfig& det,
                                    double tol = 1e-8, double t_max = 1e3);

}  // namespace dtt

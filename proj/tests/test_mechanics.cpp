#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "dttorque/mechanics.hpp"

using namespace dtt;

namespace {
constexpr double kPi = std::numbers::pi;

ControlFieldSet fig2a_fields() {
    return ControlFieldSet::from_phases(1.0, kPi, 0, 0, 0);
}

ProbeConfig default_probes() {
    ProbeConfig p;
    p.amp_a = 0.1;
    p.amp_b = 0.1;
    p.l = 1;
    p.k = 1.0;
    p.waist = 1.0;
    return p;
}
}  // namespace

TEST_CASE("phase_gradients printed values") {
    ProbeConfig p = default_probes();
    p.l = 2;
    auto [ga, gb] = phase_gradients(p, SpatialPoint{0.5, 0.0, 0.0});
    CHECK(ga.phi == doctest::Approx(-4.0).epsilon(1e-12));
    CHECK(gb.phi == doctest::Approx(-4.0).epsilon(1e-12));
    CHECK(ga.z == doctest::Approx(1.0));
    CHECK(gb.z == doctest::Approx(-1.0));
    CHECK(ga.r == 0.0);
    CHECK(gb.r == 0.0);

    p.l = 0;
    auto [g0a, g0b] = phase_gradients(p, SpatialPoint{0.5, 0.0, 0.0});
    CHECK(g0a.phi == 0.0);
    CHECK(g0b.phi == 0.0);

    p.l = 3;
    auto [gfar, _] = phase_gradients(p, SpatialPoint{1e9, 0.0, 0.0});
    CHECK(std::abs(gfar.phi) < 1e-8);

    CHECK_THROWS_AS(phase_gradients(p, SpatialPoint{0.0, 0.0, 0.0}), DtError);
}

TEST_CASE("force vanishes at the EIT point") {
    DetuningConfig det{1.0, 1.0};  // Delta = delta, phi = pi
    ForceSample f =
        force(fig2a_fields(), default_probes(), det, SpatialPoint{0.8, 0.3, 0});
    CHECK(std::abs(f.f_phi) < 1e-13);
    CHECK(std::abs(f.f_z) < 1e-13);
    CHECK(f.f_r == 0.0);
}

TEST_CASE("force: l = 0 has no azimuthal component") {
    ProbeConfig p = default_probes();
    p.l = 0;
    DetuningConfig det{0.4, 1.0};
    ForceSample f = force(fig2a_fields(), p, det, SpatialPoint{0.8, 0.0, 0});
    CHECK(f.f_phi == 0.0);
}

TEST_CASE("force: symmetric point has pure azimuthal force") {
    // equal probes and Im rho_A = Im rho_B by symmetry of the phi=pi matrix
    DetuningConfig det{0.0, 1.0};
    ForceSample f =
        force(fig2a_fields(), default_probes(), det, SpatialPoint{0.7, 0, 0});
    CHECK(std::abs(f.f_z) < 1e-14);
    CHECK(f.f_phi != 0.0);
}

TEST_CASE("torque spot value at the ring radius") {
    DetuningConfig det{0.0, 1.0};
    double r = 1.0 / std::sqrt(2.0);
    double g = lg_profile(1, 1.0, r);
    double tz = torque(fig2a_fields(), default_probes(), det,
                       SpatialPoint{r, 0, 0});
    double tau = torque_function(fig2a_fields(), default_probes(), det);
    CHECK(tau == doctest::Approx(0.04 / 17.0).epsilon(1e-12));
    CHECK(tz == doctest::Approx(-2.0 * g * g * tau).epsilon(1e-12));
    CHECK(torque(fig2a_fields(), default_probes(), det,
                 SpatialPoint{0.0, 0, 0}) == 0.0);
}

TEST_CASE("torque sign flips with l, tau unchanged") {
    DetuningConfig det{0.3, 1.0};
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> ur(0.2, 2.0);
    for (int i = 0; i < 100; ++i) {
        ProbeConfig p = default_probes();
        p.l = 1 + static_cast<int>(i % 3);
        double r = ur(rng);
        double tp = torque(fig2a_fields(), p, det, SpatialPoint{r, 0, 0});
        p.l = -p.l;
        double tm = torque(fig2a_fields(), p, det, SpatialPoint{r, 0, 0});
        CHECK(tp == doctest::Approx(-tm).epsilon(1e-12));
    }

    ProbeConfig p0 = default_probes();
    p0.l = 0;
    CHECK(torque(fig2a_fields(), p0, det, SpatialPoint{0.9, 0, 0}) == 0.0);
}

TEST_CASE("torque function: zeros at EIT conditions") {
    // phi = pi, equal probes, Delta = delta
    CHECK(std::abs(torque_function(fig2a_fields(), default_probes(),
                                   DetuningConfig{2.0, 2.0})) < 1e-14);
    // phi = 0, equal probes, Delta = +-delta
    auto fz = ControlFieldSet::from_phases(1.0, 0, 0, 0, 0);
    CHECK(std::abs(torque_function(fz, default_probes(),
                                   DetuningConfig{2.0, 2.0})) < 1e-14);
    CHECK(std::abs(torque_function(fz, default_probes(),
                                   DetuningConfig{-2.0, 2.0})) < 1e-14);
}

TEST_CASE("torque function scales quadratically with joint probe scaling") {
    DetuningConfig det{0.45, 1.2};
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> us(0.1, 1.0);
    for (int i = 0; i < 100; ++i) {
        double s = us(rng);
        ProbeConfig p = default_probes();
        double base = torque_function(fig2a_fields(), p, det);
        p.amp_a *= s;
        p.amp_b *= s;
        double scaled = torque_function(fig2a_fields(), p, det);
        CHECK(scaled == doctest::Approx(s * s * base).epsilon(1e-10));
    }
}

TEST_CASE("tau recovered from full-profile coherences is r-independent") {
    DetuningConfig det{0.45, 1.2};
    ProbeConfig p = default_probes();
    auto tau_at = [&](double r) {
        double g = lg_profile(p.l, p.waist, r);
        CoherenceState c =
            solve_general(fig2a_fields(), p.amp_a * g, p.amp_b * g, det);
        return (p.amp_a * g * c.rho_a.imag() + p.amp_b * g * c.rho_b.imag()) /
               g;
    };
    // linear response: dividing out one factor of G leaves tau * G(r), so
    // strip both probe factors instead
    auto tau_norm = [&](double r) {
        double g = lg_profile(p.l, p.waist, r);
        return tau_at(r) / g;
    };
    double t1 = tau_norm(0.5), t2 = tau_norm(1.5);
    CHECK(std::abs(t1 - t2) < 1e-10 * std::abs(t1));
    CHECK(t1 == doctest::Approx(torque_function(fig2a_fields(), p, det))
                    .epsilon(1e-10));
}

TEST_CASE("rotate_ensemble: zero force leaves velocities unchanged") {
    // EIT point: force identically zero
    DetuningConfig det{1.0, 1.0};
    std::vector<Atom> atoms = {{1.0, 0.0, 0.0, 0.1, 1.0},
                               {0.0, 1.2, -0.05, 0.0, 2.0}};
    auto traj = rotate_ensemble(fig2a_fields(), default_probes(), det, atoms,
                                0.01, 50);
    const auto& last = traj.frames.back();
    for (size_t i = 0; i < atoms.size(); ++i) {
        CHECK(last[i].vx == doctest::Approx(atoms[i].vx).epsilon(1e-10));
        CHECK(last[i].vy == doctest::Approx(atoms[i].vy).epsilon(1e-10));
    }
    // kinetic energy conserved under zero force
    double e0 = 0, e1 = 0;
    for (size_t i = 0; i < atoms.size(); ++i) {
        e0 += 0.5 * atoms[i].mass *
              (atoms[i].vx * atoms[i].vx + atoms[i].vy * atoms[i].vy);
        e1 += 0.5 * last[i].mass *
              (last[i].vx * last[i].vx + last[i].vy * last[i].vy);
    }
    CHECK(e1 == doctest::Approx(e0).epsilon(1e-12));
}

TEST_CASE("rotate_ensemble: positive tau with l > 0 decelerates rotation") {
    // Delta = 0 on the fig2a preset: tau > 0, so F_phi < 0 everywhere
    DetuningConfig det{0.0, 1.0};
    std::vector<Atom> atoms;
    for (int i = 0; i < 4; ++i) {
        double phi = i * kPi / 2.0;
        atoms.push_back({0.8 * std::cos(phi), 0.8 * std::sin(phi), 0, 0, 1.0});
    }
    auto traj = rotate_ensemble(fig2a_fields(), default_probes(), det, atoms,
                                0.05, 100);
    for (double v : traj.azimuthal_velocity) CHECK(v < 0.0);
    for (double a : traj.accumulated_angle) CHECK(a < 0.0);
}

TEST_CASE("rotate_ensemble: single first step matches F dt / m") {
    DetuningConfig det{0.0, 1.0};
    Atom a{0.9, 0.0, 0.0, 0.0, 2.5};
    double dt = 1e-4;
    ForceSample f = force(fig2a_fields(), default_probes(), det,
                          SpatialPoint{0.9, 0.0, 0.0});
    auto traj = rotate_ensemble(fig2a_fields(), default_probes(), det, {a}, dt,
                                1);
    const Atom& after = traj.frames.back()[0];
    // at azimuth 0, phi_hat = +y
    CHECK(after.vy ==
          doctest::Approx(f.f_phi / a.mass * dt).epsilon(1e-6));
    CHECK(std::abs(after.vx) < 1e-8);
}

TEST_CASE("rotate_ensemble validation and clamping") {
    DetuningConfig det{0.0, 1.0};
    CHECK_THROWS_AS(rotate_ensemble(fig2a_fields(), default_probes(), det,
                                    {{1.0, 0, 0, 0, 1.0}}, 0.0, 1),
                    DtError);
    CHECK_THROWS_AS(rotate_ensemble(fig2a_fields(), default_probes(), det,
                                    {{0.0, 0.0, 0, 0, 1.0}}, 0.01, 1),
                    DtError);
    // an atom drifting into the vortex core triggers the clamp flag
    auto traj = rotate_ensemble(fig2a_fields(), default_probes(), det,
                                {{1e-5, 0.0, -1e-4, 0.0, 1.0}}, 0.1, 2);
    CHECK(traj.radius_clamped);
}

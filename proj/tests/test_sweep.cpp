#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <doctest.h>

#include <nlohmann/json.hpp>

#include "dttorque/sweep.hpp"

using namespace dtt;

namespace {
constexpr double kPi = std::numbers::pi;

int count_local_maxima(const TorqueSpectrum& s) {
    int n = 0;
    for (size_t i = 1; i + 1 < s.rows.size(); ++i) {
        if (s.rows[i].tau > s.rows[i - 1].tau &&
            s.rows[i].tau > s.rows[i + 1].tau)
            ++n;
    }
    return n;
}

std::filesystem::path temp_file(const char* stem) {
    return std::filesystem::temp_directory_path() / stem;
}
}  // namespace

TEST_CASE("preset catalogue") {
    auto ids = preset_ids();
    CHECK(ids.size() == 20);
    for (const auto& id : ids) {
        SweepRequest req = preset(id);
        CHECK(req.axis == Axis::Delta);
        CHECK(req.count == 1201);
        CHECK(req.fields.equal_amplitudes());
        req.validate();
    }
    CHECK_THROWS_AS(preset("nope"), DtError);
}

TEST_CASE("opposed-phase presets: two peaks, nonnegative, EIT dips") {
    for (const char* id : {"fig2a", "fig2b", "fig2c", "fig2d", "fig2e",
                           "fig2f"}) {
        SweepRequest req = preset(id);
        TorqueSpectrum s = run_spectrum(req);
        REQUIRE(s.failures == 0);
        CHECK(count_local_maxima(s) == 2);
        for (const auto& r : s.rows) CHECK(r.tau >= -1e-15);
        // grid hits Delta = delta exactly; tau vanishes there
        for (const auto& r : s.rows) {
            if (std::abs(r.axis_value - req.det.delta2) < 1e-12)
                CHECK(std::abs(r.tau) < 1e-14);
        }
    }
}

TEST_CASE("aligned-phase presets: three peaks, dips at both +-delta") {
    for (const char* id : {"fig4a", "fig4b", "fig4c", "fig4d"}) {
        SweepRequest req = preset(id);
        TorqueSpectrum s = run_spectrum(req);
        REQUIRE(s.failures == 0);
        CHECK(count_local_maxima(s) == 3);
        for (const auto& r : s.rows) {
            if (std::abs(std::abs(r.axis_value) - req.det.delta2) < 1e-12)
                CHECK(std::abs(r.tau) < 1e-14);
        }
    }
}

TEST_CASE("spectrum mirrors under joint sign flip of both detunings") {
    // tau(Delta; delta) = tau(-Delta; -delta): pair the preset with its
    // negated-delta partner and compare against the reversed axis
    TorqueSpectrum a = run_spectrum(preset("fig2a"));  // delta = +1
    TorqueSpectrum d = run_spectrum(preset("fig2d"));  // delta = -1
    size_t n = a.rows.size();
    REQUIRE(d.rows.size() == n);
    for (size_t i = 0; i < n; ++i) {
        const auto& lo = a.rows[i];
        const auto& hi = d.rows[n - 1 - i];
        CHECK(lo.axis_value == doctest::Approx(-hi.axis_value).epsilon(1e-12));
        CHECK(std::abs(lo.tau - hi.tau) < 1e-12);
    }
}

TEST_CASE("closed-form, general and auto solvers agree point by point") {
    SweepRequest req = preset("fig3b");
    req.count = 401;
    for (Solver s : {Solver::ClosedForm, Solver::Auto}) {
        SweepRequest r1 = req;
        r1.solver = s;
        SweepRequest r2 = req;
        r2.solver = Solver::General;
        TorqueSpectrum a = run_spectrum(r1);
        TorqueSpectrum b = run_spectrum(r2);
        for (size_t i = 0; i < a.rows.size(); ++i) {
            if (!a.rows[i].ok || !b.rows[i].ok) continue;
            CHECK(std::abs(a.rows[i].tau - b.rows[i].tau) < 1e-10);
            CHECK(std::abs(a.rows[i].im_rho_a - b.rows[i].im_rho_a) < 1e-10);
        }
    }
}

TEST_CASE("auto solver leaves no gaps where the closed form has poles") {
    // even count so the grid does not hit Delta = +-delta exactly; the
    // closed-form prefactor still degrades near them but auto falls back
    SweepRequest req = preset("fig2a");
    req.solver = Solver::Auto;
    TorqueSpectrum s = run_spectrum(req);
    CHECK(s.failures == 0);
}

TEST_CASE("phase-axis sweep reproduces fixed-phase evaluations") {
    SweepRequest req;
    req.axis = Axis::Phi;
    req.start = -3.0;
    req.stop = 3.0;
    req.count = 61;
    req.det = DetuningConfig{0.4, 1.0};
    TorqueSpectrum s = run_spectrum(req);
    REQUIRE(s.failures == 0);
    for (const auto& r : s.rows) {
        auto f = ControlFieldSet::from_phases(1.0, r.axis_value, 0, 0, 0);
        ProbeConfig p;
        CoherenceState c = solve_general(f, p.amp_a, p.amp_b, req.det);
        double tau = p.amp_a * c.rho_a.imag() + p.amp_b * c.rho_b.imag();
        CHECK(std::abs(r.tau - tau) < 1e-12);
    }
}

TEST_CASE("theta-axis sweep changes the spectrum away from phi = pi") {
    SweepRequest req;
    req.axis = Axis::Theta;
    req.start = 0.0;
    req.stop = kPi;
    req.count = 21;
    req.fields = ControlFieldSet::from_phases(1.0, kPi / 2, 0, 0, 0);
    req.det = DetuningConfig{0.5, 1.0};
    TorqueSpectrum s = run_spectrum(req);
    REQUIRE(s.failures == 0);
    double lo = s.rows.front().tau, hi = lo;
    for (const auto& r : s.rows) {
        lo = std::min(lo, r.tau);
        hi = std::max(hi, r.tau);
    }
    CHECK(hi - lo > 1e-4);
}

TEST_CASE("request validation") {
    SweepRequest req;
    req.count = 1;
    CHECK_THROWS_AS(run_spectrum(req), DtError);
    req.count = 10;
    req.start = 2.0;
    req.stop = -2.0;
    CHECK_THROWS_AS(run_spectrum(req), DtError);
    SweepRequest bad;
    bad.axis = Axis::Phi;
    bad.fields = ControlFieldSet::general(1.0, 2.0, 1.0, 1.0);
    CHECK_THROWS_AS(run_spectrum(bad), DtError);
}

TEST_CASE("poles under the pinned solver become NaN rows, not aborts") {
    SweepRequest req = preset("fig2a");
    req.solver = Solver::ClosedForm;
    req.start = -2.0;
    req.stop = 2.0;
    req.count = 5;  // grid hits the poles Delta = 0 and Delta = +-1 = +-delta
    TorqueSpectrum s = run_spectrum(req);
    CHECK(s.failures == 3);
    for (const auto& r : s.rows) {
        bool pole = std::abs(std::abs(r.axis_value) - 1.0) < 1e-12 ||
                    std::abs(r.axis_value) < 1e-12;
        if (pole) {
            CHECK_FALSE(r.ok);
            CHECK(std::isnan(r.tau));
        } else {
            CHECK(r.ok);
        }
    }
}

TEST_CASE("csv serialization round-trips") {
    SweepRequest req = preset("fig2a");
    req.count = 11;
    TorqueSpectrum s = run_spectrum(req);
    std::ostringstream os;
    write_spectrum_csv(s, os);
    std::istringstream is(os.str());
    std::string line;
    REQUIRE(std::getline(is, line));
    CHECK(line == "delta,tau,im_rho_a,im_rho_b,re_rho_a,re_rho_b");
    int n = 0;
    while (std::getline(is, line)) {
        double v[6];
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf", &v[0],
                            &v[1], &v[2], &v[3], &v[4], &v[5]) == 6);
        CHECK(v[0] == s.rows[n].axis_value);
        CHECK(v[1] == s.rows[n].tau);
        CHECK(v[2] == s.rows[n].im_rho_a);
        ++n;
    }
    CHECK(n == req.count);
}

TEST_CASE("json serialization carries parameters and rows") {
    SweepRequest req = preset("fig2a");
    req.count = 7;
    req.format = OutputFormat::Json;
    TorqueSpectrum s = run_spectrum(req);
    std::ostringstream os;
    write_spectrum_json(s, os);
    auto doc = nlohmann::json::parse(os.str());
    CHECK(doc["params"]["axis"] == "delta");
    CHECK(doc["params"]["count"] == 7);
    CHECK(doc["params"]["detuning"]["delta2"] == 1.0);
    CHECK(std::abs(doc["params"]["phi"].get<double>() - kPi) < 1e-12);
    CHECK(std::abs(doc["params"]["theta"].get<double>()) < 1e-12);
    REQUIRE(doc["rows"].size() == 7);
    CHECK(doc["rows"][0][0].get<double>() == s.rows[0].axis_value);
    CHECK(doc["rows"][3][1].get<double>() == s.rows[3].tau);
}

TEST_CASE("file writers create readable output") {
    auto path = temp_file("dtt_sweep_test.csv");
    SweepRequest req = preset("fig2a");
    req.count = 5;
    TorqueSpectrum s = run_spectrum(req);
    write_spectrum_file(s, path.string());
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "delta,tau,im_rho_a,im_rho_b,re_rho_a,re_rho_b");
    std::filesystem::remove(path);

    CHECK_THROWS_AS(write_spectrum_file(s, "/nonexistent_dir/out.csv"),
                    DtError);
}

TEST_CASE("spatial map output") {
    MapRequest req;
    req.fields = ControlFieldSet::from_phases(1.0, kPi, 0, 0, 0);
    req.det = DetuningConfig{0.0, 1.0};
    req.r_count = 4;
    req.azimuth_count = 3;
    std::ostringstream os;
    run_map(req, os);
    std::istringstream is(os.str());
    std::string line;
    REQUIRE(std::getline(is, line));
    CHECK(line == "r,azimuth,F_phi,F_z,T_z");
    int n = 0;
    while (std::getline(is, line)) ++n;
    CHECK(n == 12);

    MapRequest bad;
    bad.r_start = 0.0;
    std::ostringstream sink;
    CHECK_THROWS_AS(run_map(bad, sink), DtError);
}

TEST_CASE("evolve report matches the algebraic solver") {
    auto f = ControlFieldSet::from_phases(1.0, kPi, 0, 0, 0);
    ProbeConfig p;
    DetuningConfig det{0.0, 1.0};
    auto path = temp_file("dtt_evolve_test.csv");
    EvolveReport rep = run_evolve(f, p, det, 1e-9, 1e4, path.string());
    CHECK(rep.converged);
    CHECK(rep.deviation < 1e-7);
    CHECK(rep.final_state.rho_a.imag() ==
          doctest::Approx(0.2 / 17.0).epsilon(1e-6));
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header ==
          "t,re_rho_a,im_rho_a,re_rho_b,im_rho_b,re_rho_1,im_rho_1,re_rho_2,"
          "im_rho_2");
    std::filesystem::remove(path);
}

TEST_CASE("format_double survives a parse round trip") {
    for (double v : {0.04 / 17.0, -1.0 / 3.0, 1e-300, 6.0, 0.0}) {
        CHECK(std::stod(format_double(v)) == v);
    }
}

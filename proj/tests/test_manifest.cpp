// test_manifest.cpp
#include "doctest.h"

#include "core/manifest.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

using namespace qramp;

TEST_SUITE("manifest") {

    TEST_CASE("empty text resolves to the documented defaults") {
        RunManifest m = parse_manifest_text("");
        CHECK(m.command == Command::Validate);
        CHECK(m.model.variant == Variant::Lipkin);
        CHECK(m.model.N == 6);
        CHECK(m.model.J == doctest::Approx(3.3));
        CHECK(m.model.B0 == 7.0);
        CHECK(m.model.gamma == 0.0);
        CHECK(m.model.ferromagnetic);
        CHECK(m.protocol == "faquad");
        CHECK(m.K == 1);
        CHECK(m.level == 0);
        CHECK(m.t_f_ms == 4.8);
        CHECK(m.integrator.dt == 0.0);
        CHECK(m.scan.n_grid == 2001);
        CHECK(m.scan.K == 6);
        CHECK(m.peak_mode == "auto");
        CHECK(!m.refine);
        CHECK(m.out_dir == ".");
        CHECK(m.prefix == "run");
        CHECK(m.stride == 0);

        auto tf = m.tf_grid();
        REQUIRE(tf.size() == 70);
        CHECK(tf.front() == doctest::Approx(0.2).epsilon(1e-12));
        CHECK(tf.back() == doctest::Approx(14.0).epsilon(1e-12));

        auto om = m.omega_grid();
        REQUIRE(om.size() == 23);
        CHECK(om.front() == 0.0);
        CHECK(om.back() == doctest::Approx(0.55).epsilon(1e-12));
        CHECK(om[1] - om[0] == doctest::Approx(0.025).epsilon(1e-12));

        REQUIRE(m.gamma_values.size() == 6);
        CHECK(m.gamma_values[3] == 120.0);
        REQUIRE(m.sizes.size() == 4);
        CHECK(m.sizes.back() == 10);
    }

    TEST_CASE("lipkin coupling follows the size unless given explicitly") {
        CHECK(parse_manifest_text("model.N = 8").model.J == doctest::Approx(4.4));
        RunManifest m = parse_manifest_text("model.N = 8\nmodel.J_kHz_over_2pi = 1.25");
        CHECK(m.model.J == 1.25);
    }

    TEST_CASE("ising widens the decoupling sweep grid") {
        RunManifest m = parse_manifest_text("model.variant = ising");
        CHECK(m.omega_max == 0.75);
        CHECK(m.omega_points == 31);
        RunManifest e = parse_manifest_text(
            "model.variant = ising\nsweep.omega_max_kHz_over_2pi = 0.6\nsweep.omega_points = 5");
        CHECK(e.omega_max == 0.6);
        CHECK(e.omega_points == 5);
    }

    TEST_CASE("dicke fills detuning and coupling to match the lipkin point") {
        RunManifest m = parse_manifest_text("model.variant = dicke");
        CHECK(m.model.delta == -4.0);
        CHECK(m.model.g0 == doctest::Approx(std::sqrt(3.3 * 4.0)).epsilon(1e-12));
        RunManifest e = parse_manifest_text(
            "model.variant = dicke\nmodel.delta_kHz_over_2pi = -8");
        CHECK(e.model.g0 == doctest::Approx(std::sqrt(3.3 * 8.0)).epsilon(1e-12));
        RunManifest g = parse_manifest_text(
            "model.variant = dicke\nmodel.g0_kHz_over_2pi = 2.5");
        CHECK(g.model.g0 == 2.5);
    }

    TEST_CASE("parse of serialize is a fixed point") {
        for (const char* text :
             {"", "model.variant = ising\nmodel.alpha = 1.2\ncommand = sweep-dd",
              "model.variant = dicke\nmodel.N = 4\nprotocol.kind = la",
              "sweep.gamma_values_per_s = 0, 50, 100\nsweep.sizes = 2,4\noutput.stride = 25"}) {
            RunManifest m = parse_manifest_text(text);
            std::string echo = m.serialize();
            RunManifest again = parse_manifest_text(echo);
            CAPTURE(text);
            CHECK(again.serialize() == echo);
            CHECK(again.hash() == m.hash());
        }
    }

    TEST_CASE("hash separates distinct runs") {
        RunManifest a = parse_manifest_text("");
        CHECK(parse_manifest_text("model.N = 8").hash() != a.hash());
        CHECK(parse_manifest_text("protocol.kind = la").hash() != a.hash());
        CHECK(parse_manifest_text("model.Gamma_per_s = 120").hash() != a.hash());
    }

    TEST_CASE("unknown keys are rejected by name") {
        CHECK_THROWS_WITH_AS(parse_manifest_text("model.bogus = 1"),
                             doctest::Contains("model.bogus"), std::invalid_argument);
        CHECK_THROWS_WITH_AS(parse_manifest_text("output.sride = 2"),
                             doctest::Contains("output.sride"), std::invalid_argument);
    }

    TEST_CASE("duplicate file keys are rejected, overrides win") {
        CHECK_THROWS_WITH_AS(parse_manifest_text("model.N = 4\nmodel.N = 6"),
                             doctest::Contains("duplicate"), std::invalid_argument);
        RunManifest m = parse_manifest_text("model.N = 4", {"model.N=8"});
        CHECK(m.model.N == 8);
        RunManifest two = parse_manifest_text("", {"model.N=8", "model.N=10"});
        CHECK(two.model.N == 10);
    }

    TEST_CASE("dephasing axis is fixed by the variant") {
        CHECK(parse_manifest_text("model.dephasing_axis = z").model.dephasing_axis() ==
              DephasingAxis::Z);
        CHECK_THROWS_WITH_AS(parse_manifest_text("model.dephasing_axis = x"),
                             doctest::Contains("fixed by the variant"), std::invalid_argument);
        CHECK(parse_manifest_text("model.variant = ising\nmodel.dephasing_axis = x")
                  .model.dephasing_axis() == DephasingAxis::X);
        CHECK_THROWS_AS(
            parse_manifest_text("model.variant = ising\nmodel.dephasing_axis = z"),
            std::invalid_argument);
        CHECK_THROWS_AS(parse_manifest_text("model.dephasing_axis = y"), std::invalid_argument);
    }

    TEST_CASE("malformed values and invariants throw") {
        CHECK_THROWS_AS(parse_manifest_text("command = reticulate"), std::invalid_argument);
        CHECK_THROWS_AS(parse_manifest_text("model.variant = xy"), std::invalid_argument);
        CHECK_THROWS_AS(parse_manifest_text("model.B0_kHz_over_2pi = seven"),
                        std::invalid_argument);
        CHECK_THROWS_AS(parse_manifest_text("model.N = 4.5"), std::invalid_argument);
        CHECK_THROWS_AS(parse_manifest_text("sweep.refine = maybe"), std::invalid_argument);
        CHECK_THROWS_AS(parse_manifest_text("no equals sign"), std::invalid_argument);
        CHECK_THROWS_AS(parse_manifest_text("= 3"), std::invalid_argument);

        CHECK_THROWS_AS(parse_manifest_text("model.N = 0"), std::invalid_argument);
        CHECK_THROWS_AS(parse_manifest_text("model.Gamma_per_s = -1"), std::invalid_argument);
        CHECK_THROWS_AS(parse_manifest_text("numerics.dt_ms = -0.001"), std::invalid_argument);
        CHECK_THROWS_AS(parse_manifest_text("numerics.n_grid = 2"), std::invalid_argument);
        CHECK_THROWS_AS(parse_manifest_text("protocol.kind = warp"), std::invalid_argument);
        CHECK_THROWS_AS(parse_manifest_text("protocol.t_f_ms = 0"), std::invalid_argument);
        CHECK_THROWS_AS(parse_manifest_text("protocol.K = 0"), std::invalid_argument);
        CHECK_THROWS_AS(parse_manifest_text("sweep.tf_step_ms = 0"), std::invalid_argument);
        CHECK_THROWS_AS(parse_manifest_text("sweep.tf_max_ms = 0.1"), std::invalid_argument);
        CHECK_THROWS_AS(parse_manifest_text("sweep.omega_points = 0"), std::invalid_argument);
        CHECK_THROWS_AS(parse_manifest_text("sweep.gamma_values_per_s = 10,5"),
                        std::invalid_argument);
        CHECK_THROWS_AS(parse_manifest_text("sweep.gamma_values_per_s = -5,10"),
                        std::invalid_argument);
        CHECK_THROWS_AS(parse_manifest_text("sweep.sizes = 8,6"), std::invalid_argument);
        CHECK_THROWS_AS(parse_manifest_text("sweep.sizes ="), std::invalid_argument);
        CHECK_THROWS_AS(parse_manifest_text("sweep.peak_mode = median"), std::invalid_argument);
        CHECK_THROWS_AS(parse_manifest_text("output.stride = -1"), std::invalid_argument);
    }

    TEST_CASE("comments and blank lines are ignored") {
        RunManifest m = parse_manifest_text("# a comment\n\n  model.N = 4  \n\t# another\n");
        CHECK(m.model.N == 4);
    }

    TEST_CASE("file parsing matches text parsing") {
        auto path = (std::filesystem::temp_directory_path() / "qramp_manifest_test.txt").string();
        {
            std::ofstream f(path);
            f << "model.variant = ising\nmodel.alpha = 1.2\nprotocol.kind = faquad-k\n"
              << "protocol.K = 4\n";
        }
        RunManifest a = parse_manifest(path);
        std::filesystem::remove(path);
        RunManifest b = parse_manifest_text(
            "model.variant = ising\nmodel.alpha = 1.2\nprotocol.kind = faquad-k\nprotocol.K = 4");
        CHECK(a.serialize() == b.serialize());
        CHECK_THROWS_AS(parse_manifest("/nonexistent/qramp.manifest"), std::invalid_argument);
    }

    TEST_CASE("command names round-trip") {
        for (Command c : {Command::Design, Command::Evolve, Command::SweepTf, Command::SweepDd,
                          Command::SweepGamma, Command::SweepSize, Command::Validate})
            CHECK(parse_command(command_name(c)) == c);
        CHECK(command_name(Command::SweepDd) == "sweep-dd");
        CHECK_THROWS_AS(parse_command("sweep"), std::invalid_argument);
    }

    TEST_CASE("rate conversion and sign conventions") {
        RunManifest m = parse_manifest_text("model.Gamma_per_s = 120");
        CHECK(m.model.gamma_per_ms() == doctest::Approx(0.12).epsilon(1e-15));
        CHECK(m.model.signed_J() == doctest::Approx(-3.3));
        RunManifest af = parse_manifest_text("model.ferromagnetic = false");
        CHECK(af.model.signed_J() == doctest::Approx(3.3));
    }

}  // TEST_SUITE

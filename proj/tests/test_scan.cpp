// test_scan.cpp
#include "doctest.h"

#include "core/model.hpp"
#include "core/scan.hpp"

#include <cmath>
#include <stdexcept>

using namespace qramp;

namespace {

ModelSpec lipkin(int n, bool ferro = true) {
    ModelSpec s;
    s.variant = Variant::Lipkin;
    s.N = n;
    s.J = 0.55 * n;
    s.B0 = 7.0;
    s.ferromagnetic = ferro;
    return s;
}

Model make(const ModelSpec& s) { return Model(s, design_basis(s)); }

}  // namespace

TEST_SUITE("scan") {

    TEST_CASE("eigendecompose returns the ascending spectrum of a hand matrix") {
        cxmat H(2, 2);
        H << cxd(1, 0), cxd(0, -2), cxd(0, 2), cxd(-1, 0);
        auto [w, V] = eigendecompose(H);
        CHECK(w(0) == doctest::Approx(-std::sqrt(5.0)).epsilon(1e-12));
        CHECK(w(1) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
        CHECK((H * V - V * w.asDiagonal()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((V.adjoint() * V - cxmat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
    }

    TEST_CASE("eigendecompose rejects a non-hermitian matrix") {
        cxmat H = cxmat::Zero(2, 2);
        H(0, 1) = 1.0;
        CHECK_THROWS_AS(eigendecompose(H), std::invalid_argument);
    }

    TEST_CASE("grid layout and energies match pointwise diagonalization") {
        Model m = make(lipkin(4));
        ScanConfig cfg;
        cfg.n_grid = 201;
        SpectralScan scan = spectral_scan(m, cfg);

        CHECK(scan.K == 4);  // clamped to dim - 1
        CHECK(scan.bgrid.size() == 201);
        CHECK(scan.bgrid(0) == doctest::Approx(7.0).epsilon(1e-15));
        CHECK(scan.bgrid(200) == doctest::Approx(7e-6).epsilon(1e-12));
        for (int i = 1; i < 201; ++i) CHECK(scan.bgrid(i) < scan.bgrid(i - 1));

        for (int i = 0; i < 201; ++i)
            for (int k = 1; k <= scan.K; ++k) CHECK(scan.energies(i, k) >= scan.energies(i, k - 1));

        for (int i : {0, 40, 100, 160, 200}) {
            auto [w, V] = eigendecompose(m.hamiltonian(scan.bgrid(i), 0.0));
            for (int k = 0; k <= scan.K; ++k)
                CHECK(scan.energies(i, k) == doctest::Approx(w(k)).epsilon(1e-12));
        }
    }

    TEST_CASE("coupling magnitudes are gauge-free and match pointwise values") {
        Model m = make(lipkin(4));
        ScanConfig cfg;
        cfg.n_grid = 201;
        SpectralScan scan = spectral_scan(m, cfg);
        // Interior of the paramagnetic side: all five levels are well split
        // there, so |<0|dH/dB|k>| is insensitive to the tracking gauge.
        for (int i : {0, 20, 40, 60}) {
            auto [w, V] = eigendecompose(m.hamiltonian(scan.bgrid(i), 0.0));
            for (int k = 1; k <= scan.K; ++k) {
                double ref = std::abs((V.col(0).adjoint() * (m.drive() * V.col(k)))(0));
                CHECK(std::abs(scan.couplings(i, k - 1)) == doctest::Approx(ref).epsilon(1e-9));
            }
        }
    }

    TEST_CASE("tracked couplings vary continuously along the grid") {
        Model m = make(lipkin(6));
        ScanConfig cfg;
        cfg.n_grid = 401;
        SpectralScan scan = spectral_scan(m, cfg);
        double global_top = 0;
        for (int k = 1; k <= scan.K; ++k)
            global_top = std::max(global_top, scan.coupling_abs(k).maxCoeff());
        for (int k = 1; k <= scan.K; ++k) {
            double top = scan.coupling_abs(k).maxCoeff();
            // Parity-dark levels carry only numerical noise, which is not
            // continuous and swells to ~1e-7 near the quasi-degenerate doublet.
            if (top < 1e-4 * global_top) continue;
            int flips = 0;
            for (int i = 0; i + 1 < 401; ++i) {
                cxd a = scan.couplings(i, k - 1), b = scan.couplings(i + 1, k - 1);
                // The coupling may pass through zero; only flag jumps where both
                // neighbours are large, which is what a gauge flip looks like.
                if (std::min(std::abs(a), std::abs(b)) < 0.3 * top) continue;
                if (std::abs(a - b) >= 0.5 * (std::abs(a) + std::abs(b))) ++flips;
            }
            CHECK(flips == 0);
        }
    }

    TEST_CASE("parity keeps the first excited level dark") {
        SpectralScan scan = spectral_scan(make(lipkin(4)), ScanConfig{.n_grid = 201});
        double top = scan.coupling_abs(2).maxCoeff();
        CHECK(top > 0);
        // Level 1 is the odd partner of the ground doublet; the even drive
        // cannot reach it from the even ground state.
        CHECK(scan.coupling_abs(1).maxCoeff() < 1e-10 * top);
        auto lv = scan.coupled_levels();
        REQUIRE(!lv.empty());
        CHECK(lv.front() == 2);
    }

    TEST_CASE("coupled_levels honours the relative threshold") {
        SpectralScan s;
        s.K = 3;
        s.bgrid = dvec::LinSpaced(5, 7.0, 1.0);
        s.energies = dmat::Zero(5, 4);
        s.couplings = cxmat::Zero(5, 3);
        s.couplings.col(0).setConstant(cxd(1e-6, 0));
        s.couplings.col(1).setConstant(cxd(0, 0.5));
        s.couplings.col(2).setConstant(cxd(0.3, 0.4));
        auto lv = s.coupled_levels(1e-3);
        REQUIRE(lv.size() == 2);
        CHECK(lv[0] == 2);
        CHECK(lv[1] == 3);
        CHECK(s.coupled_levels(1e-8).size() == 3);
        CHECK_THROWS_AS(s.gap(0), std::invalid_argument);
        CHECK_THROWS_AS(s.gap(4), std::invalid_argument);
        CHECK_THROWS_AS(s.coupling_abs(0), std::invalid_argument);
    }

    TEST_CASE("scan crosses level crossings without losing the ground state") {
        ModelSpec s;
        s.variant = Variant::Ising;
        s.N = 6;
        s.Jmax = 0.55;
        s.alpha = 0.0;
        s.B0 = 7.0;
        Model m(s, design_basis(s));
        SpectralScan scan = spectral_scan(m, ScanConfig{.n_grid = 2001});
        auto lv = scan.coupled_levels();
        REQUIRE(!lv.empty());
        CHECK(lv.front() == 2);
        bool finite = true;
        for (long i = 0; i < scan.bgrid.size(); ++i)
            finite = finite && std::isfinite(scan.energies(i, 0));
        CHECK(finite);
    }

    TEST_CASE("scan rejects a degenerate grid") {
        Model m = make(lipkin(2));
        CHECK_THROWS_AS(spectral_scan(m, ScanConfig{.n_grid = 1}), std::invalid_argument);
    }

    TEST_CASE("scan output is deterministic") {
        Model m = make(lipkin(4));
        ScanConfig cfg;
        cfg.n_grid = 101;
        SpectralScan a = spectral_scan(m, cfg);
        SpectralScan b = spectral_scan(m, cfg);
        CHECK((a.energies - b.energies).cwiseAbs().maxCoeff() == 0.0);
        CHECK((a.couplings - b.couplings).cwiseAbs().maxCoeff() == 0.0);
    }

    TEST_CASE("target state of a broken-symmetry model is a parity eigenstate") {
        Model m = make(lipkin(4));
        cxvec cat = target_state(m, 1e-6);
        CHECK(cat.norm() == doctest::Approx(1.0).epsilon(1e-12));

        auto [w0, V0] = eigendecompose(m.hamiltonian(7.0, 0.0));
        double sector = std::real((V0.col(0).adjoint() * (m.parity() * V0.col(0)))(0));
        sector = sector >= 0 ? 1.0 : -1.0;
        cxd par = (cat.adjoint() * (m.parity() * cat))(0);
        CHECK(std::real(par) == doctest::Approx(sector).epsilon(1e-9));
        CHECK(std::abs(std::imag(par)) < 1e-12);

        // It must lie in the span of the final near-degenerate doublet.
        auto [w, V] = eigendecompose(m.hamiltonian(7e-6, 0.0));
        cxvec res = cat - V.col(0) * (V.col(0).adjoint() * cat)(0) -
                    V.col(1) * (V.col(1).adjoint() * cat)(0);
        CHECK(res.norm() < 1e-8);

        // Deterministic global phase: largest amplitude is real positive.
        long imax = 0;
        cat.cwiseAbs().maxCoeff(&imax);
        CHECK(std::real(cat(imax)) > 0);
        CHECK(std::abs(std::imag(cat(imax))) < 1e-12);
    }

    TEST_CASE("target state of a gapped model is just the final ground state") {
        Model m = make(lipkin(4, false));  // antiferromagnetic: unique ground at B=0
        cxvec tgt = target_state(m, 1e-6);
        auto [w, V] = eigendecompose(m.hamiltonian(7e-6, 0.0));
        CHECK(std::abs((V.col(0).adjoint() * tgt)(0)) == doctest::Approx(1.0).epsilon(1e-10));
    }

}  // TEST_SUITE

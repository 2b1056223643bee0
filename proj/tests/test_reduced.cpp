// test_reduced.cpp
#include "doctest.h"

#include "core/reduced.hpp"
#include "core/scan.hpp"

#include <cmath>
#include <stdexcept>

using namespace qramp;

namespace {

ModelSpec lipkin(int n, double gamma = 0.0) {
    ModelSpec s;
    s.variant = Variant::Lipkin;
    s.N = n;
    s.J = 0.55 * n;
    s.B0 = 7.0;
    s.gamma = gamma;
    return s;
}

Schedule faquad_for(const ModelSpec& spec, double tf) {
    Model m(spec, design_basis(spec));
    return design_faquad(spectral_scan(m, ScanConfig{.n_grid = 2001}), tf);
}

Schedule hold(double B, double tf) {
    Schedule s;
    s.t = dvec(2);
    s.B = dvec(2);
    s.t << 0.0, tf;
    s.B << B, B;
    s.t_f = tf;
    return s;
}

cxvec symmetric_ground(const ModelSpec& spec) {
    Model m(spec, design_basis(spec));
    auto [w, V] = eigendecompose(m.hamiltonian(spec.B0, 0.0));
    return V.col(0);
}

long choose(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

}  // namespace

TEST_SUITE("reduced") {

    TEST_CASE("block-space dimensions") {
        CHECK(reduced_dim(2) == 10);
        CHECK(reduced_dim(4) == 35);
        CHECK(reduced_dim(6) == 84);
        CHECK(reduced_dim(8) == 165);
        CHECK(reduced_dim(10) == 286);
    }

    TEST_CASE("sector multiplicities resolve the full product space") {
        for (int N : {4, 6, 8}) {
            long total = 0;
            for (int two_j = N; two_j >= 0; two_j -= 2) {
                long d = sector_multiplicity(N, two_j);
                CHECK(d == choose(N, (N - two_j) / 2) - choose(N, (N - two_j) / 2 - 1));
                total += d * (two_j + 1);
            }
            CHECK(total == (1L << N));
        }
        CHECK(sector_multiplicity(6, 6) == 1);
        CHECK(sector_multiplicity(6, 4) == 5);
        CHECK(sector_multiplicity(6, 2) == 9);
        CHECK(sector_multiplicity(6, 0) == 5);
    }

    TEST_CASE("matches the dense integrator at equal step") {
        for (int N : {4, 6}) {
            ModelSpec spec = lipkin(N, 120.0);
            Schedule s = faquad_for(spec, 2.0);
            cxvec psi0 = symmetric_ground(spec);
            cxvec tgt = target_state(Model(spec, design_basis(spec)), 1e-6);

            IntegratorConfig cfg;
            cfg.dt = 5e-4;
            ReducedResult r = evolve_reduced(spec, s, psi0, cfg);
            double f_red = reduced_fidelity(r, tgt);

            Model dense(spec, open_basis(spec));
            cxmat E = symmetric_embedding(N);
            cxvec p0 = E * psi0;
            OpenResult o = evolve_lindblad(dense, s, p0 * p0.adjoint(), cfg);
            double f_dense = fidelity(o.rho, cxvec(E * tgt));

            CAPTURE(N);
            CHECK(f_red == doctest::Approx(f_dense).epsilon(1e-7));
            CHECK(std::abs(r.trace_drift) < 1e-10);
        }
    }

    TEST_CASE("gamma = 0 stays in the top sector and matches closed dynamics") {
        ModelSpec spec = lipkin(6);
        Schedule s = faquad_for(spec, 3.0);
        cxvec psi0 = symmetric_ground(spec);
        Model m(spec, design_basis(spec));
        cxvec tgt = target_state(m, 1e-6);

        ReducedResult r = evolve_reduced(spec, s, psi0);
        ClosedResult c = evolve_closed(m, s, psi0);
        CHECK(std::abs(reduced_fidelity(r, tgt) - fidelity(c.psi, tgt)) < 1e-8);

        REQUIRE(!r.blocks.empty());
        for (size_t b = 1; b < r.blocks.size(); ++b)
            CHECK(r.blocks[b].cwiseAbs().maxCoeff() < 1e-12);
        CHECK(std::abs(r.blocks[0].trace().real() - 1.0) < 1e-10);
    }

    TEST_CASE("single-site coherence decay through the sector coupling") {
        ModelSpec spec = lipkin(1, 120.0);
        Schedule s = hold(0.0, 10.0);
        cxvec plusx(2);
        plusx << cxd(std::sqrt(0.5), 0), cxd(std::sqrt(0.5), 0);
        ReducedResult r = evolve_reduced(spec, s, plusx);
        CHECK(std::abs(2.0 * std::abs(r.blocks[0](0, 1)) - std::exp(-1.2)) < 1e-6);
    }

    TEST_CASE("trace and positivity stay clean at N = 8") {
        ModelSpec spec = lipkin(8, 120.0);
        Schedule s = faquad_for(spec, 2.0);
        ReducedResult r = evolve_reduced(spec, s, symmetric_ground(spec));
        CHECK(r.trace_drift < 1e-10);
        CHECK(r.min_eigenvalue > -1e-9);
        double tr = 0;  // each block enters tr(rho) once per multiplicity copy
        for (size_t b = 0; b < r.blocks.size(); ++b)
            tr += sector_multiplicity(8, 8 - 2 * int(b)) * r.blocks[b].trace().real();
        CHECK(tr == doctest::Approx(1.0).epsilon(1e-10));
    }

    TEST_CASE("rejections") {
        Schedule s = hold(7.0, 1.0);
        cxvec psi = cxvec::Zero(3);
        psi(0) = 1.0;

        ModelSpec ising;
        ising.variant = Variant::Ising;
        ising.N = 2;
        ising.Jmax = 0.55;
        ising.gamma = 120.0;
        CHECK_THROWS_AS(evolve_reduced(ising, s, psi), std::invalid_argument);

        ModelSpec dicke;
        dicke.variant = Variant::Dicke;
        dicke.N = 2;
        dicke.g0 = 1.0;
        dicke.delta = -4.0;
        dicke.gamma = 120.0;
        CHECK_THROWS_AS(evolve_reduced(dicke, s, psi), std::invalid_argument);

        ModelSpec spec = lipkin(4, 120.0);
        CHECK_THROWS_AS(evolve_reduced(spec, s, psi), std::invalid_argument);  // dim 3 != 5
        cxvec unnorm = cxvec::Constant(5, cxd(1, 0));
        CHECK_THROWS_AS(evolve_reduced(spec, s, unnorm), std::invalid_argument);

        ReducedResult r = evolve_reduced(spec, s, symmetric_ground(spec));
        CHECK_THROWS_AS(reduced_fidelity(r, psi), std::invalid_argument);
    }

}  // TEST_SUITE

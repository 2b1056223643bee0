// driver.cpp
#include "core/driver.hpp"

#include <cmath>
#include <sstream>

namespace qramp {

LabConfig lab_config_from(const RunManifest& m) {
    LabConfig cfg;
    cfg.model = m.model;
    cfg.protocol = m.protocol;
    cfg.K = m.K;
    cfg.level = m.level;
    cfg.scan = m.scan;
    cfg.integrator = m.integrator;
    cfg.tf_grid = m.tf_grid();
    cfg.omega_grid = m.omega_grid();
    cfg.gamma_grid = m.gamma_values;
    cfg.size_grid = m.sizes;
    cfg.peak_mode = m.peak_mode;
    cfg.refine = m.refine;
    return cfg;
}

SweepResult run_sweep(const RunManifest& m) {
    LabConfig cfg = lab_config_from(m);
    switch (m.command) {
        case Command::SweepTf: return tf_sweep(cfg);
        case Command::SweepDd: return dd_sweep(cfg);
        case Command::SweepGamma: return gamma_sweep(cfg);
        case Command::SweepSize: return size_sweep(cfg);
        default:
            throw std::invalid_argument("run_sweep: command '" + command_name(m.command) +
                                        "' is not a sweep");
    }
}

namespace {

struct Reporter {
    std::ostringstream out;
    bool all_pass = true;

    void check(const std::string& name, bool ok, double value, const std::string& bound) {
        out << (ok ? "PASS " : "FAIL ") << name << " (" << value << " vs " << bound << ")\n";
        if (!ok) all_pass = false;
    }
    void skip(const std::string& name, const std::string& why) {
        out << "SKIP " << name << " (" << why << ")\n";
    }
};

}  // namespace

std::string run_validation(const RunManifest& m, bool* all_pass) {
    Reporter rep;
    LabConfig cfg = lab_config_from(m);
    const ModelSpec& spec = cfg.model;
    RunContext ctx = make_context(spec, cfg.scan);
    const double t_f = m.t_f_ms;

    Schedule sched = make_schedule(cfg, ctx.scan, t_f);
    {
        bool pinned = sched.B(0) == spec.B0 && sched.B(sched.B.size() - 1) == 0.0;
        bool monotone = true;
        for (long i = 1; i < sched.B.size(); ++i)
            if (sched.B(i) > sched.B(i - 1)) monotone = false;
        rep.check("schedule.endpoints_pinned", pinned, pinned ? 0 : 1, "exact");
        rep.check("schedule.monotone", monotone, monotone ? 0 : 1, "exact");
    }
    {
        auto res = evolve_closed(ctx.design_model, sched, ctx.psi0, cfg.integrator);
        rep.check("closed.norm_drift", res.norm_drift <= 1e-9, res.norm_drift, "<= 1e-9");
    }
    {
        Schedule fq = design_faquad(ctx.scan, t_f, cfg.level);
        double flat = flatness_ratio(fq, ctx.scan, cfg.level);
        rep.check("faquad.flatness", flat < 1.05, flat, "< 1.05");
    }
    if (spec.variant == Variant::Lipkin && spec.N <= 8) {
        Model full(spec, full_spin(spec.N));
        cxmat E = symmetric_embedding(spec.N);
        cxvec p0 = E * ctx.psi0, tgt = E * ctx.target;
        auto rs = evolve_closed(ctx.design_model, sched, ctx.psi0, cfg.integrator);
        auto rf = evolve_closed(full, sched, p0, cfg.integrator);
        double gap = std::abs(fidelity(rs.psi, ctx.target) - fidelity(rf.psi, tgt));
        rep.check("closed.sector_equivalence", gap <= 1e-9, gap, "<= 1e-9");
    } else {
        rep.skip("closed.sector_equivalence", "Lipkin with N <= 8 only");
    }
    if (spec.variant != Variant::Dicke) {
        ModelSpec open_spec = spec;
        if (open_spec.gamma == 0) open_spec.gamma = 120.0;
        double tshort = std::min(t_f, 2.0);
        LabConfig ocfg = cfg;
        ocfg.model = open_spec;
        Schedule sshort = make_schedule(cfg, ctx.scan, tshort);
        if (open_spec.N <= 6) {
            Model om(open_spec, open_basis(open_spec));
            cxvec p0 = ctx.psi0;
            if (ctx.design_model.basis().kind == Basis::DickeSymmetric)
                p0 = symmetric_embedding(open_spec.N) * p0;
            cxmat rho0 = p0 * p0.adjoint();
            auto orr = evolve_lindblad(om, sshort, rho0, cfg.integrator);
            rep.check("open.trace_drift", orr.trace_drift <= 1e-8, orr.trace_drift, "<= 1e-8");
            rep.check("open.min_eigenvalue", orr.min_eigenvalue >= -1e-7, orr.min_eigenvalue,
                      ">= -1e-7");
        } else if (open_spec.variant == Variant::Lipkin) {
            auto orr = evolve_reduced(open_spec, sshort, ctx.psi0, cfg.integrator);
            rep.check("open.trace_drift", orr.trace_drift <= 1e-8, orr.trace_drift, "<= 1e-8");
            rep.check("open.min_eigenvalue", orr.min_eigenvalue >= -1e-7, orr.min_eigenvalue,
                      ">= -1e-7");
        } else {
            rep.skip("open.trace_drift", "dense check limited to N <= 6");
        }
        if (open_spec.N <= 6) {
            ModelSpec zero = spec;
            zero.gamma = 0;
            LabConfig zc = cfg;
            zc.model = zero;
            double fc = evaluate_fidelity(zc, ctx, tshort);
            Model om(zero, open_basis(zero));
            cxvec p0 = ctx.psi0, tgt = ctx.target;
            if (ctx.design_model.basis().kind == Basis::DickeSymmetric) {
                cxmat E = symmetric_embedding(zero.N);
                p0 = E * p0;
                tgt = E * tgt;
            }
            auto orr = evolve_lindblad(om, sshort, p0 * p0.adjoint(), cfg.integrator);
            double gap = std::abs(fidelity(orr.rho, tgt) - fc);
            rep.check("open.gamma_zero_equals_closed", gap <= 1e-8, gap, "<= 1e-8");
        } else {
            rep.skip("open.gamma_zero_equals_closed", "N <= 6 only");
        }
    } else {
        rep.skip("open.trace_drift", "local dephasing is undefined for the Dicke variant");
    }
    if (all_pass) *all_pass = rep.all_pass;
    return rep.out.str();
}

}  // namespace qramp

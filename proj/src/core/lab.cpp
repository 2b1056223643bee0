// lab.cpp
#include "core/lab.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace qramp {

namespace {

constexpr const char* kVersion = "0.1.0";

template <typename F>
void parallel_for(long n, F&& body) {
    int w = std::min<long>(worker_count(), n);
    if (w <= 1) {
        for (long i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<long> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto run = [&] {
        long i;
        while ((i = next.fetch_add(1)) < n) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (!err) err = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < w; ++t) pool.emplace_back(run);
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

std::pair<double, double> refine_parabolic(const std::vector<CurvePoint>& c, size_t i) {
    double t0 = c[i - 1].t_f, t1 = c[i].t_f, t2 = c[i + 1].t_f;
    double f0 = c[i - 1].F, f1 = c[i].F, f2 = c[i + 1].F;
    double d1 = (f1 - f0) / (t1 - t0);
    double d2 = (f2 - f1) / (t2 - t1);
    double a2 = (d2 - d1) / (t2 - t0);
    if (!(a2 < 0)) return {t1, f1};  // no downward curvature: keep the grid point
    double ts = 0.5 * (t0 + t1) - d1 / (2 * a2);
    ts = std::clamp(ts, t0, t2);
    double fs = f0 + d1 * (ts - t0) + a2 * (ts - t0) * (ts - t1);
    return {ts, std::min(fs, 1.0)};
}

std::string active_mode(const LabConfig& cfg, const std::string& sweep_default) {
    return cfg.peak_mode == "auto" ? sweep_default : cfg.peak_mode;
}

double active_coupling(const ModelSpec& m) {
    return m.variant == Variant::Ising ? m.Jmax : m.J;
}

PeakRecord make_record(const LabConfig& cfg, const std::string& param, double value,
                       const Peak& peak, const std::string& mode, double dt) {
    PeakRecord r;
    r.swept_param = param;
    r.value = value;
    r.peak = peak;
    r.peak_mode = mode;
    r.protocol = cfg.protocol == "faquad-k" ? protocol_tag(Protocol::FAQUAD_K, cfg.K)
                                            : cfg.protocol;
    r.N = cfg.model.N;
    r.J = active_coupling(cfg.model);
    r.alpha = cfg.model.alpha;
    r.alpha_tilde = cfg.model.dd_alpha_tilde;
    r.omega = cfg.model.dd_omega;
    r.gamma = cfg.model.gamma;
    r.dt = dt;
    return r;
}

double resolved_dt(const LabConfig& cfg, const RunContext& ctx) {
    return cfg.integrator.dt > 0 ? cfg.integrator.dt : default_dt(ctx.design_model);
}

// Curve + both peak records for the current cfg.model.
void append_records(SweepResult& out, const LabConfig& cfg, const RunContext& ctx,
                    const std::string& param, double value) {
    auto curve = fidelity_curve(cfg, ctx);
    double dt = resolved_dt(cfg, ctx);
    out.records.push_back(
        make_record(cfg, param, value, extract_peak(curve, "first_peak"), "first_peak", dt));
    out.records.push_back(
        make_record(cfg, param, value, extract_peak(curve, "global_max"), "global_max", dt));
}

double peak_of_mode(const SweepResult& r, size_t pair_index, const std::string& mode) {
    const PeakRecord& a = r.records[2 * pair_index];
    const PeakRecord& b = r.records[2 * pair_index + 1];
    return (a.peak_mode == mode ? a : b).peak.F_max;
}

}  // namespace

int worker_count() {
    if (const char* e = std::getenv("QRAMP_WORKERS")) {
        int v = std::atoi(e);
        if (v > 0) return v;
    }
    unsigned h = std::thread::hardware_concurrency();
    return h ? static_cast<int>(h) : 1;
}

RunContext make_context(const ModelSpec& spec, const ScanConfig& scan_cfg) {
    spec.validate();
    Model model(spec, design_basis(spec));
    SpectralScan scan = spectral_scan(model, scan_cfg);
    auto [w, V] = eigendecompose(model.hamiltonian(spec.B0));
    (void)w;
    cxvec psi0 = V.col(0);
    cxvec target = target_state(model, scan_cfg.eps);
    return RunContext{std::move(model), std::move(scan), std::move(psi0), std::move(target)};
}

Schedule make_schedule(const LabConfig& cfg, const SpectralScan& scan, double t_f) {
    Schedule s;
    if (cfg.protocol == "la")
        s = design_la(scan, t_f, cfg.level);
    else if (cfg.protocol == "faquad")
        s = design_faquad(scan, t_f, cfg.level);
    else if (cfg.protocol == "faquad-k")
        s = design_faquad_k(scan, t_f, cfg.K);
    else
        throw std::invalid_argument("lab: unknown protocol '" + cfg.protocol + "'");
    s.model_hash = cfg.model.hash();
    return s;
}

double evaluate_fidelity(const LabConfig& cfg, const RunContext& ctx, double t_f) {
    const ModelSpec& ms = cfg.model;
    Schedule sched = make_schedule(cfg, ctx.scan, t_f);

    if (ms.gamma == 0.0) {
        // The context model may carry a different dd_omega than the sweep point.
        std::optional<Model> local;
        const Model* m = &ctx.design_model;
        if (ms.hash() != ctx.design_model.spec().hash()) {
            local.emplace(ms, ctx.design_model.basis());
            m = &*local;
        }
        auto res = evolve_closed(*m, sched, ctx.psi0, cfg.integrator);
        return fidelity(res.psi, ctx.target);
    }
    if (ms.variant == Variant::Lipkin && ms.dephasing_axis() == DephasingAxis::Z &&
        cfg.prefer_reduced) {
        auto r = evolve_reduced(ms, sched, ctx.psi0, cfg.integrator);
        return reduced_fidelity(r, ctx.target);
    }
    Model open_model(ms, open_basis(ms));
    cxvec p0 = ctx.psi0, tgt = ctx.target;
    if (ctx.design_model.basis().kind == Basis::DickeSymmetric) {
        cxmat E = symmetric_embedding(ms.N);
        p0 = E * p0;
        tgt = E * tgt;
    }
    cxmat rho0 = p0 * p0.adjoint();
    auto res = evolve_lindblad(open_model, sched, rho0, cfg.integrator);
    return fidelity(res.rho, tgt);
}

std::vector<CurvePoint> fidelity_curve(const LabConfig& cfg, const RunContext& ctx) {
    if (cfg.tf_grid.empty()) throw std::invalid_argument("lab: tf grid is empty");
    std::vector<CurvePoint> curve(cfg.tf_grid.size());
    parallel_for(static_cast<long>(cfg.tf_grid.size()), [&](long i) {
        curve[i] = {cfg.tf_grid[i], evaluate_fidelity(cfg, ctx, cfg.tf_grid[i])};
    });
    return curve;
}

Peak extract_peak(const std::vector<CurvePoint>& curve, const std::string& mode) {
    if (curve.empty()) throw std::invalid_argument("extract_peak: empty curve");
    Peak p;
    size_t n = curve.size();
    auto argmax = [&] {
        size_t best = 0;
        for (size_t i = 1; i < n; ++i)
            if (curve[i].F > curve[best].F) best = i;
        return best;
    };
    if (n < 3) {
        size_t i = argmax();
        p.t_f_star = curve[i].t_f;
        p.F_max = curve[i].F;
        p.endpoint_warning = true;
        return p;
    }
    if (mode == "first_peak") {
        for (size_t i = 1; i + 1 < n; ++i) {
            if (curve[i].F >= curve[i - 1].F && curve[i].F >= curve[i + 1].F) {
                auto [t, f] = refine_parabolic(curve, i);
                p.t_f_star = t;
                p.F_max = f;
                return p;
            }
        }
        size_t i = argmax();  // monotone curve: report the endpoint
        p.t_f_star = curve[i].t_f;
        p.F_max = curve[i].F;
        p.endpoint_warning = true;
        return p;
    }
    if (mode == "global_max") {
        size_t i = argmax();
        if (i == 0 || i + 1 == n) {
            p.t_f_star = curve[i].t_f;
            p.F_max = curve[i].F;
            p.endpoint_warning = true;
            return p;
        }
        auto [t, f] = refine_parabolic(curve, i);
        p.t_f_star = t;
        p.F_max = f;
        return p;
    }
    throw std::invalid_argument("extract_peak: unknown mode '" + mode + "'");
}

SweepResult tf_sweep(const LabConfig& cfg) {
    SweepResult out;
    out.swept_param = "t_f";
    out.n_grid = cfg.scan.n_grid;
    out.version = kVersion;
    RunContext ctx = make_context(cfg.model, cfg.scan);
    auto curve = fidelity_curve(cfg, ctx);
    double dt = resolved_dt(cfg, ctx);
    for (const char* mode : {"first_peak", "global_max"}) {
        Peak pk = extract_peak(curve, mode);
        out.records.push_back(make_record(cfg, "t_f", pk.t_f_star, pk, mode, dt));
    }
    return out;
}

SweepResult dd_sweep(const LabConfig& cfg) {
    if (cfg.omega_grid.empty()) throw std::invalid_argument("lab: omega grid is empty");
    SweepResult out;
    out.swept_param = "omega";
    out.n_grid = cfg.scan.n_grid;
    out.version = kVersion;
    RunContext ctx = make_context(cfg.model, cfg.scan);  // scan is env-independent
    LabConfig point = cfg;
    for (double w : cfg.omega_grid) {
        point.model.dd_omega = w;
        append_records(out, point, ctx, "omega", w);
    }
    if (cfg.refine && cfg.omega_grid.size() >= 2) {
        std::string mode = active_mode(cfg, "first_peak");
        size_t best = 0;
        for (size_t i = 1; i < cfg.omega_grid.size(); ++i)
            if (peak_of_mode(out, i, mode) > peak_of_mode(out, best, mode)) best = i;
        double lo = cfg.omega_grid[best == 0 ? 0 : best - 1];
        double hi = cfg.omega_grid[std::min(best + 1, cfg.omega_grid.size() - 1)];
        if (hi > lo) {
            auto value_at = [&](double w) {
                point.model.dd_omega = w;
                auto curve = fidelity_curve(point, ctx);
                return extract_peak(curve, mode).F_max;
            };
            // golden-section maximization of the peak over omega
            const double gr = 0.6180339887498949;
            double a = lo, b = hi;
            double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
            double f1 = value_at(x1), f2 = value_at(x2);
            for (int it = 0; it < 12 && (b - a) > 1e-3; ++it) {
                if (f1 < f2) {
                    a = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = a + gr * (b - a);
                    f2 = value_at(x2);
                } else {
                    b = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = b - gr * (b - a);
                    f1 = value_at(x1);
                }
            }
            double wstar = f1 > f2 ? x1 : x2;
            point.model.dd_omega = wstar;
            append_records(out, point, ctx, "omega_refined", wstar);
        }
    }
    return out;
}

SweepResult gamma_sweep(const LabConfig& cfg) {
    if (cfg.gamma_grid.empty()) throw std::invalid_argument("lab: gamma grid is empty");
    SweepResult out;
    out.swept_param = "Gamma";
    out.n_grid = cfg.scan.n_grid;
    out.version = kVersion;
    RunContext ctx = make_context(cfg.model, cfg.scan);  // scan is gamma-independent
    LabConfig point = cfg;
    for (double g : cfg.gamma_grid) {
        point.model.gamma = g;
        append_records(out, point, ctx, "Gamma", g);
    }
    return out;
}

SweepResult size_sweep(const LabConfig& cfg) {
    if (cfg.size_grid.empty()) throw std::invalid_argument("lab: size grid is empty");
    SweepResult out;
    out.swept_param = "N";
    out.n_grid = cfg.scan.n_grid;
    out.version = kVersion;
    LabConfig point = cfg;
    for (int n : cfg.size_grid) {
        point.model.N = n;
        if (point.model.variant == Variant::Lipkin) point.model.J = 0.55 * n;
        RunContext ctx = make_context(point.model, point.scan);
        append_records(out, point, ctx, "N", n);
    }
    return out;
}

void write_sweep_csv(const std::string& path, const SweepResult& r, std::uint64_t manifest_hash) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    f << "# qramp-sweep version=" << r.version << " n_grid=" << r.n_grid << " manifest_hash="
      << std::hex << manifest_hash << std::dec << "\n";
    f << "swept_param,value,F_max,t_f_star_ms,peak_mode,protocol,N,J,alpha,alpha_tilde,"
         "omega_kHz,Gamma_per_s,dt_ms\n";
    f << std::setprecision(12);
    for (const auto& rec : r.records) {
        f << rec.swept_param << ',' << rec.value << ',' << rec.peak.F_max << ','
          << rec.peak.t_f_star << ',' << rec.peak_mode << ',' << rec.protocol << ',' << rec.N
          << ',' << rec.J << ',' << rec.alpha << ',' << rec.alpha_tilde << ',' << rec.omega << ','
          << rec.gamma << ',' << rec.dt << "\n";
    }
}

void write_sweep_json(const std::string& path, const SweepResult& r, const std::string& config,
                      std::uint64_t manifest_hash) {
    nlohmann::json j;
    j["version"] = r.version;
    j["swept_param"] = r.swept_param;
    j["n_grid"] = r.n_grid;
    std::ostringstream hx;
    hx << std::hex << manifest_hash;
    j["manifest_hash"] = hx.str();
    j["config"] = config;
    auto& arr = j["records"] = nlohmann::json::array();
    for (const auto& rec : r.records) {
        arr.push_back({{"swept_param", rec.swept_param},
                       {"value", rec.value},
                       {"F_max", rec.peak.F_max},
                       {"t_f_star_ms", rec.peak.t_f_star},
                       {"endpoint_warning", rec.peak.endpoint_warning},
                       {"peak_mode", rec.peak_mode},
                       {"protocol", rec.protocol},
                       {"N", rec.N},
                       {"J", rec.J},
                       {"alpha", rec.alpha},
                       {"alpha_tilde", rec.alpha_tilde},
                       {"omega_kHz", rec.omega},
                       {"Gamma_per_s", rec.gamma},
                       {"dt_ms", rec.dt}});
    }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    f << j.dump(2) << "\n";
}

}  // namespace qramp

// capi.cpp — extern "C" surface over the qramp core.
#include "qramp/qramp.h"

#include <cstring>
#include <fstream>
#include <new>
#include <string>
#include <vector>

#include "core/driver.hpp"

struct qramp_manifest {
    qramp::RunManifest m;
};
struct qramp_context {
    qramp::LabConfig cfg;
    qramp::RunContext ctx;
    long stride = 1;  // trajectory sampling stride from output.stride
};
struct qramp_schedule {
    qramp::Schedule s;
    std::vector<double> t, B;  // stable sample views
};
struct qramp_sweep {
    qramp::SweepResult r;
};

namespace {

thread_local std::string g_error;

template <typename F>
qramp_status guarded(F&& f) {
    try {
        return f();
    } catch (const std::invalid_argument& e) {
        g_error = e.what();
        return QRAMP_INVALID_ARGUMENT;
    } catch (const std::bad_alloc&) {
        g_error = "out of memory";
        return QRAMP_RUNTIME_ERROR;
    } catch (const std::exception& e) {
        g_error = e.what();
        return QRAMP_RUNTIME_ERROR;
    } catch (...) {
        g_error = "unknown error";
        return QRAMP_RUNTIME_ERROR;
    }
}

qramp_status null_handle() {
    g_error = "null handle";
    return QRAMP_NULL_HANDLE;
}

qramp_status copy_out(const std::string& s, char* buf, size_t cap, size_t* needed) {
    if (needed) *needed = s.size() + 1;
    if (!buf || cap < s.size() + 1) {
        g_error = "buffer too small";
        return QRAMP_BUFFER_TOO_SMALL;
    }
    std::memcpy(buf, s.c_str(), s.size() + 1);
    return QRAMP_OK;
}

std::vector<std::string> collect(const char* const* overrides, size_t n) {
    std::vector<std::string> out;
    for (size_t i = 0; i < n; ++i) {
        if (!overrides[i]) throw std::invalid_argument("null override string");
        out.emplace_back(overrides[i]);
    }
    return out;
}

qramp_schedule* design_for(const qramp_context* c, double t_f_ms) {
    auto* s = new qramp_schedule{qramp::make_schedule(c->cfg, c->ctx.scan, t_f_ms), {}, {}};
    s->t.assign(s->s.t.data(), s->s.t.data() + s->s.t.size());
    s->B.assign(s->s.B.data(), s->s.B.data() + s->s.B.size());
    return s;
}

}  // namespace

extern "C" {

const char* qramp_error_message(void) { return g_error.c_str(); }

const char* qramp_version(void) { return "0.1.0"; }

qramp_status qramp_manifest_parse_file(const char* path, const char* const* overrides,
                                       size_t n_overrides, qramp_manifest** out) {
    if (!path || !out || (n_overrides && !overrides)) return null_handle();
    return guarded([&] {
        auto m = qramp::parse_manifest(path, collect(overrides, n_overrides));
        *out = new qramp_manifest{std::move(m)};
        return QRAMP_OK;
    });
}

qramp_status qramp_manifest_parse_text(const char* text, const char* const* overrides,
                                       size_t n_overrides, qramp_manifest** out) {
    if (!text || !out || (n_overrides && !overrides)) return null_handle();
    return guarded([&] {
        auto m = qramp::parse_manifest_text(text, collect(overrides, n_overrides));
        *out = new qramp_manifest{std::move(m)};
        return QRAMP_OK;
    });
}

qramp_status qramp_manifest_serialize(const qramp_manifest* m, char* buf, size_t cap,
                                      size_t* needed) {
    if (!m) return null_handle();
    return guarded([&] { return copy_out(m->m.serialize(), buf, cap, needed); });
}

qramp_status qramp_manifest_hash(const qramp_manifest* m, uint64_t* out) {
    if (!m || !out) return null_handle();
    return guarded([&] {
        *out = m->m.hash();
        return QRAMP_OK;
    });
}

qramp_status qramp_manifest_command(const qramp_manifest* m, char* buf, size_t cap,
                                    size_t* needed) {
    if (!m) return null_handle();
    return guarded([&] { return copy_out(qramp::command_name(m->m.command), buf, cap, needed); });
}

void qramp_manifest_free(qramp_manifest* m) { delete m; }

qramp_status qramp_context_create(const qramp_manifest* m, qramp_context** out) {
    if (!m || !out) return null_handle();
    return guarded([&] {
        auto cfg = qramp::lab_config_from(m->m);
        auto ctx = qramp::make_context(cfg.model, cfg.scan);
        *out = new qramp_context{std::move(cfg), std::move(ctx), m->m.stride > 0 ? m->m.stride : 1};
        return QRAMP_OK;
    });
}

void qramp_context_free(qramp_context* c) { delete c; }

qramp_status qramp_schedule_design(const qramp_context* c, double t_f_ms, qramp_schedule** out) {
    if (!c || !out) return null_handle();
    return guarded([&] {
        *out = design_for(c, t_f_ms);
        return QRAMP_OK;
    });
}

qramp_status qramp_schedule_write_csv(const qramp_schedule* s, const char* path) {
    if (!s || !path) return null_handle();
    return guarded([&] {
        s->s.write_csv(path);
        return QRAMP_OK;
    });
}

qramp_status qramp_schedule_samples(const qramp_schedule* s, const double** t_ms,
                                    const double** B, size_t* n) {
    if (!s || !t_ms || !B || !n) return null_handle();
    *t_ms = s->t.data();
    *B = s->B.data();
    *n = s->t.size();
    return QRAMP_OK;
}

qramp_status qramp_schedule_c_value(const qramp_schedule* s, double* out) {
    if (!s || !out) return null_handle();
    *out = s->s.c_value;
    return QRAMP_OK;
}

qramp_status qramp_schedule_flatness(const qramp_context* c, const qramp_schedule* s,
                                     double* out) {
    if (!c || !s || !out) return null_handle();
    return guarded([&] {
        *out = qramp::flatness_ratio(s->s, c->ctx.scan, c->cfg.level);
        return QRAMP_OK;
    });
}

void qramp_schedule_free(qramp_schedule* s) { delete s; }

qramp_status qramp_evolve_fidelity(const qramp_context* c, double t_f_ms,
                                   const char* trajectory_csv, double* F_out) {
    if (!c || !F_out) return null_handle();
    return guarded([&] {
        if (!trajectory_csv) {
            *F_out = qramp::evaluate_fidelity(c->cfg, c->ctx, t_f_ms);
            return QRAMP_OK;
        }
        // Trajectory sampling uses the engine directly so every engine path
        // shares the lab's target definition.
        const qramp::LabConfig& cfg = c->cfg;
        qramp::Schedule sched = qramp::make_schedule(cfg, c->ctx.scan, t_f_ms);
        qramp::TrajectorySink sink;
        sink.stride = c->stride;
        qramp::cxvec tgt = c->ctx.target;
        if (cfg.model.gamma == 0.0) {
            sink.target = &tgt;
            auto res = qramp::evolve_closed(c->ctx.design_model, sched, c->ctx.psi0,
                                            cfg.integrator, &sink);
            *F_out = qramp::fidelity(res.psi, tgt);
        } else {
            qramp::Model om(cfg.model, qramp::open_basis(cfg.model));
            qramp::cxvec p0 = c->ctx.psi0;
            if (c->ctx.design_model.basis().kind == qramp::Basis::DickeSymmetric) {
                qramp::cxmat E = qramp::symmetric_embedding(cfg.model.N);
                p0 = E * p0;
                tgt = E * tgt;
            }
            sink.target = &tgt;
            auto res =
                qramp::evolve_lindblad(om, sched, p0 * p0.adjoint(), cfg.integrator, &sink);
            *F_out = qramp::fidelity(res.rho, tgt);
        }
        std::ofstream f(trajectory_csv);
        if (!f) throw std::runtime_error(std::string("cannot open ") + trajectory_csv);
        f << "t_ms,fidelity,trace,purity\n";
        f.precision(12);
        for (const auto& row : sink.rows)
            f << row[0] << ',' << row[1] << ',' << row[2] << ',' << row[3] << "\n";
        return QRAMP_OK;
    });
}

qramp_status qramp_run_sweep(const qramp_manifest* m, qramp_sweep** out) {
    if (!m || !out) return null_handle();
    return guarded([&] {
        *out = new qramp_sweep{qramp::run_sweep(m->m)};
        return QRAMP_OK;
    });
}

qramp_status qramp_sweep_write(const qramp_sweep* s, const qramp_manifest* m,
                               const char* csv_path, const char* json_path) {
    if (!s || !m) return null_handle();
    return guarded([&] {
        if (csv_path) qramp::write_sweep_csv(csv_path, s->r, m->m.hash());
        if (json_path) qramp::write_sweep_json(json_path, s->r, m->m.serialize(), m->m.hash());
        return QRAMP_OK;
    });
}

qramp_status qramp_sweep_record_count(const qramp_sweep* s, size_t* out) {
    if (!s || !out) return null_handle();
    *out = s->r.records.size();
    return QRAMP_OK;
}

qramp_status qramp_sweep_record(const qramp_sweep* s, size_t index, double* value, double* F_max,
                                double* t_f_star_ms, char* peak_mode_buf, size_t cap) {
    if (!s) return null_handle();
    return guarded([&] {
        if (index >= s->r.records.size())
            throw std::invalid_argument("sweep record index out of range");
        const auto& rec = s->r.records[index];
        if (value) *value = rec.value;
        if (F_max) *F_max = rec.peak.F_max;
        if (t_f_star_ms) *t_f_star_ms = rec.peak.t_f_star;
        if (peak_mode_buf) return copy_out(rec.peak_mode, peak_mode_buf, cap, nullptr);
        return QRAMP_OK;
    });
}

void qramp_sweep_free(qramp_sweep* s) { delete s; }

qramp_status qramp_validate(const qramp_manifest* m, char* report_buf, size_t cap, size_t* needed,
                            int* all_pass) {
    if (!m) return null_handle();
    return guarded([&] {
        bool ok = false;
        std::string report = qramp::run_validation(m->m, &ok);
        if (all_pass) *all_pass = ok ? 1 : 0;
        return copy_out(report, report_buf, cap, needed);
    });
}

}  // extern "C"

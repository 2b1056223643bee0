// qramp_main.cpp — command-line front end over the qramp C API.
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qramp/qramp.h"

namespace {

struct ManifestHandle {
    qramp_manifest* m = nullptr;
    ~ManifestHandle() { qramp_manifest_free(m); }
};
struct ContextHandle {
    qramp_context* c = nullptr;
    ~ContextHandle() { qramp_context_free(c); }
};
struct ScheduleHandle {
    qramp_schedule* s = nullptr;
    ~ScheduleHandle() { qramp_schedule_free(s); }
};
struct SweepHandle {
    qramp_sweep* s = nullptr;
    ~SweepHandle() { qramp_sweep_free(s); }
};

[[noreturn]] void die(qramp_status st) {
    const char* category = st == QRAMP_INVALID_ARGUMENT ? "invalid-argument"
                           : st == QRAMP_NULL_HANDLE    ? "null-handle"
                           : st == QRAMP_BUFFER_TOO_SMALL ? "buffer"
                                                          : "runtime";
    std::fprintf(stderr, "error (%s): %s\n", category, qramp_error_message());
    std::exit(st == QRAMP_INVALID_ARGUMENT ? 2 : 3);
}

void check(qramp_status st) {
    if (st != QRAMP_OK) die(st);
}

std::string serialized(const qramp_manifest* m) {
    size_t needed = 0;
    qramp_manifest_serialize(m, nullptr, 0, &needed);
    std::string buf(needed, '\0');
    check(qramp_manifest_serialize(m, buf.data(), buf.size(), &needed));
    buf.resize(needed - 1);
    return buf;
}

// Resolved-manifest key lookup from the canonical echo.
std::string config_value(const std::string& echo, const std::string& key) {
    std::string needle = key + " = ";
    size_t pos = echo.find(needle);
    if (pos == std::string::npos) return "";
    size_t end = echo.find('\n', pos);
    return echo.substr(pos + needle.size(), end - pos - needle.size());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qramp: quasi-adiabatic ramp design and spin-dynamics runner"};
    app.set_version_flag("--version", qramp_version());
    app.require_subcommand(1);

    std::string manifest_path;
    std::vector<std::string> sets;
    app.add_option("-m,--manifest", manifest_path, "manifest file (key = value lines)");
    app.add_option("-s,--set", sets, "override a manifest key, e.g. -s model.N=8");

    double tf_flag = 0;
    long traj_stride = 0;
    bool refine = false;

    auto* design = app.add_subcommand("design", "synthesize a ramp schedule CSV");
    design->add_option("--tf", tf_flag, "final time in ms");
    auto* evolve = app.add_subcommand("evolve", "evolve one run and print the fidelity");
    evolve->add_option("--tf", tf_flag, "final time in ms");
    evolve->add_option("--dump-trajectory", traj_stride, "write trajectory CSV every N steps");
    auto* sweep_tf = app.add_subcommand("sweep-tf", "fidelity-vs-final-time peak records");
    auto* sweep_dd = app.add_subcommand("sweep-dd", "peak fidelity over the decoupling amplitude");
    sweep_dd->add_flag("--refine", refine, "golden-section refinement around the grid peak");
    auto* sweep_gamma = app.add_subcommand("sweep-gamma", "peak fidelity over the dephasing rate");
    auto* sweep_size = app.add_subcommand("sweep-size", "peak fidelity over the spin count");
    auto* validate = app.add_subcommand("validate", "run the built-in invariant suite");
    for (CLI::App* sub : {design, evolve, sweep_tf, sweep_dd, sweep_gamma, sweep_size, validate})
        sub->fallthrough();

    CLI11_PARSE(app, argc, argv);
    std::string command = app.get_subcommands().front()->get_name();

    std::vector<std::string> overrides = sets;
    if (tf_flag > 0) overrides.push_back("protocol.t_f_ms=" + std::to_string(tf_flag));
    if (traj_stride > 0) overrides.push_back("output.stride=" + std::to_string(traj_stride));
    if (refine) overrides.push_back("sweep.refine=true");
    overrides.push_back("command=" + command);
    std::vector<const char*> ov;
    for (const auto& s : overrides) ov.push_back(s.c_str());

    ManifestHandle manifest;
    if (!manifest_path.empty())
        check(qramp_manifest_parse_file(manifest_path.c_str(), ov.data(), ov.size(), &manifest.m));
    else
        check(qramp_manifest_parse_text("", ov.data(), ov.size(), &manifest.m));

    std::string echo = serialized(manifest.m);
    std::fprintf(stderr, "%s", echo.c_str());

    std::string out_dir = config_value(echo, "output.dir");
    std::string prefix = config_value(echo, "output.prefix");
    if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
    auto out_path = [&](const std::string& suffix) {
        return (std::filesystem::path(out_dir) / (prefix + suffix)).string();
    };

    if (command == "design") {
        ContextHandle ctx;
        check(qramp_context_create(manifest.m, &ctx.c));
        double tf = std::stod(config_value(echo, "protocol.t_f_ms"));
        ScheduleHandle sched;
        check(qramp_schedule_design(ctx.c, tf, &sched.s));
        std::string path = out_path("-schedule.csv");
        check(qramp_schedule_write_csv(sched.s, path.c_str()));
        double c_value = 0, flatness = 0;
        check(qramp_schedule_c_value(sched.s, &c_value));
        check(qramp_schedule_flatness(ctx.c, sched.s, &flatness));
        std::printf("schedule %s c=%.6g flatness=%.6g\n", path.c_str(), c_value, flatness);
        return 0;
    }
    if (command == "evolve") {
        ContextHandle ctx;
        check(qramp_context_create(manifest.m, &ctx.c));
        double tf = std::stod(config_value(echo, "protocol.t_f_ms"));
        long stride = std::stol(config_value(echo, "output.stride"));
        std::string traj;
        if (stride > 0) traj = out_path("-trajectory.csv");
        double F = 0;
        check(qramp_evolve_fidelity(ctx.c, tf, traj.empty() ? nullptr : traj.c_str(), &F));
        std::printf("t_f_ms=%.6g F=%.10g\n", tf, F);
        if (!traj.empty()) std::printf("trajectory %s\n", traj.c_str());
        return 0;
    }
    if (command == "validate") {
        size_t needed = 0;
        int all_pass = 0;
        qramp_validate(manifest.m, nullptr, 0, &needed, &all_pass);
        std::string report(needed, '\0');
        check(qramp_validate(manifest.m, report.data(), report.size(), &needed, &all_pass));
        std::printf("%s", report.c_str());
        return all_pass ? 0 : 1;
    }
    // sweep-* commands
    SweepHandle sweep;
    check(qramp_run_sweep(manifest.m, &sweep.s));
    std::string csv = out_path("-sweep.csv"), json = out_path("-sweep.json");
    check(qramp_sweep_write(sweep.s, manifest.m, csv.c_str(), json.c_str()));
    size_t count = 0;
    check(qramp_sweep_record_count(sweep.s, &count));
    double best_f = -1, best_v = 0, best_tf = 0;
    for (size_t i = 0; i < count; ++i) {
        double v = 0, f = 0, tfs = 0;
        char mode[32];
        check(qramp_sweep_record(sweep.s, i, &v, &f, &tfs, mode, sizeof mode));
        if (f > best_f) {
            best_f = f;
            best_v = v;
            best_tf = tfs;
        }
    }
    std::printf("records=%zu best: value=%.6g F_max=%.10g t_f_star_ms=%.6g\n", count, best_v,
                best_f, best_tf);
    std::printf("wrote %s and %s\n", csv.c_str(), json.c_str());
    return 0;
}

// manifest.cpp
#include "core/manifest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qramp {

namespace {

const char* kCommands[] = {"design",      "evolve",     "sweep-tf", "sweep-dd",
                           "sweep-gamma", "sweep-size", "validate"};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

double to_double(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw std::invalid_argument("manifest: bad numeric value for " + key + ": '" + v + "'");
    }
}

long to_long(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        long x = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw std::invalid_argument("manifest: bad integer value for " + key + ": '" + v + "'");
    }
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw std::invalid_argument("manifest: bad boolean value for " + key + ": '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : v) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

struct KeyTable {
    std::map<std::string, std::string> kv;
    bool has(const std::string& k) const { return kv.count(k) > 0; }
    std::string take(const std::string& k) {
        auto it = kv.find(k);
        std::string v = it->second;
        kv.erase(it);
        return v;
    }
};

}  // namespace

std::string command_name(Command c) { return kCommands[static_cast<int>(c)]; }

Command parse_command(const std::string& s) {
    for (int i = 0; i < 7; ++i)
        if (s == kCommands[i]) return static_cast<Command>(i);
    throw std::invalid_argument("manifest: unknown command '" + s + "'");
}

std::vector<double> RunManifest::tf_grid() const {
    std::vector<double> g;
    for (double t = tf_min_ms; t <= tf_max_ms + 1e-9; t += tf_step_ms) g.push_back(t);
    return g;
}

std::vector<double> RunManifest::omega_grid() const {
    std::vector<double> g;
    if (omega_points == 1) return {omega_min};
    for (int i = 0; i < omega_points; ++i)
        g.push_back(omega_min + (omega_max - omega_min) * i / (omega_points - 1));
    return g;
}

std::string RunManifest::serialize() const {
    std::ostringstream os;
    os << "command = " << command_name(command) << "\n";
    os << "model.variant = "
       << (model.variant == Variant::Lipkin  ? "lipkin"
           : model.variant == Variant::Ising ? "ising"
                                             : "dicke")
       << "\n";
    os << "model.N = " << model.N << "\n";
    os << "model.J_kHz_over_2pi = " << fmt(model.J) << "\n";
    os << "model.Jmax_kHz_over_2pi = " << fmt(model.Jmax) << "\n";
    os << "model.alpha = " << fmt(model.alpha) << "\n";
    os << "model.g0_kHz_over_2pi = " << fmt(model.g0) << "\n";
    os << "model.delta_kHz_over_2pi = " << fmt(model.delta) << "\n";
    os << "model.nbar = " << model.nbar << "\n";
    os << "model.B0_kHz_over_2pi = " << fmt(model.B0) << "\n";
    os << "model.Gamma_per_s = " << fmt(model.gamma) << "\n";
    os << "model.dd_omega_kHz_over_2pi = " << fmt(model.dd_omega) << "\n";
    os << "model.dd_alpha_tilde = " << fmt(model.dd_alpha_tilde) << "\n";
    os << "model.ferromagnetic = " << (model.ferromagnetic ? "true" : "false") << "\n";
    os << "model.dephasing_axis = " << (model.dephasing_axis() == DephasingAxis::Z ? "z" : "x")
       << "\n";
    os << "numerics.dt_ms = " << fmt(integrator.dt) << "\n";
    os << "numerics.convergence_check = " << (integrator.convergence_check ? "true" : "false")
       << "\n";
    os << "numerics.n_grid = " << scan.n_grid << "\n";
    os << "numerics.K_max = " << scan.K << "\n";
    os << "protocol.kind = " << protocol << "\n";
    os << "protocol.K = " << K << "\n";
    os << "protocol.level = " << level << "\n";
    os << "protocol.t_f_ms = " << fmt(t_f_ms) << "\n";
    os << "sweep.tf_min_ms = " << fmt(tf_min_ms) << "\n";
    os << "sweep.tf_max_ms = " << fmt(tf_max_ms) << "\n";
    os << "sweep.tf_step_ms = " << fmt(tf_step_ms) << "\n";
    os << "sweep.omega_min_kHz_over_2pi = " << fmt(omega_min) << "\n";
    os << "sweep.omega_max_kHz_over_2pi = " << fmt(omega_max) << "\n";
    os << "sweep.omega_points = " << omega_points << "\n";
    os << "sweep.gamma_values_per_s = ";
    for (size_t i = 0; i < gamma_values.size(); ++i)
        os << (i ? "," : "") << fmt(gamma_values[i]);
    os << "\n";
    os << "sweep.sizes = ";
    for (size_t i = 0; i < sizes.size(); ++i) os << (i ? "," : "") << sizes[i];
    os << "\n";
    os << "sweep.peak_mode = " << peak_mode << "\n";
    os << "sweep.refine = " << (refine ? "true" : "false") << "\n";
    os << "output.dir = " << out_dir << "\n";
    os << "output.prefix = " << prefix << "\n";
    os << "output.stride = " << stride << "\n";
    return os.str();
}

std::uint64_t RunManifest::hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : serialize()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

RunManifest parse_manifest_text(const std::string& text,
                                const std::vector<std::string>& overrides) {
    KeyTable t;
    auto add_line = [&](const std::string& raw, bool is_override) {
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') return;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("manifest: expected key = value, got '" + line + "'");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty()) throw std::invalid_argument("manifest: empty key in '" + line + "'");
        if (!is_override && t.kv.count(key))
            throw std::invalid_argument("manifest: duplicate key " + key);
        t.kv[key] = val;
    };
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) add_line(line, false);
    for (const auto& o : overrides) add_line(o, true);

    RunManifest m;
    bool j_given = false, g0_given = false;

    if (t.has("command")) m.command = parse_command(t.take("command"));
    if (t.has("model.variant")) {
        std::string v = t.take("model.variant");
        if (v == "lipkin")
            m.model.variant = Variant::Lipkin;
        else if (v == "ising")
            m.model.variant = Variant::Ising;
        else if (v == "dicke")
            m.model.variant = Variant::Dicke;
        else
            throw std::invalid_argument("manifest: unknown model.variant '" + v + "'");
    }
    if (t.has("model.N")) m.model.N = static_cast<int>(to_long("model.N", t.take("model.N")));
    if (t.has("model.J_kHz_over_2pi")) {
        m.model.J = to_double("model.J_kHz_over_2pi", t.take("model.J_kHz_over_2pi"));
        j_given = true;
    }
    if (t.has("model.Jmax_kHz_over_2pi"))
        m.model.Jmax = to_double("model.Jmax_kHz_over_2pi", t.take("model.Jmax_kHz_over_2pi"));
    if (t.has("model.alpha")) m.model.alpha = to_double("model.alpha", t.take("model.alpha"));
    if (t.has("model.g0_kHz_over_2pi")) {
        m.model.g0 = to_double("model.g0_kHz_over_2pi", t.take("model.g0_kHz_over_2pi"));
        g0_given = true;
    }
    if (t.has("model.delta_kHz_over_2pi"))
        m.model.delta = to_double("model.delta_kHz_over_2pi", t.take("model.delta_kHz_over_2pi"));
    if (t.has("model.nbar"))
        m.model.nbar = static_cast<int>(to_long("model.nbar", t.take("model.nbar")));
    if (t.has("model.B0_kHz_over_2pi"))
        m.model.B0 = to_double("model.B0_kHz_over_2pi", t.take("model.B0_kHz_over_2pi"));
    if (t.has("model.Gamma_per_s"))
        m.model.gamma = to_double("model.Gamma_per_s", t.take("model.Gamma_per_s"));
    if (t.has("model.dd_omega_kHz_over_2pi"))
        m.model.dd_omega =
            to_double("model.dd_omega_kHz_over_2pi", t.take("model.dd_omega_kHz_over_2pi"));
    if (t.has("model.dd_alpha_tilde"))
        m.model.dd_alpha_tilde = to_double("model.dd_alpha_tilde", t.take("model.dd_alpha_tilde"));
    if (t.has("model.ferromagnetic"))
        m.model.ferromagnetic = to_bool("model.ferromagnetic", t.take("model.ferromagnetic"));
    if (t.has("model.dephasing_axis")) {
        std::string v = t.take("model.dephasing_axis");
        DephasingAxis want = m.model.dephasing_axis();
        if (v != "z" && v != "x")
            throw std::invalid_argument("manifest: model.dephasing_axis must be z or x");
        if ((v == "z") != (want == DephasingAxis::Z))
            throw std::invalid_argument(
                "manifest: model.dephasing_axis is fixed by the variant (expected '" +
                std::string(want == DephasingAxis::Z ? "z" : "x") + "')");
    }

    // Lipkin default J = 0.55 N; Dicke default g0 keeps J = g0^2/|delta|.
    if (!j_given) m.model.J = 0.55 * m.model.N;
    if (m.model.variant == Variant::Dicke) {
        if (m.model.delta == 0.0) m.model.delta = -4.0;
        if (!g0_given) m.model.g0 = std::sqrt(m.model.J * std::abs(m.model.delta));
    }
    // Ising decoupling sweeps cover a wider drive range than Lipkin ones.
    if (m.model.variant == Variant::Ising) {
        if (!t.has("sweep.omega_max_kHz_over_2pi")) m.omega_max = 0.75;
        if (!t.has("sweep.omega_points")) m.omega_points = 31;
    }

    if (t.has("numerics.dt_ms")) m.integrator.dt = to_double("numerics.dt_ms", t.take("numerics.dt_ms"));
    if (t.has("numerics.convergence_check"))
        m.integrator.convergence_check =
            to_bool("numerics.convergence_check", t.take("numerics.convergence_check"));
    if (t.has("numerics.n_grid"))
        m.scan.n_grid = static_cast<int>(to_long("numerics.n_grid", t.take("numerics.n_grid")));
    if (t.has("numerics.K_max"))
        m.scan.K = static_cast<int>(to_long("numerics.K_max", t.take("numerics.K_max")));

    if (t.has("protocol.kind")) {
        m.protocol = t.take("protocol.kind");
        if (m.protocol != "la" && m.protocol != "faquad" && m.protocol != "faquad-k")
            throw std::invalid_argument("manifest: protocol.kind must be la, faquad, or faquad-k");
    }
    if (t.has("protocol.K")) m.K = static_cast<int>(to_long("protocol.K", t.take("protocol.K")));
    if (t.has("protocol.level"))
        m.level = static_cast<int>(to_long("protocol.level", t.take("protocol.level")));
    if (t.has("protocol.t_f_ms")) m.t_f_ms = to_double("protocol.t_f_ms", t.take("protocol.t_f_ms"));

    if (t.has("sweep.tf_min_ms")) m.tf_min_ms = to_double("sweep.tf_min_ms", t.take("sweep.tf_min_ms"));
    if (t.has("sweep.tf_max_ms")) m.tf_max_ms = to_double("sweep.tf_max_ms", t.take("sweep.tf_max_ms"));
    if (t.has("sweep.tf_step_ms"))
        m.tf_step_ms = to_double("sweep.tf_step_ms", t.take("sweep.tf_step_ms"));
    if (t.has("sweep.omega_min_kHz_over_2pi"))
        m.omega_min =
            to_double("sweep.omega_min_kHz_over_2pi", t.take("sweep.omega_min_kHz_over_2pi"));
    if (t.has("sweep.omega_max_kHz_over_2pi"))
        m.omega_max =
            to_double("sweep.omega_max_kHz_over_2pi", t.take("sweep.omega_max_kHz_over_2pi"));
    if (t.has("sweep.omega_points"))
        m.omega_points =
            static_cast<int>(to_long("sweep.omega_points", t.take("sweep.omega_points")));
    if (t.has("sweep.gamma_values_per_s")) {
        m.gamma_values.clear();
        for (const auto& s : split_list(t.take("sweep.gamma_values_per_s")))
            m.gamma_values.push_back(to_double("sweep.gamma_values_per_s", s));
    }
    if (t.has("sweep.sizes")) {
        m.sizes.clear();
        for (const auto& s : split_list(t.take("sweep.sizes")))
            m.sizes.push_back(static_cast<int>(to_long("sweep.sizes", s)));
    }
    if (t.has("sweep.peak_mode")) {
        m.peak_mode = t.take("sweep.peak_mode");
        if (m.peak_mode != "auto" && m.peak_mode != "first_peak" && m.peak_mode != "global_max")
            throw std::invalid_argument(
                "manifest: sweep.peak_mode must be auto, first_peak, or global_max");
    }
    if (t.has("sweep.refine")) m.refine = to_bool("sweep.refine", t.take("sweep.refine"));

    if (t.has("output.dir")) m.out_dir = t.take("output.dir");
    if (t.has("output.prefix")) m.prefix = t.take("output.prefix");
    if (t.has("output.stride")) m.stride = to_long("output.stride", t.take("output.stride"));

    if (!t.kv.empty())
        throw std::invalid_argument("manifest: unknown key " + t.kv.begin()->first);

    m.model.validate();
    if (m.integrator.dt < 0) throw std::invalid_argument("manifest: numerics.dt_ms must be >= 0");
    if (m.scan.n_grid < 3) throw std::invalid_argument("manifest: numerics.n_grid must be >= 3");
    if (m.scan.K < 1) throw std::invalid_argument("manifest: numerics.K_max must be >= 1");
    if (m.K < 1) throw std::invalid_argument("manifest: protocol.K must be >= 1");
    if (m.level < 0) throw std::invalid_argument("manifest: protocol.level must be >= 0");
    if (!(m.t_f_ms > 0)) throw std::invalid_argument("manifest: protocol.t_f_ms must be > 0");
    if (!(m.tf_min_ms > 0) || !(m.tf_step_ms > 0) || m.tf_max_ms < m.tf_min_ms)
        throw std::invalid_argument("manifest: sweep.tf grid must be positive and increasing");
    if (m.omega_points < 1 || m.omega_max < m.omega_min)
        throw std::invalid_argument("manifest: sweep.omega grid must be nonempty and increasing");
    for (double g : m.gamma_values)
        if (g < 0) throw std::invalid_argument("manifest: sweep.gamma_values_per_s must be >= 0");
    if (m.gamma_values.empty() || m.sizes.empty())
        throw std::invalid_argument("manifest: sweep lists must be nonempty");
    for (size_t i = 1; i < m.gamma_values.size(); ++i)
        if (m.gamma_values[i] <= m.gamma_values[i - 1])
            throw std::invalid_argument("manifest: sweep.gamma_values_per_s must increase");
    for (size_t i = 1; i < m.sizes.size(); ++i)
        if (m.sizes[i] <= m.sizes[i - 1])
            throw std::invalid_argument("manifest: sweep.sizes must increase");
    if (m.stride < 0) throw std::invalid_argument("manifest: output.stride must be >= 0");
    return m;
}

RunManifest parse_manifest(const std::string& path, const std::vector<std::string>& overrides) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("manifest: cannot open " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return parse_manifest_text(os.str(), overrides);
}

}  // namespace qramp

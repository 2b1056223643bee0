// schedule.cpp
#include "core/schedule.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace qramp {

std::string protocol_tag(Protocol p, int K) {
    switch (p) {
        case Protocol::LA: return "la";
        case Protocol::FAQUAD: return "faquad";
        case Protocol::FAQUAD_K: return "faquad-" + std::to_string(K);
    }
    return "?";
}

double Schedule::value(double time) const {
    const long n = t.size();
    if (time <= t(0)) return B(0);
    if (time >= t(n - 1)) return B(n - 1);
    // t is ascending; binary search for the bracketing segment.
    long lo = 0, hi = n - 1;
    while (hi - lo > 1) {
        long mid = (lo + hi) / 2;
        (t(mid) <= time ? lo : hi) = mid;
    }
    double w = (time - t(lo)) / (t(hi) - t(lo));
    return B(lo) + w * (B(hi) - B(lo));
}

void Schedule::write_csv(const std::string& path) const {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    f << std::setprecision(17);
    f << "# protocol=" << tag << " t_f_ms=" << t_f << " c_value=" << c_value << " model_hash="
      << std::hex << model_hash << std::dec << "\n";
    f << "t_ms,B_rad_per_ms\n";
    for (long i = 0; i < t.size(); ++i) f << t(i) << "," << B(i) << "\n";
}

Schedule read_schedule_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::string line;
    Schedule s;
    std::vector<double> tv, bv;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream is(line.substr(1));
            std::string kv;
            while (is >> kv) {
                auto eq = kv.find('=');
                if (eq == std::string::npos) continue;
                std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
                if (key == "protocol") s.tag = val;
                else if (key == "t_f_ms") s.t_f = std::stod(val);
                else if (key == "c_value") s.c_value = std::stod(val);
                else if (key == "model_hash") s.model_hash = std::stoull(val, nullptr, 16);
            }
            continue;
        }
        if (line.rfind("t_ms", 0) == 0) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) throw std::runtime_error("bad schedule row: " + line);
        tv.push_back(std::stod(line.substr(0, comma)));
        bv.push_back(std::stod(line.substr(comma + 1)));
    }
    if (tv.size() < 2) throw std::runtime_error("schedule csv has fewer than two samples");
    s.t = Eigen::Map<dvec>(tv.data(), tv.size());
    s.B = Eigen::Map<dvec>(bv.data(), bv.size());
    if (s.t_f == 0) s.t_f = s.t(s.t.size() - 1);
    return s;
}

namespace {

int resolve_level(const SpectralScan& scan, int level) {
    if (level > 0) {
        if (level > scan.K) throw std::invalid_argument("schedule: level beyond scanned K");
        return level;
    }
    auto coupled = scan.coupled_levels();
    if (coupled.empty()) throw std::runtime_error("schedule: no coupled level found");
    return coupled.front();
}

void check_gap(const SpectralScan& scan, const dvec& g) {
    for (long i = 0; i < g.size(); ++i)
        if (g(i) < 1e-12)
            throw std::runtime_error("schedule: gap below 1e-12 at grid point " +
                                     std::to_string(i) + " (B=" + std::to_string(scan.bgrid(i)) +
                                     ")");
}

Schedule invert(const SpectralScan& scan, const dvec& integrand, double t_f,
                const std::string& tag) {
    if (!(t_f > 0)) throw std::invalid_argument("schedule: t_f must be positive");
    const long n = scan.bgrid.size();
    dvec u(n);
    u(0) = 0;
    for (long i = 1; i < n; ++i) {
        double db = scan.bgrid(i - 1) - scan.bgrid(i);  // grid descends
        u(i) = u(i - 1) + 0.5 * (integrand(i - 1) + integrand(i)) * db;
    }
    double utot = u(n - 1);
    if (!(utot > 0) || !std::isfinite(utot))
        throw std::runtime_error("schedule: integrand quadrature is not positive finite");
    Schedule s;
    s.t = (t_f / utot) * u;
    s.B = scan.bgrid;
    s.B(n - 1) = 0.0;  // pin the endpoint; the grid stops at eps*B0
    s.t(n - 1) = t_f;
    s.t_f = t_f;
    s.c_value = utot / t_f;
    s.tag = tag;
    return s;
}

}  // namespace

Schedule design_la(const SpectralScan& scan, double t_f, int level) {
    int k = resolve_level(scan, level);
    // LA rate tracks the local gap at the target level: the split to the level
    // directly below, which for a two-level system is the full gap.
    dvec g = scan.energies.col(k) - scan.energies.col(k - 1);
    check_gap(scan, g);
    return invert(scan, g.array().square().inverse(), t_f, protocol_tag(Protocol::LA));
}

Schedule design_faquad(const SpectralScan& scan, double t_f, int level) {
    int k = resolve_level(scan, level);
    dvec g = scan.gap(k);
    dvec m = scan.coupling_abs(k);
    check_gap(scan, g);
    return invert(scan, m.array() / g.array().square(), t_f, protocol_tag(Protocol::FAQUAD));
}

Schedule design_faquad_k(const SpectralScan& scan, double t_f, int K) {
    if (K < 1) throw std::invalid_argument("design_faquad_k: K must be >= 1");
    auto coupled = scan.coupled_levels();
    if (coupled.empty()) throw std::runtime_error("design_faquad_k: no coupled levels");
    dvec integrand = dvec::Zero(scan.bgrid.size());
    int used = 0;
    for (int k : coupled) {
        if (used == K) break;
        dvec g = scan.gap(k);
        dvec m = scan.coupling_abs(k);
        check_gap(scan, g);
        integrand += (m.array() / g.array().square()).matrix();
        ++used;
    }
    return invert(scan, integrand, t_f, protocol_tag(Protocol::FAQUAD_K, used));
}

double flatness_ratio(const Schedule& s, const SpectralScan& scan, int level) {
    int k = resolve_level(scan, level);
    dvec g = scan.gap(k);
    dvec m = scan.coupling_abs(k);
    const long n = s.t.size();
    double cmax = 0, cmin = std::numeric_limits<double>::infinity();
    // Interior samples only: endpoint cells carry the grid cutoff.
    for (long i = 1; i + 1 < n; ++i) {
        double dt = s.t(i + 1) - s.t(i - 1);
        if (dt <= 0) continue;
        double dbdt = (s.B(i + 1) - s.B(i - 1)) / dt;
        double c = std::abs(m(i) * dbdt) / (g(i) * g(i));
        cmax = std::max(cmax, c);
        cmin = std::min(cmin, c);
    }
    if (!(cmin > 0)) return std::numeric_limits<double>::infinity();
    return cmax / cmin;
}

}  // namespace qramp

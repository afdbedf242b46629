// config.hpp - flat key-value run configuration with [medium], [schedule],
// [pulse] and [grid] sections.  Field names match the domain types exactly;
// unknown keys are a hard error so that typos in physics parameters cannot
// silently fall back to defaults.

#pragma once

#include "chos/errors.hpp"
#include "chos/model.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>

namespace chos {

struct RunConfig {
    // [medium]
    double gamma = 1.0;
    double optical_depth = 100.0;
    double length = 1.0;
    double light_speed = 299792458.0;
    // [schedule]
    std::string variant = "constant";  // constant | step | ramped
    double delta0 = 0.0;
    double t_off = 0.0;
    double t_on = 0.0;
    double ramp_time = 0.0;
    // [pulse]
    double sigma_tau = 0.002;
    double t_center = 0.008;
    double amplitude = 1.0;
    cplx pol_x{0.0, 0.0};
    cplx pol_y{1.0, 0.0};
    // [grid]
    int nz = 400;
    double dt = 0.0;     // 0 = auto: min(sigma_tau/40, 0.05/delta0)
    double t_max = 0.0;  // 0 = auto from the schedule/pulse
    int snapshot_stride = 0;

    MediumParams medium() const {
        return MediumParams::make(gamma, optical_depth, length, light_speed);
    }

    SplittingSchedule schedule() const {
        if (variant == "constant") return SplittingSchedule::constant(delta0);
        if (variant == "step") return SplittingSchedule::step_store(delta0, t_off, t_on);
        if (variant == "ramped")
            return SplittingSchedule::ramped_store(delta0, t_off, t_on, ramp_time);
        throw validation_error("config: schedule.variant must be constant, step or ramped");
    }

    ProbePulse pulse() const {
        return ProbePulse::gaussian(sigma_tau, t_center, amplitude, pol_x, pol_y);
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

inline double parse_double(const std::string& v, const std::string& key) {
    std::size_t pos = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &pos);
    } catch (...) {
        throw validation_error("config: cannot parse number for key '" + key + "': " + v);
    }
    if (pos != v.size())
        throw validation_error("config: trailing junk in value for key '" + key + "': " + v);
    return x;
}

inline int parse_int(const std::string& v, const std::string& key) {
    const double x = parse_double(v, key);
    const int i = static_cast<int>(x);
    if (static_cast<double>(i) != x)
        throw validation_error("config: expected integer for key '" + key + "': " + v);
    return i;
}

// complex values: either a plain real or "(re, im)"
inline cplx parse_complex(const std::string& v, const std::string& key) {
    const std::string s = trim(v);
    if (!s.empty() && s.front() == '(') {
        if (s.back() != ')')
            throw validation_error("config: malformed complex for key '" + key + "': " + v);
        const std::string inner = s.substr(1, s.size() - 2);
        const auto comma = inner.find(',');
        if (comma == std::string::npos)
            throw validation_error("config: malformed complex for key '" + key + "': " + v);
        return {parse_double(trim(inner.substr(0, comma)), key),
                parse_double(trim(inner.substr(comma + 1)), key)};
    }
    return {parse_double(s, key), 0.0};
}

} // namespace detail

inline RunConfig parse_config(std::istream& in, const std::string& origin = "<stream>") {
    RunConfig cfg;
    std::string line, section;
    int lineno = 0;
    std::set<std::string> seen;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw validation_error(origin + ":" + std::to_string(lineno) +
                                       ": malformed section header");
            section = detail::trim(line.substr(1, line.size() - 2));
            if (section != "medium" && section != "schedule" && section != "pulse" &&
                section != "grid")
                throw validation_error(origin + ":" + std::to_string(lineno) +
                                       ": unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw validation_error(origin + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string val = detail::trim(line.substr(eq + 1));
        const std::string full = section + "." + key;
        if (!seen.insert(full).second)
            throw validation_error(origin + ":" + std::to_string(lineno) + ": duplicate key '" +
                                   full + "'");

        if (full == "medium.gamma") cfg.gamma = detail::parse_double(val, full);
        else if (full == "medium.optical_depth") cfg.optical_depth = detail::parse_double(val, full);
        else if (full == "medium.length") cfg.length = detail::parse_double(val, full);
        else if (full == "medium.light_speed") cfg.light_speed = detail::parse_double(val, full);
        else if (full == "schedule.variant") cfg.variant = val;
        else if (full == "schedule.delta0") cfg.delta0 = detail::parse_double(val, full);
        else if (full == "schedule.t_off") cfg.t_off = detail::parse_double(val, full);
        else if (full == "schedule.t_on") cfg.t_on = detail::parse_double(val, full);
        else if (full == "schedule.ramp_time") cfg.ramp_time = detail::parse_double(val, full);
        else if (full == "pulse.sigma_tau") cfg.sigma_tau = detail::parse_double(val, full);
        else if (full == "pulse.t_center") cfg.t_center = detail::parse_double(val, full);
        else if (full == "pulse.amplitude") cfg.amplitude = detail::parse_double(val, full);
        else if (full == "pulse.pol_x") cfg.pol_x = detail::parse_complex(val, full);
        else if (full == "pulse.pol_y") cfg.pol_y = detail::parse_complex(val, full);
        else if (full == "grid.nz") cfg.nz = detail::parse_int(val, full);
        else if (full == "grid.dt") cfg.dt = detail::parse_double(val, full);
        else if (full == "grid.t_max") cfg.t_max = detail::parse_double(val, full);
        else if (full == "grid.snapshot_stride") cfg.snapshot_stride = detail::parse_int(val, full);
        else
            throw validation_error(origin + ":" + std::to_string(lineno) + ": unknown key '" +
                                   full + "'");
    }
    return cfg;
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("config: cannot open '" + path + "'");
    return parse_config(in, path);
}

// Round-trippable serialization (%.17g reparses to the identical double).
inline std::string serialize_config(const RunConfig& c) {
    char buf[64];
    auto num = [&buf](double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    std::ostringstream os;
    os << "[medium]\n";
    os << "gamma = " << num(c.gamma) << "\n";
    os << "optical_depth = " << num(c.optical_depth) << "\n";
    os << "length = " << num(c.length) << "\n";
    os << "light_speed = " << num(c.light_speed) << "\n";
    os << "\n[schedule]\n";
    os << "variant = " << c.variant << "\n";
    os << "delta0 = " << num(c.delta0) << "\n";
    os << "t_off = " << num(c.t_off) << "\n";
    os << "t_on = " << num(c.t_on) << "\n";
    os << "ramp_time = " << num(c.ramp_time) << "\n";
    os << "\n[pulse]\n";
    os << "sigma_tau = " << num(c.sigma_tau) << "\n";
    os << "t_center = " << num(c.t_center) << "\n";
    os << "amplitude = " << num(c.amplitude) << "\n";
    os << "pol_x = (" << num(c.pol_x.real()) << ", " << num(c.pol_x.imag()) << ")\n";
    os << "pol_y = (" << num(c.pol_y.real()) << ", " << num(c.pol_y.imag()) << ")\n";
    os << "\n[grid]\n";
    os << "nz = " << c.nz << "\n";
    os << "dt = " << num(c.dt) << "\n";
    os << "t_max = " << num(c.t_max) << "\n";
    os << "snapshot_stride = " << c.snapshot_stride << "\n";
    return os.str();
}

} // namespace chos

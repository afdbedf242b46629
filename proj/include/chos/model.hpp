// model.hpp - domain types and unit conventions for the CHoS simulator.
//
// Everything downstream works in the canonical dimensionless system:
//   time      in units of 1/gamma   (gamma = full coherence decay rate)
//   space     in units of the medium length,  zeta = z / L  in [0, 1]
//   splitting in units of gamma
// The vacuum transit term L/c is dropped (retarded frame); for every
// parameter set of interest L/c is many orders of magnitude below the pulse
// duration.
//
// Coupling convention: the normalized field and coherence equations carry
// the same coupling kappa, fixed so that the steady-state on-resonance
// (Delta = 0, omega = 0) intensity transmission is exactly exp(-b).  With
// coherence decay 1/2 in gamma units this pins kappa^2 = b/4.

#pragma once

#include "chos/errors.hpp"

#include <cmath>
#include <complex>
#include <iostream>
#include <string>
#include <vector>

namespace chos {

using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// MediumParams

struct MediumParams {
    double gamma = 1.0;                  // coherence full decay rate [rad/s]
    double optical_depth = 0.0;          // b, dimensionless
    double length = 1.0;                 // L [m]
    double light_speed = 299792458.0;    // c [m/s]

    double alpha() const { return optical_depth / length; }   // [1/m]
    double kappa() const { return std::sqrt(optical_depth) / 2.0; }

    // Collective coupling g*sqrt(2N) [rad/s] consistent with kappa^2 = b/4:
    // (G L / c) * (G / gamma) = b/4  =>  G = sqrt(alpha*gamma*c) / 2.
    double coupling_G() const { return std::sqrt(alpha() * gamma * light_speed) / 2.0; }

    // optical_depth = 0 is the free-propagation limit; it is accepted here
    // (the solver and sweeps use it as a reference column) but rejected by
    // the physical-input path in normalize().
    static MediumParams make(double gamma, double optical_depth, double length = 1.0,
                             double light_speed = 299792458.0) {
        if (!(gamma > 0.0)) throw validation_error("MediumParams: gamma must be > 0");
        if (!(optical_depth >= 0.0)) throw validation_error("MediumParams: optical_depth must be >= 0");
        if (!(length > 0.0)) throw validation_error("MediumParams: length must be > 0");
        if (!(light_speed > 0.0)) throw validation_error("MediumParams: light_speed must be > 0");
        return MediumParams{gamma, optical_depth, length, light_speed};
    }
};

// ---------------------------------------------------------------------------
// SplittingSchedule: the control Delta(t), in gamma units.

struct SplittingSchedule {
    enum class Kind { constant, step_store, ramped_store };

    Kind kind = Kind::constant;
    double delta0 = 0.0;     // splitting before/after storage [gamma]
    double t_off = 0.0;      // switch-off time [1/gamma]
    double t_on = 0.0;       // switch-on time  [1/gamma]
    double ramp_time = 0.0;  // transition duration for ramped_store [1/gamma]

    static SplittingSchedule constant(double delta0) {
        check_delta(delta0);
        SplittingSchedule s;
        s.kind = Kind::constant;
        s.delta0 = delta0;
        return s;
    }

    static SplittingSchedule step_store(double delta0, double t_off, double t_on) {
        check_delta(delta0);
        check_window(t_off, t_on);
        SplittingSchedule s;
        s.kind = Kind::step_store;
        s.delta0 = delta0;
        s.t_off = t_off;
        s.t_on = t_on;
        return s;
    }

    static SplittingSchedule ramped_store(double delta0, double t_off, double t_on, double ramp_time) {
        check_delta(delta0);
        check_window(t_off, t_on);
        if (!(ramp_time >= 0.0)) throw validation_error("SplittingSchedule: ramp_time must be >= 0");
        SplittingSchedule s;
        s.kind = Kind::ramped_store;
        s.delta0 = delta0;
        s.t_off = t_off;
        s.t_on = t_on;
        s.ramp_time = ramp_time;
        return s;
    }

    // Cubic smoothstep, C^1 at both ends.
    static double smoothstep(double u) {
        if (u <= 0.0) return 0.0;
        if (u >= 1.0) return 1.0;
        return u * u * (3.0 - 2.0 * u);
    }

    double value(double t) const {
        switch (kind) {
            case Kind::constant:
                return delta0;
            case Kind::step_store:
                return (t < t_off || t >= t_on) ? delta0 : 0.0;
            case Kind::ramped_store: {
                if (ramp_time <= 0.0)  // degenerate ramp is a step
                    return (t < t_off || t >= t_on) ? delta0 : 0.0;
                // Each switch is a smoothstep of duration ramp_time centered
                // on the switch time.  Overlapping transitions clip to [0,1].
                const double down = smoothstep((t - (t_off - 0.5 * ramp_time)) / ramp_time);
                const double up = smoothstep((t - (t_on - 0.5 * ramp_time)) / ramp_time);
                double f = 1.0 - down + up;
                if (f < 0.0) f = 0.0;
                if (f > 1.0) f = 1.0;
                return delta0 * f;
            }
        }
        return delta0;
    }

    // Largest splitting the schedule ever applies (grid policies key off it).
    double max_value() const { return delta0; }

private:
    static void check_delta(double d) {
        if (!(d >= 0.0)) throw validation_error("SplittingSchedule: delta0 must be >= 0");
    }
    static void check_window(double t_off, double t_on) {
        if (!(t_off < t_on)) throw validation_error("SplittingSchedule: t_off must be < t_on");
    }
};

// ---------------------------------------------------------------------------
// ProbePulse: weak-probe Gaussian input envelope at zeta = 0.

struct ProbePulse {
    double sigma_tau = 0.0;   // Gaussian width [1/gamma]
    double t_center = 0.0;    // [1/gamma]
    double amplitude = 1.0;   // peak field, pure scale factor in linear response
    cplx pol_x{0.0, 0.0};     // input polarization components, |px|^2+|py|^2 = 1
    cplx pol_y{1.0, 0.0};

    static ProbePulse gaussian(double sigma_tau, double t_center, double amplitude = 1.0,
                               cplx pol_x = {0.0, 0.0}, cplx pol_y = {1.0, 0.0}) {
        if (!(sigma_tau > 0.0)) throw validation_error("ProbePulse: sigma_tau must be > 0");
        const double norm = std::norm(pol_x) + std::norm(pol_y);
        if (std::abs(norm - 1.0) > 1e-9)
            throw validation_error("ProbePulse: |pol_x|^2 + |pol_y|^2 must equal 1");
        return ProbePulse{sigma_tau, t_center, amplitude, pol_x, pol_y};
    }

    double envelope(double t) const {
        const double u = (t - t_center) / sigma_tau;
        return amplitude * std::exp(-0.5 * u * u);
    }

    // Truncating the leading tail biases fidelity; callers are warned once.
    bool is_truncated() const { return t_center < 4.0 * sigma_tau; }
};

inline void warn_if_truncated(const ProbePulse& p) {
    if (p.is_truncated())
        std::cerr << "chos: warning: pulse t_center < 4*sigma_tau, "
                     "leading tail is truncated at t=0\n";
}

// ---------------------------------------------------------------------------
// SimGrid

struct SimGrid {
    enum class Frame { retarded };

    int nz = 400;
    int nt = 2;
    double t_max = 0.0;        // [1/gamma]
    Frame frame = Frame::retarded;

    double dt() const { return t_max / (nt - 1); }
    double dzeta() const { return 1.0 / (nz - 1); }

    static SimGrid make(int nz, int nt, double t_max) {
        if (nz < 2) throw validation_error("SimGrid: nz must be >= 2");
        if (nt < 2) throw validation_error("SimGrid: nt must be >= 2");
        if (!(t_max > 0.0)) throw validation_error("SimGrid: t_max must be > 0");
        return SimGrid{nz, nt, t_max};
    }
};

// Default time step: resolve the pulse (sigma_tau/40), the splitting
// rotation (0.05/Delta0), and the collective field-coherence coupling
// (0.5/kappa^2 = 2/b, the explicit-scheme stability bound that matters when
// the splitting is off and the medium is driven on resonance).
inline double auto_dt(double optical_depth, double max_delta, double sigma_tau) {
    double dt = sigma_tau / 40.0;
    if (max_delta > 0.0) dt = std::min(dt, 0.05 / max_delta);
    if (optical_depth > 0.0) dt = std::min(dt, 2.0 / optical_depth);
    return dt;
}

// Default grid: nz = 400 with the auto_dt time step.  Passes the
// grid-convergence check on the reference storage configuration with
// roughly 2x margin.
inline SimGrid auto_grid(const MediumParams& params, const SplittingSchedule& schedule,
                         const ProbePulse& pulse, double t_max, int nz = 400) {
    const double dt = auto_dt(params.optical_depth, schedule.max_value(), pulse.sigma_tau);
    const int nt = static_cast<int>(std::ceil(t_max / dt)) + 1;
    return SimGrid::make(nz, nt, t_max);
}

// ---------------------------------------------------------------------------
// SchemeVariant

enum class SchemeVariant {
    zeeman_v,         // evolves (E_y, sigma_z, sigma_y)
    stark_two_class,  // evolves (E_y, sigma_1, sigma_2)
    full_five_var,    // evolves (E_x, E_y, sigma_z, sigma_x, sigma_y)
};

inline std::string to_string(SchemeVariant v) {
    switch (v) {
        case SchemeVariant::zeeman_v: return "zeeman";
        case SchemeVariant::stark_two_class: return "stark";
        case SchemeVariant::full_five_var: return "full";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Physical <-> dimensionless conversion

struct PhysicalInput {
    double gamma = 0.0;          // [rad/s]
    double alpha = 0.0;          // [1/m]; either alpha or optical_depth may be given
    double optical_depth = 0.0;  // dimensionless; takes precedence if both set
    double length = 0.0;         // [m]
    double light_speed = 299792458.0;
    double delta = 0.0;                  // splitting [rad/s]
    std::vector<double> durations;       // times [s]
};

struct NormalizedSetup {
    MediumParams medium;
    double delta_over_gamma = 0.0;
    std::vector<double> durations;  // [1/gamma]
};

inline NormalizedSetup normalize(const PhysicalInput& in) {
    if (!(in.gamma > 0.0)) throw validation_error("normalize: gamma must be > 0");
    if (!(in.length > 0.0)) throw validation_error("normalize: length must be > 0");
    if (!(in.light_speed > 0.0)) throw validation_error("normalize: light_speed must be > 0");
    double b = in.optical_depth;
    if (b == 0.0 && in.alpha > 0.0) b = in.alpha * in.length;
    if (!(b > 0.0)) throw validation_error("normalize: optical_depth (or alpha) must be > 0");
    if (in.delta < 0.0) throw validation_error("normalize: delta must be >= 0");

    NormalizedSetup out;
    out.medium = MediumParams::make(in.gamma, b, in.length, in.light_speed);
    out.delta_over_gamma = in.delta / in.gamma;
    out.durations.reserve(in.durations.size());
    for (double d : in.durations) {
        if (!(d >= 0.0)) throw validation_error("normalize: durations must be >= 0");
        out.durations.push_back(d * in.gamma);
    }
    return out;
}

inline PhysicalInput denormalize(const NormalizedSetup& s) {
    PhysicalInput out;
    out.gamma = s.medium.gamma;
    out.alpha = s.medium.alpha();
    out.optical_depth = s.medium.optical_depth;
    out.length = s.medium.length;
    out.light_speed = s.medium.light_speed;
    out.delta = s.delta_over_gamma * s.medium.gamma;
    out.durations.reserve(s.durations.size());
    for (double d : s.durations) out.durations.push_back(d / s.medium.gamma);
    return out;
}

} // namespace chos

// mb_solver.hpp - time-domain integration of the one-dimensional
// Maxwell-Bloch equations in the retarded frame.
//
// Canonical normalized system (time in 1/gamma, zeta = z/L, kappa = sqrt(b)/2):
//
//   d_zeta E_y      = -i kappa sigma_y                E_y(0, t) = input pulse
//   d_t   sigma_z   = -(r/2) sigma_z + D(t) sigma_y
//   d_t   sigma_y   = -i kappa E_y - D(t) sigma_z - (r/2) sigma_y
//
// r = 1 normally; r = 0 gives the lossless limit used by the energy checks.
// The Stark two-class variant evolves (sigma_1, sigma_2) with coupling
// kappa/sqrt(2) per class and is related to the Zeeman variant by the exact
// unitary map sigma_y = (s2+s1)/sqrt(2), sigma_z = (s2-s1)/(sqrt(2) i).
// The five-variable variant adds the decoupled (E_x, sigma_x) chain:
//   d_zeta E_x = +i kappa sigma_x,  d_t sigma_x = +i kappa E_x - (r/2) sigma_x.
//
// Scheme: the atomic variables at every zeta advance by an explicit 4th-order
// step using the local field; the field is then re-integrated along zeta from
// the boundary condition by trapezoidal quadrature, with one
// predictor-corrector pass for self-consistency of the field at the
// sub-step stage times.  Runs are deterministic: identical inputs give
// bit-identical outputs.

#pragma once

#include "chos/model.hpp"
#include "chos/numerics.hpp"
#include "chos/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

namespace chos {

struct SolverOptions {
    SchemeVariant variant = SchemeVariant::zeeman_v;
    int snapshot_stride = 0;     // 0 = auto: ceil(nt / 200)
    double decay_factor = 1.0;   // scales the gamma/2 coherence decay; 0 = lossless
    // Optional boundary overrides; default is pol * pulse envelope.
    std::function<cplx(double)> boundary_y;
    std::function<cplx(double)> boundary_x;
};

struct Snapshot {
    double t = 0.0;
    int step = 0;
    std::vector<cplx> field_y;
    std::vector<cplx> field_x;  // five-variable runs only
    // Atomic components by variant:
    //   zeeman_v:        pol_a = sigma_z, pol_b = sigma_y
    //   stark_two_class: pol_a = sigma_1, pol_b = sigma_2
    //   full_five_var:   pol_a = sigma_z, pol_b = sigma_y, pol_c = sigma_x
    std::vector<cplx> pol_a;
    std::vector<cplx> pol_b;
    std::vector<cplx> pol_c;
};

struct SolverDiagnostics {
    long steps = 0;
    double max_residual = 0.0;       // corrector vs predictor field change, relative
    double max_abs_field_y = 0.0;    // running maxima over the whole space-time grid
    double max_abs_field_x = 0.0;
    double max_abs_sigma_x = 0.0;
    double entered_fraction_at_off = -1.0;  // input energy inside the medium at t_off
};

struct SimResult {
    SimGrid grid;
    SchemeVariant variant = SchemeVariant::zeeman_v;
    double kappa = 0.0;
    std::vector<double> t;            // nt
    std::vector<cplx> e_in, e_out;    // y-mode boundary series, nt
    std::vector<cplx> e_in_x, e_out_x;  // five-variable runs only
    std::vector<double> delta_trace;  // splitting actually applied, nt
    std::vector<double> atomic_sum;   // integral over zeta of summed |sigma|^2, nt
    std::vector<double> field_sum;    // integral over zeta of |E|^2, nt
    int snapshot_stride = 1;
    std::vector<Snapshot> snapshots;
    SolverDiagnostics diag;

    bool has_snapshots() const { return !snapshots.empty(); }
};

namespace detail {

// Effective schedule with step switch times snapped to the nearest grid time
// (no sub-step event location; RampedStore exists for smooth studies).
struct EffectiveSchedule {
    SplittingSchedule s;
    double value(double t) const { return s.value(t); }
};

inline EffectiveSchedule snap_schedule(const SplittingSchedule& s, double dt) {
    EffectiveSchedule e{s};
    if (s.kind == SplittingSchedule::Kind::step_store) {
        e.s.t_off = std::round(s.t_off / dt) * dt;
        e.s.t_on = std::round(s.t_on / dt) * dt;
        if (!(e.s.t_off < e.s.t_on)) e.s.t_on = e.s.t_off + dt;
    }
    return e;
}

struct ZeemanNode { cplx sz, sy; };
struct StarkNode { cplx s1, s2; };

inline void rhs_zeeman(cplx sz, cplx sy, cplx e, double d, double hr, double kappa,
                       cplx& dsz, cplx& dsy) {
    dsz = -hr * sz + d * sy;
    dsy = cplx(0.0, -kappa) * e - d * sz - hr * sy;
}

inline ZeemanNode rk4_zeeman(ZeemanNode s, cplx e0, cplx em, cplx e1, double d0, double dm,
                             double d1, double hr, double kappa, double dt) {
    cplx k1z, k1y, k2z, k2y, k3z, k3y, k4z, k4y;
    rhs_zeeman(s.sz, s.sy, e0, d0, hr, kappa, k1z, k1y);
    rhs_zeeman(s.sz + 0.5 * dt * k1z, s.sy + 0.5 * dt * k1y, em, dm, hr, kappa, k2z, k2y);
    rhs_zeeman(s.sz + 0.5 * dt * k2z, s.sy + 0.5 * dt * k2y, em, dm, hr, kappa, k3z, k3y);
    rhs_zeeman(s.sz + dt * k3z, s.sy + dt * k3y, e1, d1, hr, kappa, k4z, k4y);
    s.sz += dt / 6.0 * (k1z + 2.0 * (k2z + k3z) + k4z);
    s.sy += dt / 6.0 * (k1y + 2.0 * (k2y + k3y) + k4y);
    return s;
}

inline void rhs_stark(cplx s1, cplx s2, cplx e, double d, double hr, double ks,
                      cplx& ds1, cplx& ds2) {
    const cplx drive = cplx(0.0, -ks) * e;
    ds1 = -cplx(hr, d) * s1 + drive;
    ds2 = -cplx(hr, -d) * s2 + drive;
}

inline StarkNode rk4_stark(StarkNode s, cplx e0, cplx em, cplx e1, double d0, double dm,
                           double d1, double hr, double ks, double dt) {
    cplx k11, k12, k21, k22, k31, k32, k41, k42;
    rhs_stark(s.s1, s.s2, e0, d0, hr, ks, k11, k12);
    rhs_stark(s.s1 + 0.5 * dt * k11, s.s2 + 0.5 * dt * k12, em, dm, hr, ks, k21, k22);
    rhs_stark(s.s1 + 0.5 * dt * k21, s.s2 + 0.5 * dt * k22, em, dm, hr, ks, k31, k32);
    rhs_stark(s.s1 + dt * k31, s.s2 + dt * k32, e1, d1, hr, ks, k41, k42);
    s.s1 += dt / 6.0 * (k11 + 2.0 * (k21 + k31) + k41);
    s.s2 += dt / 6.0 * (k12 + 2.0 * (k22 + k32) + k42);
    return s;
}

inline cplx rk4_sigma_x(cplx sx, cplx e0, cplx em, cplx e1, double hr, double kappa, double dt) {
    auto f = [&](cplx s, cplx e) { return cplx(0.0, kappa) * e - hr * s; };
    const cplx k1 = f(sx, e0);
    const cplx k2 = f(sx + 0.5 * dt * k1, em);
    const cplx k3 = f(sx + 0.5 * dt * k2, em);
    const cplx k4 = f(sx + dt * k3, e1);
    return sx + dt / 6.0 * (k1 + 2.0 * (k2 + k3) + k4);
}

// E_j = boundary + coupling * cumulative-trapezoid of source along zeta.
inline void integrate_field(std::vector<cplx>& e, const std::vector<cplx>& src, cplx boundary,
                            cplx coupling, double dzeta) {
    e[0] = boundary;
    cplx acc(0.0, 0.0);
    for (std::size_t j = 1; j < e.size(); ++j) {
        acc += 0.5 * dzeta * (src[j - 1] + src[j]);
        e[j] = boundary + coupling * acc;
    }
}

} // namespace detail

// ---------------------------------------------------------------------------

inline SimResult simulate(const MediumParams& params, const SplittingSchedule& schedule,
                          const ProbePulse& pulse, const SimGrid& grid,
                          const SolverOptions& opts = {}) {
    using namespace detail;

    const double dt = grid.dt();
    if (dt > pulse.sigma_tau / 20.0)
        throw validation_error("simulate: grid does not resolve the pulse (need dt <= sigma_tau/20)");
    if (schedule.max_value() > 0.0 && dt > 0.1 / schedule.max_value())
        throw validation_error("simulate: grid does not resolve the splitting (need dt <= 0.1/Delta0)");
    if (!(opts.decay_factor >= 0.0))
        throw validation_error("simulate: decay_factor must be >= 0");
    warn_if_truncated(pulse);

    const int nz = grid.nz;
    const int nt = grid.nt;
    const double dzeta = grid.dzeta();
    const double kappa = params.kappa();
    const double ks = kappa / std::sqrt(2.0);  // per-class Stark coupling
    const double hr = 0.5 * opts.decay_factor;
    const EffectiveSchedule sched = snap_schedule(schedule, dt);
    const bool five = opts.variant == SchemeVariant::full_five_var;
    const bool stark = opts.variant == SchemeVariant::stark_two_class;

    auto bnd_y = opts.boundary_y
                     ? opts.boundary_y
                     : std::function<cplx(double)>(
                           [&pulse](double t) { return pulse.pol_y * pulse.envelope(t); });
    auto bnd_x = opts.boundary_x
                     ? opts.boundary_x
                     : std::function<cplx(double)>(
                           [&pulse](double t) { return pulse.pol_x * pulse.envelope(t); });

    SimResult res;
    res.grid = grid;
    res.variant = opts.variant;
    res.kappa = kappa;
    res.t.resize(nt);
    res.e_in.resize(nt);
    res.e_out.resize(nt);
    res.delta_trace.resize(nt);
    res.atomic_sum.resize(nt);
    res.field_sum.resize(nt);
    if (five) { res.e_in_x.resize(nt); res.e_out_x.resize(nt); }
    res.snapshot_stride =
        opts.snapshot_stride > 0 ? opts.snapshot_stride : std::max(1, (nt + 199) / 200);

    // state arrays; (a, b) = (sigma_z, sigma_y) or (sigma_1, sigma_2)
    std::vector<cplx> sa(nz, cplx{}), sb(nz, cplx{}), sx, ey(nz), ex;
    std::vector<cplx> sa_p(nz), sb_p(nz), sx_p, ey_p(nz), ey_f(nz), ex_p, src(nz);
    if (five) { sx.assign(nz, cplx{}); sx_p.resize(nz); ex.resize(nz); ex_p.resize(nz); }

    auto field_pass = [&](std::vector<cplx>& e, const std::vector<cplx>& a,
                          const std::vector<cplx>& b, cplx boundary) {
        if (stark) {
            for (int j = 0; j < nz; ++j) src[j] = a[j] + b[j];
            integrate_field(e, src, boundary, cplx(0.0, -ks), dzeta);
        } else {
            integrate_field(e, b, boundary, cplx(0.0, -kappa), dzeta);
        }
    };

    auto record = [&](int n, double t_now, double d_now) {
        res.t[n] = t_now;
        res.delta_trace[n] = d_now;
        res.e_in[n] = ey[0];
        res.e_out[n] = ey[nz - 1];
        if (five) { res.e_in_x[n] = ex[0]; res.e_out_x[n] = ex[nz - 1]; }
        double asum = 0.0, fsum = 0.0;
        for (int j = 0; j < nz; ++j) {
            const double w = trapz_weight(j, nz);
            asum += w * (std::norm(sa[j]) + std::norm(sb[j]) + (five ? std::norm(sx[j]) : 0.0));
            fsum += w * (std::norm(ey[j]) + (five ? std::norm(ex[j]) : 0.0));
        }
        res.atomic_sum[n] = asum * dzeta;
        res.field_sum[n] = fsum * dzeta;
        if (!std::isfinite(asum) || !std::isfinite(fsum))
            throw solver_error("simulate: non-finite state", n);
        const double m = std::abs(res.e_out[n]);
        if (m > res.diag.max_abs_field_y) res.diag.max_abs_field_y = m;
    };

    auto snapshot = [&](int n, double t_now) {
        Snapshot s;
        s.t = t_now;
        s.step = n;
        s.field_y = ey;
        s.pol_a = sa;
        s.pol_b = sb;
        if (five) { s.field_x = ex; s.pol_c = sx; }
        res.snapshots.push_back(std::move(s));
    };

    // initial state: unexcited medium, field slaved to the boundary value
    field_pass(ey, sa, sb, bnd_y(0.0));
    if (five) integrate_field(ex, sx, bnd_x(0.0), cplx(0.0, kappa), dzeta);
    record(0, 0.0, sched.value(0.0));
    snapshot(0, 0.0);

    // Stepped schedules switch exactly at grid points; within one step the
    // splitting is constant and is sampled at the step midpoint so no RK
    // stage straddles a discontinuity.  Smooth ramps are sampled per stage.
    const bool smooth = schedule.kind == SplittingSchedule::Kind::ramped_store &&
                        schedule.ramp_time > 0.0;

    for (int n = 0; n + 1 < nt; ++n) {
        const double t0 = n * dt;
        const double tm = t0 + 0.5 * dt;
        const double t1 = t0 + dt;
        const double dm = sched.value(tm);
        const double d0 = smooth ? sched.value(t0) : dm;
        const double d1 = smooth ? sched.value(t1) : dm;
        const cplx by1 = bnd_y(t1);

        // predictor: field frozen at its start-of-step value
        if (stark) {
            for (int j = 0; j < nz; ++j) {
                const StarkNode s = rk4_stark({sa[j], sb[j]}, ey[j], ey[j], ey[j], d0, dm, d1,
                                              hr, ks, dt);
                sa_p[j] = s.s1; sb_p[j] = s.s2;
            }
        } else {
            for (int j = 0; j < nz; ++j) {
                const ZeemanNode s = rk4_zeeman({sa[j], sb[j]}, ey[j], ey[j], ey[j], d0, dm, d1,
                                                hr, kappa, dt);
                sa_p[j] = s.sz; sb_p[j] = s.sy;
            }
        }
        field_pass(ey_p, sa_p, sb_p, by1);

        // corrector: field linearly interpolated between start and predicted end
        double resid = 0.0, fmax = 0.0;
        if (stark) {
            for (int j = 0; j < nz; ++j) {
                const cplx em = 0.5 * (ey[j] + ey_p[j]);
                const StarkNode s = rk4_stark({sa[j], sb[j]}, ey[j], em, ey_p[j], d0, dm, d1,
                                              hr, ks, dt);
                sa[j] = s.s1; sb[j] = s.s2;
            }
        } else {
            for (int j = 0; j < nz; ++j) {
                const cplx em = 0.5 * (ey[j] + ey_p[j]);
                const ZeemanNode s = rk4_zeeman({sa[j], sb[j]}, ey[j], em, ey_p[j], d0, dm, d1,
                                                hr, kappa, dt);
                sa[j] = s.sz; sb[j] = s.sy;
            }
        }
        field_pass(ey_f, sa, sb, by1);
        for (int j = 0; j < nz; ++j) {
            resid = std::max(resid, std::abs(ey_f[j] - ey_p[j]));
            fmax = std::max(fmax, std::abs(ey_f[j]));
        }
        std::swap(ey, ey_f);
        if (fmax > 0.0) res.diag.max_residual = std::max(res.diag.max_residual, resid / fmax);
        if (fmax > res.diag.max_abs_field_y) res.diag.max_abs_field_y = fmax;

        if (five) {
            const cplx bx1 = bnd_x(t1);
            for (int j = 0; j < nz; ++j) sx_p[j] = rk4_sigma_x(sx[j], ex[j], ex[j], ex[j], hr, kappa, dt);
            integrate_field(ex_p, sx_p, bx1, cplx(0.0, kappa), dzeta);
            for (int j = 0; j < nz; ++j) {
                const cplx em = 0.5 * (ex[j] + ex_p[j]);
                sx[j] = rk4_sigma_x(sx[j], ex[j], em, ex_p[j], hr, kappa, dt);
            }
            integrate_field(ex, sx, bx1, cplx(0.0, kappa), dzeta);
            for (int j = 0; j < nz; ++j) {
                res.diag.max_abs_field_x = std::max(res.diag.max_abs_field_x, std::abs(ex[j]));
                res.diag.max_abs_sigma_x = std::max(res.diag.max_abs_sigma_x, std::abs(sx[j]));
            }
        }

        record(n + 1, t1, d1);
        if ((n + 1) % res.snapshot_stride == 0 || n + 2 == nt) snapshot(n + 1, t1);
        res.diag.steps = n + 1;
    }

    // storage diagnostic: input-energy fraction inside the medium at t_off
    if (schedule.kind != SplittingSchedule::Kind::constant) {
        double in_tot = 0.0, in_off = 0.0, out_off = 0.0;
        for (int n = 0; n < nt; ++n) {
            const double w = trapz_weight(n, nt) * dt;
            const double fin = std::norm(res.e_in[n]);
            in_tot += w * fin;
            if (res.t[n] <= sched.s.t_off) {
                in_off += w * fin;
                out_off += w * std::norm(res.e_out[n]);
            }
        }
        if (in_tot > 0.0) res.diag.entered_fraction_at_off = (in_off - out_off) / in_tot;
    }
    return res;
}

// Convenience wrapper for store-and-retrieve runs.
inline SimResult run_storage(const MediumParams& params, double delta0, double t_off,
                             double t_on, const ProbePulse& pulse, const SimGrid& grid,
                             const SolverOptions& opts = {}, double ramp_time = 0.0) {
    if (!(t_off > pulse.t_center))
        std::cerr << "chos: warning: t_off <= t_center, most of the pulse is outside "
                     "the medium when switching\n";
    const SplittingSchedule sched =
        ramp_time > 0.0 ? SplittingSchedule::ramped_store(delta0, t_off, t_on, ramp_time)
                        : SplittingSchedule::step_store(delta0, t_off, t_on);
    return simulate(params, sched, pulse, grid, opts);
}

// Default horizon for a storage run: release time plus the remaining
// slow-light transit plus the pulse tail.
inline double storage_t_max(const MediumParams& params, double delta0, double t_on,
                            const ProbePulse& pulse) {
    const double tsl = delta0 > 0.0 ? std::min(slow_light_delay(params, delta0), 0.5) : 0.0;
    return t_on + tsl + 8.0 * pulse.sigma_tau;
}

// ---------------------------------------------------------------------------
// Frame maps between the Zeeman and Stark representations (exact, unitary).

namespace detail {
inline void zeeman_to_stark_arrays(std::vector<cplx>& a, std::vector<cplx>& b) {
    const double inv_rt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t j = 0; j < a.size(); ++j) {
        const cplx sz = a[j], sy = b[j];
        a[j] = (sy - cplx(0.0, 1.0) * sz) * inv_rt2;  // sigma_1
        b[j] = (sy + cplx(0.0, 1.0) * sz) * inv_rt2;  // sigma_2
    }
}
inline void stark_to_zeeman_arrays(std::vector<cplx>& a, std::vector<cplx>& b) {
    const double inv_rt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t j = 0; j < a.size(); ++j) {
        const cplx s1 = a[j], s2 = b[j];
        a[j] = cplx(0.0, -1.0) * (s2 - s1) * inv_rt2;  // sigma_z
        b[j] = (s2 + s1) * inv_rt2;                    // sigma_y
    }
}
} // namespace detail

inline SimResult to_stark_frame(SimResult r) {
    if (r.variant != SchemeVariant::zeeman_v)
        throw validation_error("to_stark_frame: expects a ZeemanV result");
    for (auto& s : r.snapshots) detail::zeeman_to_stark_arrays(s.pol_a, s.pol_b);
    r.variant = SchemeVariant::stark_two_class;
    return r;
}

inline SimResult to_zeeman_frame(SimResult r) {
    if (r.variant != SchemeVariant::stark_two_class)
        throw validation_error("to_zeeman_frame: expects a StarkTwoClass result");
    for (auto& s : r.snapshots) detail::stark_to_zeeman_arrays(s.pol_a, s.pol_b);
    r.variant = SchemeVariant::zeeman_v;
    return r;
}

// ---------------------------------------------------------------------------
// Polariton record Psi = cos(theta) E_y + sin(theta) sigma_z evaluated on the
// stored snapshots, with theta(t) from the canonical mixing angle at the
// splitting actually applied.

struct PolaritonRecord {
    std::vector<double> t;
    std::vector<std::vector<cplx>> psi;    // per snapshot, per zeta
    std::vector<double> total_excitation;  // integral over zeta of |Psi|^2
};

inline PolaritonRecord polariton_field(const SimResult& r, const MediumParams& params) {
    if (!r.has_snapshots()) throw validation_error("polariton_field: result has no snapshots");
    PolaritonRecord out;
    const double dzeta = r.grid.dzeta();
    for (const auto& s : r.snapshots) {
        const double delta = r.delta_trace[s.step];
        const MixingAngle ang = mixing_angle(params, delta, Convention::canonical);
        std::vector<cplx> psi(s.field_y.size());
        double tot = 0.0;
        for (std::size_t j = 0; j < psi.size(); ++j) {
            cplx sz;
            if (r.variant == SchemeVariant::stark_two_class)
                sz = cplx(0.0, -1.0) * (s.pol_b[j] - s.pol_a[j]) / std::sqrt(2.0);
            else
                sz = s.pol_a[j];
            psi[j] = ang.cos_theta * s.field_y[j] + ang.sin_theta * sz;
            tot += trapz_weight(j, psi.size()) * std::norm(psi[j]);
        }
        out.t.push_back(s.t);
        out.psi.push_back(std::move(psi));
        out.total_excitation.push_back(tot * dzeta);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Structure check: with y-polarized input, sigma_x never gets excited and
// E_x does not evolve; the five-variable run must agree with the reduced
// three-variable one.

struct FiveVarReport {
    double max_abs_ex = 0.0;
    double max_abs_sx = 0.0;
    double max_abs_ey = 0.0;
    double ey_mismatch = 0.0;  // max |E_out(five) - E_out(zeeman)| / max |E_out|
    bool pass = false;
};

inline FiveVarReport five_var_check(const MediumParams& params, const SplittingSchedule& schedule,
                                    const ProbePulse& pulse, const SimGrid& grid,
                                    double decay_factor = 1.0) {
    if (std::abs(pulse.pol_x) != 0.0)
        throw validation_error("five_var_check: requires pol_x = 0");
    SolverOptions five;
    five.variant = SchemeVariant::full_five_var;
    five.decay_factor = decay_factor;
    const SimResult rf = simulate(params, schedule, pulse, grid, five);

    SolverOptions zee;
    zee.variant = SchemeVariant::zeeman_v;
    zee.decay_factor = decay_factor;
    const SimResult rz = simulate(params, schedule, pulse, grid, zee);

    FiveVarReport rep;
    rep.max_abs_ex = rf.diag.max_abs_field_x;
    rep.max_abs_sx = rf.diag.max_abs_sigma_x;
    rep.max_abs_ey = rf.diag.max_abs_field_y;
    double dmax = 0.0, emax = 0.0;
    for (std::size_t n = 0; n < rf.e_out.size(); ++n) {
        dmax = std::max(dmax, std::abs(rf.e_out[n] - rz.e_out[n]));
        emax = std::max(emax, std::abs(rf.e_out[n]));
    }
    rep.ey_mismatch = emax > 0.0 ? dmax / emax : 0.0;
    rep.pass = rep.max_abs_ex < 1e-12 * rep.max_abs_ey &&
               rep.max_abs_sx < 1e-12 * rep.max_abs_ey && rep.ey_mismatch < 1e-10;
    return rep;
}

} // namespace chos

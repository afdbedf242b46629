// sweep.hpp - parameter-space exploration: fidelity heatmap over
// (optical depth, splitting), per-depth splitting optimization, the
// analytic fidelity fit, and empirical verification of the delay scaling.
//
// Grid points are independent jobs executed by a parallel map into
// pre-assigned row slots, so results are deterministic and identical
// whether computed sequentially or in parallel.

#pragma once

#include "chos/mb_solver.hpp"
#include "chos/metrics.hpp"
#include "chos/model.hpp"
#include "chos/numerics.hpp"
#include "chos/spectral.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>
#include <vector>

namespace chos {

// ---------------------------------------------------------------------------
// Storage template: the fixed pulse/schedule family every sweep point uses.
// Times scale with sigma_tau; the switch-off happens when the pulse centroid
// has been inside for half the slow-light delay, which centers the captured
// slice in the medium.

struct StorageTemplate {
    double sigma_tau = 0.002;      // [1/gamma]
    double hold_over_sigma = 6.5;  // t_on - t_off = 6.5 sigma_tau = 0.013/gamma
    double t_off_over_sigma = 8.5; // t_off = 0.017/gamma for the default pulse
    double ramp_time = 0.0;        // 0 = instantaneous switching

    double t_off() const { return t_off_over_sigma * sigma_tau; }
    double t_on() const { return t_off() + hold_over_sigma * sigma_tau; }
    double hold() const { return hold_over_sigma * sigma_tau; }

    double t_center(const MediumParams& params, double delta) const {
        const double tsl = delta > 0.0 ? slow_light_delay(params, delta) : 0.0;
        return std::max(4.0 * sigma_tau, t_off() - 0.5 * tsl);
    }

    ProbePulse pulse(const MediumParams& params, double delta) const {
        return ProbePulse::gaussian(sigma_tau, t_center(params, delta));
    }
};

struct GridPolicy {
    int nz = 400;
    double dt_sigma_fraction = 1.0 / 40.0;
    double dt_delta_fraction = 0.05;   // dt <= 0.05/Delta0
    double max_extra_horizon = 0.25;   // cap on the slow-light tail kept after t_on

    SimGrid grid_for(const StorageTemplate& tpl, const MediumParams& params,
                     double delta) const {
        double dt = tpl.sigma_tau * dt_sigma_fraction;
        if (delta > 0.0) dt = std::min(dt, dt_delta_fraction / delta);
        if (params.optical_depth > 0.0) dt = std::min(dt, 2.0 / params.optical_depth);
        const double tsl = delta > 0.0 ? std::min(slow_light_delay(params, delta),
                                                  max_extra_horizon)
                                       : 0.0;
        const double t_max = tpl.t_on() + tsl + 8.0 * tpl.sigma_tau;
        const int nt = static_cast<int>(std::ceil(t_max / dt)) + 1;
        return SimGrid::make(nz, nt, t_max);
    }
};

// ---------------------------------------------------------------------------
// One storage run + fidelity at a single (b, delta) point.

struct SweepPoint {
    double b = 0.0;
    double delta_over_gamma = 0.0;
    double fidelity_mod = 0.0;
    double fidelity_mod_sq = 0.0;
    double delay = 0.0;          // tau_bar maximizing the fidelity [1/gamma]
    bool ok = false;
    std::string error;
};

inline SweepPoint storage_point(double b, double delta, const StorageTemplate& tpl,
                                const GridPolicy& policy) {
    SweepPoint pt;
    pt.b = b;
    pt.delta_over_gamma = delta;
    try {
        const MediumParams params = MediumParams::make(1.0, b);
        const ProbePulse pulse = tpl.pulse(params, delta);
        const SimGrid grid = policy.grid_for(tpl, params, delta);
        SolverOptions opts;
        opts.snapshot_stride = grid.nt;  // sweeps do not keep snapshots
        SimResult res;
        if (delta > 0.0) {
            res = run_storage(params, delta, tpl.t_off(), tpl.t_on(), pulse, grid, opts,
                              tpl.ramp_time);
        } else {
            // delta = 0 throughout: opaque two-line medium, no storage control
            res = simulate(params, SplittingSchedule::constant(0.0), pulse, grid, opts);
        }
        const double tsl = delta > 0.0
                               ? std::min(slow_light_delay(params, delta), policy.max_extra_horizon)
                               : 0.0;
        const double tau_ref = tpl.hold() + tsl;
        const double tau_lo = std::max(0.0, tau_ref - 2.5 * tpl.sigma_tau);
        const double tau_hi =
            std::max(tau_lo, std::min(grid.t_max, tau_ref + 2.5 * tpl.sigma_tau));
        const FidelityReport rep = fidelity_max_over_delay(res, pulse, tau_lo, tau_hi);
        pt.fidelity_mod = rep.fidelity;
        pt.fidelity_mod_sq = rep.fidelity * rep.fidelity;
        pt.delay = rep.reference_delay;
        pt.ok = true;
    } catch (const std::exception& e) {
        pt.error = e.what();
        pt.fidelity_mod = pt.fidelity_mod_sq = pt.delay =
            std::numeric_limits<double>::quiet_NaN();
    }
    return pt;
}

// ---------------------------------------------------------------------------
// Parallel map over indexed jobs with deterministic slot assignment.

template <typename Fn>
inline void parallel_for_index(std::size_t n, int jobs, Fn&& fn) {
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    const int nw = std::min<int>(jobs, static_cast<int>(n));
    pool.reserve(nw);
    for (int w = 0; w < nw; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

// ---------------------------------------------------------------------------
// Heatmap over b_list x delta_list (row order: b outer, delta inner).

struct SweepResult {
    std::vector<double> b_list;
    std::vector<double> delta_list;
    StorageTemplate tpl;
    GridPolicy policy;
    std::vector<SweepPoint> rows;  // |b_list| * |delta_list|
};

inline SweepResult heatmap(const std::vector<double>& b_list,
                           const std::vector<double>& delta_list, const StorageTemplate& tpl,
                           const GridPolicy& policy, int jobs = 1) {
    if (b_list.empty() || delta_list.empty())
        throw validation_error("heatmap: b_list and delta_list must be non-empty");
    if (!std::is_sorted(b_list.begin(), b_list.end()) ||
        !std::is_sorted(delta_list.begin(), delta_list.end()))
        throw validation_error("heatmap: lists must be sorted ascending");

    SweepResult out;
    out.b_list = b_list;
    out.delta_list = delta_list;
    out.tpl = tpl;
    out.policy = policy;
    out.rows.resize(b_list.size() * delta_list.size());
    parallel_for_index(out.rows.size(), jobs, [&](std::size_t i) {
        const double b = b_list[i / delta_list.size()];
        const double d = delta_list[i % delta_list.size()];
        out.rows[i] = storage_point(b, d, tpl, policy);
    });
    return out;
}

// ---------------------------------------------------------------------------
// Splitting optimization at fixed optical depth: log-spaced pre-scan for a
// bracket (widening if the maximum sits on an edge), then golden section.
// The pre-scan doubles as a unimodality guard; if several separated peaks
// show up, a dense grid search picks the bracket instead.

struct OptimizeResult {
    double b = 0.0;
    double best_delta = 0.0;
    double best_fidelity = 0.0;
    bool unimodal = true;
    int evaluations = 0;
};

inline OptimizeResult optimize_delta(double b, const StorageTemplate& tpl,
                                     const GridPolicy& policy, double delta_lo,
                                     double delta_hi) {
    if (!(delta_lo > 0.0) || !(delta_lo <= delta_hi))
        throw validation_error("optimize_delta: bounds must be positive and ordered");

    OptimizeResult out;
    out.b = b;
    int evals = 0;
    auto f = [&](double d) {
        ++evals;
        const SweepPoint pt = storage_point(b, d, tpl, policy);
        if (!pt.ok) throw solver_error("optimize_delta: point failed: " + pt.error, -1);
        return pt.fidelity_mod;
    };

    if (delta_hi == delta_lo) {
        out.best_delta = delta_lo;
        out.best_fidelity = f(delta_lo);
        out.evaluations = evals;
        return out;
    }

    // pre-scan on a log grid, widening the bracket while the max is an edge
    double lo = delta_lo, hi = delta_hi;
    const int n_scan = 8;
    std::vector<double> xs, vs;
    int i_best = 0;
    for (int widen = 0; widen < 3; ++widen) {
        xs.clear();
        vs.clear();
        const double llo = std::log(lo), lhi = std::log(hi);
        for (int i = 0; i < n_scan; ++i) {
            const double x = std::exp(llo + (lhi - llo) * i / (n_scan - 1));
            xs.push_back(x);
            vs.push_back(f(x));
        }
        i_best = static_cast<int>(std::max_element(vs.begin(), vs.end()) - vs.begin());
        if (i_best == 0 && lo > 1.0) { lo = std::max(0.5, lo / 4.0); continue; }
        if (i_best == n_scan - 1) { hi = hi * 4.0; continue; }
        break;
    }

    int n_peaks = 0;
    const double floor_v = 1e-6 * std::max(vs[i_best], 1e-300);
    for (int i = 1; i + 1 < n_scan; ++i)
        if (vs[i] > floor_v && vs[i] >= vs[i - 1] && vs[i] > vs[i + 1]) ++n_peaks;
    out.unimodal = n_peaks <= 1;

    if (!out.unimodal) {
        // fall back to a dense grid around the global pre-scan max
        const double llo = std::log(xs.front()), lhi = std::log(xs.back());
        for (int i = 0; i < 64; ++i) {
            const double x = std::exp(llo + (lhi - llo) * i / 63.0);
            const double v = f(x);
            if (v > vs[i_best]) { xs.push_back(x); vs.push_back(v); i_best = static_cast<int>(vs.size()) - 1; }
        }
    }

    const double blo = xs[std::max(0, i_best - 1)];
    const double bhi = xs[std::min<int>(static_cast<int>(xs.size()) - 1, i_best + 1)];
    const GoldenResult g = golden_section_max(f, blo, bhi, 0.02 * xs[i_best]);
    out.best_delta = g.x;
    out.best_fidelity = g.value;
    out.evaluations = evals;
    return out;
}

// Bandwidth-aware default search bounds.
inline std::pair<double, double> default_delta_bounds(double b, double sigma_tau) {
    const double lo = std::max(2.0, 0.5 * std::sqrt(b));
    const double hi = std::max(1000.0, 2.0 * std::sqrt(b / sigma_tau));
    return {lo, hi};
}

struct OptimizationCurve {
    std::vector<OptimizeResult> points;  // ascending b
    StorageTemplate tpl;
};

inline OptimizationCurve optimization_curve(const std::vector<double>& b_list,
                                            const StorageTemplate& tpl,
                                            const GridPolicy& policy, int jobs = 1) {
    OptimizationCurve curve;
    curve.tpl = tpl;
    curve.points.resize(b_list.size());
    parallel_for_index(b_list.size(), jobs, [&](std::size_t i) {
        const auto bounds = default_delta_bounds(b_list[i], tpl.sigma_tau);
        curve.points[i] = optimize_delta(b_list[i], tpl, policy, bounds.first, bounds.second);
    });
    return curve;
}

// ---------------------------------------------------------------------------
// Least-squares fit of F(b) = exp(-c0 t_s) (1 - exp(-c1 sqrt(b))).
// (The sign inside the second exponential is the decaying one; the growing
// variant cannot approach a fidelity of 1.)

struct FidelityFit {
    double c0 = 0.0;
    double c1 = 0.0;
    double rms_residual = 0.0;
};

inline FidelityFit fit_fidelity_curve(const OptimizationCurve& curve, double t_s) {
    const std::size_t n = curve.points.size();
    if (n < 4) throw validation_error("fit_fidelity_curve: need at least 4 curve points");
    if (!(t_s > 0.0)) throw validation_error("fit_fidelity_curve: t_s must be > 0");

    auto model = [&](double b, double c0, double c1) {
        return std::exp(-c0 * t_s) * (1.0 - std::exp(-c1 * std::sqrt(b)));
    };
    auto rms = [&](double c0, double c1) {
        double s = 0.0;
        for (const auto& p : curve.points) {
            const double r = p.best_fidelity - model(p.b, c0, c1);
            s += r * r;
        }
        return std::sqrt(s / n);
    };

    // Gauss-Newton on (c0, c1) with numeric jacobian, from a coarse-scan start.
    double c0 = 0.0, c1 = 0.0, best = std::numeric_limits<double>::infinity();
    for (double a0 : {0.0, 0.5, 2.0, 10.0})
        for (double a1 : {0.003, 0.01, 0.03, 0.1, 0.5}) {
            const double v = rms(a0, a1);
            if (v < best) { best = v; c0 = a0; c1 = a1; }
        }
    for (int it = 0; it < 200; ++it) {
        std::vector<std::vector<double>> jac(n, std::vector<double>(2));
        std::vector<double> resid(n);
        const double h0 = 1e-6 * std::max(1.0, std::abs(c0));
        const double h1 = 1e-6 * std::max(1e-3, std::abs(c1));
        for (std::size_t i = 0; i < n; ++i) {
            const double b = curve.points[i].b;
            const double m = model(b, c0, c1);
            resid[i] = curve.points[i].best_fidelity - m;
            jac[i][0] = (model(b, c0 + h0, c1) - m) / h0;
            jac[i][1] = (model(b, c0, c1 + h1) - m) / h1;
        }
        std::vector<double> step;
        try {
            step = least_squares(jac, resid);
        } catch (const validation_error&) {
            throw validation_error("fit_fidelity_curve: singular normal equations");
        }
        // damped update with projection to the physical region c0, c1 >= 0
        double lam = 1.0;
        const double cur = rms(c0, c1);
        for (int k = 0; k < 20; ++k, lam *= 0.5) {
            const double t0 = std::max(0.0, c0 + lam * step[0]);
            const double t1 = std::max(0.0, c1 + lam * step[1]);
            if (rms(t0, t1) <= cur) { c0 = t0; c1 = t1; break; }
        }
        if (std::abs(lam * step[0]) < 1e-12 && std::abs(lam * step[1]) < 1e-12) break;
        if (rms(c0, c1) >= cur - 1e-15) break;
    }

    FidelityFit fit;
    fit.c0 = c0;
    fit.c1 = c1;
    fit.rms_residual = rms(c0, c1);
    return fit;
}

// ---------------------------------------------------------------------------
// Empirical verification of the slow-light delay scaling: measured centroid
// delay against b and Delta on a grid inside the transparency regime, fitted
// as log(delay) = log(p) + a_b log(b) + a_d log(delta).
//
// The probe must be spectrally contained between the lines everywhere on the
// grid or the centroid picks up anomalous contributions from the line wings;
// by default sigma_tau = 4 / min(delta), putting the 1/e spectral point a
// quarter of the way to the nearest line.

struct ScalingReport {
    double exponent_b = 0.0;
    double exponent_delta = 0.0;
    double prefactor = 0.0;                 // geometric mean of delay * delta^2 / b
    std::vector<double> point_prefactors;   // per grid point
};

inline ScalingReport verify_scaling(const std::vector<std::pair<double, double>>& grid_points,
                                    double sigma_tau = 0.0, int nz = 400, int jobs = 1) {
    if (grid_points.size() < 4)
        throw validation_error("verify_scaling: need at least 4 grid points");
    double bmin = 1e300, bmax = 0.0, dmin = 1e300, dmax = 0.0;
    for (const auto& [b, d] : grid_points) {
        const MediumParams p = MediumParams::make(1.0, b);
        if (transparency_metric(p, d) >= 0.1)
            throw validation_error("verify_scaling: point outside the transparency regime");
        bmin = std::min(bmin, b); bmax = std::max(bmax, b);
        dmin = std::min(dmin, d); dmax = std::max(dmax, d);
    }
    if (bmax < 10.0 * bmin || dmax < 10.0 * dmin)
        throw validation_error("verify_scaling: grid must span at least a decade per axis");
    if (sigma_tau <= 0.0) sigma_tau = 4.0 / dmin;

    std::vector<double> delays(grid_points.size());
    parallel_for_index(grid_points.size(), jobs, [&](std::size_t i) {
        const auto [b, d] = grid_points[i];
        const MediumParams params = MediumParams::make(1.0, b);
        const double tsl = slow_light_delay(params, d);
        const double t_center = 4.0 * sigma_tau;
        const ProbePulse pulse = ProbePulse::gaussian(sigma_tau, t_center);
        const double t_max = t_center + tsl + 8.0 * sigma_tau;
        const double dt = auto_dt(b, d, sigma_tau);
        const SimGrid grid = SimGrid::make(nz, static_cast<int>(std::ceil(t_max / dt)) + 1, t_max);
        SolverOptions opts;
        opts.snapshot_stride = grid.nt;
        const SimResult res = simulate(params, SplittingSchedule::constant(d), pulse, grid, opts);
        delays[i] = measured_delay(res);
    });

    std::vector<std::vector<double>> design;
    std::vector<double> y;
    for (std::size_t i = 0; i < grid_points.size(); ++i) {
        design.push_back({1.0, std::log(grid_points[i].first), std::log(grid_points[i].second)});
        y.push_back(std::log(delays[i]));
    }
    const std::vector<double> coef = least_squares(design, y);

    ScalingReport rep;
    rep.exponent_b = coef[1];
    rep.exponent_delta = coef[2];
    double logp = 0.0;
    for (std::size_t i = 0; i < grid_points.size(); ++i) {
        const double p = delays[i] * grid_points[i].second * grid_points[i].second /
                         grid_points[i].first;
        rep.point_prefactors.push_back(p);
        logp += std::log(p);
    }
    rep.prefactor = std::exp(logp / grid_points.size());
    return rep;
}

} // namespace chos

// reference_solver.hpp - independent cross-check integrator, test-only.
//
// Deliberately a different discretization family from the production solver:
// the atomic 2x2 block (sigma_z, sigma_y) advances with its exact
// decay-rotation propagator exp(A h) (A = -r/2 I + delta J), the drive is
// applied through the exact variation-of-constants weight A^-1 (exp(Ah) - I)
// evaluated at the step midpoint, and the midpoint field is obtained by
// fixed-point iteration.  It shares no stepping code with chos::simulate and
// is exact for the stiff internal rotation, so agreement between the two is
// meaningful evidence, not a shared-bug echo.

#pragma once

#include "chos/model.hpp"

#include <cmath>
#include <complex>
#include <vector>

namespace chos_test {

using chos::cplx;

struct RefResult {
    std::vector<double> t;
    std::vector<cplx> e_in, e_out;
};

inline RefResult reference_simulate(const chos::MediumParams& params,
                                    const chos::SplittingSchedule& schedule,
                                    const chos::ProbePulse& pulse, int nz, int nt, double t_max,
                                    double decay_factor = 1.0) {
    const double h = t_max / (nt - 1);
    const double dz = 1.0 / (nz - 1);
    const double kappa = params.kappa();
    const double r2 = 0.5 * decay_factor;

    // snap step switching to the grid, as the production solver does
    chos::SplittingSchedule sched = schedule;
    if (sched.kind == chos::SplittingSchedule::Kind::step_store) {
        sched.t_off = std::round(sched.t_off / h) * h;
        sched.t_on = std::round(sched.t_on / h) * h;
    }

    std::vector<cplx> sz(nz, cplx{}), sy(nz, cplx{}), e(nz, cplx{});
    auto boundary = [&](double t) { return pulse.pol_y * pulse.envelope(t); };
    auto field = [&](std::vector<cplx>& out, const std::vector<cplx>& src, cplx b0) {
        out[0] = b0;
        cplx acc{};
        for (int j = 1; j < nz; ++j) {
            acc += 0.5 * dz * (src[j - 1] + src[j]);
            out[j] = b0 + cplx(0.0, -kappa) * acc;
        }
    };

    RefResult res;
    res.t.resize(nt);
    res.e_in.resize(nt);
    res.e_out.resize(nt);
    field(e, sy, boundary(0.0));
    res.t[0] = 0.0;
    res.e_in[0] = e[0];
    res.e_out[0] = e[nz - 1];

    std::vector<cplx> sy_mid(nz), e_mid(nz), sz_new(nz), sy_new(nz);
    for (int n = 0; n + 1 < nt; ++n) {
        const double t0 = n * h;
        const double tm = t0 + 0.5 * h;
        const double delta = sched.value(tm);

        // exact homogeneous propagator over a full step and a half step
        const double decay_f = std::exp(-r2 * h);
        const double cf = std::cos(delta * h), sf = std::sin(delta * h);
        const double decay_h = std::exp(-r2 * 0.5 * h);
        const double ch = std::cos(delta * 0.5 * h), sh = std::sin(delta * 0.5 * h);

        // Phi = A^-1 (exp(Ah) - I), applied to (0, 1): the drive enters only
        // through the sigma_y slot.  A = -r2 I + delta J with J = [[0,1],[-1,0]].
        const double phi_zy = decay_f * sf;        // (exp(Ah) - I) second column
        const double phi_yy = decay_f * cf - 1.0;
        const double det = r2 * r2 + delta * delta;
        double w_z, w_y;  // Phi * (0, 1) = A^-1 * (phi_zy, phi_yy)
        if (det > 0.0) {
            // A^-1 = (-r2 I - delta J) / det
            w_z = (-r2 * phi_zy - delta * phi_yy) / det;
            w_y = (delta * phi_zy - r2 * phi_yy) / det;
        } else {
            w_z = 0.0;
            w_y = h;
        }

        // fixed-point iteration on the midpoint field
        for (int j = 0; j < nz; ++j)
            sy_mid[j] = decay_h * (-sh * sz[j] + ch * sy[j]);
        const cplx bm = boundary(tm);
        for (int pass = 0; pass < 3; ++pass) {
            field(e_mid, sy_mid, bm);
            for (int j = 0; j < nz; ++j) {
                const cplx drive = cplx(0.0, -kappa) * e_mid[j];
                sz_new[j] = decay_f * (cf * sz[j] + sf * sy[j]) + w_z * drive;
                sy_new[j] = decay_f * (-sf * sz[j] + cf * sy[j]) + w_y * drive;
                // refreshed midpoint estimate: average of endpoints
                sy_mid[j] = 0.5 * (sy[j] + sy_new[j]);
            }
        }
        sz.swap(sz_new);
        sy.swap(sy_new);
        field(e, sy, boundary(t0 + h));
        res.t[n + 1] = t0 + h;
        res.e_in[n + 1] = e[0];
        res.e_out[n + 1] = e[nz - 1];
    }
    return res;
}

// fidelity of a reference run against the input mode, same definition as
// chos::metrics but kept local so the oracle stays self-contained
inline double reference_fidelity(const RefResult& r, const chos::ProbePulse& pulse,
                                 double tau_bar) {
    const double dt = r.t[1] - r.t[0];
    double nin = 0.0;
    cplx ov{};
    for (std::size_t i = 0; i < r.t.size(); ++i) {
        const double w = (i == 0 || i + 1 == r.t.size()) ? 0.5 : 1.0;
        const cplx mode_in = pulse.pol_y * pulse.envelope(r.t[i]);
        const cplx mode_shift = pulse.pol_y * pulse.envelope(r.t[i] - tau_bar);
        nin += w * std::norm(mode_in);
        ov += w * std::conj(r.e_out[i]) * mode_shift;
    }
    (void)dt;
    return nin > 0.0 ? std::abs(ov) / nin : 0.0;
}

inline double reference_best_fidelity(const RefResult& r, const chos::ProbePulse& pulse,
                                      double tau_lo, double tau_hi, int n_scan = 200) {
    double best = 0.0;
    for (int i = 0; i <= n_scan; ++i) {
        const double tau = tau_lo + (tau_hi - tau_lo) * i / n_scan;
        best = std::max(best, reference_fidelity(r, pulse, tau));
    }
    return best;
}

} // namespace chos_test

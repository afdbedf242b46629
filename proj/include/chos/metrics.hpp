// metrics.hpp - scalar figures of merit extracted from simulation results:
// single-mode fidelity, measured delay, shape overlap, energy bookkeeping.
//
// Fidelity is the modulus of the literal discrete overlap of the output
// field against the input temporal mode delayed by tau_bar, normalized by
// the input photon number:
//
//   F(tau) = | sum_t conj(E_out(t)) E_in(t - tau) dt |  /  sum_t |E_in(t)|^2 dt
//
// A pure propagation phase on the retrieved pulse therefore does not count
// as infidelity.  Note this is an amplitude overlap, not an energy
// efficiency: E_out = sqrt(eta) E_in(t - tau) gives F = sqrt(eta).

#pragma once

#include "chos/mb_solver.hpp"
#include "chos/model.hpp"
#include "chos/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace chos {

struct FidelityReport {
    double fidelity = 0.0;        // |overlap| / photon_number_in
    double reference_delay = 0.0; // tau_bar used [1/gamma]
    double photon_number_in = 0.0;
    double photon_number_out = 0.0;
    cplx overlap_complex{0.0, 0.0};
    bool unimodal = true;  // only meaningful for fidelity_max_over_delay
};

namespace detail {
// Input photon number over the pulse's own support (the whole horizon).
inline double photon_number_in(const SimResult& r, const ProbePulse& pulse) {
    const double dt = r.grid.dt();
    double n = 0.0;
    for (std::size_t i = 0; i < r.t.size(); ++i) {
        const double e = std::abs(pulse.pol_y) * pulse.envelope(r.t[i]);
        n += trapz_weight(i, r.t.size()) * e * e;
    }
    return n * dt;
}
} // namespace detail

inline FidelityReport fidelity(const SimResult& r, const ProbePulse& pulse, double tau_bar,
                               double window_t1, double window_t2) {
    if (!(tau_bar >= 0.0)) throw validation_error("fidelity: tau_bar must be >= 0");
    if (window_t1 < 0.0 || window_t2 > r.grid.t_max + 1e-12 || !(window_t1 < window_t2))
        throw validation_error("fidelity: window outside the simulated horizon");

    const double dt = r.grid.dt();
    FidelityReport rep;
    rep.reference_delay = tau_bar;
    rep.photon_number_in = detail::photon_number_in(r, pulse);

    cplx overlap{0.0, 0.0};
    double nout = 0.0;
    for (std::size_t i = 0; i < r.t.size(); ++i) {
        const double t = r.t[i];
        if (t < window_t1 || t > window_t2) continue;
        const double w = trapz_weight(i, r.t.size());
        const cplx mode = pulse.pol_y * pulse.envelope(t - tau_bar);
        overlap += w * std::conj(r.e_out[i]) * mode;
        nout += w * std::norm(r.e_out[i]);
    }
    rep.overlap_complex = overlap * dt;
    rep.photon_number_out = nout * dt;
    rep.fidelity = rep.photon_number_in > 0.0 ? std::abs(rep.overlap_complex) / rep.photon_number_in
                                              : 0.0;
    return rep;
}

inline FidelityReport fidelity(const SimResult& r, const ProbePulse& pulse, double tau_bar) {
    return fidelity(r, pulse, tau_bar, 0.0, r.grid.t_max);
}

// Maximize fidelity over tau_bar in [tau_lo, tau_hi].  A coarse pre-scan
// (step <= sigma_tau/10) guards against multimodality; violations are
// reported via the unimodal flag and resolved by taking the best scanned
// bracket anyway.
inline FidelityReport fidelity_max_over_delay(const SimResult& r, const ProbePulse& pulse,
                                              double tau_lo, double tau_hi) {
    if (!(tau_lo >= 0.0) || !(tau_hi >= tau_lo))
        throw validation_error("fidelity_max_over_delay: bad tau range");
    auto f = [&](double tau) { return fidelity(r, pulse, tau).fidelity; };

    const double span = tau_hi - tau_lo;
    FidelityReport best;
    if (span <= 0.0) {
        best = fidelity(r, pulse, tau_lo);
        return best;
    }
    const int n_scan = std::max(8, static_cast<int>(std::ceil(span / (pulse.sigma_tau / 10.0))));
    std::vector<double> vals(n_scan + 1);
    int i_best = 0;
    for (int i = 0; i <= n_scan; ++i) {
        vals[i] = f(tau_lo + span * i / n_scan);
        if (vals[i] > vals[i_best]) i_best = i;
    }

    // zero output: flat zero landscape, return the midpoint with a flag
    if (vals[i_best] <= 0.0) {
        best = fidelity(r, pulse, 0.5 * (tau_lo + tau_hi));
        best.unimodal = false;
        return best;
    }

    // count strict local maxima above a small floor to detect multimodality
    int n_peaks = 0;
    const double floor_v = 1e-6 * vals[i_best];
    for (int i = 1; i + 1 <= n_scan; ++i)
        if (vals[i] > floor_v && vals[i] >= vals[i - 1] && vals[i] > vals[i + 1]) ++n_peaks;
    const bool unimodal = n_peaks <= 1;

    const double lo = tau_lo + span * std::max(0, i_best - 1) / n_scan;
    const double hi = tau_lo + span * std::min(n_scan, i_best + 1) / n_scan;
    const GoldenResult g = golden_section_max(f, lo, hi, r.grid.dt() * 0.25);
    best = fidelity(r, pulse, g.x);
    best.unimodal = unimodal;
    return best;
}

// ---------------------------------------------------------------------------
// Intensity-weighted centroid delay of the output relative to the input.

inline double measured_delay(const SimResult& r) {
    double ein = 0.0, eout = 0.0, tin = 0.0, tout = 0.0;
    for (std::size_t i = 0; i < r.t.size(); ++i) {
        const double w = trapz_weight(i, r.t.size());
        const double fi = std::norm(r.e_in[i]);
        const double fo = std::norm(r.e_out[i]);
        ein += w * fi;
        eout += w * fo;
        tin += w * fi * r.t[i];
        tout += w * fo * r.t[i];
    }
    if (!(ein > 0.0)) throw validation_error("measured_delay: vanishing input energy");
    if (!(eout > 1e-9 * ein)) throw validation_error("measured_delay: vanishing output energy");
    return tout / eout - tin / ein;
}

// Normalized shape overlap of the output against the shifted input mode
// (both sides normalized, so attenuation alone does not lower it).
inline double shape_overlap(const SimResult& r, const ProbePulse& pulse, double shift) {
    cplx ov{0.0, 0.0};
    double no = 0.0, ni = 0.0;
    for (std::size_t i = 0; i < r.t.size(); ++i) {
        const double w = trapz_weight(i, r.t.size());
        const cplx mode = pulse.pol_y * pulse.envelope(r.t[i] - shift);
        ov += w * std::conj(r.e_out[i]) * mode;
        no += w * std::norm(r.e_out[i]);
        ni += w * std::norm(mode);
    }
    if (no <= 0.0 || ni <= 0.0) return 0.0;
    return std::abs(ov) / std::sqrt(no * ni);
}

// ---------------------------------------------------------------------------
// Energy bookkeeping.  In the symmetric-kappa normalization the continuous
// equations obey, per unit input flux,
//
//   d/dt [atomic] + |E_out|^2 - |E_in|^2 = -r * [atomic],
//   [atomic] = integral over zeta of summed |sigma|^2  (scale factor 1),
//
// so cumulative-in = cumulative-out + atomic (t) + r * integral of atomic.
// The intra-medium field energy carries the retardation weight gamma*L/c,
// which is negligible for every parameter set of interest but reported
// anyway.

struct EnergyBalance {
    double input = 0.0;          // cumulative input flux over the run
    double output = 0.0;         // cumulative output flux
    double stored_atomic = 0.0;  // atomic excitation at end of run
    double stored_field = 0.0;   // intra-medium field energy at end of run
    double decay_loss = 0.0;     // flux lost to spontaneous decay
    double residual = 0.0;       // max over time of the budget violation, relative
};

inline EnergyBalance energy_balance(const SimResult& r, const MediumParams& params,
                                    double decay_factor = 1.0) {
    if (r.atomic_sum.empty())
        throw validation_error("energy_balance: result carries no medium records");
    const double dt = r.grid.dt();
    const double field_weight = params.gamma * params.length / params.light_speed;

    const std::size_t nt = r.t.size();
    double in_tot = 0.0;
    for (std::size_t i = 0; i < nt; ++i) {
        in_tot += trapz_weight(i, nt) * std::norm(r.e_in[i]) * dt;
        if (!r.e_in_x.empty()) in_tot += trapz_weight(i, nt) * std::norm(r.e_in_x[i]) * dt;
    }

    EnergyBalance bal;
    double in_c = 0.0, out_c = 0.0, decay_c = 0.0, worst = 0.0;
    for (std::size_t i = 0; i < nt; ++i) {
        if (i > 0) {
            auto flux = [&](const std::vector<cplx>& v, std::size_t k) {
                return v.empty() ? 0.0 : std::norm(v[k]);
            };
            const double fin0 = std::norm(r.e_in[i - 1]) + flux(r.e_in_x, i - 1);
            const double fin1 = std::norm(r.e_in[i]) + flux(r.e_in_x, i);
            const double fout0 = std::norm(r.e_out[i - 1]) + flux(r.e_out_x, i - 1);
            const double fout1 = std::norm(r.e_out[i]) + flux(r.e_out_x, i);
            in_c += 0.5 * dt * (fin0 + fin1);
            out_c += 0.5 * dt * (fout0 + fout1);
            decay_c += 0.5 * dt * decay_factor * (r.atomic_sum[i - 1] + r.atomic_sum[i]);
        }
        const double budget = out_c + r.atomic_sum[i] + field_weight * r.field_sum[i] + decay_c;
        if (in_tot > 0.0) worst = std::max(worst, std::abs(in_c - budget) / in_tot);
    }
    bal.input = in_c;
    bal.output = out_c;
    bal.stored_atomic = r.atomic_sum[nt - 1];
    bal.stored_field = field_weight * r.field_sum[nt - 1];
    bal.decay_loss = decay_c;
    bal.residual = worst;
    return bal;
}

} // namespace chos

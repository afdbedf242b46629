// spectral.hpp - frequency-domain analysis of the two-line medium:
// susceptibility, transmission, group delay, transparency condition, mixing
// angle, dark eigenvector of the 5x5 interaction matrix, and the square-root
// scaling laws.
//
// Every closed form comes in two flavors, selected explicitly by the caller:
//
//   Convention::paper      literal transcription of the commonly printed
//                          formulas (lines of half-width gamma, on-resonance
//                          amplitude coefficient -alpha/2, delay b*gamma/Delta^2).
//   Convention::canonical  re-derived from the equations of motion actually
//                          integrated by the solver (coherence decay gamma/2,
//                          kappa^2 = b/4), so that the closed forms and the
//                          time-domain results agree to quadrature accuracy.
//
// The two flavors differ by constant O(1) factors; they cannot both be made
// to match every printed number at once.  Simulations use canonical only.

#pragma once

#include "chos/model.hpp"
#include "chos/numerics.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

namespace chos {

enum class Convention { paper, canonical };

inline std::string to_string(Convention c) {
    return c == Convention::paper ? "paper" : "canonical";
}

// ---------------------------------------------------------------------------
// Susceptibility, per unit zeta (multiply by 1/L for physical 1/m units).
// omega and delta are in gamma units; the free-space -i*omega/c term is
// dropped (retarded frame).

inline cplx susceptibility(double omega, const MediumParams& p, double delta,
                           Convention conv) {
    if (!(delta >= 0.0)) throw validation_error("susceptibility: delta must be >= 0");
    const double b = p.optical_depth;
    if (conv == Convention::paper) {
        const cplx x(1.0, omega);
        return -(b / 2.0) * x / (x * x + delta * delta);
    }
    // canonical: steady-state transfer of d_zeta E = -i k s_y,
    // s_y' = -i k E - d s_z - s_y/2, s_z' = -s_z/2 + d s_y, with k^2 = b/4
    const cplx x(0.5, -omega);
    return -(b / 4.0) * x / (x * x + delta * delta);
}

inline std::vector<double> transmission_spectrum(const std::vector<double>& omegas,
                                                 const MediumParams& p, double delta,
                                                 Convention conv) {
    std::vector<double> t;
    t.reserve(omegas.size());
    for (double w : omegas)
        t.push_back(std::exp(2.0 * susceptibility(w, p, delta, conv).real()));
    return t;
}

// ---------------------------------------------------------------------------
// Group delay at band center, in 1/gamma units.

// Slow-light limit of the canonical delay, valid for delta >> 1/2.  Also the
// quantity the mixing angle is built from, so that v_g = c cos^2(theta) holds
// identically.
inline double slow_light_delay(const MediumParams& p, double delta) {
    if (!(delta > 0.0))
        throw singular_config_error("slow_light_delay: delta must be > 0 (no slow-light regime)");
    return p.optical_depth / (4.0 * delta * delta);
}

inline double group_delay(const MediumParams& p, double delta, Convention conv) {
    if (!(delta > 0.0))
        throw singular_config_error("group_delay: delta must be > 0 (no slow-light regime)");
    const double b = p.optical_depth;
    if (conv == Convention::paper) return b / (delta * delta);
    // canonical: analytic d Im(chi)/d omega at omega = 0
    const double d2 = delta * delta;
    return (b / 4.0) * (d2 - 0.25) / ((d2 + 0.25) * (d2 + 0.25));
}

// ---------------------------------------------------------------------------
// Transparency condition b gamma^2 / Delta^2; compare to 1.  Delta = 0 is
// reported as the distinguished opaque value +inf.

inline double transparency_metric(const MediumParams& p, double delta) {
    if (delta <= 0.0) return std::numeric_limits<double>::infinity();
    return p.optical_depth / (delta * delta);
}

// ---------------------------------------------------------------------------
// Mixing angle.  canonical: cos^2(theta) = v_g/c = 1/(1 + c*T_sl/L) with the
// slow-light canonical delay T_sl = b/(4 delta^2 gamma); this keeps theta
// defined and monotone over the whole range delta in [0, inf) (the exact
// omega-derivative delay turns anomalous below delta = 1/2) and makes
// v_g = c cos^2 theta an identity.  paper: literal tan(theta) = alpha gamma c / Delta.

struct MixingAngle {
    double cos_theta = 0.0;
    double sin_theta = 0.0;
};

inline MixingAngle mixing_angle(const MediumParams& p, double delta, Convention conv) {
    if (!(delta >= 0.0)) throw validation_error("mixing_angle: delta must be >= 0");
    if (delta == 0.0) return {0.0, 1.0};  // pure atomic
    if (conv == Convention::paper) {
        const double delta_phys = delta * p.gamma;
        const double tan_theta = p.alpha() * p.gamma * p.light_speed / delta_phys;
        const double c2 = 1.0 / (1.0 + tan_theta * tan_theta);
        return {std::sqrt(c2), std::sqrt(1.0 - c2)};
    }
    const double tsl_phys = slow_light_delay(p, delta) / p.gamma;  // [s]
    const double tan2 = p.light_speed * tsl_phys / p.length;
    const double c2 = 1.0 / (1.0 + tan2);
    return {std::sqrt(c2), std::sqrt(1.0 - c2)};
}

inline double group_velocity(const MediumParams& p, double delta, Convention conv) {
    const MixingAngle m = mixing_angle(p, delta, conv);
    return p.light_speed * m.cos_theta * m.cos_theta;
}

// ---------------------------------------------------------------------------
// The 5x5 interaction matrix over basis (E_x, E_y, sigma_z, sigma_x, sigma_y):
//
//        [ kc    0    0    -G    0 ]
//        [ 0    kc    0     0    G ]
//   M =  [ 0     0  Gam     0  i*D ]
//        [ -G    0    0   Gam    0 ]
//        [ 0     G -i*D     0  Gam ]
//
// with G = g*sqrt(2N) and Gam = -i*gamma/2 on the atomic diagonal.

struct MatrixM {
    MatC<5> m{};
    double k = 0.0;
    double coupling = 0.0;   // G
    double delta = 0.0;      // [rad/s]
    cplx gamma_term{0.0, 0.0};
};

inline MatrixM build_matrix_M(double k, double light_speed, double coupling, double delta,
                              cplx gamma_term) {
    MatrixM out;
    out.k = k;
    out.coupling = coupling;
    out.delta = delta;
    out.gamma_term = gamma_term;
    auto& m = out.m;
    const cplx kc(k * light_speed, 0.0);
    const cplx g(coupling, 0.0);
    const cplx id(0.0, delta);
    m[0][0] = kc;  m[0][3] = -g;
    m[1][1] = kc;  m[1][4] = g;
    m[2][2] = gamma_term;  m[2][4] = id;
    m[3][0] = -g;  m[3][3] = gamma_term;
    m[4][1] = g;   m[4][2] = -id;  m[4][4] = gamma_term;
    return out;
}

inline MatrixM build_matrix_M(double k, const MediumParams& p, double delta_phys,
                              cplx gamma_term) {
    return build_matrix_M(k, p.light_speed, p.coupling_G(), delta_phys, gamma_term);
}

inline double matrix_norm(const MatrixM& mm) {
    double s = 0.0;
    for (const auto& row : mm.m)
        for (const auto& e : row) s += std::norm(e);
    return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// Dark (zero-eigenvalue) eigenvector of M at k = 0, Gam = 0.
//
// Inverse iteration with a small shift, seeded from the analytic two-component
// (E_y, sigma_z) null vector.  At fixed size 5 this is robust and cheap, and
// it exercises the matrix rather than a transcribed formula.

struct PolaritonDecomposition {
    double cos_theta = 0.0;    // |E_y| component of the unit eigenvector
    double sin_theta = 0.0;    // |sigma_z| component
    VecC<5> eigenvector{};     // basis (E_x, E_y, sigma_z, sigma_x, sigma_y)
    cplx eigenvalue{0.0, 0.0};
};

inline PolaritonDecomposition dark_eigenvector(const MatrixM& mm) {
    if (mm.k != 0.0 || mm.gamma_term != cplx(0.0, 0.0))
        throw validation_error("dark_eigenvector: requires k = 0 and Gam = 0");
    const double scale = std::max(matrix_norm(mm), 1.0);

    // analytic seed: G E_y = i Delta sigma_z in the (E_y, sigma_z) block
    VecC<5> v{};
    const double g = mm.coupling;
    const double hyp = std::hypot(g, mm.delta);
    if (hyp == 0.0) {
        v[1] = 1.0;  // all couplings off: any field vector is dark
    } else {
        v[1] = mm.delta / hyp;
        v[2] = cplx(0.0, -1.0) * (g / hyp);
    }

    const cplx shift(1e-12 * scale, 1e-12 * scale);
    for (int it = 0; it < 3; ++it) {
        MatC<5> a = mm.m;
        for (int i = 0; i < 5; ++i) a[i][i] -= shift;
        v = lu_solve<5>(a, v);
        double n = 0.0;
        for (const auto& e : v) n += std::norm(e);
        n = std::sqrt(n);
        for (auto& e : v) e /= n;
    }

    // Rayleigh quotient and residual check
    VecC<5> mv{};
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) mv[i] += mm.m[i][j] * v[j];
    cplx lambda(0.0, 0.0);
    for (int i = 0; i < 5; ++i) lambda += std::conj(v[i]) * mv[i];
    double resid = 0.0;
    for (int i = 0; i < 5; ++i) resid += std::norm(mv[i] - lambda * v[i]);
    resid = std::sqrt(resid);
    if (std::abs(lambda) > 1e-10 * scale || resid > 1e-10 * scale)
        throw internal_error("dark_eigenvector: no eigenvalue within 1e-10 of zero");

    PolaritonDecomposition out;
    out.eigenvector = v;
    out.eigenvalue = lambda;
    out.cos_theta = std::abs(v[1]);
    out.sin_theta = std::abs(v[2]);
    return out;
}

// ---------------------------------------------------------------------------
// Delay-bandwidth scaling laws.  Prefactors default to 1 and are meant to be
// fitted empirically (sweep::verify_scaling), not trusted.

struct ScalingLaws {
    double bandwidth_bound = 0.0;     // 1/tau ~ gamma sqrt(b)   [gamma]
    double efficiency_estimate = 0.0; // eta ~ sqrt(b), clipped at 1
    double min_splitting = 0.0;       // Delta_min ~ gamma sqrt(b) [gamma]
};

inline ScalingLaws scaling_laws(double b, double bw_prefactor = 1.0, double eta_prefactor = 1.0,
                                double delta_prefactor = 1.0) {
    if (!(b > 0.0)) throw validation_error("scaling_laws: b must be > 0");
    const double rb = std::sqrt(b);
    return {bw_prefactor * rb, std::min(1.0, eta_prefactor * rb), delta_prefactor * rb};
}

// ---------------------------------------------------------------------------
// Experimental estimates for the two candidate systems.
//
// Optimized-schedule fidelities are interpolated from a stored sweep of this
// simulator (log-b interpolation); regenerate with the `optimize` subcommand.

struct EstimateReport {
    std::string preset;
    double gamma = 0.0;          // [rad/s]
    double alpha = 0.0;          // [1/m]
    double length = 0.0;         // [m]
    double optical_depth = 0.0;
    double delta_over_gamma = 0.0;
    double v_g = 0.0;            // [m/s], canonical formula
    double tau = 0.0;            // pulse duration from the bandwidth bound [s]
    double fidelity_estimate = 0.0;
    std::string notes;
};

namespace detail {
// (b, optimized single-mode fidelity) from the default desk-scale sweep
// (sigma_tau = 0.002/gamma, hold = 0.013/gamma, canonical convention);
// regenerate with `chos optimize --b-list ...`.
inline const std::array<std::pair<double, double>, 8>& stored_fidelity_table() {
    static const std::array<std::pair<double, double>, 8> table{{
        {3.0e1, 0.0500},
        {1.0e2, 0.1495},
        {3.0e2, 0.3316},
        {1.0e3, 0.4929},
        {3.0e3, 0.6319},
        {1.0e4, 0.6448},
        {3.0e4, 0.8095},
        {6.0e4, 0.8846},
    }};
    return table;
}
} // namespace detail

inline double interpolate_stored_fidelity(double b) {
    const auto& tab = detail::stored_fidelity_table();
    if (b <= tab.front().first) return tab.front().second;
    if (b >= tab.back().first) return tab.back().second;
    for (std::size_t i = 0; i + 1 < tab.size(); ++i) {
        if (b <= tab[i + 1].first) {
            const double u = (std::log(b) - std::log(tab[i].first)) /
                             (std::log(tab[i + 1].first) - std::log(tab[i].first));
            return tab[i].second + u * (tab[i + 1].second - tab[i].second);
        }
    }
    return tab.back().second;
}

inline EstimateReport experimental_estimate_custom(std::string name, double gamma, double alpha,
                                                   double length, double delta_over_gamma,
                                                   std::string notes = "") {
    EstimateReport r;
    r.preset = std::move(name);
    r.gamma = gamma;
    r.alpha = alpha;
    r.length = length;
    r.optical_depth = alpha * length;
    r.delta_over_gamma = delta_over_gamma;
    const MediumParams p = MediumParams::make(gamma, r.optical_depth, length);
    r.v_g = group_velocity(p, delta_over_gamma, Convention::canonical);
    r.tau = 1.0 / (gamma * std::sqrt(r.optical_depth));
    r.fidelity_estimate = interpolate_stored_fidelity(r.optical_depth);
    r.notes = std::move(notes);
    return r;
}

// Strontium intercombination line: gamma/2 = 2pi*7.5 kHz, alpha = 2e6 /m,
// L = 100 um, Delta = 23 gamma  =>  b = 200.
inline EstimateReport estimate_sr() {
    const double gamma = 4.0 * M_PI * 7.5e3;
    return experimental_estimate_custom("sr", gamma, 2.0e6, 1.0e-4, 23.0,
                                        "cold Sr, 689 nm intercombination line");
}

// Pr:YSO pseudo-Stark doublet: gamma/2 = 2pi*12 kHz, b = 32 (a 140 dB
// attenuation feature).  The crystal length and operating splitting are not
// pinned by the system; we assume L = 1 cm and the minimum-splitting bound
// Delta = gamma*sqrt(b).
inline EstimateReport estimate_pryso() {
    const double gamma = 4.0 * M_PI * 12.0e3;
    const double length = 1.0e-2;
    const double b = 32.0;
    return experimental_estimate_custom("pryso", gamma, b / length, length, std::sqrt(b),
                                        "Pr:YSO pseudo-Stark splitting; L and Delta assumed");
}

} // namespace chos

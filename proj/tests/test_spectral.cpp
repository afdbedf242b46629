#include "chos/spectral.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace chos;

namespace {

// numeric Kramers-Kronig reconstruction of Im(chi) from Re(chi):
//   Im chi(w) = -(1/pi) PV int Re chi(w') / (w' - w) dw'
// staggered grid so the singular point is never hit; the symmetric
// neighborhood of the pole cancels to O(dw^2).
double kk_imag_from_real(const MediumParams& p, double delta, Convention conv, double w,
                         double w_max, int n) {
    const double dw = 2.0 * w_max / n;
    double acc = 0.0;
    for (int k = 0; k < n; ++k) {
        const double wp = -w_max + (k + 0.5) * dw;
        acc += susceptibility(wp, p, delta, conv).real() / (wp - w);
    }
    return -acc * dw / M_PI;
}

double fd_group_delay(const MediumParams& p, double delta) {
    const double h = 1e-6;
    const double im_p = susceptibility(h, p, delta, Convention::canonical).imag();
    const double im_m = susceptibility(-h, p, delta, Convention::canonical).imag();
    return (im_p - im_m) / (2.0 * h);
}

} // namespace

TEST_SUITE_BEGIN("spectral");

TEST_CASE("paper susceptibility at line center, zero splitting, is -alpha/2 (per length)") {
    const MediumParams p = MediumParams::make(1.0, 200.0);
    const cplx chi = susceptibility(0.0, p, 0.0, Convention::paper);
    // normalized units carry a factor L: chi_norm = -b/2 <=> chi_phys = -alpha/2
    CHECK(chi.real() == doctest::Approx(-100.0).epsilon(1e-12));
    CHECK(chi.imag() == doctest::Approx(0.0));
}

TEST_CASE("both conventions are fully transparent at infinite splitting") {
    const MediumParams p = MediumParams::make(1.0, 500.0);
    for (Convention conv : {Convention::paper, Convention::canonical}) {
        CHECK(std::abs(susceptibility(0.0, p, 1e9, conv)) < 1e-9);
    }
}

TEST_CASE("canonical convention lock: on-resonance transmission is exp(-b)") {
    for (double b : {0.5, 4.0, 42.0, 200.0}) {
        const MediumParams p = MediumParams::make(1.0, b);
        const cplx chi = susceptibility(0.0, p, 0.0, Convention::canonical);
        CHECK(std::exp(2.0 * chi.real()) == doctest::Approx(std::exp(-b)).epsilon(1e-12));
    }
}

TEST_CASE("transparency window transmission sits near the b gamma^2/Delta^2 estimate") {
    const MediumParams p = MediumParams::make(1.0, 100.0);
    const double estimate = std::exp(-100.0 / (100.0 * 100.0));
    for (Convention conv : {Convention::paper, Convention::canonical}) {
        const double t = transmission_spectrum({0.0}, p, 100.0, conv)[0];
        CHECK(t > 0.5 * estimate);
        CHECK(t < 1.5 * estimate);
    }
}

TEST_CASE("empty medium is transparent at every frequency") {
    const MediumParams p = MediumParams::make(1.0, 0.0);
    std::vector<double> ws;
    for (int i = -50; i <= 50; ++i) ws.push_back(i * 2.0);
    for (double t : transmission_spectrum(ws, p, 7.0, Convention::canonical))
        CHECK(t == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("transmission dips sit within 5% of +-Delta once the lines are resolved") {
    const MediumParams p = MediumParams::make(1.0, 50.0);
    for (double delta : {10.0, 40.0, 200.0}) {
        const int n = 4001;
        const double w_max = 2.0 * delta;
        std::vector<double> ws(n);
        for (int i = 0; i < n; ++i) ws[i] = -w_max + 2.0 * w_max * i / (n - 1);
        const auto t = transmission_spectrum(ws, p, delta, Convention::canonical);
        std::vector<double> minima;
        for (int i = 1; i + 1 < n; ++i)
            if (t[i] < t[i - 1] && t[i] <= t[i + 1]) minima.push_back(ws[i]);
        REQUIRE(minima.size() == 2);
        CHECK(std::abs(minima[0] + delta) <= 0.05 * delta);
        CHECK(std::abs(minima[1] - delta) <= 0.05 * delta);
    }
}

TEST_CASE("paper group delay evaluates b gamma / Delta^2") {
    const MediumParams p = MediumParams::make(1.0, 6.0e4);
    CHECK(group_delay(p, 3600.0, Convention::paper) == doctest::Approx(4.62963e-3).epsilon(1e-5));
    const double d2000 = group_delay(p, 2000.0, Convention::paper);
    CHECK(d2000 == doctest::Approx(1.5e-2).epsilon(1e-12));
    CHECK(d2000 > group_delay(p, 3600.0, Convention::paper));
}

TEST_CASE("canonical group delay equals the numeric derivative of Im chi") {
    for (auto [b, d] : {std::pair{10.0, 100.0}, {100.0, 20.0}, {6.0e4, 3600.0}, {5.0, 0.8}}) {
        const MediumParams p = MediumParams::make(1.0, b);
        CHECK(group_delay(p, d, Convention::canonical) ==
              doctest::Approx(fd_group_delay(p, d)).epsilon(1e-6));
    }
}

TEST_CASE("canonical/paper delay ratio is one constant across the slow-light regime") {
    std::vector<double> ratios;
    for (auto [b, d] : {std::pair{10.0, 100.0}, {100.0, 300.0}, {1000.0, 1000.0}}) {
        const MediumParams p = MediumParams::make(1.0, b);
        ratios.push_back(group_delay(p, d, Convention::canonical) /
                         group_delay(p, d, Convention::paper));
    }
    CHECK(ratios[1] == doctest::Approx(ratios[0]).epsilon(1e-3));
    CHECK(ratios[2] == doctest::Approx(ratios[0]).epsilon(1e-3));
}

TEST_CASE("group delay at zero splitting is a singular configuration") {
    const MediumParams p = MediumParams::make(1.0, 10.0);
    CHECK_THROWS_AS(group_delay(p, 0.0, Convention::paper), singular_config_error);
    CHECK_THROWS_AS(group_delay(p, 0.0, Convention::canonical), singular_config_error);
}

TEST_CASE("transparency metric") {
    CHECK(transparency_metric(MediumParams::make(1.0, 200.0), 23.0) ==
          doctest::Approx(0.378).epsilon(1e-3));
    CHECK(transparency_metric(MediumParams::make(1.0, 6.0e4), 3600.0) ==
          doctest::Approx(4.63e-3).epsilon(1e-3));
    CHECK(std::isinf(transparency_metric(MediumParams::make(1.0, 5.0), 0.0)));
    CHECK(transparency_metric(MediumParams::make(1.0, 5.0), 1e12) < 1e-20);
}

TEST_CASE("mixing angle limits: atomic at zero splitting, photonic far detuned") {
    const MediumParams p = MediumParams::make(2.0 * M_PI * 1e4, 100.0, 1e-3);
    for (Convention conv : {Convention::paper, Convention::canonical}) {
        const MixingAngle at0 = mixing_angle(p, 0.0, conv);
        CHECK(at0.cos_theta == 0.0);
        CHECK(at0.sin_theta == 1.0);
        const MixingAngle far = mixing_angle(p, 1e20, conv);
        CHECK(far.cos_theta == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(far.sin_theta == doctest::Approx(0.0).epsilon(1e-4));
    }
}

TEST_CASE("mixing angle: v_g = c cos^2(theta) holds identically against the slow-light delay") {
    const MediumParams p = MediumParams::make(2.0 * M_PI * 1.5e4, 6.0e4, 1e-4);
    for (double d : {30.0, 300.0, 3600.0}) {
        const MixingAngle m = mixing_angle(p, d, Convention::canonical);
        CHECK(m.cos_theta * m.cos_theta + m.sin_theta * m.sin_theta ==
              doctest::Approx(1.0).epsilon(1e-12));
        const double tsl_phys = slow_light_delay(p, d) / p.gamma;
        const double vg_expected = p.light_speed / (1.0 + p.light_speed * tsl_phys / p.length);
        CHECK(group_velocity(p, d, Convention::canonical) ==
              doctest::Approx(vg_expected).epsilon(1e-12));
    }
}

TEST_CASE("interaction matrix carries exactly the printed sparsity pattern") {
    const MatrixM mm = build_matrix_M(2.0, 3.0, 5.0, 7.0, cplx(0.0, -0.5));
    const auto& m = mm.m;
    // 1-based structurally nonzero positions as printed
    const std::vector<std::pair<int, int>> nonzero = {
        {1, 1}, {1, 4}, {2, 2}, {2, 5}, {3, 3}, {3, 5}, {4, 1}, {4, 4}, {5, 2}, {5, 3}, {5, 5}};
    int count = 0;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            const bool expect =
                std::find(nonzero.begin(), nonzero.end(), std::pair{i + 1, j + 1}) != nonzero.end();
            if (expect) {
                CHECK(m[i][j] != cplx(0.0, 0.0));
                ++count;
            } else {
                CHECK(m[i][j] == cplx(0.0, 0.0));
            }
        }
    CHECK(count == 11);
}

TEST_CASE("interaction matrix entries") {
    const double delta = 13.0;
    const cplx gam(0.0, -0.5);
    const MatrixM mm = build_matrix_M(0.0, 3e8, 4.0, delta, gam);
    // (3,5) = i Delta and (5,3) = -i Delta (1-based)
    CHECK(mm.m[2][4] == cplx(0.0, delta));
    CHECK(mm.m[4][2] == cplx(0.0, -delta));
    // atomic diagonal = Gam = -i gamma/2
    CHECK(mm.m[2][2] == gam);
    CHECK(mm.m[3][3] == gam);
    CHECK(mm.m[4][4] == gam);
    // field-coherence couplings carry opposite signs between the two chains
    CHECK(mm.m[0][3] == -mm.m[1][4]);

    const MatrixM zero = build_matrix_M(0.0, 3e8, 0.0, 0.0, cplx(0.0, 0.0));
    for (const auto& row : zero.m)
        for (const auto& e : row) CHECK(e == cplx(0.0, 0.0));
}

TEST_CASE("dark eigenvector: null residual and amplitude ratio G/Delta") {
    const double g = 7.0;
    for (double delta = 0.1; delta <= 100.0; delta *= 1.3) {
        const MatrixM mm = build_matrix_M(0.0, 3e8, g, delta, cplx(0.0, 0.0));
        const PolaritonDecomposition pd = dark_eigenvector(mm);
        // residual of M v = 0
        double resid = 0.0;
        for (int i = 0; i < 5; ++i) {
            cplx mv(0.0, 0.0);
            for (int j = 0; j < 5; ++j) mv += mm.m[i][j] * pd.eigenvector[j];
            resid += std::norm(mv);
        }
        CHECK(std::sqrt(resid) < 1e-12 * matrix_norm(mm));
        // sigma_y, sigma_x and E_x components vanish
        CHECK(std::abs(pd.eigenvector[0]) < 1e-12);
        CHECK(std::abs(pd.eigenvector[3]) < 1e-12);
        CHECK(std::abs(pd.eigenvector[4]) < 1e-12);
        // |sigma_z / E_y| = G / Delta
        const double ratio = std::abs(pd.eigenvector[2]) / std::abs(pd.eigenvector[1]);
        CHECK(ratio == doctest::Approx(g / delta).epsilon(1e-10));
        CHECK(pd.cos_theta * pd.cos_theta + pd.sin_theta * pd.sin_theta ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("dark eigenvector: equal coupling and splitting balance the components") {
    const MatrixM mm = build_matrix_M(0.0, 3e8, 5.0, 5.0, cplx(0.0, 0.0));
    const PolaritonDecomposition pd = dark_eigenvector(mm);
    CHECK(std::abs(pd.eigenvector[2]) / std::abs(pd.eigenvector[1]) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("dark eigenvector: photonic limit at large splitting") {
    const MatrixM mm = build_matrix_M(0.0, 3e8, 5.0, 5e8, cplx(0.0, 0.0));
    const PolaritonDecomposition pd = dark_eigenvector(mm);
    CHECK(pd.cos_theta == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pd.sin_theta < 1e-7);
}

TEST_CASE("dark eigenvector varies continuously in the splitting") {
    const double g = 5.0;
    PolaritonDecomposition prev;
    bool first = true;
    for (double delta = 0.1; delta <= 100.0; delta *= 1.05) {
        const PolaritonDecomposition pd =
            dark_eigenvector(build_matrix_M(0.0, 3e8, g, delta, cplx(0.0, 0.0)));
        if (!first) {
            cplx ov(0.0, 0.0);
            for (int i = 0; i < 5; ++i) ov += std::conj(prev.eigenvector[i]) * pd.eigenvector[i];
            CHECK(std::abs(ov) > 0.999);
        }
        prev = pd;
        first = false;
    }
}

TEST_CASE("scaling laws") {
    const ScalingLaws s = scaling_laws(100.0);
    CHECK(s.bandwidth_bound == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(s.min_splitting == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(s.efficiency_estimate == 1.0);

    const ScalingLaws tiny = scaling_laws(1e-12);
    CHECK(tiny.bandwidth_bound < 2e-6);
    CHECK(tiny.efficiency_estimate < 2e-6);
    CHECK(tiny.min_splitting < 2e-6);

    // eta ~ prefactor * sqrt(b), clipped at 1
    CHECK(scaling_laws(4.0, 1.0, 0.3).efficiency_estimate == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(scaling_laws(4.0).efficiency_estimate == 1.0);
}

TEST_CASE("passivity: Re chi <= 0 for random parameter draws, both conventions") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> b_dist(0.1, 1e4), d_dist(0.1, 3000.0);
    for (int trial = 0; trial < 20; ++trial) {
        const MediumParams p = MediumParams::make(1.0, b_dist(rng));
        const double delta = d_dist(rng);
        for (int i = 0; i < 1000; ++i) {
            const double w = -10.0 * delta + 20.0 * delta * i / 999.0;
            CHECK(susceptibility(w, p, delta, Convention::paper).real() <= 0.0);
            CHECK(susceptibility(w, p, delta, Convention::canonical).real() <= 0.0);
        }
    }
}

TEST_CASE("conjugation symmetry: chi(-w) = conj(chi(w)) and T(-w) = T(w)") {
    const MediumParams p = MediumParams::make(1.0, 321.0);
    for (Convention conv : {Convention::paper, Convention::canonical}) {
        for (double w : {0.3, 5.0, 77.0, 1234.5}) {
            const cplx a = susceptibility(w, p, 50.0, conv);
            const cplx b = susceptibility(-w, p, 50.0, conv);
            CHECK(b.real() == doctest::Approx(a.real()).epsilon(1e-12));
            CHECK(b.imag() == doctest::Approx(-a.imag()).epsilon(1e-12));
            CHECK(std::exp(2.0 * b.real()) == doctest::Approx(std::exp(2.0 * a.real())).epsilon(1e-12));
        }
    }
}

TEST_CASE("Kramers-Kronig: Hilbert transform of Re chi reproduces Im chi (canonical)") {
    const double delta = 20.0;
    const MediumParams p = MediumParams::make(1.0, 40.0);
    const double w_max = 100.0 * delta;
    const int n = 400000;
    for (double w = -0.5 * delta; w <= 0.5 * delta + 1e-9; w += delta / 8.0) {
        const double im_rec = kk_imag_from_real(p, delta, Convention::canonical, w, w_max, n);
        const double im_true = susceptibility(w, p, delta, Convention::canonical).imag();
        CHECK(im_rec == doctest::Approx(im_true).epsilon(0.02));
    }
}

TEST_CASE("strontium preset") {
    const EstimateReport r = estimate_sr();
    CHECK(r.optical_depth == 200.0);
    CHECK(r.v_g == doctest::Approx(99.71).epsilon(5e-3));
    CHECK(r.v_g > 10.0);   // order of magnitude of 100 m/s
    CHECK(r.v_g < 1000.0);
    CHECK(r.tau == doctest::Approx(7.5026e-7).epsilon(1e-3));
}

TEST_CASE("praseodymium preset") {
    const EstimateReport r = estimate_pryso();
    CHECK(r.optical_depth == 32.0);
    CHECK(r.gamma == doctest::Approx(4.0 * M_PI * 12.0e3).epsilon(1e-12));
    CHECK(r.tau > 0.0);
}

TEST_SUITE_END();

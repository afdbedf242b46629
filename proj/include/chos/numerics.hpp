// numerics.hpp - small numeric utilities: dense complex LU at fixed size,
// golden-section maximization, least squares helpers.
#pragma once

#include "chos/errors.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace chos {

// ---------------------------------------------------------------------------
// Dense complex linear solve with partial pivoting (N is tiny, e.g. 5).

template <std::size_t N>
using MatC = std::array<std::array<std::complex<double>, N>, N>;

template <std::size_t N>
using VecC = std::array<std::complex<double>, N>;

template <std::size_t N>
inline VecC<N> lu_solve(MatC<N> a, VecC<N> b) {
    for (std::size_t col = 0; col < N; ++col) {
        std::size_t piv = col;
        double best = std::abs(a[col][col]);
        for (std::size_t r = col + 1; r < N; ++r) {
            const double m = std::abs(a[r][col]);
            if (m > best) { best = m; piv = r; }
        }
        if (best == 0.0) throw internal_error("lu_solve: singular matrix");
        if (piv != col) { std::swap(a[piv], a[col]); std::swap(b[piv], b[col]); }
        for (std::size_t r = col + 1; r < N; ++r) {
            const auto f = a[r][col] / a[col][col];
            a[r][col] = 0.0;
            for (std::size_t c = col + 1; c < N; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    VecC<N> x{};
    for (std::size_t ri = N; ri-- > 0;) {
        auto s = b[ri];
        for (std::size_t c = ri + 1; c < N; ++c) s -= a[ri][c] * x[c];
        x[ri] = s / a[ri][ri];
    }
    return x;
}

// ---------------------------------------------------------------------------
// Golden-section search for the maximum of a unimodal function on [lo, hi].

struct GoldenResult {
    double x = 0.0;
    double value = 0.0;
    int evaluations = 0;
};

inline GoldenResult golden_section_max(const std::function<double(double)>& f, double lo,
                                       double hi, double x_tol, int max_iter = 200) {
    if (!(lo <= hi)) throw validation_error("golden_section_max: lo must be <= hi");
    GoldenResult res;
    if (hi - lo <= x_tol) {
        res.x = 0.5 * (lo + hi);
        res.value = f(res.x);
        res.evaluations = 1;
        return res;
    }
    const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    res.evaluations = 2;
    for (int i = 0; i < max_iter && (b - a) > x_tol; ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2; f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1; f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
        ++res.evaluations;
    }
    if (f1 >= f2) { res.x = x1; res.value = f1; }
    else          { res.x = x2; res.value = f2; }
    return res;
}

// ---------------------------------------------------------------------------
// Ordinary least squares y ~ X c for a handful of columns.

inline std::vector<double> least_squares(const std::vector<std::vector<double>>& rows,
                                         const std::vector<double>& y) {
    const std::size_t n = rows.size();
    if (n == 0 || y.size() != n) throw validation_error("least_squares: empty or mismatched data");
    const std::size_t p = rows[0].size();
    // normal equations; p is 2 or 3 here, conditioning is not a concern
    std::vector<std::vector<double>> ata(p, std::vector<double>(p, 0.0));
    std::vector<double> aty(p, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t a = 0; a < p; ++a) {
            aty[a] += rows[i][a] * y[i];
            for (std::size_t b = 0; b < p; ++b) ata[a][b] += rows[i][a] * rows[i][b];
        }
    }
    // Gaussian elimination with partial pivoting
    std::vector<double> x(aty);
    for (std::size_t col = 0; col < p; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < p; ++r)
            if (std::abs(ata[r][col]) > std::abs(ata[piv][col])) piv = r;
        if (ata[piv][col] == 0.0) throw validation_error("least_squares: singular normal equations");
        std::swap(ata[piv], ata[col]);
        std::swap(x[piv], x[col]);
        for (std::size_t r = col + 1; r < p; ++r) {
            const double f = ata[r][col] / ata[col][col];
            for (std::size_t c = col; c < p; ++c) ata[r][c] -= f * ata[col][c];
            x[r] -= f * x[col];
        }
    }
    for (std::size_t ri = p; ri-- > 0;) {
        double s = x[ri];
        for (std::size_t c = ri + 1; c < p; ++c) s -= ata[ri][c] * x[c];
        x[ri] = s / ata[ri][ri];
    }
    return x;
}

// Trapezoid weight for node i of an n-node uniform grid.
inline double trapz_weight(std::size_t i, std::size_t n) {
    return (i == 0 || i + 1 == n) ? 0.5 : 1.0;
}

} // namespace chos

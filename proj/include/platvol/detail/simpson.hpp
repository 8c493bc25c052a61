#pragma once

#include <cmath>

namespace platvol {

namespace detail {

template <class F>
double simpson_step(F& f, double a, double fa, double m, double fm, double b, double fb, double whole, double tol,
                    int depth, double& error, int& evals) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    evals += 2;
    const double left = (m - a) / 6 * (fa + 4 * flm + fm);
    const double right = (b - m) / 6 * (fm + 4 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15 * tol) {
        error += std::abs(delta) / 15;
        return left + right + delta / 15;
    }
    return simpson_step(f, a, fa, lm, flm, m, fm, left, tol / 2, depth - 1, error, evals) +
           simpson_step(f, m, fm, rm, frm, b, fb, right, tol / 2, depth - 1, error, evals);
}

}  // namespace detail

template <class F>
double adaptive_simpson(F&& f, double a, double b, double tol, int max_depth, double& error, int& evals) {
    // Start from two panels so a symmetric integrand cannot fool the first comparison.
    const double m = 0.5 * (a + b), lq = 0.5 * (a + m), rq = 0.5 * (m + b);
    const double fa = f(a), fm = f(m), fb = f(b), flq = f(lq), frq = f(rq);
    evals += 5;
    error = 0.0;
    const double left = (m - a) / 6 * (fa + 4 * flq + fm);
    const double right = (b - m) / 6 * (fm + 4 * frq + fb);
    return detail::simpson_step(f, a, fa, lq, flq, m, fm, left, tol / 2, max_depth, error, evals) +
           detail::simpson_step(f, m, fm, rq, frq, b, fb, right, tol / 2, max_depth, error, evals);
}

}  // namespace platvol

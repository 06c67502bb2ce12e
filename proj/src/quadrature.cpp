#include "relsim/quadrature.hpp"

#include <algorithm>

namespace relsim {

namespace {

double simpson_rec(const std::function<double(double)>& f, double a, double b,
                   double fa, double fm, double fb, double whole, double tol,
                   int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth) {
    if (b <= a) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, abs_tol, max_depth);
}

double integrate_piecewise(const std::function<double(double)>& f, double a, double b,
                           std::span<const double> interior_breaks, double abs_tol) {
    if (b <= a) return 0.0;
    std::vector<double> pts;
    pts.reserve(interior_breaks.size() + 2);
    pts.push_back(a);
    for (double p : interior_breaks)
        if (p > a && p < b) pts.push_back(p);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    const double piece_tol = abs_tol / static_cast<double>(pts.size() - 1);
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k)
        total += adaptive_simpson(f, pts[k], pts[k + 1], piece_tol);
    return total;
}

double solve_increasing(const std::function<double(double)>& g, double target,
                        double time_tol) {
    if (target <= 0.0) return 0.0;
    double lo = 0.0, glo = 0.0;
    double hi = 1.0, ghi = g(1.0);
    while (ghi < target) {
        lo = hi;
        glo = ghi;
        hi *= 2.0;
        ghi = g(hi);
        if (hi > 1e18)
            throw std::runtime_error("solve_increasing: failed to bracket root");
    }
    // Bisect down to a narrow bracket, then secant inside it.
    while (hi - lo > 1e4 * time_tol) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if (gm < target) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
            ghi = gm;
        }
    }
    double t = lo;
    for (int it = 0; it < 60 && hi - lo > time_tol; ++it) {
        t = (ghi > glo) ? lo + (target - glo) * (hi - lo) / (ghi - glo)
                        : 0.5 * (lo + hi);
        t = std::clamp(t, lo + 0.1 * (hi - lo), hi - 0.1 * (hi - lo));
        const double gt = g(t);
        if (gt < target) {
            lo = t;
            glo = gt;
        } else {
            hi = t;
            ghi = gt;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace relsim

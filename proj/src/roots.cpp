#include "knotrep/roots.hpp"

#include <cmath>

namespace knotrep {

std::vector<std::complex<double>> complex_roots(const PolyQ& p) {
    using C = std::complex<double>;
    int deg = poly_deg(p);
    if (deg <= 0) return {};
    std::vector<C> c(static_cast<size_t>(deg) + 1);
    for (int i = 0; i <= deg; ++i) c[static_cast<size_t>(i)] = p[static_cast<size_t>(i)].get_d();
    for (auto& x : c) x /= c.back();

    auto eval = [&](C z) {
        C acc = 0;
        for (int i = deg; i >= 0; --i) acc = acc * z + c[static_cast<size_t>(i)];
        return acc;
    };

    // Durand-Kerner from staggered points off the unit circle
    std::vector<C> r(static_cast<size_t>(deg));
    double radius = 0;
    for (int i = 0; i < deg; ++i) radius = std::max(radius, std::abs(c[static_cast<size_t>(i)]));
    radius = 1.0 + radius;
    for (int i = 0; i < deg; ++i)
        r[static_cast<size_t>(i)] = std::polar(radius * (0.5 + 0.5 * (i + 1.0) / deg),
                                               0.4 + 6.283185307179586 * i / deg);
    for (int iter = 0; iter < 600; ++iter) {
        double moved = 0;
        for (int i = 0; i < deg; ++i) {
            C num = eval(r[static_cast<size_t>(i)]);
            C den = 1;
            for (int j = 0; j < deg; ++j)
                if (j != i) den *= r[static_cast<size_t>(i)] - r[static_cast<size_t>(j)];
            if (den == C(0)) den = 1e-30;
            C delta = num / den;
            r[static_cast<size_t>(i)] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        if (moved < 1e-14 * radius) break;
    }
    return r;
}

std::complex<double> closest_root(const PolyQ& p, std::complex<double> near, double* dist) {
    auto roots = complex_roots(p);
    if (roots.empty()) {
        if (dist) *dist = std::numeric_limits<double>::infinity();
        return {};
    }
    std::complex<double> best = roots[0];
    double bd = std::abs(roots[0] - near);
    for (auto& r : roots) {
        double d = std::abs(r - near);
        if (d < bd) {
            bd = d;
            best = r;
        }
    }
    if (dist) *dist = bd;
    return best;
}

} // namespace knotrep

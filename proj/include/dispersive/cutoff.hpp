#pragma once

// The smooth cutoff phi_r: even, 0 for |xi| <= r, 1 for |xi| >= r+1, built
// from the standard exp-based step psi(s) = h(s)/(h(s)+h(1-s)), h(s)=e^{-1/s}.
// All xi-derivatives are available analytically on the transition band.

#include <cmath>
#include <stdexcept>
#include <vector>

namespace dispersive {

namespace detail {

// h^{(n)}(s) = h(s) * Q_n(1/s) with Q_0 = 1, Q_{n+1}(u) = u^2 (Q_n(u) - Q_n'(u)).
inline const std::vector<double>& h_poly(int n) {
    static std::vector<std::vector<double>> cache = {{1.0}};
    while (static_cast<int>(cache.size()) <= n) {
        const auto& Q = cache.back();
        std::vector<double> R(Q.size() + 2, 0.0);
        for (std::size_t i = 0; i < Q.size(); ++i) {
            R[i + 2] += Q[i];                      // u^2 Q
            if (i >= 1) R[i + 1] -= Q[i] * static_cast<double>(i);  // -u^2 Q'
        }
        cache.push_back(std::move(R));
    }
    return cache[n];
}

inline double h_deriv(double s, int n) {
    if (s <= 0.0) return 0.0;
    const auto& Q = h_poly(n);
    const double u = 1.0 / s;
    double q = 0.0;
    for (std::size_t i = Q.size(); i-- > 0;) q = q * u + Q[i];
    return std::exp(-u) * q;
}

}  // namespace detail

/// n-th derivative of the smooth step psi: psi = 0 on (-inf,0], 1 on [1,inf).
inline double smooth_step(double s, int n = 0) {
    if (n < 0) throw std::invalid_argument("smooth_step: negative derivative order");
    if (s <= 0.0 || s >= 1.0) return n == 0 ? (s >= 1.0 ? 1.0 : 0.0) : 0.0;
    // psi * g = h with g = h(s) + h(1-s);  solve the Leibniz triangle for psi^{(n)}.
    std::vector<double> hs(n + 1), g(n + 1), psi(n + 1);
    for (int k = 0; k <= n; ++k) {
        hs[k] = detail::h_deriv(s, k);
        g[k] = hs[k] + (k % 2 == 0 ? 1.0 : -1.0) * detail::h_deriv(1.0 - s, k);
    }
    for (int m = 0; m <= n; ++m) {
        double acc = hs[m];
        double binom = 1.0;
        for (int k = 0; k < m; ++k) {
            if (k > 0) binom = binom * (m - k + 1) / k;  // C(m,k)
            acc -= (k == 0 ? 1.0 : binom) * psi[k] * g[m - k];
        }
        psi[m] = acc / g[0];
    }
    return psi[n];
}

/// d-th xi-derivative of phi_r(xi) = psi(|xi| - r). Even in xi; vanishes for
/// |xi| <= r, equals 1 (d = 0) for |xi| >= r + 1.
inline double cutoff(double r, double xi, int d = 0) {
    if (r <= 0.0) throw std::invalid_argument("cutoff: r must be positive");
    const double a = std::abs(xi);
    if (a <= r) return 0.0;
    if (a >= r + 1.0) return d == 0 ? 1.0 : 0.0;
    const double v = smooth_step(a - r, d);
    return (xi < 0.0 && d % 2 == 1) ? -v : v;
}

}  // namespace dispersive

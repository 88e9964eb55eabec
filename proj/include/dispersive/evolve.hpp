#pragma once

// Fourier-Galerkin time evolution and truncated-propagator growth
// measurement: the numerical face of the well-posed/ill-posed dichotomy.

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "transforms.hpp"

namespace dispersive {

class StabilityViolation : public std::runtime_error {
public:
    StabilityViolation(double dt, double bound)
        : std::runtime_error("step dt = " + std::to_string(dt) +
                             " exceeds the explicit stability bound " + std::to_string(bound)) {}
};

enum class EvolutionMethod { ExactExponential, Rk4Stepping };

struct EvolutionConfig {
    int N = 16;
    double t_final = 0.01;
    EvolutionMethod method = EvolutionMethod::ExactExponential;
    double dt = 0.0;       // stepping only
    int samples = 32;      // norm history resolution
};

struct NormHistory {
    std::vector<double> times;
    std::vector<double> norms;
};

/// Generator G = -iP of the complex system (L u = f reads u_t = -iP u + ...).
inline GalerkinMatrix generator_matrix(const ComplexSystem& sys, int N) {
    return galerkin_matrix(principal_symbol(sys) * (-ci), N);
}

/// Generator G = -(a J d^4 + beta d^2 + gamma d) of the real system; the
/// optional iso3 adds the isotropic third-order term iso3 * I d^3 of the
/// holonomy-corrected frame operator.
inline GalerkinMatrix generator_matrix(const RealSystem& sys, int N, double iso3 = 0.0) {
    return galerkin_matrix(real_generator_symbol(sys.beta, sys.gamma, sys.principal_scale, iso3), N);
}

namespace detail {

inline double stability_bound(const GalerkinMatrix& G, int N) {
    // RK4 explicit bound dt <= 2.6/(N^4 + ||lower order|| N^3); the principal
    // weight is read off the generator's largest entry at the edge mode.
    double principal = 0.0;
    for (int c = 0; c < 2; ++c)
        for (int c2 = 0; c2 < 2; ++c2)
            principal = std::max(principal,
                                 std::abs(G.data(TruncatedField::index(N, N, c),
                                                 TruncatedField::index(N, N, c2))) /
                                     std::pow(double(N), 4));
    principal = std::max(principal, 1.0);
    const double lower = std::max(0.0, G.norm() / std::pow(double(N), 4) - principal);
    return 2.6 / (principal * std::pow(double(N), 4) + lower * std::pow(double(N), 3) + 1.0);
}

inline NormHistory exact_history(const GalerkinMatrix& G, const TruncatedField& u0,
                                 const EvolutionConfig& cfg) {
    const int S = std::max(cfg.samples, 32);
    const double dt = cfg.t_final / S;
    const Eigen::MatrixXcd E = (dt * G.data).exp();
    NormHistory h;
    Eigen::VectorXcd u = u0.modes;
    h.times.push_back(0.0);
    h.norms.push_back(std::sqrt(2.0 * pi) * u.norm());
    for (int s = 1; s <= S; ++s) {
        u = E * u;
        h.times.push_back(s * dt);
        h.norms.push_back(std::sqrt(2.0 * pi) * u.norm());
    }
    return h;
}

template <class GenAt>
NormHistory rk4_history(GenAt&& gen_at, const TruncatedField& u0, const EvolutionConfig& cfg,
                        double bound) {
    if (cfg.dt <= 0.0) throw std::invalid_argument("stepping method requires dt > 0");
    if (cfg.dt > bound) throw StabilityViolation(cfg.dt, bound);
    const int steps = static_cast<int>(std::ceil(cfg.t_final / cfg.dt - 1e-12));
    const int S = std::max(cfg.samples, 32);
    const int stride = std::max(1, steps / S);
    NormHistory h;
    Eigen::VectorXcd u = u0.modes;
    h.times.push_back(0.0);
    h.norms.push_back(std::sqrt(2.0 * pi) * u.norm());
    double t = 0.0;
    for (int s = 0; s < steps; ++s) {
        const double dt = std::min(cfg.dt, cfg.t_final - t);
        const Eigen::MatrixXcd G1 = gen_at(t);
        const Eigen::MatrixXcd G2 = gen_at(t + 0.5 * dt);
        const Eigen::MatrixXcd G3 = gen_at(t + dt);
        const Eigen::VectorXcd k1 = G1 * u;
        const Eigen::VectorXcd k2 = G2 * (u + 0.5 * dt * k1);
        const Eigen::VectorXcd k3 = G2 * (u + 0.5 * dt * k2);
        const Eigen::VectorXcd k4 = G3 * (u + dt * k3);
        u += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += dt;
        if ((s + 1) % stride == 0 || s + 1 == steps) {
            h.times.push_back(t);
            h.norms.push_back(std::sqrt(2.0 * pi) * u.norm());
        }
    }
    return h;
}

}  // namespace detail

inline NormHistory evolve(const ComplexSystem& sys, const TruncatedField& u0,
                          const EvolutionConfig& cfg) {
    const GalerkinMatrix G = generator_matrix(sys, cfg.N);
    if (cfg.method == EvolutionMethod::ExactExponential) return detail::exact_history(G, u0, cfg);
    return detail::rk4_history([&](double) { return G.data; }, u0, cfg,
                               detail::stability_bound(G, cfg.N));
}

inline NormHistory evolve(const RealSystem& sys, const TruncatedField& u0,
                          const EvolutionConfig& cfg, double iso3 = 0.0) {
    const GalerkinMatrix G = generator_matrix(sys, cfg.N, iso3);
    if (cfg.method == EvolutionMethod::ExactExponential) return detail::exact_history(G, u0, cfg);
    return detail::rk4_history([&](double) { return G.data; }, u0, cfg,
                               detail::stability_bound(G, cfg.N));
}

/// Time-dependent coefficients require stepping; the generator is refreshed
/// at every RK4 stage time.
inline NormHistory evolve(const std::function<RealSystem(double)>& sys_of_t,
                          const TruncatedField& u0, const EvolutionConfig& cfg) {
    if (cfg.method != EvolutionMethod::Rk4Stepping)
        throw std::invalid_argument("time-dependent coefficients require the stepping method");
    const GalerkinMatrix G0 = generator_matrix(sys_of_t(0.0), cfg.N);
    return detail::rk4_history(
        [&](double t) { return generator_matrix(sys_of_t(t), cfg.N).data; }, u0, cfg,
        detail::stability_bound(G0, cfg.N));
}

enum class GrowthClass { Bounded, Polynomial, CubicExponential };

inline const char* to_string(GrowthClass c) {
    switch (c) {
        case GrowthClass::Bounded: return "bounded";
        case GrowthClass::Polynomial: return "polynomial";
        default: return "cubic-exponential";
    }
}

struct GrowthStudy {
    std::vector<int> Ns;
    std::vector<double> propagator_norms;  // ||exp(t G_N)||_2
    double t = 0.0;                        // possibly auto-shrunk
    bool t_shrunk = false;
    double slope_vs_N = 0.0, r2_vs_N = 0.0;
    double slope_vs_N3 = 0.0, r2_vs_N3 = 0.0;
    GrowthClass classification = GrowthClass::Bounded;
};

namespace detail {

struct LineFit {
    double slope = 0.0, r2 = 0.0;
};

inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n < 2) return {};
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i]; sy += y[i];
        sxx += x[i] * x[i]; sxy += x[i] * y[i]; syy += y[i] * y[i];
    }
    const double vx = sxx - sx * sx / n;
    const double vy = syy - sy * sy / n;
    const double cxy = sxy - sx * sy / n;
    LineFit f;
    f.slope = vx > 0 ? cxy / vx : 0.0;
    f.r2 = (vx > 0 && vy > 0) ? (cxy * cxy) / (vx * vy) : 1.0;
    return f;
}

/// Crude exponent pre-scan: the constant-coefficient growth mechanism is
/// e^{Im(mean a_ii)/(2 pi) * t * k^3}; used only as an overflow guard.
inline double growth_rate_prescan(const ComplexSystem& sys) {
    return std::max(std::abs(sys.A(0, 0).mean_integral().imag()),
                    std::abs(sys.A(1, 1).mean_integral().imag())) /
           (2.0 * pi);
}
inline double growth_rate_prescan(const RealSystem&) { return 0.0; }

}  // namespace detail

/// ||exp(t G_N)|| over the N-ladder plus fits of log-norm against N and N^3.
/// Classification thresholds: bounded = max/min <= 1.5; cubic-exponential =
/// R^2 >= 0.99 on the N^3 fit with positive slope.
template <class System>
GrowthStudy growth_study(const System& sys, std::vector<int> Ns, double t,
                         double exponent_cap = 40.0) {
    GrowthStudy g;
    std::sort(Ns.begin(), Ns.end());
    g.Ns = Ns;
    g.t = t;
    const double rate = detail::growth_rate_prescan(sys);
    if (!Ns.empty() && rate > 0.0) {
        const double worst = rate * t * std::pow(double(Ns.back()), 3);
        if (worst > exponent_cap) {
            g.t = exponent_cap / (rate * std::pow(double(Ns.back()), 3));
            g.t_shrunk = true;
        }
    }
    std::vector<double> xs1, xs3, ys;
    for (int N : Ns) {
        const GalerkinMatrix G = generator_matrix(sys, N);
        const Eigen::MatrixXcd E = (g.t * G.data).exp();
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(E);
        const double nrm = svd.singularValues()(0);
        g.propagator_norms.push_back(nrm);
        xs1.push_back(double(N));
        xs3.push_back(std::pow(double(N), 3));
        ys.push_back(std::log(nrm));
    }
    const auto f1 = detail::fit_line(xs1, ys);
    const auto f3 = detail::fit_line(xs3, ys);
    g.slope_vs_N = f1.slope;
    g.r2_vs_N = f1.r2;
    g.slope_vs_N3 = f3.slope;
    g.r2_vs_N3 = f3.r2;
    const auto [mn, mx] =
        std::minmax_element(g.propagator_norms.begin(), g.propagator_norms.end());
    if (g.propagator_norms.empty() || *mx / std::max(*mn, 1e-300) <= 1.5)
        g.classification = GrowthClass::Bounded;
    else if (f3.r2 >= 0.99 && f3.slope > 0.0)
        g.classification = GrowthClass::CubicExponential;
    else
        g.classification = GrowthClass::Polynomial;
    return g;
}

struct DichotomyReport {
    GrowthStudy compliant, violating;
    Verdict compliant_verdict, violating_verdict;
    bool consistent = false;  // verdicts match the growth classifications
};

namespace detail {
inline Verdict verdict_of(const ComplexSystem& s) { return check_complex(s); }
inline Verdict verdict_of(const RealSystem& s) { return check_real(s); }
}  // namespace detail

/// Paired growth study with a verdict consistency check against the
/// condition checkers.
template <class System>
DichotomyReport dichotomy_experiment(const System& compliant, const System& violating,
                                     const std::vector<int>& Ns, double t) {
    DichotomyReport rep;
    rep.compliant = growth_study(compliant, Ns, t);
    rep.violating = growth_study(violating, Ns, t);
    rep.compliant_verdict = detail::verdict_of(compliant);
    rep.violating_verdict = detail::verdict_of(violating);
    rep.consistent = rep.compliant_verdict.well_posed ==
                         (rep.compliant.classification == GrowthClass::Bounded) &&
                     rep.violating_verdict.well_posed ==
                         (rep.violating.classification == GrowthClass::Bounded);
    return rep;
}

/// CSV with 17-significant-digit decimals, fixed column order.
inline std::string growth_csv(const GrowthStudy& g, const std::string& label = "series") {
    std::ostringstream os;
    os.precision(17);
    os << "label,N,t,propagator_norm\n";
    for (std::size_t i = 0; i < g.Ns.size(); ++i)
        os << label << "," << g.Ns[i] << "," << g.t << "," << g.propagator_norms[i] << "\n";
    return os.str();
}

inline std::string dichotomy_csv(const DichotomyReport& rep) {
    std::ostringstream os;
    os.precision(17);
    os << "label,N,t,propagator_norm\n";
    for (std::size_t i = 0; i < rep.compliant.Ns.size(); ++i)
        os << "compliant," << rep.compliant.Ns[i] << "," << rep.compliant.t << ","
           << rep.compliant.propagator_norms[i] << "\n";
    for (std::size_t i = 0; i < rep.violating.Ns.size(); ++i)
        os << "violating," << rep.violating.Ns[i] << "," << rep.violating.t << ","
           << rep.violating.propagator_norms[i] << "\n";
    return os.str();
}

}  // namespace dispersive

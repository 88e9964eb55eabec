#pragma once

// Pseudodifferential symbols on T x R as finite sums of separable terms
// f(x) g(xi) with matrix-valued f, plus their action on truncated Fourier
// space and the dense (Galerkin) matrix realization.
//
// Operator convention: (Qu)(x) = sum_k e^{ikx} q(x,k) u_hat_k, so a symbol is
// always evaluated at integer frequencies when applied.

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "cutoff.hpp"
#include "periodic.hpp"

namespace dispersive {

class NonRealInput : public std::runtime_error {
public:
    explicit NonRealInput(double asym)
        : std::runtime_error("input field violates conjugate symmetry by " + std::to_string(asym)) {}
};

// Raised when the Neumann certificate ||Lambda~|| < 1/2 fails; signals that
// the cutoff radius r is too small.
class NotDiagonallyDominant : public std::runtime_error {
public:
    explicit NotDiagonallyDominant(double norm)
        : std::runtime_error("perturbation norm " + std::to_string(norm) +
                             " >= 1/2; cutoff radius too small"),
          norm_(norm) {}
    double norm() const { return norm_; }

private:
    double norm_;
};

/// Order assigned to terms carrying a differentiated cutoff factor: they are
/// supported in the transition band, hence of order -infinity.
inline constexpr int kCompactOrder = std::numeric_limits<int>::min() / 2;

/// Separable xi-factor in normal form: i^{i_power} * xi^{poly} * prod_j
/// phi_r^{(d_j)}(xi). Poly{m} is phi_derivs empty, poly = m >= 0;
/// CutoffPower{l,d,i_power} is poly = -l with one phi factor.
struct XiFactor {
    int i_power = 0;             // multiplier i^{i_power}, normalized to 0..3
    int poly = 0;                // power of xi
    std::vector<int> phi_derivs; // derivative orders of cutoff factors, sorted
    double r = 0.0;              // cutoff radius (meaningful iff !phi_derivs.empty())

    static XiFactor poly_factor(int m) {
        if (m < 0) throw std::invalid_argument("XiFactor: negative power needs a cutoff factor");
        XiFactor f;
        f.poly = m;
        return f;
    }

    /// phi_r(xi) / xi^l  (paper section 2 form).
    static XiFactor cutoff_over_poly(int l, double r) {
        XiFactor f;
        f.poly = -l;
        f.phi_derivs = {0};
        f.r = r;
        return f;
    }

    /// p_l(xi) = phi_r(xi) / (i xi)^l  (paper section 3 form).
    static XiFactor p_l(int l, double r) {
        XiFactor f = cutoff_over_poly(l, r);
        f.i_power = ((-l) % 4 + 4) % 4;
        return f;
    }

    bool has_cutoff() const { return !phi_derivs.empty(); }

    int order() const {
        for (int d : phi_derivs)
            if (d > 0) return kCompactOrder;
        return poly;
    }

    cplx unit() const {
        switch (i_power & 3) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }

    cplx eval(double xi) const {
        double phi = 1.0;
        for (int d : phi_derivs) {
            phi *= cutoff(r, xi, d);
            if (phi == 0.0) return {0.0, 0.0};
        }
        if (poly < 0 && xi == 0.0) return {0.0, 0.0};  // unreachable with phi > 0, r > 0
        return unit() * std::pow(xi, poly) * phi;
    }

    XiFactor operator*(const XiFactor& g) const {
        if (has_cutoff() && g.has_cutoff() && r != g.r)
            throw std::invalid_argument("XiFactor product with mismatched cutoff radii");
        XiFactor h;
        h.i_power = (i_power + g.i_power) & 3;
        h.poly = poly + g.poly;
        h.phi_derivs = phi_derivs;
        h.phi_derivs.insert(h.phi_derivs.end(), g.phi_derivs.begin(), g.phi_derivs.end());
        std::sort(h.phi_derivs.begin(), h.phi_derivs.end());
        h.r = has_cutoff() ? r : g.r;
        if (h.poly < 0 && h.phi_derivs.empty())
            throw std::invalid_argument("XiFactor product left a bare negative power");
        return h;
    }

    /// d/dxi as a sum of normal-form factors with real multipliers.
    std::vector<std::pair<double, XiFactor>> derivative() const {
        std::vector<std::pair<double, XiFactor>> out;
        if (poly != 0) {
            XiFactor f = *this;
            f.poly -= 1;
            if (f.poly >= 0 || f.has_cutoff()) out.emplace_back(static_cast<double>(poly), f);
        }
        for (std::size_t j = 0; j < phi_derivs.size(); ++j) {
            XiFactor f = *this;
            f.phi_derivs[j] += 1;
            std::sort(f.phi_derivs.begin(), f.phi_derivs.end());
            out.emplace_back(1.0, f);
        }
        return out;
    }

    bool same_shape(const XiFactor& g) const {
        return i_power == g.i_power && poly == g.poly && phi_derivs == g.phi_derivs &&
               (!has_cutoff() || r == g.r);
    }
};

struct SymbolTerm {
    MatrixCoefficient coef;
    XiFactor xi;
};

/// Finite sum of separable terms; realizes elements of S^m(T; M(2)).
struct Symbol {
    std::vector<SymbolTerm> terms;
    std::optional<int> remainder_order;  // order of discarded terms, if any

    Symbol() = default;
    Symbol(MatrixCoefficient coef, XiFactor xi) { add_term(std::move(coef), std::move(xi)); }

    static Symbol zero() { return {}; }
    static Symbol identity() { return {MatrixCoefficient::identity(), XiFactor::poly_factor(0)}; }

    void add_term(MatrixCoefficient coef, XiFactor xi) {
        if (coef.is_zero()) return;
        for (auto& t : terms) {
            if (t.xi.same_shape(xi)) {
                t.coef = t.coef + coef;
                return;
            }
        }
        terms.push_back({std::move(coef), std::move(xi)});
    }

    void prune(double tol = 0.0) {
        std::erase_if(terms, [tol](const SymbolTerm& t) { return t.coef.is_zero(tol); });
    }

    int order() const {
        int m = kCompactOrder;
        for (const auto& t : terms) m = std::max(m, t.xi.order());
        return m;
    }

    Symbol operator+(const Symbol& q) const {
        Symbol s = *this;
        for (const auto& t : q.terms) s.add_term(t.coef, t.xi);
        if (q.remainder_order)
            s.remainder_order = std::max(s.remainder_order.value_or(kCompactOrder), *q.remainder_order);
        return s;
    }
    Symbol operator*(cplx c) const {
        Symbol s = *this;
        for (auto& t : s.terms) t.coef = t.coef * c;
        return s;
    }

    Symbol derivative_xi() const {
        Symbol s;
        s.remainder_order = remainder_order;
        for (const auto& t : terms)
            for (const auto& [mult, xf] : t.xi.derivative()) s.add_term(t.coef * cplx(mult), xf);
        return s;
    }
    Symbol derivative_x() const {
        Symbol s;
        s.remainder_order = remainder_order;
        for (const auto& t : terms) s.add_term(t.coef.derivative(), t.xi);
        return s;
    }

    std::array<std::array<cplx, 2>, 2> evaluate(double x, double xi) const {
        std::array<std::array<cplx, 2>, 2> out{{{0.0, 0.0}, {0.0, 0.0}}};
        for (const auto& t : terms) {
            const cplx g = t.xi.eval(xi);
            if (g == cplx{0.0}) continue;
            auto f = t.coef.evaluate(x);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) out[i][j] += f[i][j] * g;
        }
        return out;
    }

    int coefficient_bandwidth() const {
        int K = 0;
        for (const auto& t : terms) K = std::max(K, t.coef.bandwidth());
        return K;
    }
};

/// Finite-dimensional stand-in for L^2(T; C^2): modes |k| <= N of a
/// C^2-valued field, stored as a flat vector with index 2*(k+N)+component.
struct TruncatedField {
    int N = 0;
    Eigen::VectorXcd modes;

    TruncatedField() = default;
    explicit TruncatedField(int N_) : N(N_), modes(Eigen::VectorXcd::Zero(dim(N_))) {}

    static int dim(int N) { return 2 * (2 * N + 1); }
    static int index(int N, int k, int comp) { return 2 * (k + N) + comp; }

    cplx operator()(int k, int comp) const { return modes[index(N, k, comp)]; }
    cplx& at(int k, int comp) { return modes[index(N, k, comp)]; }

    static TruncatedField basis(int N, int k, int comp) {
        TruncatedField u(N);
        u.at(k, comp) = 1.0;
        return u;
    }

    /// e^{ikx} times a constant C^2 amplitude.
    static TruncatedField plane_wave(int N, int k, cplx amp1, cplx amp2) {
        TruncatedField u(N);
        u.at(k, 0) = amp1;
        u.at(k, 1) = amp2;
        return u;
    }

    /// Random real-valued field (conjugate-symmetric modes), bandwidth <= bw.
    template <class Rng>
    static TruncatedField random_real(int N, int bw, Rng& rng) {
        std::uniform_real_distribution<double> U(-1.0, 1.0);
        TruncatedField u(N);
        bw = std::min(bw, N);
        for (int c = 0; c < 2; ++c) {
            u.at(0, c) = U(rng);
            for (int k = 1; k <= bw; ++k) {
                const cplx z{U(rng), U(rng)};
                u.at(k, c) = z;
                u.at(-k, c) = std::conj(z);
            }
        }
        return u;
    }

    /// Parseval: ||u||^2 = 2 pi sum |u_hat|^2.
    double norm() const { return std::sqrt(2.0 * pi) * modes.norm(); }

    /// Largest mode violation of conjugate symmetry; the imaginary part of
    /// the represented function has coefficients (u_k - conj(u_{-k}))/2.
    double max_imag_part() const {
        double m = 0.0;
        for (int k = -N; k <= N; ++k)
            for (int c = 0; c < 2; ++c)
                m = std::max(m, 0.5 * std::abs((*this)(k, c) - std::conj((*this)(-k, c))));
        return m;
    }

    TruncatedField operator-(const TruncatedField& v) const {
        TruncatedField w = *this;
        w.modes -= v.modes;
        return w;
    }
};

/// Dense matrix of an operator restricted to modes |k| <= N, in the
/// TruncatedField basis (2x2 blocks indexed by mode pairs).
struct GalerkinMatrix {
    int N = 0;
    Eigen::MatrixXcd data;

    GalerkinMatrix() = default;
    explicit GalerkinMatrix(int N_)
        : N(N_), data(Eigen::MatrixXcd::Zero(TruncatedField::dim(N_), TruncatedField::dim(N_))) {}
    GalerkinMatrix(int N_, Eigen::MatrixXcd m) : N(N_), data(std::move(m)) {}

    static GalerkinMatrix identity(int N) {
        GalerkinMatrix g(N);
        g.data.setIdentity();
        return g;
    }

    TruncatedField apply(const TruncatedField& u) const {
        TruncatedField v(N);
        v.modes = data * u.modes;
        return v;
    }

    GalerkinMatrix operator*(const GalerkinMatrix& B) const { return {N, data * B.data}; }
    GalerkinMatrix operator+(const GalerkinMatrix& B) const { return {N, data + B.data}; }
    GalerkinMatrix operator-(const GalerkinMatrix& B) const { return {N, data - B.data}; }

    /// Operator 2-norm (largest singular value).
    double norm() const {
        if (data.size() == 0) return 0.0;
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(data);
        return svd.singularValues()(0);
    }

    GalerkinMatrix inverse() const { return {N, data.inverse()}; }
};

/// (Qu)(x) = sum_k e^{ikx} q(x,k) u_hat_k, truncated back to |k| <= N.
inline TruncatedField apply(const Symbol& q, const TruncatedField& u) {
    TruncatedField v(u.N);
    const int N = u.N;
    for (const auto& term : q.terms) {
        for (int k = -N; k <= N; ++k) {
            const cplx g = term.xi.eval(static_cast<double>(k));
            if (g == cplx{0.0}) continue;
            const cplx a0 = g * u(k, 0);
            const cplx a1 = g * u(k, 1);
            if (a0 == cplx{0.0} && a1 == cplx{0.0}) continue;
            for (int i = 0; i < 2; ++i) {
                const cplx amp = (i == 0) ? a0 : a1;
                if (amp == cplx{0.0}) continue;
                for (int row = 0; row < 2; ++row) {
                    for (const auto& [dk, c] : term.coef(row, i).coeffs()) {
                        const int j = k + dk;
                        if (-N <= j && j <= N) v.at(j, row) += c * amp;
                    }
                }
            }
        }
    }
    return v;
}

/// Dense realization: block entry (row j, col k) = sum_terms f_hat_{j-k} g(k).
inline GalerkinMatrix galerkin_matrix(const Symbol& q, int N) {
    GalerkinMatrix G(N);
    for (const auto& term : q.terms) {
        for (int k = -N; k <= N; ++k) {
            const cplx g = term.xi.eval(static_cast<double>(k));
            if (g == cplx{0.0}) continue;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    for (const auto& [dk, c] : term.coef(i, j).coeffs()) {
                        const int row = k + dk;
                        if (-N <= row && row <= N)
                            G.data(TruncatedField::index(N, row, i), TruncatedField::index(N, k, j)) += c * g;
                    }
        }
    }
    return G;
}

/// Largest singular value of the Galerkin realization; the invertibility
/// certificate for I + Lambda~.
inline double operator_norm_estimate(const Symbol& q, int N) {
    return galerkin_matrix(q, N).norm();
}

/// Inverse of I + Lambda~ on the truncated space. The Neumann series is the
/// convergence justification; the computation is a direct dense solve, gated
/// by the norm certificate ||Lambda~|| < 1/2.
inline GalerkinMatrix neumann_inverse(const GalerkinMatrix& lambda_tilde) {
    const double nrm = lambda_tilde.norm();
    if (!(nrm < 0.5)) throw NotDiagonallyDominant(nrm);
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(lambda_tilde.data.rows(), lambda_tilde.data.cols()) +
                         lambda_tilde.data;
    return {lambda_tilde.N, M.inverse()};
}

/// Fourier multiplier p_l(D_x), symbol phi_r(xi)/(i xi)^l. Maps real fields
/// to real fields (evenness of phi_r); rejects inputs that are not
/// conjugate-symmetric.
inline TruncatedField p_l_multiplier(int l, double r, const TruncatedField& v, double tol = 1e-10) {
    const double asym = v.max_imag_part();
    if (asym > tol) throw NonRealInput(asym);
    const XiFactor m = XiFactor::p_l(l, r);
    TruncatedField w(v.N);
    for (int k = -v.N; k <= v.N; ++k) {
        const cplx g = m.eval(static_cast<double>(k));
        for (int c = 0; c < 2; ++c) w.at(k, c) = g * v(k, c);
    }
    return w;
}

/// Composition expansion sigma(P Q) ~ sum_k ((-i)^k / k!) d_xi^k p d_x^k q,
/// keeping expansion orders k <= k_max and discarding terms of order below
/// order_cut (recorded in remainder_order).
inline Symbol compose(const Symbol& p, const Symbol& q, int order_cut, int k_max = 4) {
    Symbol out;
    Symbol pk = p;  // d_xi^k p
    Symbol qk = q;  // d_x^k  q
    cplx scale = 1.0;
    for (int k = 0; k <= k_max; ++k) {
        if (k > 0) {
            pk = pk.derivative_xi();
            qk = qk.derivative_x();
            scale *= -ci / static_cast<double>(k);
        }
        for (const auto& tp : pk.terms)
            for (const auto& tq : qk.terms) {
                const XiFactor xf = tp.xi * tq.xi;
                if (xf.order() < order_cut) continue;
                out.add_term((tp.coef * tq.coef) * scale, xf);
            }
    }
    out.prune();
    out.remainder_order = order_cut - 1;
    return out;
}

/// Columns of an orthonormal basis of the real subspace (conjugate-symmetric
/// fields) expressed in the complex mode basis: k = 0 components, then
/// cosine/sine pairs for k = 1..N.
inline Eigen::MatrixXcd real_subspace_basis(int N) {
    const int dim = TruncatedField::dim(N);
    Eigen::MatrixXcd Q = Eigen::MatrixXcd::Zero(dim, dim);
    int col = 0;
    for (int c = 0; c < 2; ++c) Q(TruncatedField::index(N, 0, c), col++) = 1.0;
    const double s = 1.0 / std::sqrt(2.0);
    for (int k = 1; k <= N; ++k)
        for (int c = 0; c < 2; ++c) {
            Q(TruncatedField::index(N, k, c), col) = s;
            Q(TruncatedField::index(N, -k, c), col) = s;
            ++col;
            Q(TruncatedField::index(N, k, c), col) = ci * s;
            Q(TruncatedField::index(N, -k, c), col) = -ci * s;
            ++col;
        }
    return Q;
}

/// Real matrix of a real-preserving operator in the basis above.
inline Eigen::MatrixXd real_representation(const GalerkinMatrix& G) {
    const Eigen::MatrixXcd Q = real_subspace_basis(G.N);
    return (Q.adjoint() * G.data * Q).real();
}

}  // namespace dispersive

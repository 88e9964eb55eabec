#pragma once

// Exact algebra of smooth 2pi-periodic functions represented as finite
// Fourier series. All values are immutable after construction; every
// operation returns a new value.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace dispersive {

using cplx = std::complex<double>;
inline constexpr double pi = std::numbers::pi;
inline constexpr cplx ci{0.0, 1.0};

// Thrown by primitive() when the mean is nonzero: the primitive of such a
// function is not 2pi-periodic. Carries the offending mean value.
class MeanNonzero : public std::runtime_error {
public:
    explicit MeanNonzero(cplx mean)
        : std::runtime_error("primitive of a function with nonzero mean (c0 = " +
                             std::to_string(mean.real()) + " + " +
                             std::to_string(mean.imag()) + "i) is not periodic"),
          mean_(mean) {}
    cplx mean() const { return mean_; }

private:
    cplx mean_;
};

/// Complex-valued 2pi-periodic function f(x) = sum_k c_k e^{ikx} with
/// finitely many nonzero modes.
class PeriodicScalar {
public:
    PeriodicScalar() = default;

    static PeriodicScalar zero() { return {}; }

    static PeriodicScalar constant(cplx c) {
        PeriodicScalar f;
        f.set(0, c);
        return f;
    }

    static PeriodicScalar mode(int k, cplx c) {
        PeriodicScalar f;
        f.set(k, c);
        return f;
    }

    /// cos(kx), sin(kx) helpers (k > 0).
    static PeriodicScalar cosine(int k, double amp = 1.0) {
        PeriodicScalar f;
        f.set(k, 0.5 * amp);
        f.set(-k, 0.5 * amp);
        return f;
    }
    static PeriodicScalar sine(int k, double amp = 1.0) {
        PeriodicScalar f;
        f.set(k, -0.5 * ci * amp);
        f.set(-k, 0.5 * ci * amp);
        return f;
    }

    /// Discrete Fourier analysis of samples on the uniform grid
    /// x_j = 2*pi*j/(2K+1). Exact for bandwidth <= K inputs, otherwise an
    /// aliased approximation (the documented ingestion path).
    static PeriodicScalar from_samples(const std::vector<cplx>& samples, int K) {
        const int M = 2 * K + 1;
        if (static_cast<int>(samples.size()) != M)
            throw std::invalid_argument("from_samples: need exactly 2K+1 samples");
        PeriodicScalar f;
        for (int k = -K; k <= K; ++k) {
            cplx c = 0.0;
            for (int j = 0; j < M; ++j)
                c += samples[j] * std::exp(-ci * (2.0 * pi * k * j / M));
            f.set(k, c / static_cast<double>(M));
        }
        return f;
    }

    const std::map<int, cplx>& coeffs() const { return coeffs_; }
    cplx coeff(int k) const {
        auto it = coeffs_.find(k);
        return it == coeffs_.end() ? cplx{0.0} : it->second;
    }
    int bandwidth() const {
        int K = 0;
        for (const auto& [k, c] : coeffs_) K = std::max(K, std::abs(k));
        return K;
    }
    bool empty() const { return coeffs_.empty(); }

    cplx evaluate(double x) const {
        cplx s = 0.0;
        for (const auto& [k, c] : coeffs_) s += c * std::exp(ci * (k * x));
        return s;
    }

    /// d/dx: c_k -> ik c_k. Applying D_x = -i d/dx is -i times this.
    PeriodicScalar derivative() const {
        PeriodicScalar g;
        for (const auto& [k, c] : coeffs_)
            if (k != 0) g.set(k, ci * static_cast<double>(k) * c);
        return g;
    }

    /// Integral over [0, 2pi]: exactly 2*pi*c_0.
    cplx mean_integral() const { return 2.0 * pi * coeff(0); }

    /// Antiderivative F with F' = f and F(0) = 0. Requires |c_0| <= tol.
    PeriodicScalar primitive(double tol = 1e-12) const {
        if (std::abs(coeff(0)) > tol) throw MeanNonzero(coeff(0));
        PeriodicScalar F;
        cplx at_zero = 0.0;
        for (const auto& [k, c] : coeffs_) {
            if (k == 0) continue;
            cplx Fk = c / (ci * static_cast<double>(k));
            F.set(k, Fk);
            at_zero += Fk;
        }
        F.set(0, -at_zero);
        return F;
    }

    PeriodicScalar conj() const {
        PeriodicScalar g;
        for (const auto& [k, c] : coeffs_) g.set(-k, std::conj(c));
        return g;
    }

    /// c_{-k} = conj(c_k) for all k, within tol.
    bool is_real(double tol = 1e-12) const {
        for (const auto& [k, c] : coeffs_)
            if (std::abs(c - std::conj(coeff(-k))) > tol) return false;
        return true;
    }

    double max_abs_coeff() const {
        double m = 0.0;
        for (const auto& [k, c] : coeffs_) m = std::max(m, std::abs(c));
        return m;
    }

    /// Upper bound for sup_x |f(x)|: sum of coefficient magnitudes.
    double sup_bound() const {
        double s = 0.0;
        for (const auto& [k, c] : coeffs_) s += std::abs(c);
        return s;
    }

    PeriodicScalar operator+(const PeriodicScalar& g) const {
        PeriodicScalar h = *this;
        for (const auto& [k, c] : g.coeffs_) h.set(k, h.coeff(k) + c);
        return h;
    }
    PeriodicScalar operator-(const PeriodicScalar& g) const { return *this + (g * cplx(-1.0)); }
    PeriodicScalar operator*(cplx s) const {
        PeriodicScalar h;
        for (const auto& [k, c] : coeffs_) h.set(k, s * c);
        return h;
    }

    /// Fourier convolution; bandwidth K_f + K_g, exact, no truncation.
    PeriodicScalar operator*(const PeriodicScalar& g) const {
        PeriodicScalar h;
        for (const auto& [k1, c1] : coeffs_)
            for (const auto& [k2, c2] : g.coeffs_) h.set(k1 + k2, h.coeff(k1 + k2) + c1 * c2);
        return h;
    }

    bool operator==(const PeriodicScalar& g) const { return coeffs_ == g.coeffs_; }

    double max_diff(const PeriodicScalar& g) const {
        double m = 0.0;
        for (const auto& [k, c] : coeffs_) m = std::max(m, std::abs(c - g.coeff(k)));
        for (const auto& [k, c] : g.coeffs_) m = std::max(m, std::abs(c - coeff(k)));
        return m;
    }

    /// Serialization as (k, re, im) triples, ascending in k.
    std::vector<std::array<double, 3>> to_triples() const {
        std::vector<std::array<double, 3>> out;
        for (const auto& [k, c] : coeffs_)
            out.push_back({static_cast<double>(k), c.real(), c.imag()});
        return out;
    }
    static PeriodicScalar from_triples(const std::vector<std::array<double, 3>>& triples) {
        PeriodicScalar f;
        for (const auto& t : triples)
            f.set(static_cast<int>(std::llround(t[0])), f.coeff(static_cast<int>(std::llround(t[0]))) + cplx(t[1], t[2]));
        return f;
    }

private:
    void set(int k, cplx c) {
        if (c == cplx{0.0})
            coeffs_.erase(k);
        else
            coeffs_[k] = c;
    }

    std::map<int, cplx> coeffs_;
};

inline PeriodicScalar operator*(cplx s, const PeriodicScalar& f) { return f * s; }

/// 2x2 matrix of PeriodicScalar. Houses the coefficient matrices A, B, C, D,
/// beta, gamma and the constant matrices I, E, J, M.
class MatrixCoefficient {
public:
    MatrixCoefficient() = default;

    static MatrixCoefficient zero() { return {}; }

    static MatrixCoefficient from_constant(const std::array<std::array<cplx, 2>, 2>& m) {
        MatrixCoefficient M;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) M.e_[i][j] = PeriodicScalar::constant(m[i][j]);
        return M;
    }

    static MatrixCoefficient identity() { return from_constant({{{1.0, 0.0}, {0.0, 1.0}}}); }
    // E = diag(1, -1)
    static MatrixCoefficient E() { return from_constant({{{1.0, 0.0}, {0.0, -1.0}}}); }
    // J = [[0,-1],[1,0]]
    static MatrixCoefficient J() { return from_constant({{{0.0, -1.0}, {1.0, 0.0}}}); }

    const PeriodicScalar& operator()(int i, int j) const { return e_[i][j]; }
    PeriodicScalar& at(int i, int j) { return e_[i][j]; }

    MatrixCoefficient operator+(const MatrixCoefficient& B) const {
        MatrixCoefficient C;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) C.e_[i][j] = e_[i][j] + B.e_[i][j];
        return C;
    }
    MatrixCoefficient operator-(const MatrixCoefficient& B) const { return *this + B * cplx(-1.0); }
    MatrixCoefficient operator*(cplx s) const {
        MatrixCoefficient C;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) C.e_[i][j] = e_[i][j] * s;
        return C;
    }
    MatrixCoefficient operator*(const MatrixCoefficient& B) const {
        MatrixCoefficient C;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                C.e_[i][j] = e_[i][0] * B.e_[0][j] + e_[i][1] * B.e_[1][j];
        return C;
    }

    /// Pointwise product with a scalar function.
    MatrixCoefficient scale_by(const PeriodicScalar& f) const {
        MatrixCoefficient C;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) C.e_[i][j] = e_[i][j] * f;
        return C;
    }

    MatrixCoefficient transpose() const {
        MatrixCoefficient C;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) C.e_[i][j] = e_[j][i];
        return C;
    }
    MatrixCoefficient derivative() const {
        MatrixCoefficient C;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) C.e_[i][j] = e_[i][j].derivative();
        return C;
    }
    PeriodicScalar trace() const { return e_[0][0] + e_[1][1]; }

    MatrixCoefficient diag_part() const {
        MatrixCoefficient C;
        C.e_[0][0] = e_[0][0];
        C.e_[1][1] = e_[1][1];
        return C;
    }
    MatrixCoefficient off_part() const {
        MatrixCoefficient C;
        C.e_[0][1] = e_[0][1];
        C.e_[1][0] = e_[1][0];
        return C;
    }

    /// [this, M] = this*M - M*this.
    MatrixCoefficient commutator(const MatrixCoefficient& M) const { return *this * M - M * *this; }

    bool is_real(double tol = 1e-12) const {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                if (!e_[i][j].is_real(tol)) return false;
        return true;
    }
    bool is_zero(double tol = 0.0) const {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                if (e_[i][j].max_abs_coeff() > tol) return false;
        return true;
    }

    int bandwidth() const {
        int K = 0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) K = std::max(K, e_[i][j].bandwidth());
        return K;
    }

    /// Upper bound for sup_x of the entrywise max; cheap certificate input.
    double sup_bound() const {
        double s = 0.0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) s = std::max(s, e_[i][j].sup_bound());
        return s;
    }

    double max_diff(const MatrixCoefficient& B) const {
        double m = 0.0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) m = std::max(m, e_[i][j].max_diff(B.e_[i][j]));
        return m;
    }

    std::array<std::array<cplx, 2>, 2> evaluate(double x) const {
        return {{{e_[0][0].evaluate(x), e_[0][1].evaluate(x)},
                 {e_[1][0].evaluate(x), e_[1][1].evaluate(x)}}};
    }

    static const std::array<const char*, 4>& entry_names() {
        static const std::array<const char*, 4> names = {"m11", "m12", "m21", "m22"};
        return names;
    }
    const PeriodicScalar& entry_by_name(const std::string& name) const {
        if (name == "m11") return e_[0][0];
        if (name == "m12") return e_[0][1];
        if (name == "m21") return e_[1][0];
        if (name == "m22") return e_[1][1];
        throw std::invalid_argument("unknown matrix entry name: " + name);
    }
    PeriodicScalar& entry_by_name(const std::string& name) {
        return const_cast<PeriodicScalar&>(std::as_const(*this).entry_by_name(name));
    }

private:
    std::array<std::array<PeriodicScalar, 2>, 2> e_;
};

inline MatrixCoefficient operator*(cplx s, const MatrixCoefficient& M) { return M * s; }
inline MatrixCoefficient operator*(const PeriodicScalar& f, const MatrixCoefficient& M) {
    return M.scale_by(f);
}

}  // namespace dispersive

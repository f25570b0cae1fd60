#ifndef GBCURV_CURVATURE_HPP
#define GBCURV_CURVATURE_HPP

#include <array>
#include <string>
#include <vector>

#include "gbcurv/double_form.hpp"
#include "gbcurv/symm_functions.hpp"

namespace gbcurv {

/// Riemann tensor as a symmetric (2,2) double form satisfying the first
/// Bianchi identity (guaranteed when built from the Gauss equation).
template <class T>
class CurvatureTensorT {
public:
    explicit CurvatureTensorT(DoubleFormT<T> rm) : rm_(std::move(rm)) {
        if (rm_.p() != 2 || rm_.q() != 2) {
            throw DegreeError("curvature tensor must have bidegree (2,2)");
        }
    }

    static CurvatureTensorT zero(int n) {
        return CurvatureTensorT(DoubleFormT<T>::zero(n, 2, 2));
    }

    const DoubleFormT<T>& form() const { return rm_; }
    int dimension() const { return rm_.dimension(); }

private:
    DoubleFormT<T> rm_;
};

/// Gauss equation with constant-curvature ambient:
///   R = ambient·g²/2 + ½ Σ_α B_α².
template <class T>
CurvatureTensorT<T> gauss_equation(int n, const std::vector<SymBilinearFormT<T>>& bs,
                                   const T& ambient_curv) {
    DoubleFormT<T> rm = DoubleFormT<T>::metric_power(n, 2) * (ambient_curv / T(2));
    for (const auto& b : bs) {
        if (b.dimension() != n) throw DimensionMismatch("gauss equation: mixed dimensions");
        rm += power(b.form(), 2) * (T(1) / T(2));
    }
    return CurvatureTensorT<T>(std::move(rm));
}

/// Max |alternation| of R over three vector slots; 0 for genuine curvature
/// tensors.
template <class T>
double bianchi_defect(const CurvatureTensorT<T>& r) {
    const int n = r.dimension();
    double worst = 0;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    const std::array<int, 2> ab{a, b}, bc{b, c}, ca{c, a};
                    const std::array<int, 2> ad{a, d}, bd{b, d}, cd{c, d};
                    const T sum = evaluate(r.form(), std::span<const int>(ab),
                                           std::span<const int>(cd)) +
                                  evaluate(r.form(), std::span<const int>(bc),
                                           std::span<const int>(ad)) +
                                  evaluate(r.form(), std::span<const int>(ca),
                                           std::span<const int>(bd));
                    worst = std::max(worst, std::abs(to_double(sum)));
                }
    return worst;
}

/// h_2k by the contraction route c^{2k}R^k/(2k)!; h_0 = 1.
template <class T>
T gauss_bonnet_h(const CurvatureTensorT<T>& r, int k) {
    const int n = r.dimension();
    if (k < 0 || 2 * k > n) throw DegreeError("gauss-bonnet curvature: 2k out of range");
    if (k == 0) return T(1);
    DoubleFormT<T> rk = DoubleFormT<T>::scalar(n, T(1));
    for (int i = 0; i < k; ++i) rk = exterior_product(rk, r.form());
    return contraction_power(rk, 2 * k).scalar_value() /
           T(static_cast<long long>(factorial(2 * k)));
}

/// h_2k by the star route *(g^{n-2k}R^k)/(n-2k)!; kept as the dual-route
/// oracle.
template <class T>
T gauss_bonnet_h_star(const CurvatureTensorT<T>& r, int k) {
    const int n = r.dimension();
    if (k < 0 || 2 * k > n) throw DegreeError("gauss-bonnet curvature: 2k out of range");
    DoubleFormT<T> w = DoubleFormT<T>::metric_power(n, n - 2 * k);
    for (int i = 0; i < k; ++i) w = exterior_product(w, r.form());
    return hodge_star(w).scalar_value() / T(static_cast<long long>(factorial(n - 2 * k)));
}

/// Einstein-Lovelock tensor of order 2k; T_0 = g, T_n = 0.
template <class T>
class LovelockTensorT {
public:
    LovelockTensorT(SymBilinearFormT<T> t, int k) : t_(std::move(t)), k_(k) {}

    const SymBilinearFormT<T>& tensor() const { return t_; }
    int order() const { return 2 * k_; }
    int k() const { return k_; }
    int dimension() const { return t_.dimension(); }

private:
    SymBilinearFormT<T> t_;
    int k_;
};

/// Contraction route h_2k·g − c^{2k-1}R^k/(2k-1)! (production path).
template <class T>
LovelockTensorT<T> lovelock_tensor(const CurvatureTensorT<T>& r, int k) {
    const int n = r.dimension();
    if (k < 0 || 2 * k > n) throw DegreeError("lovelock tensor: 2k out of range");
    if (2 * k == n) return LovelockTensorT<T>(SymBilinearFormT<T>::zero(n), k);
    if (k == 0) return LovelockTensorT<T>(SymBilinearFormT<T>::identity(n), k);
    DoubleFormT<T> rk = DoubleFormT<T>::scalar(n, T(1));
    for (int i = 0; i < k; ++i) rk = exterior_product(rk, r.form());
    const T h = contraction_power(rk, 2 * k).scalar_value() /
                T(static_cast<long long>(factorial(2 * k)));
    DoubleFormT<T> t = DoubleFormT<T>::metric(n) * h;
    t -= contraction_power(rk, 2 * k - 1) *
         (T(1) / T(static_cast<long long>(factorial(2 * k - 1))));
    return LovelockTensorT<T>(SymBilinearFormT<T>(std::move(t)), k);
}

/// Star route *(g^{n-2k-1}R^k)/(n-2k-1)!; dual-route oracle.
template <class T>
LovelockTensorT<T> lovelock_tensor_star(const CurvatureTensorT<T>& r, int k) {
    const int n = r.dimension();
    if (k < 0 || 2 * k > n) throw DegreeError("lovelock tensor: 2k out of range");
    if (2 * k == n) return LovelockTensorT<T>(SymBilinearFormT<T>::zero(n), k);
    DoubleFormT<T> w = DoubleFormT<T>::metric_power(n, n - 2 * k - 1);
    for (int i = 0; i < k; ++i) w = exterior_product(w, r.form());
    DoubleFormT<T> t = hodge_star(w);
    t *= T(1) / T(static_cast<long long>(factorial(n - 2 * k - 1)));
    return LovelockTensorT<T>(SymBilinearFormT<T>(std::move(t)), k);
}

/// Odd-order curvature h_2k+1(N) = ⟨T_2k, B_N⟩; 0 when n = 2k.
template <class T>
T gauss_bonnet_h_odd(const CurvatureTensorT<T>& r, const SymBilinearFormT<T>& b_n, int k) {
    const int n = r.dimension();
    if (b_n.dimension() != n) throw DimensionMismatch("h_odd: dimension mismatch");
    if (k < 0 || 2 * k > n) throw DegreeError("h_odd: 2k out of range");
    if (2 * k == n) return T(0);
    return inner_product(lovelock_tensor(r, k).tensor().form(), b_n.form());
}

/// Star route *(g^{n-2k-1}R^k B_N)/(n-2k-1)!; dual-route oracle.
template <class T>
T gauss_bonnet_h_odd_star(const CurvatureTensorT<T>& r, const SymBilinearFormT<T>& b_n,
                          int k) {
    const int n = r.dimension();
    if (b_n.dimension() != n) throw DimensionMismatch("h_odd: dimension mismatch");
    if (k < 0 || 2 * k > n) throw DegreeError("h_odd: 2k out of range");
    if (2 * k == n) return T(0);
    DoubleFormT<T> w = DoubleFormT<T>::metric_power(n, n - 2 * k - 1);
    for (int i = 0; i < k; ++i) w = exterior_product(w, r.form());
    w = exterior_product(w, b_n.form());
    return hodge_star(w).scalar_value() /
           T(static_cast<long long>(factorial(n - 2 * k - 1)));
}

/// Space form of curvature c: h_2k from the s-table,
///   h_2k = (1/(2^k(n-2k)!)) Σ_i C(k,i)(2k-2i)!(n-2k+2i)! s_{2k-2i} c^i.
template <class T>
T spaceform_h_from_s(const SymmetricFunctionTable<T>& s, const T& c, int n, int k) {
    if (k < 0 || 2 * k > n) throw DegreeError("space form conversion: 2k out of range");
    T acc(0);
    T c_pow(1);
    for (int i = 0; i <= k; ++i) {
        const T coeff = T(static_cast<long long>(binomial(k, i))) *
                        T(static_cast<long long>(factorial(2 * k - 2 * i))) *
                        T(static_cast<long long>(factorial(n - 2 * k + 2 * i)));
        acc += coeff * s.s[2 * k - 2 * i] * c_pow;
        c_pow *= c;
    }
    T denom(1);
    for (int i = 0; i < k; ++i) denom *= T(2);
    denom *= T(static_cast<long long>(factorial(n - 2 * k)));
    return acc / denom;
}

/// Inverse map: s_2k from the table h[i] = h_2i,
///   s_2k = (1/((2k)!(n-2k)!)) Σ_i C(k,i) 2^i (n-2i)! h_2i (-c)^{k-i}.
template <class T>
T spaceform_s_from_h(const std::vector<T>& h_even, const T& c, int n, int k) {
    if (k < 0 || 2 * k > n) throw DegreeError("space form conversion: 2k out of range");
    T acc(0);
    for (int i = 0; i <= k; ++i) {
        T coeff = T(static_cast<long long>(binomial(k, i))) *
                  T(static_cast<long long>(factorial(n - 2 * i)));
        for (int j = 0; j < i; ++j) coeff *= T(2);
        T c_pow(1);
        for (int j = 0; j < k - i; ++j) c_pow *= T(-c);
        acc += coeff * h_even[i] * c_pow;
    }
    const T denom = T(static_cast<long long>(factorial(2 * k))) *
                    T(static_cast<long long>(factorial(n - 2 * k)));
    return acc / denom;
}

/// Hypersurface of a space form with constant λ: h_2k+1 as a polynomial in the
/// odd symmetric functions of the shape operator,
///   Σ_i k!(2k-2i+1)!(n-2k-1+2i)! λ^i / (i!(k-i)!(n-2k-1)!2^k) · s_{2k-2i+1}.
template <class T>
T hypersurface_minimality_polynomial(const SymmetricFunctionTable<T>& s, const T& lambda,
                                     int n, int k) {
    if (k < 0 || 2 * k >= n) throw DegreeError("hypersurface polynomial: needs 2k < n");
    T acc(0);
    T lambda_pow(1);
    for (int i = 0; i <= k; ++i) {
        const T coeff = T(static_cast<long long>(binomial(k, i))) *
                        T(static_cast<long long>(factorial(2 * (k - i) + 1))) *
                        T(static_cast<long long>(factorial(n - 2 * k - 1 + 2 * i))) /
                        T(static_cast<long long>(factorial(n - 2 * k - 1)));
        acc += coeff * s.s[2 * (k - i) + 1] * lambda_pow;
        lambda_pow *= lambda;
    }
    T denom(1);
    for (int i = 0; i < k; ++i) denom *= T(2);
    return acc / denom;
}

/// ℓ_2k at a point: −⟨T_2k, Hess f⟩.
template <class T>
T ell2k_pointwise(const LovelockTensorT<T>& t, const SymBilinearFormT<T>& hess) {
    if (t.dimension() != hess.dimension()) {
        throw DimensionMismatch("generalized laplacian: dimension mismatch");
    }
    return T(-inner_product(t.tensor().form(), hess.form()));
}

using CurvatureTensor = CurvatureTensorT<double>;
using CurvatureTensorQ = CurvatureTensorT<Rational>;
using LovelockTensor = LovelockTensorT<double>;
using LovelockTensorQ = LovelockTensorT<Rational>;

enum class Definiteness { positive, negative, indefinite, degenerate };

const char* to_string(Definiteness d);

/// Ellipticity classification of T_2k by its spectrum. Double-only: the exact
/// mode has no eigensolver and no need for one.
Definiteness is_definite(const LovelockTensorT<double>& t, double zero_tol = 1e-10);

/// Eigenvalues of the coefficient matrix (ascending).
std::vector<double> spectrum(const SymBilinearFormT<double>& b);

} // namespace gbcurv

#endif

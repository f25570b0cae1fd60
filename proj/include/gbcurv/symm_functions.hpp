#ifndef GBCURV_SYMM_FUNCTIONS_HPP
#define GBCURV_SYMM_FUNCTIONS_HPP

#include <string>
#include <vector>

#include "gbcurv/double_form.hpp"

namespace gbcurv {

/// s_k of the eigenvalues of B, computed through the double-form route
/// c^k B^k / (k!)². No eigensolver anywhere near this path.
template <class T>
T elementary_symmetric(const SymBilinearFormT<T>& b, int k) {
    const int n = b.dimension();
    if (k < 0 || k > n) throw DegreeError("elementary symmetric: k out of range");
    const DoubleFormT<T> bk = power(b.form(), k);
    const T kfact = T(static_cast<long long>(factorial(k)));
    return contraction_power(bk, k).scalar_value() / (kfact * kfact);
}

/// Dual route *(g^{n-k} B^k) / (k!(n-k)!); used as a standing cross-check.
template <class T>
T elementary_symmetric_star(const SymBilinearFormT<T>& b, int k) {
    const int n = b.dimension();
    if (k < 0 || k > n) throw DegreeError("elementary symmetric: k out of range");
    const DoubleFormT<T> gb =
        exterior_product(DoubleFormT<T>::metric_power(n, n - k), power(b.form(), k));
    const T denom = T(static_cast<long long>(factorial(k))) *
                    T(static_cast<long long>(factorial(n - k)));
    return hodge_star(gb).scalar_value() / denom;
}

/// k-th Newton transformation t_k(B) = *(g^{n-k-1} B^k / ((n-k-1)! k!));
/// t_n = 0 by convention.
template <class T>
SymBilinearFormT<T> newton_transform(const SymBilinearFormT<T>& b, int k) {
    const int n = b.dimension();
    if (k < 0 || k > n) throw DegreeError("newton transform: k out of range");
    if (k == n) return SymBilinearFormT<T>::zero(n);
    const DoubleFormT<T> gb =
        exterior_product(DoubleFormT<T>::metric_power(n, n - k - 1), power(b.form(), k));
    const T denom = T(static_cast<long long>(factorial(n - k - 1))) *
                    T(static_cast<long long>(factorial(k)));
    DoubleFormT<T> t = hodge_star(gb);
    t *= T(1) / denom;
    return SymBilinearFormT<T>(std::move(t));
}

/// s_k(B + λg) expanded in powers of λ:
///   Σ_{i=0..k} (n-i)!/((k-i)!(n-k)!) · s_i(B) · λ^{k-i}.
template <class T>
T shift_expansion(const SymBilinearFormT<T>& b, const T& lambda, int k) {
    const int n = b.dimension();
    if (k < 0 || k > n) throw DegreeError("shift expansion: k out of range");
    T acc(0);
    T lambda_pow(1); // λ^{k-i}, built from i=k downward
    std::vector<T> s(k + 1);
    for (int i = 0; i <= k; ++i) s[i] = elementary_symmetric(b, i);
    for (int i = k; i >= 0; --i) {
        const T coeff = T(static_cast<long long>(factorial(n - i))) /
                        (T(static_cast<long long>(factorial(k - i))) *
                         T(static_cast<long long>(factorial(n - k))));
        acc += coeff * s[i] * lambda_pow;
        lambda_pow *= lambda;
    }
    return acc;
}

/// s_0..s_n of one form.
template <class T>
struct SymmetricFunctionTable {
    int n = 0;
    std::vector<T> s; // s[k], k = 0..n
};

template <class T>
SymmetricFunctionTable<T> symmetric_function_table(const SymBilinearFormT<T>& b) {
    SymmetricFunctionTable<T> table;
    table.n = b.dimension();
    table.s.reserve(table.n + 1);
    for (int k = 0; k <= table.n; ++k) table.s.push_back(elementary_symmetric(b, k));
    return table;
}

} // namespace gbcurv

#endif

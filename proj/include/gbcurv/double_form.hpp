#ifndef GBCURV_DOUBLE_FORM_HPP
#define GBCURV_DOUBLE_FORM_HPP

#include <algorithm>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gbcurv/combinatorics.hpp"
#include "gbcurv/errors.hpp"
#include "gbcurv/scalars.hpp"

namespace gbcurv {

/// Dense (p,q)-double form over the lexicographic bases of Λ^p and Λ^q, in an
/// orthonormal frame. Values are immutable in spirit: every operation returns
/// a fresh form. A (0,0)-form is a scalar.
template <class T>
class DoubleFormT {
public:
    DoubleFormT(int n, int p, int q)
        : n_(n), p_(p), q_(q),
          rows_(index_basis(n, p).size()),
          cols_(index_basis(n, q).size()),
          coeffs_(rows_ * cols_, T(0)) {}

    static DoubleFormT scalar(int n, T value) {
        DoubleFormT f(n, 0, 0);
        f.coeffs_[0] = std::move(value);
        return f;
    }

    static DoubleFormT zero(int n, int p, int q) { return DoubleFormT(n, p, q); }

    /// The metric of the orthonormal frame: the identity bilinear form.
    static DoubleFormT metric(int n) {
        DoubleFormT g(n, 1, 1);
        for (int i = 0; i < n; ++i) g.at(i, i) = T(1);
        return g;
    }

    /// g^m directly: m!·identity over the (n,m) basis.
    static DoubleFormT metric_power(int n, int m) {
        if (m < 0 || m > n) throw DegreeError("metric power out of range");
        DoubleFormT f(n, m, m);
        const T fact = T(static_cast<long long>(factorial(m)));
        for (std::size_t r = 0; r < f.rows_; ++r) f.at(r, r) = fact;
        return f;
    }

    int dimension() const { return n_; }
    int p() const { return p_; }
    int q() const { return q_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const T& at(std::size_t i, std::size_t j) const { return coeffs_[i * cols_ + j]; }
    T& at(std::size_t i, std::size_t j) { return coeffs_[i * cols_ + j]; }

    bool is_scalar() const { return p_ == 0 && q_ == 0; }
    const T& scalar_value() const { return coeffs_[0]; }

    bool same_shape(const DoubleFormT& o) const {
        return n_ == o.n_ && p_ == o.p_ && q_ == o.q_;
    }

    DoubleFormT& operator+=(const DoubleFormT& o) {
        require_same_shape(o);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        return *this;
    }
    DoubleFormT& operator-=(const DoubleFormT& o) {
        require_same_shape(o);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        return *this;
    }
    DoubleFormT& operator*=(const T& s) {
        for (auto& c : coeffs_) c *= s;
        return *this;
    }
    friend DoubleFormT operator+(DoubleFormT a, const DoubleFormT& b) { return a += b; }
    friend DoubleFormT operator-(DoubleFormT a, const DoubleFormT& b) { return a -= b; }
    friend DoubleFormT operator*(DoubleFormT a, const T& s) { return a *= s; }
    friend DoubleFormT operator*(const T& s, DoubleFormT a) { return a *= s; }

    double max_abs() const {
        double m = 0;
        for (const auto& c : coeffs_) m = std::max(m, std::abs(to_double(c)));
        return m;
    }

    bool is_symmetric(double tol = 0.0) const {
        if (p_ != q_) return false;
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = i + 1; j < cols_; ++j) {
                if (std::abs(to_double(T(at(i, j) - at(j, i)))) > tol) return false;
            }
        }
        return true;
    }

private:
    void require_same_shape(const DoubleFormT& o) const {
        if (!same_shape(o)) throw DimensionMismatch("double form shape mismatch");
    }

    int n_, p_, q_;
    std::size_t rows_, cols_;
    std::vector<T> coeffs_;
};

/// Exterior product of double forms (Kulkarni–Nomizu for two bilinear forms):
/// coefficient-level double shuffle sum. Throws DegreeError past top degree.
template <class T>
DoubleFormT<T> exterior_product(const DoubleFormT<T>& a, const DoubleFormT<T>& b) {
    if (a.dimension() != b.dimension()) throw DimensionMismatch("product across dimensions");
    const int n = a.dimension();
    if (a.p() + b.p() > n || a.q() + b.q() > n) {
        throw DegreeError("degree overflow in exterior product");
    }
    if (a.is_scalar()) return b * a.scalar_value();
    if (b.is_scalar()) return a * b.scalar_value();

    DoubleFormT<T> out(n, a.p() + b.p(), a.q() + b.q());
    const auto& row_splits = split_table(n, a.p(), b.p());
    const auto& col_splits = split_table(n, a.q(), b.q());
    for (std::size_t K = 0; K < out.rows(); ++K) {
        const auto& rs = row_splits[K];
        for (std::size_t L = 0; L < out.cols(); ++L) {
            const auto& cs = col_splits[L];
            T acc(0);
            for (const auto& r : rs) {
                for (const auto& c : cs) {
                    const T term = a.at(r.left_rank, c.left_rank) *
                                   b.at(r.right_rank, c.right_rank);
                    if (r.sign * c.sign > 0) {
                        acc += term;
                    } else {
                        acc -= term;
                    }
                }
            }
            out.at(K, L) = std::move(acc);
        }
    }
    return out;
}

/// k-fold exterior power; B^0 = 1. For symmetric bilinear B this computes
/// k!·minors.
template <class T>
DoubleFormT<T> power(const DoubleFormT<T>& b, int k) {
    if (b.p() != 1 || b.q() != 1) throw DegreeError("power expects a (1,1) form");
    if (k < 0) throw DegreeError("negative exterior power");
    if (k > b.dimension()) throw DegreeError("degree overflow in power");
    DoubleFormT<T> acc = DoubleFormT<T>::scalar(b.dimension(), T(1));
    for (int i = 0; i < k; ++i) acc = exterior_product(acc, b);
    return acc;
}

/// Contraction: trace over one paired slot in the orthonormal frame.
template <class T>
DoubleFormT<T> contraction(const DoubleFormT<T>& w) {
    if (w.p() < 1 || w.q() < 1) {
        throw ContractionError("contraction needs p ≥ 1 and q ≥ 1");
    }
    const int n = w.dimension();
    const IndexBasis& rb = index_basis(n, w.p() - 1);
    const IndexBasis& cb = index_basis(n, w.q() - 1);
    const IndexBasis& rb_up = index_basis(n, w.p());
    const IndexBasis& cb_up = index_basis(n, w.q());
    DoubleFormT<T> out(n, w.p() - 1, w.q() - 1);
    for (std::size_t I = 0; I < rb.size(); ++I) {
        const IndexMask mi = rb.mask(I);
        for (std::size_t J = 0; J < cb.size(); ++J) {
            const IndexMask mj = cb.mask(J);
            T acc(0);
            const IndexMask used = mi | mj;
            for (int i = 0; i < n; ++i) {
                const IndexMask bit = IndexMask{1} << i;
                if (used & bit) continue;
                const int sgn = insertion_sign(i, mi) * insertion_sign(i, mj);
                const T& v = w.at(rb_up.rank_of(mi | bit), cb_up.rank_of(mj | bit));
                if (sgn > 0) {
                    acc += v;
                } else {
                    acc -= v;
                }
            }
            out.at(I, J) = std::move(acc);
        }
    }
    return out;
}

/// c^m, with c^0 the identity.
template <class T>
DoubleFormT<T> contraction_power(DoubleFormT<T> w, int m) {
    for (int i = 0; i < m; ++i) w = contraction(w);
    return w;
}

/// Multiplication by the metric: gω.
template <class T>
DoubleFormT<T> mult_by_metric(const DoubleFormT<T>& w) {
    return exterior_product(DoubleFormT<T>::metric(w.dimension()), w);
}

/// Generalized Hodge star on both argument blocks:
/// (*ω)(e_I,e_J) = (-1)^{(p+q)(n-p-q)} sign(I,I^c) sign(J,J^c) ω(e_{I^c},e_{J^c}).
template <class T>
DoubleFormT<T> hodge_star(const DoubleFormT<T>& w) {
    const int n = w.dimension();
    const int p = w.p(), q = w.q();
    const int star_sign = (((p + q) * (n - p - q)) % 2 == 0) ? 1 : -1;
    const IndexBasis& rb = index_basis(n, n - p);
    const IndexBasis& cb = index_basis(n, n - q);
    const IndexBasis& rb_src = index_basis(n, p);
    const IndexBasis& cb_src = index_basis(n, q);
    DoubleFormT<T> out(n, n - p, n - q);
    for (std::size_t I = 0; I < rb.size(); ++I) {
        const IndexMask mi = rb.mask(I);
        const IndexMask ci = complement_mask(mi, n);
        const int si = complement_sign(mi, n);
        for (std::size_t J = 0; J < cb.size(); ++J) {
            const IndexMask mj = cb.mask(J);
            const IndexMask cj = complement_mask(mj, n);
            const int sj = complement_sign(mj, n);
            const T& v = w.at(rb_src.rank_of(ci), cb_src.rank_of(cj));
            out.at(I, J) = (star_sign * si * sj > 0) ? v : T(-v);
        }
    }
    return out;
}

/// Inner product, defined as *(ω·*θ). The component-sum formula is a theorem
/// checked by the identity suite, not the definition.
template <class T>
T inner_product(const DoubleFormT<T>& a, const DoubleFormT<T>& b) {
    if (a.dimension() != b.dimension() || a.p() != b.p() || a.q() != b.q()) {
        throw DimensionMismatch("inner product needs matching bidegrees");
    }
    const DoubleFormT<T> s = hodge_star(exterior_product(a, hodge_star(b)));
    return s.scalar_value();
}

/// Σ_{I,J} ω(e_I,e_J)θ(e_I,e_J) over increasing multi-indices.
template <class T>
T coefficient_inner_sum(const DoubleFormT<T>& a, const DoubleFormT<T>& b) {
    if (!a.same_shape(b)) throw DimensionMismatch("coefficient sum shape mismatch");
    T acc(0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) acc += a.at(i, j) * b.at(i, j);
    }
    return acc;
}

template <class T>
DoubleFormT<T> transpose(const DoubleFormT<T>& w) {
    DoubleFormT<T> out(w.dimension(), w.q(), w.p());
    for (std::size_t i = 0; i < w.rows(); ++i) {
        for (std::size_t j = 0; j < w.cols(); ++j) out.at(j, i) = w.at(i, j);
    }
    return out;
}

/// Evaluate on arbitrary (possibly unsorted, possibly repeating) 0-based index
/// blocks; repeats give 0, otherwise sign-sorted coefficient lookup.
template <class T>
T evaluate(const DoubleFormT<T>& w, std::span<const int> xs, std::span<const int> ys) {
    if (static_cast<int>(xs.size()) != w.p() || static_cast<int>(ys.size()) != w.q()) {
        throw DimensionMismatch("evaluate: argument block sizes must match bidegree");
    }
    auto sorted_sign = [](std::span<const int> v, IndexMask& m) -> int {
        m = 0;
        int inv = 0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const IndexMask bit = IndexMask{1} << v[i];
            if (m & bit) return 0;
            inv += std::popcount(m & ~(bit - 1)); // already-placed entries above v[i]
            m |= bit;
        }
        return (inv % 2 == 0) ? 1 : -1;
    };
    IndexMask mx = 0, my = 0;
    const int sx = sorted_sign(xs, mx);
    const int sy = sorted_sign(ys, my);
    if (sx == 0 || sy == 0) return T(0);
    const auto& rb = index_basis(w.dimension(), w.p());
    const auto& cb = index_basis(w.dimension(), w.q());
    const T& v = w.at(rb.rank_of(mx), cb.rank_of(my));
    return (sx * sy > 0) ? v : T(-v);
}

/// Symmetric (1,1) double form; construction symmetrizes exactly.
template <class T>
class SymBilinearFormT {
public:
    explicit SymBilinearFormT(DoubleFormT<T> f) : form_(std::move(f)) {
        if (form_.p() != 1 || form_.q() != 1) {
            throw DegreeError("symmetric bilinear form must have bidegree (1,1)");
        }
        const int n = form_.dimension();
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const T avg = (form_.at(i, j) + form_.at(j, i)) / T(2);
                form_.at(i, j) = avg;
                form_.at(j, i) = avg;
            }
        }
    }

    static SymBilinearFormT identity(int n) {
        return SymBilinearFormT(DoubleFormT<T>::metric(n));
    }
    static SymBilinearFormT zero(int n) {
        return SymBilinearFormT(DoubleFormT<T>::zero(n, 1, 1));
    }
    static SymBilinearFormT diagonal(int n, const std::vector<T>& d) {
        DoubleFormT<T> f(n, 1, 1);
        for (int i = 0; i < n; ++i) f.at(i, i) = d[i];
        return SymBilinearFormT(std::move(f));
    }

    const DoubleFormT<T>& form() const { return form_; }
    int dimension() const { return form_.dimension(); }
    const T& operator()(int i, int j) const { return form_.at(i, j); }

private:
    DoubleFormT<T> form_;
};

using DoubleForm = DoubleFormT<double>;
using DoubleFormQ = DoubleFormT<Rational>;
using SymBilinearForm = SymBilinearFormT<double>;
using SymBilinearFormQ = SymBilinearFormT<Rational>;

/// Max coefficient-wise deviation, |a-b|/max(1,‖a‖∞,‖b‖∞).
template <class T>
double form_deviation(const DoubleFormT<T>& a, const DoubleFormT<T>& b) {
    if (!a.same_shape(b)) throw DimensionMismatch("deviation shape mismatch");
    const double scale = std::max({1.0, a.max_abs(), b.max_abs()});
    double m = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            m = std::max(m, std::abs(to_double(T(a.at(i, j) - b.at(i, j)))));
        }
    }
    return m / scale;
}

} // namespace gbcurv

#endif

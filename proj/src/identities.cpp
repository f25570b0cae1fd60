#include "gbcurv/identities.hpp"

#include <map>

#include "gbcurv/curvature.hpp"
#include "gbcurv/double_form.hpp"
#include "gbcurv/symm_functions.hpp"

namespace gbcurv {
namespace {

template <class T>
struct Recorder {
    std::map<std::string, IdentityResult>* out;
    double tolerance;

    void note(const std::string& name, double dev) {
        auto& r = (*out)[name];
        if (r.name.empty()) {
            r.name = name;
            r.tolerance = tolerance;
            r.pass = true;
        }
        ++r.checks;
        r.max_deviation = std::max(r.max_deviation, dev);
        if (dev > tolerance) r.pass = false;
    }
    void note_scalar(const std::string& name, const T& a, const T& b) {
        note(name, deviation(a, b));
    }
    void note_form(const std::string& name, const DoubleFormT<T>& a, const DoubleFormT<T>& b) {
        note(name, form_deviation(a, b));
    }
};

template <class T>
DoubleFormT<T> random_form(RandomSource& rng, int n, int p, int q) {
    DoubleFormT<T> f(n, p, q);
    for (std::size_t i = 0; i < f.rows(); ++i)
        for (std::size_t j = 0; j < f.cols(); ++j) f.at(i, j) = rng.template draw<T>();
    return f;
}

template <class T>
SymBilinearFormT<T> random_sym(RandomSource& rng, int n) {
    return SymBilinearFormT<T>(random_form<T>(rng, n, 1, 1));
}

/// Laplace-expansion determinant of the (I,J) submatrix; the independent side
/// of the determinant-law check.
template <class T>
T submatrix_det(const SymBilinearFormT<T>& b, const IndexTuple& rows,
                const IndexTuple& cols) {
    const int k = static_cast<int>(rows.size());
    if (k == 0) return T(1);
    if (k == 1) return b(rows[0], cols[0]);
    T acc(0);
    IndexTuple sub_rows(rows.begin() + 1, rows.end());
    for (int j = 0; j < k; ++j) {
        IndexTuple sub_cols;
        sub_cols.reserve(k - 1);
        for (int t = 0; t < k; ++t)
            if (t != j) sub_cols.push_back(cols[t]);
        const T minor = submatrix_det(b, sub_rows, sub_cols);
        const T term = b(rows[0], cols[j]) * minor;
        if (j % 2 == 0) {
            acc += term;
        } else {
            acc -= term;
        }
    }
    return acc;
}

template <class T>
void algebra_instance(Recorder<T>& rec, int n, RandomSource& rng) {
    const auto g = DoubleFormT<T>::metric(n);
    for (int p = 0; p <= n; ++p) {
        for (int q = 0; q <= n; ++q) {
            const auto w = random_form<T>(rng, n, p, q);
            const T exchange_sign = (((p + q) * n) % 2 == 0) ? T(1) : T(-1);

            // gω = ±*c*ω (sign-free exactly when (p+q)n is even)
            if (p + 1 <= n && q + 1 <= n) {
                rec.note_form("eq1_metric_mult_is_star_contraction_star", mult_by_metric(w),
                              hodge_star(contraction(hodge_star(w))) * exchange_sign);
            }
            // cω = ±*g*ω
            if (p >= 1 && q >= 1) {
                rec.note_form("eq1_contraction_is_star_metric_mult_star", contraction(w),
                              hodge_star(mult_by_metric(hodge_star(w))) * exchange_sign);
            }
            // **ω = (-1)^{(p+q)(n-p-q)}ω
            const T double_star_sign = (((p + q) * (n - p - q)) % 2 == 0) ? T(1) : T(-1);
            rec.note_form("eq3_double_star_sign", hodge_star(hodge_star(w)),
                          w * double_star_sign);

            // ⟨ω,θ⟩ = *(ω·*θ) = ±*((*ω)·θ) = component sum
            const auto th = random_form<T>(rng, n, p, q);
            const T comp = coefficient_inner_sum(w, th);
            rec.note_scalar("eq2_inner_product_definition", inner_product(w, th), comp);
            rec.note_scalar(
                "eq2_inner_product_flipped",
                T(double_star_sign *
                  hodge_star(exterior_product(hodge_star(w), th)).scalar_value()),
                comp);
            rec.note_scalar("inner_product_symmetry", inner_product(w, th),
                            inner_product(th, w));

            // adjointness ⟨gω,θ'⟩ = ⟨ω,cθ'⟩
            if (p + 1 <= n && q + 1 <= n) {
                const auto th_up = random_form<T>(rng, n, p + 1, q + 1);
                rec.note_scalar("adjointness_metric_contraction",
                                inner_product(mult_by_metric(w), th_up),
                                inner_product(w, contraction(th_up)));
            }
        }
    }

    // Eq (4): symmetric Bianchi products of j ≤ 2 bilinear forms
    for (int j = 1; j <= 2 && j <= n; ++j) {
        DoubleFormT<T> w = DoubleFormT<T>::scalar(n, T(1));
        for (int t = 0; t < j; ++t) w = exterior_product(w, random_sym<T>(rng, n).form());
        const int p = j;
        {
            auto gw = exterior_product(DoubleFormT<T>::metric_power(n, n - p), w);
            gw *= T(1) / T(static_cast<long long>(factorial(n - p)));
            auto cw = contraction_power(w, p);
            cw *= T(1) / T(static_cast<long long>(factorial(p)));
            rec.note_form("eq4_full_star_is_full_contraction", hodge_star(gw), cw);
        }
        if (n - p - 1 >= 0) {
            auto gw = exterior_product(DoubleFormT<T>::metric_power(n, n - p - 1), w);
            gw *= T(1) / T(static_cast<long long>(factorial(n - p - 1)));
            auto head = contraction_power(w, p);
            head *= T(1) / T(static_cast<long long>(factorial(p)));
            auto expect = mult_by_metric(head);
            auto tail = contraction_power(w, p - 1);
            tail *= T(1) / T(static_cast<long long>(factorial(p - 1)));
            expect -= tail;
            rec.note_form("eq4_codegree_one_star", hodge_star(gw), expect);
        }
    }

    // determinant law B^k = k!·det on every increasing index pair
    {
        const auto b = random_sym<T>(rng, n);
        for (int k = 1; k <= n; ++k) {
            const auto bk = power(b.form(), k);
            const auto& basis = index_basis(n, k);
            const T kfact = T(static_cast<long long>(factorial(k)));
            for (std::size_t i = 0; i < basis.size(); ++i) {
                for (std::size_t jj = 0; jj < basis.size(); ++jj) {
                    rec.note_scalar(
                        "determinant_law", bk.at(i, jj),
                        T(kfact * submatrix_det(b, basis.tuple(i), basis.tuple(jj))));
                }
            }
        }
    }

    // commutativity on symmetric bilinear generators
    {
        const auto b = random_sym<T>(rng, n);
        const auto c = random_sym<T>(rng, n);
        if (n >= 2) {
            rec.note_form("symmetric_product_commutativity",
                          exterior_product(b.form(), c.form()),
                          exterior_product(c.form(), b.form()));
        }
    }
}

template <class T>
void symm_instance(Recorder<T>& rec, int n, RandomSource& rng) {
    const auto b = random_sym<T>(rng, n);
    const auto g = DoubleFormT<T>::metric(n);

    for (int k = 0; k <= n; ++k) {
        // dual route for s_k
        rec.note_scalar("symmetric_function_dual_route", elementary_symmetric(b, k),
                        elementary_symmetric_star(b, k));

        const auto tk = newton_transform(b, k);
        // Newton property 1: ⟨t_k,B⟩ = (k+1)s_{k+1}
        const T s_next = (k + 1 <= n) ? elementary_symmetric(b, k + 1) : T(0);
        rec.note_scalar("newton_pairing", inner_product(tk.form(), b.form()),
                        T(T(k + 1) * s_next));
        // Newton property 2 (with the 1/k! the statement omits):
        // t_k = s_k g − c^{k-1}B^k/(k!(k-1)!)
        if (k >= 1 && k < n) {
            auto rhs = g * elementary_symmetric(b, k);
            auto corr = contraction_power(power(b.form(), k), k - 1);
            corr *= T(1) / T(static_cast<long long>(factorial(k) * factorial(k - 1)));
            rhs -= corr;
            rec.note_form("newton_contraction_formula", tk.form(), rhs);
        }
        // Newton property 3: c t_k = (n-k) s_k
        rec.note_scalar("newton_trace", contraction(tk.form()).scalar_value(),
                        T(T(n - k) * elementary_symmetric(b, k)));
    }

    // shift corollary against direct computation at fixed λ values
    const std::vector<T> lambdas = {T(-2), T(-1), T(1) / T(2), T(3)};
    for (const T& lambda : lambdas) {
        const SymBilinearFormT<T> shifted(b.form() + g * lambda);
        for (int k = 0; k <= n; ++k) {
            rec.note_scalar("shift_corollary", shift_expansion(b, lambda, k),
                            elementary_symmetric(shifted, k));
        }
    }
}

template <class T>
void curvature_instance(Recorder<T>& rec, int n, RandomSource& rng) {
    std::vector<SymBilinearFormT<T>> bs{random_sym<T>(rng, n), random_sym<T>(rng, n)};
    const T ambient = rng.template draw<T>();
    const auto r = gauss_equation(n, bs, ambient);
    const auto b_n = random_sym<T>(rng, n);

    std::vector<T> h_even;
    for (int k = 0; 2 * k <= n; ++k) {
        const T h = gauss_bonnet_h(r, k);
        h_even.push_back(h);
        rec.note_scalar("gauss_bonnet_h_dual_route", h, gauss_bonnet_h_star(r, k));
        const auto t = lovelock_tensor(r, k);
        rec.note_form("lovelock_dual_route", t.tensor().form(),
                      lovelock_tensor_star(r, k).tensor().form());
        rec.note_scalar("lovelock_trace_identity", contraction(t.tensor().form()).scalar_value(),
                        T(T(n - 2 * k) * h));
        rec.note_scalar("h_odd_dual_route", gauss_bonnet_h_odd(r, b_n, k),
                        gauss_bonnet_h_odd_star(r, b_n, k));
    }

    // space-form conversions: round trip and match against the Gauss route
    {
        const auto b = bs[0];
        const T c = ambient;
        const auto s = symmetric_function_table(b);
        const auto r1 = gauss_equation(n, {b}, c);
        std::vector<T> h1;
        for (int k = 0; 2 * k <= n; ++k) h1.push_back(gauss_bonnet_h(r1, k));
        for (int k = 0; 2 * k <= n; ++k) {
            rec.note_scalar("spaceform_h_from_s_gauss_route", spaceform_h_from_s(s, c, n, k),
                            h1[k]);
            rec.note_scalar("spaceform_s_from_h_round_trip", spaceform_s_from_h(h1, c, n, k),
                            s.s[2 * k]);
        }
        for (int k = 0; 2 * k < n; ++k) {
            rec.note_scalar("hypersurface_polynomial_route",
                            hypersurface_minimality_polynomial(s, c, n, k),
                            gauss_bonnet_h_odd(r1, b, k));
        }
    }

    // J-invariant pairing vanishes (complex-submanifold mechanism), n = 4
    if (n == 4) {
        auto t0 = random_sym<T>(rng, 4).form();
        auto b0 = random_sym<T>(rng, 4).form();
        // J: e1→e2, e2→-e1, e3→e4, e4→-e3
        auto apply_j_both = [](const DoubleFormT<T>& m, bool twisted) {
            static const int jmap[4] = {1, 0, 3, 2};
            static const int jsign[4] = {1, -1, 1, -1};
            DoubleFormT<T> out(4, 1, 1);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    const int s = twisted ? jsign[i] * jsign[j] : jsign[i] * (-jsign[j]);
                    const T v = m.at(jmap[i], jmap[j]);
                    out.at(i, j) = (s > 0) ? v : T(-v);
                }
            return out;
        };
        const DoubleFormT<T> tj = (t0 + apply_j_both(t0, true)) * (T(1) / T(2));
        const DoubleFormT<T> bj = (b0 + apply_j_both(b0, false)) * (T(1) / T(2));
        rec.note_scalar("kahler_invariant_pairing_vanishes", inner_product(tj, bj), T(0));
    }
}

template <class T>
std::vector<IdentityResult> run_suite(const IdentityConfig& cfg) {
    std::map<std::string, IdentityResult> results;
    Recorder<T> rec{&results, cfg.exact ? 0.0 : cfg.tolerance};
    for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
        for (int trial = 0; trial < cfg.trials; ++trial) {
            RandomSource rng_a(derive_seed(cfg.seed, 1, n, trial));
            algebra_instance(rec, n, rng_a);
            RandomSource rng_s(derive_seed(cfg.seed, 2, n, trial));
            symm_instance(rec, n, rng_s);
            RandomSource rng_c(derive_seed(cfg.seed, 3, n, trial));
            curvature_instance(rec, n, rng_c);
        }
    }
    std::vector<IdentityResult> out;
    out.reserve(results.size());
    for (auto& [name, r] : results) out.push_back(std::move(r));
    return out;
}

} // namespace

std::vector<IdentityResult> run_identity_suite(const IdentityConfig& cfg) {
    if (cfg.n_min < 1 || cfg.n_max < cfg.n_min || cfg.n_max > kMaxDimension) {
        throw UsageError("identity suite requires 1 ≤ n_min ≤ n_max ≤ 16");
    }
    if (cfg.trials < 1) throw UsageError("identity suite requires trials ≥ 1");
    if (cfg.tolerance <= 0) throw UsageError("tolerance must be positive");
    return cfg.exact ? run_suite<Rational>(cfg) : run_suite<double>(cfg);
}

} // namespace gbcurv

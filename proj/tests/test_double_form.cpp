#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>

#include "gbcurv/double_form.hpp"
#include "test_support.hpp"

using namespace gbcurv;
using gbcurv::testing::random_form;
using gbcurv::testing::random_sym;

namespace {
constexpr double kTol = 1e-9;
}

TEST_CASE("metric powers are k!-scaled identities") {
    for (int n = 1; n <= 6; ++n) {
        for (int m = 0; m <= n; ++m) {
            const auto gm = DoubleForm::metric_power(n, m);
            auto via_products = power(DoubleForm::metric(n), m);
            CHECK(form_deviation(gm, via_products) == doctest::Approx(0.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("exterior product fixed values") {
    // g·g evaluated on (e_1∧e_2, e_1∧e_2) in n=2
    const auto g2 = power(DoubleForm::metric(2), 2);
    CHECK(g2.at(0, 0) == doctest::Approx(2.0));

    // scalar unit
    RandomSource rng(7);
    const auto w = random_form<double>(rng, 4, 2, 1);
    const auto one = DoubleForm::scalar(4, 1.0);
    CHECK(form_deviation(exterior_product(one, w), w) == doctest::Approx(0.0));
    CHECK(form_deviation(exterior_product(w, one), w) == doctest::Approx(0.0));

    // B = diag(a,b): B² on (e_1∧e_2, e_1∧e_2) = 2ab
    const auto b = SymBilinearForm::diagonal(2, {0.7, -1.3});
    CHECK(power(b.form(), 2).at(0, 0) == doctest::Approx(2 * 0.7 * -1.3));
}

TEST_CASE("power fixed values") {
    const auto b0 = power(DoubleForm::metric(3), 0);
    CHECK(b0.is_scalar());
    CHECK(b0.scalar_value() == doctest::Approx(1.0));

    // g³/3! on the full 3-vector
    const auto g3 = power(DoubleForm::metric(3), 3);
    CHECK(g3.at(0, 0) / 6.0 == doctest::Approx(1.0));

    const auto b = SymBilinearForm::diagonal(3, {1.0, 2.0, 3.0});
    CHECK(power(b.form(), 3).at(0, 0) == doctest::Approx(36.0)); // 3!·det

    CHECK_THROWS_AS(power(b.form(), 4), DegreeError);
    CHECK_THROWS_AS(power(b.form(), -1), DegreeError);
}

TEST_CASE("determinant law against the minor oracle") {
    for (int n = 2; n <= 6; ++n) {
        RandomSource rng(derive_seed(11, n));
        for (int trial = 0; trial < 20; ++trial) {
            const auto b = random_sym<double>(rng, n);
            for (int k = 1; k <= n; ++k) {
                const auto bk = power(b.form(), k);
                const auto& basis = index_basis(n, k);
                for (std::size_t i = 0; i < basis.size(); ++i) {
                    for (std::size_t j = 0; j < basis.size(); ++j) {
                        const double expect =
                            gbcurv::testing::minor_oracle(b, basis.tuple(i), basis.tuple(j));
                        CHECK(std::abs(bk.at(i, j) - expect) <=
                              kTol * std::max(1.0, std::abs(expect)));
                    }
                }
            }
        }
    }
}

TEST_CASE("determinant law is exact in rational mode") {
    RandomSource rng(23);
    const int n = 4;
    for (int trial = 0; trial < 5; ++trial) {
        const auto b = random_sym<Rational>(rng, n);
        for (int k = 1; k <= n; ++k) {
            const auto bk = power(b.form(), k);
            const auto& basis = index_basis(n, k);
            for (std::size_t i = 0; i < basis.size(); ++i) {
                for (std::size_t j = 0; j < basis.size(); ++j) {
                    // Laplace expansion, exact
                    std::vector<IndexTuple> rows{basis.tuple(i)};
                    const auto& I = basis.tuple(i);
                    const auto& J = basis.tuple(j);
                    // permanent-style determinant over all permutations of J
                    std::vector<int> perm(J.begin(), J.end());
                    std::sort(perm.begin(), perm.end());
                    Rational det(0);
                    do {
                        int inv = 0;
                        for (std::size_t a = 0; a < perm.size(); ++a)
                            for (std::size_t c = a + 1; c < perm.size(); ++c)
                                if (perm[a] > perm[c]) ++inv;
                        Rational prod(inv % 2 == 0 ? 1 : -1);
                        for (std::size_t a = 0; a < perm.size(); ++a) prod *= b(I[a], perm[a]);
                        det += prod;
                    } while (std::next_permutation(perm.begin(), perm.end()));
                    CHECK(bk.at(i, j) == Rational(static_cast<long long>(factorial(k))) * det);
                }
            }
        }
    }
}

TEST_CASE("contraction fixed values") {
    for (int n = 1; n <= 6; ++n) {
        const auto cg = contraction(DoubleForm::metric(n));
        CHECK(cg.scalar_value() == doctest::Approx(static_cast<double>(n)));
    }
    // c(g²) = 2(n−1)·g
    for (int n = 2; n <= 6; ++n) {
        const auto cg2 = contraction(DoubleForm::metric_power(n, 2));
        const auto expect = DoubleForm::metric(n) * (2.0 * (n - 1));
        CHECK(form_deviation(cg2, expect) <= kTol);
    }
    const auto b = SymBilinearForm::diagonal(3, {1.0, 2.0, 3.0});
    CHECK(contraction(b.form()).scalar_value() == doctest::Approx(6.0));

    CHECK_THROWS_AS(contraction(DoubleForm::scalar(3, 1.0)), ContractionError);
    CHECK_THROWS_AS(contraction(DoubleForm::zero(3, 2, 0)), ContractionError);
}

TEST_CASE("metric multiplication and the star exchange law") {
    // ω = 1 → g
    const auto g = DoubleForm::metric(3);
    CHECK(form_deviation(mult_by_metric(DoubleForm::scalar(3, 1.0)), g) <= kTol);

    // gω = *c*ω on ω = g (n=3)
    const auto lhs = mult_by_metric(g);
    const auto rhs = hodge_star(contraction(hodge_star(g)));
    CHECK(form_deviation(lhs, rhs) <= kTol);

    // random symmetric B, n=4: g·B = *c*B
    RandomSource rng(5);
    const auto b = random_sym<double>(rng, 4);
    CHECK(form_deviation(mult_by_metric(b.form()),
                         hodge_star(contraction(hodge_star(b.form())))) <= kTol);

    CHECK_THROWS_AS(mult_by_metric(DoubleForm::metric_power(3, 3)), DegreeError);
}

TEST_CASE("star exchange identities across all bidegrees") {
    // The sign-free form holds whenever (p+q)·n is even (every case the
    // formulas downstream use); the general law carries (-1)^{(p+q)n}.
    for (int n = 2; n <= 5; ++n) {
        RandomSource rng(derive_seed(31, n));
        for (int p = 0; p <= n; ++p) {
            for (int q = 0; q <= n; ++q) {
                const auto w = random_form<double>(rng, n, p, q);
                const double sign = ((p + q) * n) % 2 == 0 ? 1.0 : -1.0;
                if (p + 1 <= n && q + 1 <= n) {
                    CHECK(form_deviation(mult_by_metric(w),
                                         hodge_star(contraction(hodge_star(w))) * sign) <=
                          kTol);
                }
                if (p >= 1 && q >= 1) {
                    CHECK(form_deviation(contraction(w),
                                         hodge_star(mult_by_metric(hodge_star(w))) * sign) <=
                          kTol);
                }
            }
        }
    }
}

TEST_CASE("hodge star fixed values and double-star sign") {
    for (int n = 1; n <= 6; ++n) {
        auto full = DoubleForm::metric_power(n, n);
        full *= 1.0 / factorial(n);
        const auto s = hodge_star(full);
        CHECK(s.is_scalar());
        CHECK(s.scalar_value() == doctest::Approx(1.0));
        // *1 = g^n/n!
        CHECK(form_deviation(hodge_star(DoubleForm::scalar(n, 1.0)), full) <= kTol);
    }

    RandomSource rng(13);
    {
        const auto w = random_form<double>(rng, 4, 1, 2);
        const auto ss = hodge_star(hodge_star(w));
        CHECK(form_deviation(ss, w * -1.0) <= kTol); // (−1)^{3·1}
    }
    for (int n = 2; n <= 5; ++n) {
        for (int p = 0; p <= n; ++p) {
            for (int q = 0; q <= n; ++q) {
                const auto w = random_form<double>(rng, n, p, q);
                const int sign = ((p + q) * (n - p - q)) % 2 == 0 ? 1 : -1;
                CHECK(form_deviation(hodge_star(hodge_star(w)), w * double(sign)) <= kTol);
            }
        }
    }
}

TEST_CASE("inner product definition agrees with the component sum") {
    CHECK(inner_product(DoubleForm::metric(3), DoubleForm::metric(3)) == doctest::Approx(3.0));

    RandomSource rng(17);
    for (int n = 2; n <= 5; ++n) {
        for (int p = 0; p <= n; ++p) {
            for (int q = 0; q <= n; ++q) {
                const auto a = random_form<double>(rng, n, p, q);
                const auto b = random_form<double>(rng, n, p, q);
                const double lhs = inner_product(a, b);
                const double mid_sign = ((p + q) * (n - p - q)) % 2 == 0 ? 1.0 : -1.0;
                const double mid =
                    mid_sign * hodge_star(exterior_product(hodge_star(a), b)).scalar_value();
                const double sum = coefficient_inner_sum(a, b);
                CHECK(deviation(lhs, sum) <= kTol);
                CHECK(deviation(mid, sum) <= kTol);
                CHECK(deviation(inner_product(a, b), inner_product(b, a)) <= kTol);
            }
        }
    }

    const auto z = DoubleForm::zero(4, 2, 2);
    RandomSource rng2(18);
    CHECK(inner_product(random_form<double>(rng2, 4, 2, 2), z) == doctest::Approx(0.0));

    CHECK_THROWS_AS(inner_product(DoubleForm::metric(3), DoubleForm::metric_power(3, 2)),
                    DimensionMismatch);
}

TEST_CASE("adjointness of metric multiplication and contraction") {
    RandomSource rng(19);
    for (int n = 2; n <= 5; ++n) {
        for (int p = 0; p + 1 <= n; ++p) {
            for (int q = 0; q + 1 <= n; ++q) {
                const auto w = random_form<double>(rng, n, p, q);
                const auto th = random_form<double>(rng, n, p + 1, q + 1);
                CHECK(deviation(inner_product(mult_by_metric(w), th),
                                inner_product(w, contraction(th))) <= kTol);
            }
        }
    }
}

TEST_CASE("transpose") {
    const auto g = DoubleForm::metric(4);
    CHECK(form_deviation(transpose(g), g) == doctest::Approx(0.0));

    RandomSource rng(29);
    auto a = random_form<double>(rng, 3, 1, 1);
    const auto at = transpose(a);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(at.at(i, j) == a.at(j, i));
    CHECK(form_deviation(transpose(transpose(a)), a) == doctest::Approx(0.0));

    const auto w = random_form<double>(rng, 4, 1, 3);
    CHECK(form_deviation(transpose(transpose(w)), w) == doctest::Approx(0.0));
}

TEST_CASE("bianchi-type identities for products of symmetric forms") {
    RandomSource rng(37);
    for (int n = 2; n <= 5; ++n) {
        for (int j = 1; j <= 2 && j + 0 <= n; ++j) {
            if (j > n) continue;
            DoubleForm w = DoubleForm::scalar(n, 1.0);
            for (int t = 0; t < j; ++t) w = exterior_product(w, random_sym<double>(rng, n).form());
            const int p = j;
            // Eq (4), first identity
            {
                auto gw = exterior_product(DoubleForm::metric_power(n, n - p), w);
                gw *= 1.0 / factorial(n - p);
                auto cw = contraction_power(w, p);
                cw *= 1.0 / factorial(p);
                CHECK(form_deviation(hodge_star(gw), cw) <= kTol);
            }
            // Eq (4), second identity (needs n ≥ p+1)
            if (n - p - 1 >= 0 && p >= 1) {
                auto gw = exterior_product(DoubleForm::metric_power(n, n - p - 1), w);
                gw *= 1.0 / factorial(n - p - 1);
                auto first = contraction_power(w, p);
                first *= 1.0 / factorial(p);
                auto expect = mult_by_metric(first);
                auto second = contraction_power(w, p - 1);
                second *= 1.0 / factorial(p - 1);
                expect -= second;
                CHECK(form_deviation(hodge_star(gw), expect) <= kTol);
            }
        }
    }
}

TEST_CASE("product is commutative on symmetric bilinear forms and associative") {
    RandomSource rng(41);
    for (int n = 2; n <= 5; ++n) {
        const auto b = random_sym<double>(rng, n);
        const auto c = random_sym<double>(rng, n);
        CHECK(form_deviation(exterior_product(b.form(), c.form()),
                             exterior_product(c.form(), b.form())) <= kTol);
    }
    const int n = 5;
    const auto a = random_form<double>(rng, n, 1, 1);
    const auto b = random_form<double>(rng, n, 1, 2);
    const auto c = random_form<double>(rng, n, 2, 1);
    CHECK(form_deviation(exterior_product(exterior_product(a, b), c),
                         exterior_product(a, exterior_product(b, c))) <= kTol);
}

TEST_CASE("degree overflow raises instead of clamping") {
    const auto g2 = DoubleForm::metric_power(4, 2);
    const auto g3 = DoubleForm::metric_power(4, 3);
    CHECK_THROWS_AS(exterior_product(g2, g3), DegreeError);
    CHECK_THROWS_AS(exterior_product(DoubleForm::metric(2), DoubleForm::metric_power(2, 2)),
                    DegreeError);
}

TEST_CASE("exact mode: star exchange and inner product are exactly zero-deviation") {
    RandomSource rng(43);
    const int n = 4;
    for (int p = 0; p <= n; ++p) {
        for (int q = 0; q <= n; ++q) {
            const auto w = random_form<Rational>(rng, n, p, q);
            if (p + 1 <= n && q + 1 <= n) {
                const auto lhs = mult_by_metric(w);
                const auto rhs = hodge_star(contraction(hodge_star(w)));
                CHECK(form_deviation(lhs, rhs) == 0.0);
            }
            const auto th = random_form<Rational>(rng, n, p, q);
            CHECK(inner_product(w, th) == coefficient_inner_sum(w, th));
        }
    }
}

TEST_CASE("symmetric bilinear construction symmetrizes exactly") {
    RandomSource rng(47);
    const auto raw = random_form<double>(rng, 4, 1, 1);
    const SymBilinearForm b(raw);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(b(i, j) == b(j, i));
    CHECK_THROWS_AS(SymBilinearForm(DoubleForm::zero(3, 2, 1)), DegreeError);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>

#include "gbcurv/symm_functions.hpp"
#include "test_support.hpp"

using namespace gbcurv;
using gbcurv::testing::random_sym;
using gbcurv::testing::subset_sum_oracle;
using gbcurv::testing::to_matrix;

namespace {
constexpr double kTol = 1e-8;

std::vector<double> eigenvalues_of(const SymBilinearForm& b) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_matrix(b));
    return {es.eigenvalues().data(), es.eigenvalues().data() + b.dimension()};
}
} // namespace

TEST_CASE("elementary symmetric, fixed values") {
    for (int n = 1; n <= 6; ++n) {
        const auto id = SymBilinearForm::identity(n);
        for (int k = 0; k <= n; ++k) {
            CHECK(elementary_symmetric(id, k) ==
                  doctest::Approx(static_cast<double>(binomial(n, k))));
        }
    }
    const auto b = SymBilinearForm::diagonal(3, {1.0, 2.0, 3.0});
    CHECK(elementary_symmetric(b, 0) == doctest::Approx(1.0));
    CHECK(elementary_symmetric(b, 1) == doctest::Approx(6.0));
    CHECK(elementary_symmetric(b, 2) == doctest::Approx(11.0));
    CHECK(elementary_symmetric(b, 3) == doctest::Approx(6.0));
    CHECK_THROWS_AS(elementary_symmetric(b, 4), DegreeError);
    CHECK_THROWS_AS(elementary_symmetric(b, -1), DegreeError);
}

TEST_CASE("contraction route matches the eigenvalue subset-sum oracle") {
    for (int n = 2; n <= 6; ++n) {
        RandomSource rng(derive_seed(101, n));
        for (int trial = 0; trial < 25; ++trial) {
            const auto b = random_sym<double>(rng, n);
            const auto ev = eigenvalues_of(b);
            for (int k = 0; k <= n; ++k) {
                const double expect = subset_sum_oracle(ev, k);
                const double got = elementary_symmetric(b, k);
                CHECK(std::abs(got - expect) <= kTol * std::max(1.0, std::abs(expect)));
                // dual star route
                CHECK(deviation(got, elementary_symmetric_star(b, k)) <= 1e-9);
            }
        }
    }
}

TEST_CASE("exact mode: characteristic polynomial coefficients on rational diagonal forms") {
    RandomSource rng(103);
    const int n = 5;
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Rational> d(n);
        for (auto& v : d) v = rng.small_rational();
        const auto b = SymBilinearFormQ::diagonal(n, d);
        // expand Π(x + λ_i); coefficient of x^{n-k} is s_k
        std::vector<Rational> coeff(n + 1, Rational(0));
        coeff[0] = 1;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j >= 1; --j) coeff[j] += d[i] * coeff[j - 1];
        }
        for (int k = 0; k <= n; ++k) {
            CHECK(elementary_symmetric(b, k) == coeff[k]);
            CHECK(elementary_symmetric_star(b, k) == coeff[k]);
        }
    }
}

TEST_CASE("newton transform, fixed values") {
    const auto b = SymBilinearForm::diagonal(3, {1.0, 2.0, 3.0});
    const auto t0 = newton_transform(b, 0);
    CHECK(form_deviation(t0.form(), DoubleForm::metric(3)) <= 1e-12);

    const auto tn = newton_transform(b, 3);
    CHECK(tn.form().max_abs() == doctest::Approx(0.0));

    const auto t1 = newton_transform(b, 1);
    const auto expect = SymBilinearForm::diagonal(3, {5.0, 4.0, 3.0});
    CHECK(form_deviation(t1.form(), expect.form()) <= 1e-12);

    CHECK(inner_product(t1.form(), b.form()) == doctest::Approx(22.0)); // 2·s_2

    CHECK_THROWS_AS(newton_transform(b, 4), DegreeError);
}

TEST_CASE("newton transform property triple") {
    for (int n = 2; n <= 6; ++n) {
        RandomSource rng(derive_seed(107, n));
        for (int trial = 0; trial < 20; ++trial) {
            const auto b = random_sym<double>(rng, n);
            for (int k = 0; k <= n; ++k) {
                const auto tk = newton_transform(b, k);
                // 1. ⟨t_k(B), B⟩ = (k+1) s_{k+1};  s_{n+1} taken as 0
                const double pairing = inner_product(tk.form(), b.form());
                const double s_next = (k + 1 <= n) ? elementary_symmetric(b, k + 1) : 0.0;
                CHECK(deviation(pairing, (k + 1) * s_next) <= 1e-9);
                // 2. t_k = s_k g − c^{k-1}B^k/(k!(k-1)!)   (k ≥ 1)
                if (k >= 1 && k < n) {
                    auto rhs = DoubleForm::metric(n) * elementary_symmetric(b, k);
                    auto corr = contraction_power(power(b.form(), k), k - 1);
                    corr *= 1.0 / (factorial(k) * factorial(k - 1));
                    rhs -= corr;
                    CHECK(form_deviation(tk.form(), rhs) <= 1e-9);
                }
                // 3. c t_k = (n-k) s_k
                CHECK(deviation(contraction(tk.form()).scalar_value(),
                                (n - k) * elementary_symmetric(b, k)) <= 1e-9);
            }
        }
    }
}

TEST_CASE("shift expansion") {
    const auto b = SymBilinearForm::diagonal(3, {1.0, 2.0, 3.0});
    // λ=0 keeps s_k
    for (int k = 0; k <= 3; ++k) {
        CHECK(shift_expansion(b, 0.0, k) == doctest::Approx(elementary_symmetric(b, k)));
    }
    // B=0: C(n,k)·λ^k
    for (int n = 2; n <= 5; ++n) {
        const auto z = SymBilinearForm::zero(n);
        for (int k = 0; k <= n; ++k) {
            CHECK(shift_expansion(z, 1.7, k) ==
                  doctest::Approx(binomial(n, k) * std::pow(1.7, k)));
        }
    }
    // diag(1,2,3), λ=1, k=2 → s_2(diag(2,3,4)) = 26
    CHECK(shift_expansion(b, 1.0, 2) == doctest::Approx(26.0));

    // random B against direct computation on B + λg
    for (int n = 2; n <= 6; ++n) {
        RandomSource rng(derive_seed(109, n));
        for (int trial = 0; trial < 10; ++trial) {
            const auto rb = random_sym<double>(rng, n);
            for (double lambda : {-2.0, -1.0, 0.5, 3.0}) {
                auto shifted_form = rb.form() + DoubleForm::metric(n) * lambda;
                const SymBilinearForm shifted(shifted_form);
                for (int k = 0; k <= n; ++k) {
                    CHECK(deviation(shift_expansion(rb, lambda, k),
                                    elementary_symmetric(shifted, k)) <= 1e-9);
                }
            }
        }
    }
    CHECK_THROWS_AS(shift_expansion(b, 1.0, 7), DegreeError);
}

TEST_CASE("basis invariance under orthogonal conjugation") {
    for (int n = 2; n <= 6; ++n) {
        RandomSource rng(derive_seed(113, n));
        for (int trial = 0; trial < 5; ++trial) {
            const auto b = random_sym<double>(rng, n);
            Eigen::MatrixXd m(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) m(i, j) = rng.uniform_signed();
            const Eigen::MatrixXd q =
                Eigen::HouseholderQR<Eigen::MatrixXd>(m).householderQ();
            const Eigen::MatrixXd conj = q.transpose() * to_matrix(b) * q;
            DoubleForm cf(n, 1, 1);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) cf.at(i, j) = conj(i, j);
            const SymBilinearForm bc(cf);
            for (int k = 0; k <= n; ++k) {
                CHECK(deviation(elementary_symmetric(b, k), elementary_symmetric(bc, k)) <=
                      1e-8);
            }
        }
    }
}

TEST_CASE("symmetric function table") {
    const auto b = SymBilinearForm::diagonal(4, {1.0, 1.0, 2.0, 5.0});
    const auto table = symmetric_function_table(b);
    REQUIRE(table.s.size() == 5);
    CHECK(table.s[0] == doctest::Approx(1.0));
    CHECK(table.s[1] == doctest::Approx(9.0));
    CHECK(table.s[4] == doctest::Approx(10.0));
}

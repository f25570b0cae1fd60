#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numbers>

#include "gbcurv/verification.hpp"

using namespace gbcurv;

namespace {
constexpr double kPi = std::numbers::pi;

Eigen::VectorXd vec2(double a, double b) {
    Eigen::VectorXd v(2);
    v << a, b;
    return v;
}
} // namespace

TEST_CASE("flat torus minimality verdicts") {
    const auto torus = make_flat_torus({1.0, 1.0});
    const auto samples = torus->sample_grid({16, 16});

    const auto at_k1 = minimality_residual(*torus, 1, samples);
    CHECK(at_k1.max_residual <= 1e-10);
    CHECK(at_k1.verdict == "minimal");

    const auto at_k0 = minimality_residual(*torus, 0, samples);
    CHECK(at_k0.verdict == "not-minimal");
    CHECK(at_k0.max_residual == doctest::Approx(1.0).epsilon(1e-6)); // |cB_N| = 1/r

    CHECK_THROWS_AS(minimality_residual(*torus, 1, {}), UsageError);
    CHECK_THROWS_AS(minimality_residual(*torus, 4, samples), DegreeError);
}

TEST_CASE("unit S³ is not 2-minimal, residual bounded away from zero") {
    const auto s3 = make_round_sphere(3, 1.0);
    const auto report = minimality_residual(*s3, 1, s3->sample_grid({6, 6, 6}));
    CHECK(report.verdict == "not-minimal");
    CHECK(report.max_residual > 0.1);
    CHECK(report.max_residual == doctest::Approx(3.0)); // ⟨T_2, B⟩ = ⟨g, g⟩ on S³
    // report carries the h-table and the Lovelock spectrum
    const auto& rec = report.samples.front();
    CHECK(rec.h_even[0] == doctest::Approx(1.0));
    CHECK(rec.h_even[1] == doctest::Approx(3.0));
    for (double ev : rec.t_spectrum) CHECK(ev == doctest::Approx(1.0)); // T_2 = g
}

TEST_CASE("kahler graph is 2-minimal") {
    const auto kahler = make_kahler_graph(1.0);
    const auto report = minimality_residual(*kahler, 1, kahler->sample_grid({5, 5, 5, 5}));
    CHECK(report.max_residual < 1e-5);
    CHECK(report.verdict == "minimal");
    // but not 0-minimal at every point (complex ⇒ minimal, h_1 ≡ 0 too)
    const auto at_k0 = minimality_residual(*kahler, 0, kahler->sample_grid({5, 5, 5, 5}));
    CHECK(at_k0.max_residual < 1e-9);
}

TEST_CASE("totally geodesic equator in the sphere is minimal for all k") {
    const auto equator = make_small_sphere_in_sphere(3, 1.0);
    const auto samples = equator->sample_grid({6, 6, 6});
    for (int k = 0; 2 * k <= 3; ++k) {
        const auto report =
            minimality_residual(*equator, k, samples, AmbientSpace::sphere(1.0));
        CHECK(report.max_residual <= 1e-9);
        CHECK(report.verdict == "minimal");
    }
}

TEST_CASE("small non-equatorial sphere in the sphere is not minimal") {
    const auto small = make_small_sphere_in_sphere(3, 0.6);
    const auto report = minimality_residual(*small, 0, small->sample_grid({5, 5, 5}),
                                            AmbientSpace::sphere(1.0));
    CHECK(report.verdict == "not-minimal");
    // |h_1| = n·√(1-r²)/r for S³(r) ⊂ S⁴
    CHECK(report.max_residual == doctest::Approx(3.0 * 0.8 / 0.6).epsilon(1e-8));
}

TEST_CASE("coordinate harmonicity") {
    // flat T³, k = 1: every coordinate is ℓ_2-harmonic (2k < n needed for ℓ)
    const auto torus = make_flat_torus({1.0, 1.0, 1.0});
    const auto torus_report =
        coordinate_harmonicity(*torus, 1, torus->sample_grid({8, 8, 8}));
    CHECK(torus_report.max_ell <= 1e-10);
    CHECK(torus_report.max_identity_residual <= 1e-10);

    // catenoid, k = 0: classical minimal surface
    const auto catenoid = make_catenoid(1.2);
    const auto cat_report =
        coordinate_harmonicity(*catenoid, 0, catenoid->sample_grid({8, 12}));
    CHECK(cat_report.max_ell <= 1e-8);
    CHECK(cat_report.max_identity_residual <= 1e-8);

    // unit S³, k = 1: ℓ_2F = h_3·N with N = ±F, so ℓ_2F ∝ F and is nonzero
    const auto s3 = make_round_sphere(3, 1.0);
    const auto s3_report = coordinate_harmonicity(*s3, 1, s3->sample_grid({5, 5, 5}));
    CHECK(s3_report.max_identity_residual <= 1e-9);
    CHECK(s3_report.max_ell > 0.5);
    for (const auto& rec : s3_report.samples) {
        const Eigen::VectorXd position = s3->jet2(rec.u).value;
        const double phi = rec.ell_coordinates.dot(position);
        CHECK((rec.ell_coordinates - phi * position).lpNorm<Eigen::Infinity>() <= 1e-9);
    }
}

TEST_CASE("sphere eigenfunction characterization") {
    // equator S² ⊂ S³: totally geodesic, residual at machine scale
    const auto equator = make_small_sphere_in_sphere(2, 1.0);
    const auto samples = equator->sample_grid({8, 8});
    for (int k : {0}) {
        const auto report = sphere_eigen_check(*equator, k, samples);
        CHECK(report.max_residual <= 1e-9);
        CHECK(report.verdict == "minimal-in-sphere");
    }

    // clifford torus: minimal in S³ with φ = 2
    const auto clifford = make_catalog_chart("clifford_torus");
    const auto cl_report = sphere_eigen_check(*clifford, 0, clifford->sample_grid({10, 10}));
    CHECK(cl_report.max_residual <= 1e-9);
    CHECK(cl_report.verdict == "minimal-in-sphere");
    for (const auto& rec : cl_report.samples) CHECK(rec.phi == doctest::Approx(2.0));

    // small sphere r < 1: not minimal in the sphere
    const auto small = make_small_sphere_in_sphere(2, 0.5);
    const auto sm_report = sphere_eigen_check(*small, 0, small->sample_grid({6, 6}));
    CHECK(sm_report.verdict == "not-minimal-in-sphere");
    CHECK(sm_report.max_residual > 0.1);

    // refuses samples off the unit sphere
    const auto big = make_round_sphere(2, 2.0);
    CHECK_THROWS_AS(sphere_eigen_check(*big, 0, big->sample_grid({4, 4})), UsageError);
}

TEST_CASE("first variation on the unit S³ with the radial field") {
    const auto s3 = make_round_sphere(3, 1.0);
    const PositionField radial(*s3);
    const auto res = first_variation(*s3, radial, 1, {16, 16, 16}, 1e-3);
    // closed form: H_2(S³(1+t)) = 6π²(1+t), so both sides are 6π²
    const double expect = 6 * kPi * kPi;
    CHECK(res.predicted == doctest::Approx(expect).epsilon(1e-8));
    CHECK(res.richardson == doctest::Approx(expect).epsilon(1e-6));
    CHECK(std::abs(res.richardson - res.predicted) <= 0.01 * std::abs(res.predicted));
    CHECK(res.agree);
    CHECK(res.ratio == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("tangent variations leave the total curvature stationary") {
    const auto s3 = make_round_sphere(3, 1.0);
    Eigen::MatrixXd rot = Eigen::MatrixXd::Zero(4, 4);
    rot(0, 1) = -1;
    rot(1, 0) = 1;
    rot(2, 3) = -1;
    rot(3, 2) = 1;
    const LinearMapField tangent(*s3, rot);
    const auto res = first_variation(*s3, tangent, 1, {14, 14, 14}, 1e-3);
    CHECK(std::abs(res.predicted) <= 1e-6);
    CHECK(std::abs(res.richardson) <= 1e-6);

    const auto torus = make_flat_torus({1.0, 1.0});
    const LinearMapField torus_tangent(*torus, rot);
    const auto tres = first_variation(*torus, torus_tangent, 0, {24, 24}, 1e-3);
    CHECK(std::abs(tres.predicted - tres.richardson) <= 1e-6);
}

TEST_CASE("flat torus normal variation is critical for k = 1") {
    // 2k = n: the total h_2 of T² is the Gauss-Bonnet integral, identically 0
    const auto torus = make_flat_torus({1.0, 1.0});
    const auto mix = make_torus_normal_mix();
    const auto res = first_variation(*torus, *mix, 1, {24, 24}, 1e-3);
    CHECK(std::abs(res.predicted) <= 1e-12);
    CHECK(std::abs(res.richardson) <= 1e-6);
    // same field moves the area (k = 0) in general
    const auto res0 = first_variation(*torus, *mix, 0, {24, 24}, 1e-3);
    CHECK(res0.agree);
}

TEST_CASE("first variation rejects open charts without compact support") {
    const auto catenoid = make_catenoid(1.0);
    const PositionField radial(*catenoid);
    CHECK_THROWS_AS(first_variation(*catenoid, radial, 0, {8, 8}, 1e-3), InvalidVariation);

    // a compact-support flag is checked, not trusted
    const auto graph = make_polynomial_graph(1.0, 0.0, 0.0, 1.0);
    std::vector<TrigComponent> comps(3);
    TrigTerm constant;
    constant.coeff = 0.5;
    constant.factors = {TrigFactor{}, TrigFactor{}};
    comps[2].push_back(constant);
    const TrigProductField lying(std::move(comps), /*compact=*/true);
    CHECK_THROWS_AS(first_variation(*graph, lying, 0, {8, 8}, 1e-3), InvalidVariation);
}

TEST_CASE("compactly supported variation on an open chart") {
    // paraboloid graph with a bump field along e_3, vanishing at the box rim
    const auto graph = make_polynomial_graph(0.5, 0.5, 0.0, 1.0);
    std::vector<TrigComponent> comps(3);
    TrigTerm bump;
    bump.coeff = 1.0;
    // sin²(π(u+1)/2) via cos: ½(1 − cos(π(u+1)))… keep it simple: product of sines
    bump.factors = {TrigFactor{FactorKind::sin, kPi / 2, kPi / 2},
                    TrigFactor{FactorKind::sin, kPi / 2, kPi / 2}};
    comps[2].push_back(bump);
    const TrigProductField field(std::move(comps), /*compact=*/true);
    const auto res = first_variation(*graph, field, 0, {40, 40}, 1e-3);
    // the theorem itself: numeric ≈ predicted
    CHECK(std::abs(res.richardson - res.predicted) <=
          std::max(1e-4, 0.01 * std::abs(res.predicted)));
}

TEST_CASE("pointwise product rule") {
    const auto s3 = make_round_sphere(3, 1.0);
    const ScalarField f = coordinate_field(*s3, 0);
    const ScalarField g = coordinate_field(*s3, 2);
    for (const auto& u : s3->sample_grid({3, 3, 3})) {
        for (int k : {0, 1}) {
            CHECK(std::abs(pointwise_product_rule(*s3, u, f, g, k)) <= 1e-9);
        }
    }
    // constants: residual identically zero
    const ScalarField c([](const Eigen::VectorXd&) { return 2.0; },
                        [](const Eigen::VectorXd& u) {
                            return Eigen::VectorXd(Eigen::VectorXd::Zero(u.size()));
                        },
                        [](const Eigen::VectorXd& u) {
                            return Eigen::MatrixXd(Eigen::MatrixXd::Zero(u.size(), u.size()));
                        });
    CHECK(std::abs(pointwise_product_rule(*s3, Eigen::Vector3d(1.0, 0.7, 2.0), f, c, 1)) <=
          1e-12);
    // flat T³, k = 1: T_2 = 0 makes everything vanish
    const auto torus = make_flat_torus({1.0, 1.0, 1.0});
    const ScalarField tf = coordinate_field(*torus, 0);
    const ScalarField tg = coordinate_field(*torus, 2);
    CHECK(std::abs(pointwise_product_rule(*torus, Eigen::Vector3d(0.3, 1.1, 2.0), tf, tg,
                                          1)) <= 1e-12);
}

TEST_CASE("integral identities on closed charts") {
    const auto s3 = make_round_sphere(3, 1.0);
    const ScalarField f = coordinate_field(*s3, 1);
    const std::vector<int> grid{14, 14, 14};
    // ∫ ℓ_2k f = 0
    CHECK(std::abs(integral_of_ell(*s3, f, 0, grid)) <= 1e-8);
    CHECK(std::abs(integral_of_ell(*s3, f, 1, grid)) <= 1e-8);
    // ∫ (f·ℓ_2k f − T_2k(∇f,∇f)) = 0
    CHECK(std::abs(quadratic_form_residual(*s3, f, 0, grid)) <= 1e-8);
    CHECK(std::abs(quadratic_form_residual(*s3, f, 1, grid)) <= 1e-8);
    // volume sanity through the sphere quadrature: vol(S³) = 2π²
    const double vol = integrate(*s3, grid, [](const Eigen::VectorXd&) { return 1.0; });
    CHECK(vol == doctest::Approx(2 * kPi * kPi));

    const auto torus = make_flat_torus({1.0, 2.0, 1.0});
    const ScalarField tf = coordinate_field(*torus, 0);
    CHECK(std::abs(integral_of_ell(*torus, tf, 0, {16, 16, 16})) <= 1e-10);
    CHECK(std::abs(integral_of_ell(*torus, tf, 1, {16, 16, 16})) <= 1e-12);

    // non-constant eigenfunctions are nowhere ℓ_2k-harmonic on the round sphere
    double max_ell = 0;
    for (const auto& u : s3->sample_grid({5, 5, 5})) {
        max_ell = std::max(max_ell, std::abs(ell2k_at(*s3, u, f, 1)));
    }
    CHECK(max_ell > 0.1);
}

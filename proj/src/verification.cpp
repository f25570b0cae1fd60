#include "gbcurv/verification.hpp"

#include <chrono>
#include <cmath>

#include "gbcurv/parallel.hpp"

namespace gbcurv {

namespace {

double elapsed_ms(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     start)
        .count();
}

std::vector<double> h_even_table(const CurvatureTensor& r) {
    std::vector<double> h;
    for (int k = 0; 2 * k <= r.dimension(); ++k) h.push_back(gauss_bonnet_h(r, k));
    return h;
}

void check_boundary_support(const ImmersionChart& chart, const VariationField& xi) {
    // face centers of every open axis must carry a (numerically) vanishing field
    const Box& box = chart.domain();
    Eigen::VectorXd center = 0.5 * (box.lo + box.hi);
    for (int a = 0; a < chart.dim(); ++a) {
        if (box.periodic[a]) continue;
        for (double face : {box.lo[a], box.hi[a]}) {
            Eigen::VectorXd u = center;
            u[a] = face;
            if (xi.jet2(u).value.lpNorm<Eigen::Infinity>() > 1e-9) {
                throw InvalidVariation(
                    "variation field flagged compact-support does not vanish on the "
                    "boundary");
            }
        }
    }
}

Quadrature quadrature_or_throw(const ImmersionChart& chart, const VariationField* xi,
                               const std::vector<int>& grid) {
    if (auto q = chart.quadrature(grid)) return std::move(*q);
    if (xi && xi->compact_support()) {
        check_boundary_support(chart, *xi);
        // open box, compactly supported integrand: midpoint product rule
        Quadrature q;
        q.nodes = chart.sample_grid(grid);
        double w = 1.0;
        for (int a = 0; a < chart.dim(); ++a) {
            w *= (chart.domain().hi[a] - chart.domain().lo[a]) / grid[a];
        }
        q.weights.assign(q.nodes.size(), w);
        return q;
    }
    throw InvalidVariation(
        "integration needs a closed chart or a compact-support variation field");
}

double sqrt_det_metric(const ImmersionChart& chart, const Eigen::VectorXd& u) {
    const Jet2 j = chart.jet2(u);
    return std::sqrt((j.d1.transpose() * j.d1).determinant());
}

} // namespace

InvariantReport minimality_residual(const ImmersionChart& chart, int k,
                                    const std::vector<Eigen::VectorXd>& samples,
                                    const AmbientSpace& ambient, double tolerance) {
    if (samples.empty()) throw UsageError("minimality check needs at least one sample");
    if (k < 0 || 2 * k > chart.dim()) throw DegreeError("minimality check needs 2k ≤ n");
    const auto start = std::chrono::steady_clock::now();

    InvariantReport report;
    report.k = k;
    report.tolerance = tolerance;
    report.samples.resize(samples.size());
    parallel_for(samples.size(), [&](std::size_t s) {
        const ShapeData shape = shape_at(chart, samples[s], ambient);
        const CurvatureTensor r = riemann_of(shape, ambient);
        SampleInvariants rec;
        rec.u = samples[s];
        rec.h_even = h_even_table(r);
        rec.t_spectrum = spectrum(lovelock_tensor(r, k).tensor());
        for (const auto& b : shape.second_fundamental) {
            rec.h_odd.push_back(gauss_bonnet_h_odd(r, b, k));
        }
        report.samples[s] = std::move(rec);
    });
    for (const auto& rec : report.samples) {
        for (double h : rec.h_odd) {
            report.max_residual = std::max(report.max_residual, std::abs(h));
        }
    }
    report.verdict = report.max_residual < tolerance ? "minimal" : "not-minimal";
    report.timing_ms = elapsed_ms(start);
    return report;
}

HarmonicityReport coordinate_harmonicity(const ImmersionChart& chart, int k,
                                         const std::vector<Eigen::VectorXd>& samples) {
    if (samples.empty()) throw UsageError("harmonicity check needs at least one sample");
    const auto start = std::chrono::steady_clock::now();

    HarmonicityReport report;
    report.k = k;
    report.samples.resize(samples.size());
    parallel_for(samples.size(), [&](std::size_t s) {
        HarmonicitySample rec;
        rec.u = samples[s];
        rec.ell_coordinates = ell2k_coordinates_at(chart, samples[s], k);

        const ShapeData shape = shape_at(chart, samples[s], AmbientSpace::euclidean());
        const CurvatureTensor r = riemann_of(shape, AmbientSpace::euclidean());
        rec.normal_combination = Eigen::VectorXd::Zero(chart.ambient_dim());
        for (int alpha = 0; alpha < static_cast<int>(shape.second_fundamental.size());
             ++alpha) {
            const double h = gauss_bonnet_h_odd(r, shape.second_fundamental[alpha], k);
            rec.normal_combination += h * shape.frame.normal.col(alpha);
        }
        rec.identity_residual =
            (rec.ell_coordinates - rec.normal_combination).lpNorm<Eigen::Infinity>();
        report.samples[s] = std::move(rec);
    });
    for (const auto& rec : report.samples) {
        report.max_identity_residual =
            std::max(report.max_identity_residual, rec.identity_residual);
        report.max_ell =
            std::max(report.max_ell, rec.ell_coordinates.lpNorm<Eigen::Infinity>());
    }
    report.timing_ms = elapsed_ms(start);
    return report;
}

SphereCheckReport sphere_eigen_check(const ImmersionChart& chart, int k,
                                     const std::vector<Eigen::VectorXd>& samples,
                                     double tolerance) {
    if (samples.empty()) throw UsageError("sphere check needs at least one sample");
    const auto start = std::chrono::steady_clock::now();

    SphereCheckReport report;
    report.k = k;
    report.tolerance = tolerance;
    report.samples.resize(samples.size());
    parallel_for(samples.size(), [&](std::size_t s) {
        const Eigen::VectorXd position = chart.jet2(samples[s]).value;
        if (std::abs(position.norm() - 1.0) > 1e-10) {
            throw UsageError("sphere check needs samples on the unit sphere");
        }
        SphereCheckSample rec;
        rec.u = samples[s];
        const Eigen::VectorXd ell = ell2k_coordinates_at(chart, samples[s], k);
        rec.phi = ell.dot(position);
        rec.residual = (ell - rec.phi * position).lpNorm<Eigen::Infinity>();
        report.samples[s] = std::move(rec);
    });
    for (const auto& rec : report.samples) {
        report.max_residual = std::max(report.max_residual, rec.residual);
    }
    report.verdict =
        report.max_residual < tolerance ? "minimal-in-sphere" : "not-minimal-in-sphere";
    report.timing_ms = elapsed_ms(start);
    return report;
}

VariationResult first_variation(const ImmersionChart& chart, const VariationField& xi,
                                int k, const std::vector<int>& grid, double dt) {
    // 2k = n is admissible: h_{n+1} ≡ 0 and the total h_n is a topological
    // invariant, so both sides vanish.
    if (k < 0 || 2 * k > chart.dim()) throw DegreeError("first variation needs 2k ≤ n");
    if (dt <= 0) throw UsageError("first variation needs dt > 0");
    const Quadrature quad = quadrature_or_throw(chart, &xi, grid);

    auto total_curvature = [&](double t) {
        const DeformedChart deformed(chart, xi, t);
        std::vector<double> cell(quad.nodes.size());
        parallel_for(quad.nodes.size(), [&](std::size_t q) {
            const ShapeData shape =
                shape_at(deformed, quad.nodes[q], AmbientSpace::euclidean());
            const double h =
                gauss_bonnet_h(riemann_of(shape, AmbientSpace::euclidean()), k);
            cell[q] = h * std::sqrt(shape.frame.metric.determinant()) * quad.weights[q];
        });
        double acc = 0;
        for (double v : cell) acc += v;
        return acc;
    };

    VariationResult out;
    out.dt = dt;
    const double d1 = (total_curvature(dt) - total_curvature(-dt)) / (2 * dt);
    const double d2 = (total_curvature(dt / 2) - total_curvature(-dt / 2)) / dt;
    out.centered = d1;
    out.richardson = (4 * d2 - d1) / 3;

    std::vector<double> cell(quad.nodes.size());
    parallel_for(quad.nodes.size(), [&](std::size_t q) {
        const ShapeData shape = shape_at(chart, quad.nodes[q], AmbientSpace::euclidean());
        const CurvatureTensor r = riemann_of(shape, AmbientSpace::euclidean());
        const Eigen::VectorXd xi_value = xi.jet2(quad.nodes[q]).value;
        double density = 0;
        for (int alpha = 0; alpha < static_cast<int>(shape.second_fundamental.size());
             ++alpha) {
            const double coeff = xi_value.dot(shape.frame.normal.col(alpha));
            density += coeff * gauss_bonnet_h_odd(r, shape.second_fundamental[alpha], k);
        }
        cell[q] = density * std::sqrt(shape.frame.metric.determinant()) * quad.weights[q];
    });
    for (double v : cell) out.predicted += v;

    out.agree = std::abs(out.richardson - out.predicted) <=
                std::max(1e-3, 0.01 * std::abs(out.predicted));
    out.ratio = std::abs(out.predicted) > 1e-12 ? out.richardson / out.predicted : 0.0;
    return out;
}

double pointwise_product_rule(const ImmersionChart& chart, const Eigen::VectorXd& u,
                              const ScalarField& f, const ScalarField& g, int k) {
    if (2 * k >= chart.dim()) throw DegreeError("product rule needs 2k < n");
    const PointFrame frame = frame_at(chart, u);
    const ShapeData shape{frame, second_fundamental_forms(frame)};
    const auto t = lovelock_tensor(riemann_of(shape, AmbientSpace::euclidean()), k);

    const ScalarField fg = product_field(f, g);
    const double lhs = ell2k_pointwise(t, hessian_at(frame, fg));
    const double term_f = ell2k_pointwise(t, hessian_at(frame, f));
    const double term_g = ell2k_pointwise(t, hessian_at(frame, g));
    const Eigen::VectorXd df = frame_gradient(frame, f);
    const Eigen::VectorXd dg = frame_gradient(frame, g);
    double cross = 0;
    const int n = chart.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) cross += t.tensor()(i, j) * df[i] * dg[j];
    return lhs - f.value(u) * term_g - g.value(u) * term_f + 2 * cross;
}

double integrate(const ImmersionChart& chart, const std::vector<int>& grid,
                 const std::function<double(const Eigen::VectorXd&)>& density) {
    const Quadrature quad = quadrature_or_throw(chart, nullptr, grid);
    std::vector<double> cell(quad.nodes.size());
    parallel_for(quad.nodes.size(), [&](std::size_t q) {
        cell[q] = density(quad.nodes[q]) * sqrt_det_metric(chart, quad.nodes[q]) *
                  quad.weights[q];
    });
    double acc = 0;
    for (double v : cell) acc += v;
    return acc;
}

double integral_of_ell(const ImmersionChart& chart, const ScalarField& f, int k,
                       const std::vector<int>& grid) {
    return integrate(chart, grid,
                     [&](const Eigen::VectorXd& u) { return ell2k_at(chart, u, f, k); });
}

double quadratic_form_residual(const ImmersionChart& chart, const ScalarField& f, int k,
                               const std::vector<int>& grid) {
    return integrate(chart, grid, [&](const Eigen::VectorXd& u) {
        const PointFrame frame = frame_at(chart, u);
        const ShapeData shape{frame, second_fundamental_forms(frame)};
        const auto t = lovelock_tensor(riemann_of(shape, AmbientSpace::euclidean()), k);
        const double ell = ell2k_pointwise(t, hessian_at(frame, f));
        const Eigen::VectorXd df = frame_gradient(frame, f);
        double quad_form = 0;
        for (int i = 0; i < chart.dim(); ++i)
            for (int j = 0; j < chart.dim(); ++j)
                quad_form += t.tensor()(i, j) * df[i] * df[j];
        return f.value(u) * ell - quad_form;
    });
}

} // namespace gbcurv

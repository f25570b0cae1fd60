#include "gbcurv/geometry.hpp"

#include <cmath>

namespace gbcurv {

namespace {

/// Modified Gram–Schmidt with deterministic signs (orthonormalized vectors
/// keep positive pairing with their source). Returns the R factor.
Eigen::MatrixXd gram_schmidt_in_place(Eigen::MatrixXd& cols, double rank_tol) {
    const int k = static_cast<int>(cols.cols());
    Eigen::MatrixXd r = Eigen::MatrixXd::Zero(k, k);
    for (int a = 0; a < k; ++a) {
        for (int pass = 0; pass < 2; ++pass) {
            for (int b = 0; b < a; ++b) {
                const double proj = cols.col(b).dot(cols.col(a));
                r(b, a) += proj;
                cols.col(a) -= proj * cols.col(b);
            }
        }
        const double norm = cols.col(a).norm();
        if (norm < rank_tol) {
            throw DegenerateImmersion("tangent vectors are rank deficient");
        }
        r(a, a) = norm;
        cols.col(a) /= norm;
    }
    return r;
}

/// Orthonormal completion of `tangent` inside the ambient space, from the
/// canonical basis in deterministic order (greedy fallback for near-misses).
Eigen::MatrixXd normal_completion(const Eigen::MatrixXd& tangent, int wanted,
                                  const Eigen::VectorXd* exclude) {
    const int dim = static_cast<int>(tangent.rows());
    Eigen::MatrixXd normals(dim, wanted);
    int found = 0;
    auto residual = [&](int j) {
        Eigen::VectorXd v = Eigen::VectorXd::Unit(dim, j);
        for (int pass = 0; pass < 2; ++pass) {
            v -= tangent * (tangent.transpose() * v);
            if (exclude) v -= (*exclude) * exclude->dot(v);
            for (int t = 0; t < found; ++t) v -= normals.col(t) * normals.col(t).dot(v);
        }
        return v;
    };
    std::vector<bool> used(dim, false);
    for (int j = 0; j < dim && found < wanted; ++j) {
        Eigen::VectorXd v = residual(j);
        const double norm = v.norm();
        if (norm > 1e-6) {
            normals.col(found++) = v / norm;
            used[j] = true;
        }
    }
    while (found < wanted) {
        int best = -1;
        double best_norm = 0;
        Eigen::VectorXd best_v;
        for (int j = 0; j < dim; ++j) {
            if (used[j]) continue;
            Eigen::VectorXd v = residual(j);
            if (v.norm() > best_norm) {
                best_norm = v.norm();
                best = j;
                best_v = v;
            }
        }
        if (best < 0 || best_norm < 1e-12) {
            throw DegenerateImmersion("cannot complete the normal frame");
        }
        normals.col(found++) = best_v / best_norm;
        used[best] = true;
    }
    return normals;
}

} // namespace

PointFrame frame_at(const ImmersionChart& chart, const Eigen::VectorXd& u,
                    const AmbientSpace& ambient) {
    PointFrame f;
    f.u = u;
    f.jet = chart.jet2(u);
    f.position = f.jet.value;
    const int n = chart.dim();
    const int dim = chart.ambient_dim();

    f.metric = f.jet.d1.transpose() * f.jet.d1;
    if (f.metric.determinant() < 1e-10) {
        throw DegenerateImmersion("immersion is degenerate at the queried point");
    }
    f.metric_inv = f.metric.inverse();

    f.tangent = f.jet.d1;
    const Eigen::MatrixXd r = gram_schmidt_in_place(f.tangent, 1e-10);
    f.coord_to_frame = r.inverse(); // upper triangular, positive diagonal

    const Eigen::VectorXd* exclude = nullptr;
    Eigen::VectorXd radial;
    int normal_count = chart.codim();
    if (ambient.kind == AmbientSpace::Kind::sphere) {
        if (ambient.curvature <= 0) {
            throw UsageError("sphere ambient needs positive curvature");
        }
        const double radius = 1.0 / std::sqrt(ambient.curvature);
        if (std::abs(f.position.norm() - radius) > 1e-8 * (1.0 + radius)) {
            throw UsageError("chart does not lie on the ambient sphere");
        }
        radial = f.position / f.position.norm();
        exclude = &radial;
        normal_count -= 1;
        if (normal_count < 0) {
            throw UsageError("sphere ambient leaves no normal directions");
        }
    }
    f.normal = normal_completion(f.tangent, normal_count, exclude);

    // Γ^k_ij = ½ g^{kl}(∂_i g_jl + ∂_j g_il − ∂_l g_ij) with
    // ∂_k g_ij = ⟨∂²F_ki, ∂_jF⟩ + ⟨∂_iF, ∂²F_kj⟩
    std::vector<Eigen::MatrixXd> dg(n, Eigen::MatrixXd::Zero(n, n));
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                double acc = 0;
                for (int c = 0; c < dim; ++c) {
                    acc += f.jet.d2[c](k, i) * f.jet.d1(c, j) +
                           f.jet.d1(c, i) * f.jet.d2[c](k, j);
                }
                dg[k](i, j) = acc;
            }
        }
    }
    f.christoffel.assign(n, Eigen::MatrixXd::Zero(n, n));
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                double acc = 0;
                for (int l = 0; l < n; ++l) {
                    acc += f.metric_inv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
                }
                f.christoffel[k](i, j) = 0.5 * acc;
            }
        }
    }
    return f;
}

std::vector<SymBilinearForm> second_fundamental_forms(const PointFrame& frame) {
    const int n = static_cast<int>(frame.metric.rows());
    const int dim = static_cast<int>(frame.position.size());
    const int p = static_cast<int>(frame.normal.cols());
    std::vector<SymBilinearForm> out;
    out.reserve(p);
    for (int alpha = 0; alpha < p; ++alpha) {
        Eigen::MatrixXd m(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                double acc = 0;
                for (int c = 0; c < dim; ++c) {
                    acc += frame.jet.d2[c](i, j) * frame.normal(c, alpha);
                }
                m(i, j) = acc;
            }
        }
        // B_N = ⟨∇̃ N, ·⟩ = −(projection of ∂²F onto N), pushed to the frame
        const Eigen::MatrixXd in_frame =
            -frame.coord_to_frame.transpose() * m * frame.coord_to_frame;
        DoubleForm b(n, 1, 1);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) b.at(i, j) = in_frame(i, j);
        out.emplace_back(std::move(b));
    }
    return out;
}

ShapeData shape_at(const ImmersionChart& chart, const Eigen::VectorXd& u,
                   const AmbientSpace& ambient) {
    ShapeData s{frame_at(chart, u, ambient), {}};
    s.second_fundamental = second_fundamental_forms(s.frame);
    return s;
}

CurvatureTensor riemann_of(const ShapeData& shape, const AmbientSpace& ambient) {
    const int n = static_cast<int>(shape.frame.metric.rows());
    const double c = ambient.kind == AmbientSpace::Kind::sphere ? ambient.curvature : 0.0;
    return gauss_equation(n, shape.second_fundamental, c);
}

CurvatureTensor riemann_at(const ImmersionChart& chart, const Eigen::VectorXd& u,
                           const AmbientSpace& ambient) {
    return riemann_of(shape_at(chart, u, ambient), ambient);
}

Eigen::VectorXd ScalarField::gradient(const Eigen::VectorXd& u) const {
    if (grad_) return grad_(u);
    const int n = static_cast<int>(u.size());
    Eigen::VectorXd g(n);
    Eigen::VectorXd up = u, dn = u;
    for (int a = 0; a < n; ++a) {
        up[a] += step_;
        dn[a] -= step_;
        g[a] = (value_(up) - value_(dn)) / (2 * step_);
        up[a] = u[a];
        dn[a] = u[a];
    }
    return g;
}

Eigen::MatrixXd ScalarField::hessian(const Eigen::VectorXd& u) const {
    if (hess_) return hess_(u);
    const int n = static_cast<int>(u.size());
    Eigen::MatrixXd h(n, n);
    const double f0 = value_(u);
    Eigen::VectorXd x = u;
    for (int a = 0; a < n; ++a) {
        x[a] = u[a] + step_;
        const double fp = value_(x);
        x[a] = u[a] - step_;
        const double fm = value_(x);
        x[a] = u[a];
        h(a, a) = (fp - 2 * f0 + fm) / (step_ * step_);
        for (int b = a + 1; b < n; ++b) {
            x[a] = u[a] + step_;
            x[b] = u[b] + step_;
            const double fpp = value_(x);
            x[b] = u[b] - step_;
            const double fpm = value_(x);
            x[a] = u[a] - step_;
            const double fmm = value_(x);
            x[b] = u[b] + step_;
            const double fmp = value_(x);
            x[a] = u[a];
            x[b] = u[b];
            h(a, b) = h(b, a) = (fpp - fpm - fmp + fmm) / (4 * step_ * step_);
        }
    }
    return h;
}

ScalarField coordinate_field(const ImmersionChart& chart, int component) {
    const ImmersionChart* c = &chart;
    return ScalarField(
        [c, component](const Eigen::VectorXd& u) { return c->jet2(u).value[component]; },
        [c, component](const Eigen::VectorXd& u) {
            return Eigen::VectorXd(c->jet2(u).d1.row(component).transpose());
        },
        [c, component](const Eigen::VectorXd& u) { return c->jet2(u).d2[component]; });
}

ScalarField linear_field(const ImmersionChart& chart, const Eigen::VectorXd& v) {
    const ImmersionChart* c = &chart;
    return ScalarField(
        [c, v](const Eigen::VectorXd& u) { return v.dot(c->jet2(u).value); },
        [c, v](const Eigen::VectorXd& u) {
            return Eigen::VectorXd(c->jet2(u).d1.transpose() * v);
        },
        [c, v](const Eigen::VectorXd& u) {
            const Jet2 j = c->jet2(u);
            Eigen::MatrixXd h = Eigen::MatrixXd::Zero(c->dim(), c->dim());
            for (int m = 0; m < c->ambient_dim(); ++m) h += v[m] * j.d2[m];
            return h;
        });
}

ScalarField product_field(const ScalarField& f, const ScalarField& g) {
    return ScalarField(
        [f, g](const Eigen::VectorXd& u) { return f.value(u) * g.value(u); },
        [f, g](const Eigen::VectorXd& u) {
            return Eigen::VectorXd(f.value(u) * g.gradient(u) + g.value(u) * f.gradient(u));
        },
        [f, g](const Eigen::VectorXd& u) {
            const Eigen::VectorXd df = f.gradient(u), dg = g.gradient(u);
            return Eigen::MatrixXd(f.value(u) * g.hessian(u) + g.value(u) * f.hessian(u) +
                                   df * dg.transpose() + dg * df.transpose());
        });
}

SymBilinearForm hessian_at(const PointFrame& frame, const ScalarField& f) {
    const int n = static_cast<int>(frame.metric.rows());
    const Eigen::VectorXd grad = f.gradient(frame.u);
    Eigen::MatrixXd h = f.hessian(frame.u);
    for (int k = 0; k < n; ++k) h -= grad[k] * frame.christoffel[k];
    const Eigen::MatrixXd in_frame =
        frame.coord_to_frame.transpose() * h * frame.coord_to_frame;
    DoubleForm b(n, 1, 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b.at(i, j) = in_frame(i, j);
    return SymBilinearForm(std::move(b));
}

SymBilinearForm hessian_at(const ImmersionChart& chart, const Eigen::VectorXd& u,
                           const ScalarField& f) {
    return hessian_at(frame_at(chart, u), f);
}

Eigen::VectorXd frame_gradient(const PointFrame& frame, const ScalarField& f) {
    return frame.coord_to_frame.transpose() * f.gradient(frame.u);
}

double ell2k_at(const ImmersionChart& chart, const Eigen::VectorXd& u, const ScalarField& f,
                int k) {
    if (2 * k >= chart.dim()) {
        throw DegreeError("generalized laplacian needs 2k < n");
    }
    const PointFrame frame = frame_at(chart, u);
    const ShapeData shape{frame, second_fundamental_forms(frame)};
    const auto r = riemann_of(shape, AmbientSpace::euclidean());
    const auto t = lovelock_tensor(r, k);
    return ell2k_pointwise(t, hessian_at(frame, f));
}

Eigen::VectorXd ell2k_coordinates_at(const ImmersionChart& chart, const Eigen::VectorXd& u,
                                     int k) {
    if (2 * k >= chart.dim()) {
        throw DegreeError("generalized laplacian needs 2k < n");
    }
    const PointFrame frame = frame_at(chart, u);
    const ShapeData shape{frame, second_fundamental_forms(frame)};
    const auto t = lovelock_tensor(riemann_of(shape, AmbientSpace::euclidean()), k);
    const int dim = chart.ambient_dim();
    const int n = chart.dim();
    Eigen::VectorXd out(dim);
    for (int m = 0; m < dim; ++m) {
        // Hess(F_m) directly from the chart jets
        Eigen::MatrixXd h(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) h(i, j) = frame.jet.d2[m](i, j);
        for (int kk = 0; kk < n; ++kk) h -= frame.jet.d1(m, kk) * frame.christoffel[kk];
        const Eigen::MatrixXd in_frame =
            frame.coord_to_frame.transpose() * h * frame.coord_to_frame;
        DoubleForm b(n, 1, 1);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) b.at(i, j) = in_frame(i, j);
        out[m] = ell2k_pointwise(t, SymBilinearForm(std::move(b)));
    }
    return out;
}

} // namespace gbcurv

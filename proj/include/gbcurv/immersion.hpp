#ifndef GBCURV_IMMERSION_HPP
#define GBCURV_IMMERSION_HPP

#include <Eigen/Dense>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gbcurv/errors.hpp"

namespace gbcurv {

/// Parameter box with per-axis periodicity.
struct Box {
    Eigen::VectorXd lo, hi;
    std::vector<bool> periodic;

    int dim() const { return static_cast<int>(lo.size()); }
    bool all_periodic() const {
        for (bool b : periodic)
            if (!b) return false;
        return !periodic.empty();
    }
};

/// Two-jet of a map ℝ^n → ℝ^m: value, first and second derivatives.
struct Jet2 {
    Eigen::VectorXd value;            // m
    Eigen::MatrixXd d1;               // m × n
    std::vector<Eigen::MatrixXd> d2;  // per component, n × n

    static Jet2 zeros(int m, int n);
    Jet2& axpy(double t, const Jet2& other); // this += t·other
};

/// Nodes and weights for ∫ f(u) du over the parameter domain, arranged so
/// that Σ f(u_q)·√det g(u_q)·w_q integrates smooth densities on the manifold
/// accurately (spectrally, for the closed catalog charts).
struct Quadrature {
    std::vector<Eigen::VectorXd> nodes;
    std::vector<double> weights;
};

/// Parametrized immersion F : U ⊂ ℝ^n → ℝ^{n+p} with two-jet access.
class ImmersionChart {
public:
    ImmersionChart(int n, int p, Box box) : n_(n), p_(p), box_(std::move(box)) {}
    virtual ~ImmersionChart() = default;

    int dim() const { return n_; }
    int codim() const { return p_; }
    int ambient_dim() const { return n_ + p_; }
    const Box& domain() const { return box_; }

    virtual Jet2 jet2(const Eigen::VectorXd& u) const = 0;

    /// Charts covering a closed manifold (integration is available).
    virtual bool closed() const { return box_.all_periodic(); }

    /// Grid charts only evaluate on their own lattice.
    virtual bool pointwise() const { return true; }

    /// Lattice of evaluation points: periodic axes use uniform nodes, open
    /// axes use cell midpoints (keeps clear of chart boundaries/poles).
    virtual std::vector<Eigen::VectorXd> sample_grid(const std::vector<int>& counts) const;

    /// Quadrature for closed charts; nullopt otherwise.
    virtual std::optional<Quadrature> quadrature(const std::vector<int>& counts) const;

protected:
    int n_, p_;
    Box box_;
};

// ---------------------------------------------------------------------------
// Closed-form charts: every component is a sum of separable terms
// coeff · Π_a f_a(ω_a u_a + φ_a), which covers the whole built-in catalog and
// keeps the two-jets exact.
// ---------------------------------------------------------------------------

enum class FactorKind { one, id, square, sin, cos, sinh, cosh };

struct TrigFactor {
    FactorKind kind = FactorKind::one;
    double freq = 1.0;
    double phase = 0.0;

    double value(double u) const;
    double d1(double u) const;
    double d2(double u) const;
};

struct TrigTerm {
    double coeff = 1.0;
    std::vector<TrigFactor> factors; // one per parameter axis
};

using TrigComponent = std::vector<TrigTerm>;

Jet2 evaluate_terms(const std::vector<TrigComponent>& components, const Eigen::VectorXd& u);

class TrigProductChart : public ImmersionChart {
public:
    TrigProductChart(int n, int p, Box box, std::vector<TrigComponent> components)
        : ImmersionChart(n, p, std::move(box)), components_(std::move(components)) {}

    Jet2 jet2(const Eigen::VectorXd& u) const override {
        return evaluate_terms(components_, u);
    }

private:
    std::vector<TrigComponent> components_;
};

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

using ChartParams = std::map<std::string, double>;

/// Names: round_sphere (n, r), small_sphere_in_sphere (n, r), flat_torus
/// (r1, r2, ...), clifford_torus, catenoid (a), kahler_graph (extent),
/// graph_of_polynomial (a, b, c, extent).
std::unique_ptr<ImmersionChart> make_catalog_chart(const std::string& name,
                                                   const ChartParams& params = {});

/// Round S^n(r) in spherical coordinates; overrides quadrature with the
/// rotationally symmetric product rule.
std::unique_ptr<ImmersionChart> make_round_sphere(int n, double r);
/// S^n(r) ⊂ S^{n+1}(1) ⊂ ℝ^{n+2}; r = 1 is the totally geodesic equator.
std::unique_ptr<ImmersionChart> make_small_sphere_in_sphere(int n, double r);
std::unique_ptr<ImmersionChart> make_flat_torus(const std::vector<double>& radii);
std::unique_ptr<ImmersionChart> make_catenoid(double a);
std::unique_ptr<ImmersionChart> make_kahler_graph(double extent);
std::unique_ptr<ImmersionChart> make_polynomial_graph(double a, double b, double c,
                                                      double extent);

/// Adapter computing jets of a position callback by centered differences with
/// step h; the finite-difference derivative mode.
class FiniteDifferenceChart : public ImmersionChart {
public:
    using Evaluator = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

    FiniteDifferenceChart(int n, int p, Box box, Evaluator eval, double step = 1e-3)
        : ImmersionChart(n, p, std::move(box)), eval_(std::move(eval)), step_(step) {}

    /// FD view of an analytic chart (for convergence studies).
    FiniteDifferenceChart(const ImmersionChart& base, double step)
        : ImmersionChart(base.dim(), base.codim(), base.domain()),
          eval_([&base](const Eigen::VectorXd& u) { return base.jet2(u).value; }),
          step_(step) {}

    Jet2 jet2(const Eigen::VectorXd& u) const override;
    double step() const { return step_; }

private:
    Evaluator eval_;
    double step_;
};

// ---------------------------------------------------------------------------
// Grid charts: positions sampled on a lattice, centered differences.
// ---------------------------------------------------------------------------

class GridChart : public ImmersionChart {
public:
    GridChart(int n, int p, Box box, std::vector<int> shape,
              std::vector<Eigen::VectorXd> points);

    Jet2 jet2(const Eigen::VectorXd& u) const override;
    bool pointwise() const override { return false; }
    std::vector<Eigen::VectorXd> sample_grid(const std::vector<int>& counts) const override;

    const std::vector<int>& shape() const { return shape_; }
    Eigen::VectorXd node_point(const std::vector<int>& idx) const;

private:
    Jet2 jet_at_node(const std::vector<int>& idx) const;
    const Eigen::VectorXd& point(const std::vector<int>& idx) const;
    std::vector<int> locate(const Eigen::VectorXd& u) const;

    std::vector<int> shape_;
    Eigen::VectorXd step_;
    std::vector<Eigen::VectorXd> points_;
};

// ---------------------------------------------------------------------------
// Variation fields and derived charts
// ---------------------------------------------------------------------------

class VariationField {
public:
    virtual ~VariationField() = default;
    virtual Jet2 jet2(const Eigen::VectorXd& u) const = 0;
    virtual bool compact_support() const { return false; }
};

/// ξ = F: the radial field on charts through spheres centered at the origin.
class PositionField : public VariationField {
public:
    explicit PositionField(const ImmersionChart& chart) : chart_(&chart) {}
    Jet2 jet2(const Eigen::VectorXd& u) const override { return chart_->jet2(u); }

private:
    const ImmersionChart* chart_;
};

/// ξ = A·F for a constant matrix A; skew A gives rotation (tangent) fields on
/// origin-centered spheres and product tori.
class LinearMapField : public VariationField {
public:
    LinearMapField(const ImmersionChart& chart, Eigen::MatrixXd a)
        : chart_(&chart), a_(std::move(a)) {}
    Jet2 jet2(const Eigen::VectorXd& u) const override;

private:
    const ImmersionChart* chart_;
    Eigen::MatrixXd a_;
};

/// Separable closed-form field.
class TrigProductField : public VariationField {
public:
    TrigProductField(std::vector<TrigComponent> components, bool compact = false)
        : components_(std::move(components)), compact_(compact) {}
    Jet2 jet2(const Eigen::VectorXd& u) const override {
        return evaluate_terms(components_, u);
    }
    bool compact_support() const override { return compact_; }

private:
    std::vector<TrigComponent> components_;
    bool compact_;
};

/// Normal-valued mix on the flat 2-torus: cos(θ2)·N1(θ1) + cos(θ1)·N2(θ2).
std::unique_ptr<VariationField> make_torus_normal_mix();

/// F + t·ξ.
class DeformedChart : public ImmersionChart {
public:
    DeformedChart(const ImmersionChart& base, const VariationField& field, double t)
        : ImmersionChart(base.dim(), base.codim(), base.domain()),
          base_(&base), field_(&field), t_(t) {}

    Jet2 jet2(const Eigen::VectorXd& u) const override {
        Jet2 j = base_->jet2(u);
        j.axpy(t_, field_->jet2(u));
        return j;
    }
    bool closed() const override { return base_->closed(); }
    std::optional<Quadrature> quadrature(const std::vector<int>& counts) const override {
        return base_->quadrature(counts);
    }

private:
    const ImmersionChart* base_;
    const VariationField* field_;
    double t_;
};

/// F ∘ ψ for a parameter diffeomorphism ψ(u) = u + δ(u) given by closed-form
/// terms; used to assert chart invariance of the reported scalars.
class ReparametrizedChart : public ImmersionChart {
public:
    ReparametrizedChart(const ImmersionChart& base, std::vector<TrigComponent> delta)
        : ImmersionChart(base.dim(), base.codim(), base.domain()),
          base_(&base), delta_(std::move(delta)) {}

    Jet2 jet2(const Eigen::VectorXd& u) const override;
    Eigen::VectorXd map_point(const Eigen::VectorXd& u) const;

private:
    const ImmersionChart* base_;
    std::vector<TrigComponent> delta_;
};

} // namespace gbcurv

#endif

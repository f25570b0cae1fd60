#ifndef GBCURV_GEOMETRY_HPP
#define GBCURV_GEOMETRY_HPP

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "gbcurv/curvature.hpp"
#include "gbcurv/immersion.hpp"

namespace gbcurv {

/// Constant-curvature ambient space. Sphere ambients require the chart to
/// land on the sphere of radius 1/√curvature about the origin.
struct AmbientSpace {
    enum class Kind { euclidean, sphere } kind = Kind::euclidean;
    double curvature = 0.0;

    static AmbientSpace euclidean() { return {}; }
    static AmbientSpace sphere(double curvature = 1.0) {
        return {Kind::sphere, curvature};
    }
};

/// Everything pointwise the tensor algebra needs at one parameter point.
struct PointFrame {
    Eigen::VectorXd u;
    Eigen::VectorXd position;
    Eigen::MatrixXd tangent;  // ambient × n, orthonormal columns
    Eigen::MatrixXd normal;   // ambient × p', orthonormal, ⟂ tangent
    Eigen::MatrixXd metric;   // coordinate metric g_ij = ⟨∂_iF, ∂_jF⟩
    Eigen::MatrixXd metric_inv;
    Eigen::MatrixXd coord_to_frame;            // E with tangent = dF·E
    std::vector<Eigen::MatrixXd> christoffel;  // Γ^k as n×n matrix per k
    Jet2 jet;
};

/// Gram–Schmidt frames, metric and Christoffel symbols at u. The normal frame
/// spans the full orthogonal complement (Euclidean ambient); sphere ambients
/// drop the radial direction.
PointFrame frame_at(const ImmersionChart& chart, const Eigen::VectorXd& u,
                    const AmbientSpace& ambient = AmbientSpace::euclidean());

/// Scalar second fundamental forms in the orthonormal tangent frame, one per
/// normal direction, with the sign convention B_N(x,y) = ⟨∇̃_x N, y⟩
/// (equivalently −⟨(∂²F)^⊥(x,y), N⟩).
std::vector<SymBilinearForm> second_fundamental_forms(const PointFrame& frame);

struct ShapeData {
    PointFrame frame;
    std::vector<SymBilinearForm> second_fundamental; // per normal column
};

ShapeData shape_at(const ImmersionChart& chart, const Eigen::VectorXd& u,
                   const AmbientSpace& ambient = AmbientSpace::euclidean());

/// Intrinsic curvature through the Gauss equation with the ambient constant.
CurvatureTensor riemann_at(const ImmersionChart& chart, const Eigen::VectorXd& u,
                           const AmbientSpace& ambient = AmbientSpace::euclidean());
CurvatureTensor riemann_of(const ShapeData& shape, const AmbientSpace& ambient);

/// Scalar field on the parameter domain; derivatives analytic when given,
/// centered differences otherwise.
class ScalarField {
public:
    using Value = std::function<double(const Eigen::VectorXd&)>;
    using Grad = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
    using Hess = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

    ScalarField(Value v, double fd_step = 1e-3) : value_(std::move(v)), step_(fd_step) {}
    ScalarField(Value v, Grad g, Hess h)
        : value_(std::move(v)), grad_(std::move(g)), hess_(std::move(h)) {}

    double value(const Eigen::VectorXd& u) const { return value_(u); }
    Eigen::VectorXd gradient(const Eigen::VectorXd& u) const;
    Eigen::MatrixXd hessian(const Eigen::VectorXd& u) const;

private:
    Value value_;
    Grad grad_;
    Hess hess_;
    double step_ = 1e-3;
};

/// Restriction of the m-th ambient coordinate to the chart (analytic jets).
ScalarField coordinate_field(const ImmersionChart& chart, int component);
/// f_v = ⟨v, F(·)⟩.
ScalarField linear_field(const ImmersionChart& chart, const Eigen::VectorXd& v);
ScalarField product_field(const ScalarField& f, const ScalarField& g);

/// Hessian with Christoffel correction, pushed to the orthonormal frame:
/// Hess(f)_ab = E^T (∂²f − Γ^k ∂_k f) E.
SymBilinearForm hessian_at(const PointFrame& frame, const ScalarField& f);
SymBilinearForm hessian_at(const ImmersionChart& chart, const Eigen::VectorXd& u,
                           const ScalarField& f);

/// Tangent gradient components in the orthonormal frame.
Eigen::VectorXd frame_gradient(const PointFrame& frame, const ScalarField& f);

/// ℓ_2k f = −⟨T_2k, Hess f⟩ at a point (intrinsic; Euclidean Gauss route).
double ell2k_at(const ImmersionChart& chart, const Eigen::VectorXd& u,
                const ScalarField& f, int k);

/// ℓ_2k applied to every ambient coordinate at once.
Eigen::VectorXd ell2k_coordinates_at(const ImmersionChart& chart, const Eigen::VectorXd& u,
                                     int k);

} // namespace gbcurv

#endif

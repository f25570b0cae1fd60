#ifndef GBCURV_VERIFICATION_HPP
#define GBCURV_VERIFICATION_HPP

#include <string>
#include <vector>

#include "gbcurv/geometry.hpp"

namespace gbcurv {

struct SampleInvariants {
    Eigen::VectorXd u;
    std::vector<double> h_even;     // h_0, h_2, ..., up to 2k ≤ n
    std::vector<double> t_spectrum; // spectrum of T_2k at the requested k
    std::vector<double> h_odd;      // h_2k+1(N_α) per normal direction
};

struct InvariantReport {
    int k = 0;
    double tolerance = 0;
    std::vector<SampleInvariants> samples;
    double max_residual = 0; // max |h_2k+1| over samples and normals
    std::string verdict;     // "minimal" iff max_residual < tolerance
    double timing_ms = 0;
};

/// h_2k+1 residuals over a sample sweep. Verdict per the tolerance.
InvariantReport minimality_residual(const ImmersionChart& chart, int k,
                                    const std::vector<Eigen::VectorXd>& samples,
                                    const AmbientSpace& ambient = AmbientSpace::euclidean(),
                                    double tolerance = 1e-6);

struct HarmonicitySample {
    Eigen::VectorXd u;
    Eigen::VectorXd ell_coordinates;  // ℓ_2k F_i per ambient coordinate
    Eigen::VectorXd normal_combination; // Σ_α h_2k+1(N_α) N_α
    double identity_residual = 0;     // ‖difference‖∞
};

struct HarmonicityReport {
    int k = 0;
    std::vector<HarmonicitySample> samples;
    double max_identity_residual = 0;
    double max_ell = 0; // max |ℓ_2k F_i|; ≈ 0 exactly on (2k)-minimal charts
    double timing_ms = 0;
};

/// ℓ_2k of every coordinate function against the Σ h_2k+1(N)·N identity.
HarmonicityReport coordinate_harmonicity(const ImmersionChart& chart, int k,
                                         const std::vector<Eigen::VectorXd>& samples);

struct SphereCheckSample {
    Eigen::VectorXd u;
    double phi = 0;      // ⟨ℓ_2k F, F⟩
    double residual = 0; // ‖ℓ_2k F − φF‖∞
};

struct SphereCheckReport {
    int k = 0;
    double tolerance = 0;
    std::vector<SphereCheckSample> samples;
    double max_residual = 0;
    std::string verdict; // "minimal-in-sphere" iff max_residual < tolerance
    double timing_ms = 0;
};

/// The ℓ_2k F = φF characterization for charts into the unit sphere.
SphereCheckReport sphere_eigen_check(const ImmersionChart& chart, int k,
                                     const std::vector<Eigen::VectorXd>& samples,
                                     double tolerance = 1e-6);

struct VariationResult {
    double centered = 0;   // [H(dt) − H(−dt)]/(2dt)
    double richardson = 0; // extrapolated across dt, dt/2
    double predicted = 0;  // ∫ h_2k+1(ξ^⊥) dμ
    double dt = 0;
    double ratio = 0;      // richardson/predicted when meaningful
    bool agree = false;    // |richardson − predicted| ≤ max(1e−3, 1%·|predicted|)
};

/// Numeric dH_2k/dt at t = 0 for F + tξ against the first-variation integrand.
/// Closed charts use their own quadrature; open charts need compact-support ξ.
VariationResult first_variation(const ImmersionChart& chart, const VariationField& xi,
                                int k, const std::vector<int>& grid, double dt = 1e-3);

/// ℓ_2k(fg) − f·ℓ_2k(g) − g·ℓ_2k(f) + 2T_2k(∇f, ∇g) at u; identically zero.
double pointwise_product_rule(const ImmersionChart& chart, const Eigen::VectorXd& u,
                              const ScalarField& f, const ScalarField& g, int k);

/// Σ_q φ(u_q)·√det g(u_q)·w_q with the chart's quadrature.
double integrate(const ImmersionChart& chart, const std::vector<int>& grid,
                 const std::function<double(const Eigen::VectorXd&)>& density);

/// ∫ ℓ_2k f dμ; vanishes on closed manifolds.
double integral_of_ell(const ImmersionChart& chart, const ScalarField& f, int k,
                       const std::vector<int>& grid);

/// ∫ (f·ℓ_2k f − T_2k(∇f,∇f)) dμ; vanishes on closed manifolds.
double quadratic_form_residual(const ImmersionChart& chart, const ScalarField& f, int k,
                               const std::vector<int>& grid);

} // namespace gbcurv

#endif

#include "gbcurv/curvature.hpp"

#include <Eigen/Dense>

namespace gbcurv {

const char* to_string(Definiteness d) {
    switch (d) {
        case Definiteness::positive: return "positive";
        case Definiteness::negative: return "negative";
        case Definiteness::indefinite: return "indefinite";
        case Definiteness::degenerate: return "degenerate";
    }
    return "unknown";
}

std::vector<double> spectrum(const SymBilinearFormT<double>& b) {
    const int n = b.dimension();
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = b(i, j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + n);
    return ev;
}

Definiteness is_definite(const LovelockTensorT<double>& t, double zero_tol) {
    const auto ev = spectrum(t.tensor());
    bool any_zero = false, any_pos = false, any_neg = false;
    for (double v : ev) {
        if (std::abs(v) <= zero_tol) {
            any_zero = true;
        } else if (v > 0) {
            any_pos = true;
        } else {
            any_neg = true;
        }
    }
    if (any_zero) return Definiteness::degenerate;
    if (any_pos && any_neg) return Definiteness::indefinite;
    return any_pos ? Definiteness::positive : Definiteness::negative;
}

} // namespace gbcurv

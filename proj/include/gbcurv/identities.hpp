#ifndef GBCURV_IDENTITIES_HPP
#define GBCURV_IDENTITIES_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace gbcurv {

struct IdentityConfig {
    int n_min = 2;
    int n_max = 6;
    int trials = 200;
    std::uint64_t seed = 0;
    bool exact = false;      // certify on rational inputs
    double tolerance = 1e-9; // floating mode; exact mode demands literal zero
};

struct IdentityResult {
    std::string name;
    long long checks = 0;     // individual comparisons performed
    double max_deviation = 0; // |a-b|/max(1,|a|,|b|), worst case seen
    double tolerance = 0;
    bool pass = false;
};

/// Randomized certification of the algebraic laws: star/contraction exchange,
/// inner-product normalization, double-star sign, the Bianchi star identities,
/// the determinant law, adjointness, symmetric-function and Newton-transform
/// properties, the shift corollary, and the dual-route curvature invariants.
/// Deterministic in (seed, config); independent of evaluation order.
std::vector<IdentityResult> run_identity_suite(const IdentityConfig& config);

} // namespace gbcurv

#endif

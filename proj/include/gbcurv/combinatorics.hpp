#ifndef GBCURV_COMBINATORICS_HPP
#define GBCURV_COMBINATORICS_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "gbcurv/errors.hpp"

namespace gbcurv {

// Axis indices are 0-based everywhere in the library; the serialization layer
// shifts to the 1-based convention used in reports.
using IndexTuple = std::vector<int>;
using IndexMask = std::uint32_t;

inline constexpr int kMaxDimension = 16;

std::uint64_t binomial(int n, int k);
std::uint64_t factorial(int n);

/// Ordered basis of the p-vector slot in dimension n: all strictly increasing
/// p-tuples from {0,..,n-1} in lexicographic order, with O(1) rank lookup by
/// bitmask.
class IndexBasis {
public:
    IndexBasis(int n, int p);

    int dimension() const { return n_; }
    int degree() const { return p_; }
    std::size_t size() const { return tuples_.size(); }

    const IndexTuple& tuple(std::size_t rank) const { return tuples_[rank]; }
    IndexMask mask(std::size_t rank) const { return masks_[rank]; }

    std::size_t rank_of(IndexMask m) const;
    std::size_t rank_of(const IndexTuple& t) const;

private:
    int n_, p_;
    std::vector<IndexTuple> tuples_;
    std::vector<IndexMask> masks_;
    std::vector<std::int32_t> rank_by_mask_;
};

/// Shared cache; bases are immutable once built.
const IndexBasis& index_basis(int n, int p);

IndexMask mask_of(const IndexTuple& t);
IndexTuple tuple_of(IndexMask m);

/// Sign of the permutation (I, I^c) of (0..n-1); second component of the
/// classical star of a basis p-vector.
int complement_sign(IndexMask m, int n);
IndexMask complement_mask(IndexMask m, int n);

/// Sign of the shuffle moving the subset `sub` to the front of `sup`.
/// Requires sub ⊆ sup.
int shuffle_sign(IndexMask sub, IndexMask sup);

/// Sign that sorts (i, sorted elements of rest) into increasing order;
/// zero-filtering (i ∈ rest) is the caller's job.
int insertion_sign(int i, IndexMask rest);

/// One term of a (p,r)-split of a (p+r)-index: ranks of the two halves in
/// their own bases plus the shuffle sign.
struct SplitTerm {
    std::uint32_t left_rank;
    std::uint32_t right_rank;
    std::int8_t sign;
};

/// For every (p+r)-tuple K of the (n, p+r) basis, all ways to split K into a
/// p-subset and its complement inside K. Cached per (n, p, r).
const std::vector<std::vector<SplitTerm>>& split_table(int n, int p, int r);

// Public 1-based view used by serialization and the CLI.
struct MultiIndex {
    int n = 0;
    IndexTuple entries; // strictly increasing, 1-based
};

std::vector<MultiIndex> enumerate_multiindices(int n, int p);
std::pair<MultiIndex, int> complement_with_sign(const MultiIndex& idx);

} // namespace gbcurv

#endif

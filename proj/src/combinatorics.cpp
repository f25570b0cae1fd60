#include "gbcurv/combinatorics.hpp"

#include <bit>
#include <map>
#include <mutex>
#include <string>

namespace gbcurv {

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    }
    return r;
}

std::uint64_t factorial(int n) {
    std::uint64_t r = 1;
    for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
    return r;
}

IndexBasis::IndexBasis(int n, int p) : n_(n), p_(p) {
    if (n < 0 || n > kMaxDimension) {
        throw DegreeError("dimension out of range: n=" + std::to_string(n));
    }
    if (p < 0 || p > n) {
        throw DegreeError("degree out of range: p=" + std::to_string(p) +
                          ", n=" + std::to_string(n));
    }
    rank_by_mask_.assign(std::size_t{1} << n, -1);
    // lexicographic enumeration of increasing p-tuples
    IndexTuple cur(p);
    for (int i = 0; i < p; ++i) cur[i] = i;
    const auto total = binomial(n, p);
    tuples_.reserve(total);
    masks_.reserve(total);
    while (true) {
        IndexMask m = mask_of(cur);
        rank_by_mask_[m] = static_cast<std::int32_t>(tuples_.size());
        masks_.push_back(m);
        tuples_.push_back(cur);
        if (p == 0) break;
        int j = p - 1;
        while (j >= 0 && cur[j] == n - p + j) --j;
        if (j < 0) break;
        ++cur[j];
        for (int t = j + 1; t < p; ++t) cur[t] = cur[t - 1] + 1;
    }
}

std::size_t IndexBasis::rank_of(IndexMask m) const {
    const std::int32_t r = rank_by_mask_[m];
    if (r < 0) throw DegreeError("mask has wrong cardinality for basis");
    return static_cast<std::size_t>(r);
}

std::size_t IndexBasis::rank_of(const IndexTuple& t) const {
    return rank_of(mask_of(t));
}

const IndexBasis& index_basis(int n, int p) {
    static std::map<std::pair<int, int>, IndexBasis> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({n, p});
    if (it == cache.end()) {
        it = cache.emplace(std::make_pair(n, p), IndexBasis(n, p)).first;
    }
    return it->second;
}

IndexMask mask_of(const IndexTuple& t) {
    IndexMask m = 0;
    for (int i : t) m |= IndexMask{1} << i;
    return m;
}

IndexTuple tuple_of(IndexMask m) {
    IndexTuple t;
    while (m) {
        const int i = std::countr_zero(m);
        t.push_back(i);
        m &= m - 1;
    }
    return t;
}

int complement_sign(IndexMask m, int n) {
    // inversions of (I, I^c): pairs i ∈ I, j ∈ I^c with j < i
    const IndexMask full = (n == 32) ? ~IndexMask{0} : ((IndexMask{1} << n) - 1);
    const IndexMask comp = full & ~m;
    int inv = 0;
    IndexMask rest = m;
    while (rest) {
        const int i = std::countr_zero(rest);
        inv += std::popcount(comp & ((IndexMask{1} << i) - 1));
        rest &= rest - 1;
    }
    return (inv % 2 == 0) ? 1 : -1;
}

IndexMask complement_mask(IndexMask m, int n) {
    const IndexMask full = (IndexMask{1} << n) - 1;
    return full & ~m;
}

int shuffle_sign(IndexMask sub, IndexMask sup) {
    // (-1)^{Σ_j (pos_j - j)} over positions of sub's elements within sup
    int parity = 0;
    int j = 0;
    IndexMask rest = sub;
    while (rest) {
        const int i = std::countr_zero(rest);
        const int pos = std::popcount(sup & ((IndexMask{1} << i) - 1));
        parity += pos - j;
        ++j;
        rest &= rest - 1;
    }
    return (parity % 2 == 0) ? 1 : -1;
}

int insertion_sign(int i, IndexMask rest) {
    const int below = std::popcount(rest & ((IndexMask{1} << i) - 1));
    return (below % 2 == 0) ? 1 : -1;
}

const std::vector<std::vector<SplitTerm>>& split_table(int n, int p, int r) {
    static std::map<std::tuple<int, int, int>, std::vector<std::vector<SplitTerm>>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({n, p, r});
    if (it != cache.end()) return it->second;

    const IndexBasis& whole = index_basis(n, p + r);
    const IndexBasis& left = index_basis(n, p);
    const IndexBasis& right = index_basis(n, r);
    std::vector<std::vector<SplitTerm>> table(whole.size());
    for (std::size_t kr = 0; kr < whole.size(); ++kr) {
        const IndexMask K = whole.mask(kr);
        auto& row = table[kr];
        row.reserve(binomial(p + r, p));
        // enumerate p-subsets A of K
        const IndexTuple kt = tuple_of(K);
        std::vector<int> pick(p);
        for (int i = 0; i < p; ++i) pick[i] = i;
        while (true) {
            IndexMask A = 0;
            for (int i = 0; i < p; ++i) A |= IndexMask{1} << kt[pick[i]];
            row.push_back(SplitTerm{
                static_cast<std::uint32_t>(left.rank_of(A)),
                static_cast<std::uint32_t>(right.rank_of(K & ~A)),
                static_cast<std::int8_t>(shuffle_sign(A, K)),
            });
            if (p == 0) break;
            int j = p - 1;
            while (j >= 0 && pick[j] == p + r - p + j) --j;
            if (j < 0) break;
            ++pick[j];
            for (int t = j + 1; t < p; ++t) pick[t] = pick[t - 1] + 1;
        }
    }
    it = cache.emplace(std::make_tuple(n, p, r), std::move(table)).first;
    return it->second;
}

std::vector<MultiIndex> enumerate_multiindices(int n, int p) {
    const IndexBasis& basis = index_basis(n, p);
    std::vector<MultiIndex> out;
    out.reserve(basis.size());
    for (std::size_t r = 0; r < basis.size(); ++r) {
        MultiIndex mi;
        mi.n = n;
        mi.entries = basis.tuple(r);
        for (int& e : mi.entries) ++e;
        out.push_back(std::move(mi));
    }
    return out;
}

std::pair<MultiIndex, int> complement_with_sign(const MultiIndex& idx) {
    IndexTuple zero_based = idx.entries;
    for (int& e : zero_based) {
        if (e < 1 || e > idx.n) throw DegreeError("multi-index entry out of range");
        --e;
    }
    const IndexMask m = mask_of(zero_based);
    if (std::popcount(m) != static_cast<int>(zero_based.size())) {
        throw DegreeError("multi-index entries must be distinct");
    }
    MultiIndex comp;
    comp.n = idx.n;
    comp.entries = tuple_of(complement_mask(m, idx.n));
    for (int& e : comp.entries) ++e;
    return {comp, complement_sign(m, idx.n)};
}

} // namespace gbcurv

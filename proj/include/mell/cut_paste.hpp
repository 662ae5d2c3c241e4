#pragma once

#include <string>
#include <vector>

#include "cohomology.hpp"
#include "double_complex.hpp"

namespace mell {

// The (ell+2)-site configuration 0 1...1 0: one ell-cluster padded by empty
// end sites. Prepending it realizes the length-(ell+2) reduction on states.
inline Configuration chi_state(int ell) {
    if (ell < 1) throw std::invalid_argument("ell must be >= 1");
    return (full_word(ell) << 1);
}

// Companion chain specs of the length ladder. Boundary data carries over
// unchanged: periodic stays periodic, the end caps (c1, cN) are preserved.
inline ChainSpec shrink_spec(const ChainSpec& big) {
    const int n_small = big.n_sites - (big.max_cluster + 2);
    if (big.is_periodic()) return ChainSpec::periodic(n_small, big.max_cluster);
    return ChainSpec::special(n_small, big.max_cluster, big.c1, big.cN);
}

inline ChainSpec grow_spec(const ChainSpec& small) {
    const int n_big = small.n_sites + small.max_cluster + 2;
    if (small.is_periodic()) return ChainSpec::periodic(n_big, small.max_cluster);
    return ChainSpec::special(n_big, small.max_cluster, small.c1, small.cN);
}

inline Configuration prepend_chi(int ell, Configuration small_word) {
    return chi_state(ell) | (small_word << (ell + 2));
}

// Embedding of a grade-f state of the short chain into grade f+ell of the
// long chain: each basis component maps to chi concatenated with it, same
// coefficient. A missing target configuration would mean the embedding left
// the constrained space, which cannot happen for matching boundary data.
inline std::vector<Rational> g_map(const GradedBasis& small_basis, const GradedBasis& big_basis,
                                   int f_small, const std::vector<Rational>& v) {
    const int ell = small_basis.spec().max_cluster;
    if (static_cast<long>(v.size()) != small_basis.dim(f_small))
        throw std::invalid_argument("vector length does not match the small grade");
    std::vector<Rational> out(static_cast<std::size_t>(big_basis.dim(f_small + ell)),
                              Rational(0));
    const auto& words = small_basis.words(f_small);
    for (std::size_t j = 0; j < words.size(); ++j) {
        if (v[j] == 0) continue;
        const long idx = big_basis.index_of(f_small + ell, prepend_chi(ell, words[j]));
        if (idx < 0) throw StructuralViolation("chi-prepended configuration not allowed");
        out[static_cast<std::size_t>(idx)] = v[j];
    }
    return out;
}

// Every embedded state is annihilated by the prefix-sublattice supercharge:
// the columns of Q1 at the embedded configurations vanish identically.
inline bool g_image_in_ker_q1(const ChainSpec& big, const CouplingScheme& scheme) {
    const ChainSpec small = shrink_spec(big);
    const GradedBasis small_basis = GradedBasis::enumerate(small);
    const GradedBasis big_basis = GradedBasis::enumerate(big);
    const int ell = big.max_cluster;
    const Configuration prefix = prefix_split_mask(big);
    for (int f = 0; f <= small_basis.f_max(); ++f) {
        if (f + ell > big_basis.f_max()) {
            if (small_basis.dim(f) > 0) return false;  // embedding has nowhere to go
            continue;
        }
        std::vector<bool> embedded(static_cast<std::size_t>(big_basis.dim(f + ell)), false);
        for (Configuration w : small_basis.words(f)) {
            const long idx = big_basis.index_of(f + ell, prepend_chi(ell, w));
            if (idx < 0) return false;
            embedded[static_cast<std::size_t>(idx)] = true;
        }
        const SparseRationalMatrix q1 =
            build_q_restricted(big, big_basis, scheme, f + ell, prefix);
        for (const auto& e : q1.entries)
            if (embedded[static_cast<std::size_t>(e.col)]) return false;
    }
    return true;
}

struct DimensionShiftResult {
    struct GradePair {
        int f = 0;         // grade on the long chain
        long big = 0;      // betti_N(f)
        long small = 0;    // betti_{N-ell-2}(f-ell)
        bool match = false;
    };
    bool ok = false;                // all grade pairs with f >= ell match
    bool low_grades_zero = false;   // betti_N(f) == 0 for f < ell (reported separately)
    std::vector<GradePair> grades;
    std::vector<std::string> mismatches;
};

// Ladder check between a chain and its (ell+2)-shorter companion, at the
// level of per-grade cohomology dimensions.
inline DimensionShiftResult verify_dimension_shift(const ChainSpec& big,
                                                   const CouplingScheme& scheme) {
    const int ell = big.max_cluster;
    if (big.n_sites <= 2 * ell + 2)
        throw std::invalid_argument("dimension shift needs N > 2*ell+2");
    const ChainSpec small = shrink_spec(big);
    const CohomologyReport rb = full_report(big, scheme);
    const CohomologyReport rs = full_report(small, scheme);
    DimensionShiftResult res;
    res.ok = true;
    res.low_grades_zero = true;
    const int top = std::max(static_cast<int>(rb.grades.size()),
                             static_cast<int>(rs.grades.size()) + ell);
    for (int f = 0; f < top; ++f) {
        if (f < ell) {
            if (rb.betti(f) != 0) {
                res.low_grades_zero = false;
                res.mismatches.push_back("f=" + std::to_string(f) + ": betti_N=" +
                                         std::to_string(rb.betti(f)) + " below grade ell");
            }
            continue;
        }
        const bool match = rb.betti(f) == rs.betti(f - ell);
        res.grades.push_back({f, rb.betti(f), rs.betti(f - ell), match});
        if (!match) {
            res.ok = false;
            res.mismatches.push_back("f=" + std::to_string(f) + ": betti_N=" +
                                     std::to_string(rb.betti(f)) + " vs betti_N'=" +
                                     std::to_string(rs.betti(f - ell)));
        }
    }
    return res;
}

}  // namespace mell

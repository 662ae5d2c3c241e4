#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>

#include "basis.hpp"
#include "chain.hpp"
#include "couplings.hpp"
#include "sparse.hpp"

namespace mell {

// Fermionic string sign of site i in a configuration: (-1)^(number of
// occupied sites with index strictly below i), in the fixed linear order
// 1..N. The same order is used on closed chains; no boundary sign twist.
inline int string_sign(Configuration config, int site) {
    const Configuration below = config & ((Configuration{1} << (site - 1)) - 1);
    return (particle_count(below) & 1) ? -1 : +1;
}

// Cluster containing an occupied site, seam-aware on closed chains. The
// caller guarantees the configuration is not the all-occupied cycle.
inline Cluster cluster_at(const ChainSpec& spec, Configuration config, int site) {
    const int n = spec.n_sites;
    auto prev = [&](int s) { return s == 1 ? n : s - 1; };
    auto next = [&](int s) { return s == n ? 1 : s + 1; };
    int start = site;
    if (spec.is_periodic()) {
        while (occupied(config, prev(start))) {
            start = prev(start);
            if (start == site) throw std::logic_error("all-occupied cycle has no cluster start");
        }
        int len = 1, s = site;
        while (occupied(config, next(s))) {
            s = next(s);
            ++len;
        }
        // length counted from start to the cyclic end
        int back = (site - start + n) % n;
        return {start, back + len};
    }
    while (start > 1 && occupied(config, start - 1)) --start;
    int end = site;
    while (end < n && occupied(config, end + 1)) ++end;
    return {start, end - start + 1};
}

// 1-based position of an occupied site within its cluster, counted from the
// cluster start in increasing site order (modulo N on closed chains).
inline int cluster_member_index(const ChainSpec& spec, const Cluster& cluster, int site) {
    int off = site - cluster.start_site;
    if (off < 0) off += spec.n_sites;
    return off + 1;
}

// Walks every particle insertion out of each source configuration whose
// target stays in the constrained space, restricted to sites in `site_mask`.
// Calls sink(source_index, target_word, signed_amplitude).
template <class Sink>
void for_each_insertion(const ChainSpec& spec, const CouplingScheme& scheme,
                        std::span<const Configuration> sources, Configuration site_mask,
                        Sink&& sink) {
    for (std::size_t j = 0; j < sources.size(); ++j) {
        const Configuration sigma = sources[j];
        for (int site = 1; site <= spec.n_sites; ++site) {
            if (!(site_mask >> (site - 1) & 1u)) continue;
            if (occupied(sigma, site)) continue;
            const Configuration target = with_site(sigma, site);
            if (!is_allowed(spec, target)) continue;
            const Cluster c = cluster_at(spec, target, site);
            const int n = cluster_member_index(spec, c, site);
            Rational amp = scheme.lambda(c.length, n);
            if (string_sign(sigma, site) < 0) amp = -amp;
            sink(j, target, std::move(amp));
        }
    }
}

// Grade-raising supercharge block Q_f : V_f -> V_{f+1}, restricted to
// insertions at sites of `site_mask` (the full operator uses all sites).
// Column order is the grade-f basis order, row order the grade-(f+1) order.
inline SparseRationalMatrix build_q_restricted(const ChainSpec& spec, const GradedBasis& basis,
                                               const CouplingScheme& scheme, int f,
                                               Configuration site_mask) {
    if (f < 0 || f > basis.f_max()) throw std::out_of_range("grade out of range");
    if (scheme.ell() < spec.max_cluster)
        throw std::invalid_argument("coupling scheme shorter than max cluster length");
    std::vector<SparseRationalMatrix::Entry> trip;
    const auto& src = basis.words(f);
    for_each_insertion(spec, scheme, src, site_mask,
                       [&](std::size_t j, Configuration target, Rational amp) {
                           const long row = basis.index_of(f + 1, target);
                           if (row < 0) throw std::logic_error("allowed insertion missing from basis");
                           trip.push_back({row, static_cast<long>(j), std::move(amp)});
                       });
    return SparseRationalMatrix::from_triplets(basis.dim(f + 1), basis.dim(f), std::move(trip));
}

inline SparseRationalMatrix build_q(const ChainSpec& spec, const GradedBasis& basis,
                                    const CouplingScheme& scheme, int f) {
    return build_q_restricted(spec, basis, scheme, f, full_word(spec.n_sites));
}

// Adjoint of a real rational matrix in an orthonormal basis.
inline SparseRationalMatrix adjoint(const SparseRationalMatrix& m) { return m.transpose(); }

}  // namespace mell

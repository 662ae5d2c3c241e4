#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "basis.hpp"
#include "linalg.hpp"
#include "supercharge.hpp"
#include "vendor_json.hpp"

namespace mell {

// Position in the double complex: f1 particles on the sublattice S1, f2 on
// the complement S2.
struct Bigrade {
    int f1 = 0;
    int f2 = 0;
    friend auto operator<=>(const Bigrade&, const Bigrade&) = default;
};

// Splitting of the supercharge into sublattice pieces: Q1 inserts only at
// sites of S1 (raising f1), Q2 only at sites of S2 (raising f2). Amplitudes
// still see the full configuration's clusters, so Q1 + Q2 reassembles Q
// blockwise.
class BigradedComplex {
public:
    static BigradedComplex split(const ChainSpec& spec, Configuration s1_mask,
                                 const CouplingScheme& scheme) {
        BigradedComplex c;
        c.spec_ = spec;
        c.scheme_ = scheme;
        c.s1_mask_ = s1_mask & full_word(spec.n_sites);
        c.basis_ = GradedBasis::enumerate(spec);
        for (int f = 0; f <= c.basis_.f_max(); ++f)
            for (Configuration w : c.basis_.words(f)) {
                const int f1 = particle_count(w & c.s1_mask_);
                c.cells_[{f1, f - f1}].push_back(w);  // grade order is value order
            }
        for (const auto& [bg, words] : c.cells_) {
            c.q1_.emplace(bg, c.assemble(bg, c.s1_mask_, {bg.f1 + 1, bg.f2}));
            c.q2_.emplace(bg, c.assemble(bg, full_word(spec.n_sites) & ~c.s1_mask_,
                                         {bg.f1, bg.f2 + 1}));
        }
        return c;
    }

    const ChainSpec& spec() const { return spec_; }
    const GradedBasis& basis() const { return basis_; }
    Configuration s1_mask() const { return s1_mask_; }

    std::vector<int> s1_sites() const {
        std::vector<int> out;
        for (int i = 1; i <= spec_.n_sites; ++i)
            if ((s1_mask_ >> (i - 1)) & 1u) out.push_back(i);
        return out;
    }

    const std::map<Bigrade, std::vector<Configuration>>& cells() const { return cells_; }

    long dim(Bigrade bg) const {
        auto it = cells_.find(bg);
        return it == cells_.end() ? 0 : static_cast<long>(it->second.size());
    }

    // Blocks keyed by source bigrade; empty cells map to 0 x 0.
    SparseRationalMatrix q1(Bigrade bg) const { return block(q1_, bg, {bg.f1 + 1, bg.f2}); }
    SparseRationalMatrix q2(Bigrade bg) const { return block(q2_, bg, {bg.f1, bg.f2 + 1}); }

    // Exact structural identities of the split: Q1^2 = Q2^2 = {Q1,Q2} = 0 on
    // every composable pair of blocks, and Q1 + Q2 scatters back to Q.
    struct StructureCheck {
        bool nilpotent_q1 = true;
        bool nilpotent_q2 = true;
        bool anticommute = true;
        bool reassembles = true;
        bool ok() const { return nilpotent_q1 && nilpotent_q2 && anticommute && reassembles; }
    };

    StructureCheck check_structure() const {
        StructureCheck r;
        for (const auto& [bg, words] : cells_) {
            const Bigrade up{bg.f1 + 1, bg.f2}, right{bg.f1, bg.f2 + 1};
            if (!(q1(up) * q1(bg)).is_zero()) r.nilpotent_q1 = false;
            if (!(q2(right) * q2(bg)).is_zero()) r.nilpotent_q2 = false;
            if (!(q2(up) * q1(bg) + q1(right) * q2(bg)).is_zero()) r.anticommute = false;
        }
        for (int f = 0; f < basis_.f_max(); ++f)
            if (!(scatter_to_full(f) == build_q(spec_, basis_, scheme_, f))) r.reassembles = false;
        return r;
    }

    std::map<Bigrade, Subquotient> h_q1() const {
        std::map<Bigrade, Subquotient> out;
        for (const auto& [bg, words] : cells_)
            out.emplace(bg, make_subquotient(q1(bg), q1_into(bg)));
        return out;
    }

    struct Analysis {
        std::map<Bigrade, long> cell_dims;
        std::map<Bigrade, long> hq1_dims;
        std::map<Bigrade, long> h21_dims;                 // zero entries kept
        std::map<Bigrade, SparseRationalMatrix> induced;  // keyed by source bigrade
        bool one_row = false;
        std::optional<int> row_f1;  // the single row carrying H21, if any
        std::map<int, long> h21_by_total_grade;

        long h21_total() const {
            long t = 0;
            for (const auto& [bg, d] : h21_dims) t += d;
            return t;
        }
    };

    // Two-step cohomology at dimension level: the maps Q2 induces on the
    // ker Q1 / im Q1 subquotients, then rank counting along each row.
    Analysis analyze() const {
        Analysis a;
        std::map<Bigrade, Subquotient> sub = h_q1();
        for (const auto& [bg, words] : cells_) a.cell_dims[bg] = dim(bg);
        for (const auto& [bg, sq] : sub) a.hq1_dims[bg] = sq.dim();
        const Subquotient trivial{};
        for (const auto& [bg, sq] : sub) {
            const Bigrade right{bg.f1, bg.f2 + 1};
            auto it = sub.find(right);
            const Subquotient& dst = it == sub.end() ? trivial : it->second;
            a.induced.emplace(bg, induced_quotient_map(q2(bg), sq, dst));
        }
        for (const auto& [bg, sq] : sub) {
            long r_out = rank(a.induced.at(bg));
            long r_in = 0;
            auto in = a.induced.find({bg.f1, bg.f2 - 1});
            if (in != a.induced.end()) r_in = rank(in->second);
            a.h21_dims[bg] = sq.dim() - r_out - r_in;
        }
        std::optional<int> row;
        bool one_row = true;
        for (const auto& [bg, d] : a.h21_dims) {
            if (d == 0) continue;
            a.h21_by_total_grade[bg.f1 + bg.f2] += d;
            if (!row)
                row = bg.f1;
            else if (*row != bg.f1)
                one_row = false;
        }
        a.one_row = one_row;
        a.row_f1 = row;
        return a;
    }

    nlohmann::json to_json(const Analysis& a) const {
        nlohmann::json cells = nlohmann::json::array();
        for (const auto& [bg, d] : a.cell_dims) {
            nlohmann::json cell{{"f1", bg.f1}, {"f2", bg.f2}, {"dim", d}};
            cell["h_q1"] = a.hq1_dims.at(bg);
            cell["h21"] = a.h21_dims.at(bg);
            cells.push_back(cell);
        }
        nlohmann::json j{{"spec", spec_.to_json()},
                         {"s1_sites", s1_sites()},
                         {"cells", cells},
                         {"one_row", a.one_row}};
        if (a.row_f1) j["row_f1"] = *a.row_f1;
        nlohmann::json totals = nlohmann::json::array();
        for (const auto& [f, d] : a.h21_by_total_grade) totals.push_back({{"f", f}, {"dim", d}});
        j["h21_by_grade"] = totals;
        return j;
    }

private:
    SparseRationalMatrix assemble(Bigrade src, Configuration mask, Bigrade dst) const {
        const auto& source = cells_.at(src);
        auto it = cells_.find(dst);
        static const std::vector<Configuration> none;
        const auto& target = it == cells_.end() ? none : it->second;
        std::vector<SparseRationalMatrix::Entry> trip;
        for_each_insertion(spec_, scheme_, std::span<const Configuration>(source), mask,
                           [&](std::size_t j, Configuration t, Rational amp) {
                               auto lo = std::lower_bound(target.begin(), target.end(), t);
                               if (lo == target.end() || *lo != t)
                                   throw std::logic_error("insertion target missing from cell");
                               trip.push_back({static_cast<long>(lo - target.begin()),
                                               static_cast<long>(j), std::move(amp)});
                           });
        return SparseRationalMatrix::from_triplets(static_cast<long>(target.size()),
                                                   static_cast<long>(source.size()),
                                                   std::move(trip));
    }

    SparseRationalMatrix block(const std::map<Bigrade, SparseRationalMatrix>& blocks, Bigrade bg,
                               Bigrade dst) const {
        auto it = blocks.find(bg);
        if (it != blocks.end()) return it->second;
        return SparseRationalMatrix(dim(dst), dim(bg));
    }

    // Q1 block arriving at bg, from (f1-1, f2).
    SparseRationalMatrix q1_into(Bigrade bg) const {
        return q1_.count({bg.f1 - 1, bg.f2}) ? q1_.at({bg.f1 - 1, bg.f2})
                                             : SparseRationalMatrix(dim(bg), 0);
    }

    // Union of the q1 and q2 blocks at total grade f, in full-basis indices.
    SparseRationalMatrix scatter_to_full(int f) const {
        std::vector<SparseRationalMatrix::Entry> trip;
        for (const auto& [bg, words] : cells_) {
            if (bg.f1 + bg.f2 != f) continue;
            auto push = [&](const SparseRationalMatrix& m, Bigrade dst) {
                auto it = cells_.find(dst);
                if (it == cells_.end()) return;
                for (const auto& e : m.entries)
                    trip.push_back(
                        {basis_.index_of(f + 1, it->second[static_cast<std::size_t>(e.row)]),
                         basis_.index_of(f, words[static_cast<std::size_t>(e.col)]), e.value});
            };
            push(q1(bg), {bg.f1 + 1, bg.f2});
            push(q2(bg), {bg.f1, bg.f2 + 1});
        }
        return SparseRationalMatrix::from_triplets(basis_.dim(f + 1), basis_.dim(f),
                                                   std::move(trip));
    }

    ChainSpec spec_;
    CouplingScheme scheme_;
    Configuration s1_mask_ = 0;
    GradedBasis basis_;
    std::map<Bigrade, std::vector<Configuration>> cells_;
    std::map<Bigrade, SparseRationalMatrix> q1_, q2_;
};

// True iff the nonzero entries occupy a single f1 row (zero tables pass).
inline bool one_row_check(const std::map<Bigrade, long>& h21_dims) {
    std::optional<int> row;
    for (const auto& [bg, d] : h21_dims) {
        if (d == 0) continue;
        if (!row)
            row = bg.f1;
        else if (*row != bg.f1)
            return false;
    }
    return true;
}

// Sublattice S1 = {1, ..., ell+2}: the first full period of the chain.
inline Configuration prefix_split_mask(const ChainSpec& spec) {
    if (spec.n_sites < spec.max_cluster + 2)
        throw std::invalid_argument("prefix split needs at least ell+2 sites");
    return full_word(spec.max_cluster + 2);
}

// Sublattice of isolated sites 1, ell+3, 2(ell+2)+1, ...; consecutive picks
// are separated by ell+1 sites. On closed chains the chain length must be a
// multiple of ell+2 so that the last gap also has ell+1 sites.
inline Configuration three_rule_split_mask(const ChainSpec& spec) {
    const int period = spec.max_cluster + 2;
    if (spec.is_periodic() && spec.n_sites % period != 0)
        throw std::invalid_argument(
            "three-rule split on a closed chain needs N divisible by ell+2");
    Configuration mask = 0;
    for (int site = 1; site <= spec.n_sites; site += period)
        mask |= Configuration{1} << (site - 1);
    return mask;
}

inline Configuration split_mask_for_preset(const ChainSpec& spec, const std::string& name) {
    if (name == "prefix") return prefix_split_mask(spec);
    if (name == "three-rule") return three_rule_split_mask(spec);
    throw std::invalid_argument("unknown split preset: " + name);
}

}  // namespace mell

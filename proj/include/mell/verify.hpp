#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cohomology.hpp"
#include "cut_paste.hpp"
#include "double_complex.hpp"
#include "parallel.hpp"
#include "theory_oracle.hpp"

namespace mell::verify {

// Chain families used by the verification sweeps.
inline std::vector<ChainSpec> boundary_family(int ell, int n_sites, bool periodic,
                                              bool special_grid) {
    std::vector<ChainSpec> out;
    if (periodic) out.push_back(ChainSpec::periodic(n_sites, ell));
    if (special_grid)
        for (int c1 = 0; c1 <= ell; ++c1)
            for (int cN = 0; cN <= ell; ++cN)
                out.push_back(ChainSpec::special(n_sites, ell, c1, cN));
    return out;
}

struct SpecVerdict {
    ChainSpec spec;
    CohomologyReport report;
    bool ok = false;
    std::string line;  // canonical one-line summary
};

inline std::string betti_summary(const CohomologyReport& r) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& g : r.grades) {
        if (g.betti == 0) continue;
        if (!first) os << ", ";
        os << "f=" << g.f << ": " << g.betti;
        first = false;
    }
    os << "}";
    return os.str();
}

// Computes full reports with oracle comparison for a batch of specs, in
// parallel, preserving input order.
inline std::vector<SpecVerdict> oracle_sweep(const std::vector<ChainSpec>& specs, int jobs,
                                             bool check_hamiltonian = false) {
    std::vector<SpecVerdict> out(specs.size());
    parallel_for(static_cast<long>(specs.size()), jobs, [&](long i) {
        const ChainSpec& spec = specs[static_cast<std::size_t>(i)];
        ReportOptions opt;
        opt.with_oracle = true;
        opt.check_hamiltonian = check_hamiltonian;
        SpecVerdict v;
        v.spec = spec;
        v.report = full_report(spec, CouplingScheme::all_ones(spec.max_cluster), opt);
        v.ok = v.report.oracle_ok() &&
               v.report.witten_index == v.report.euler_characteristic &&
               (!check_hamiltonian || v.report.hamiltonian_ok());
        std::ostringstream os;
        os << spec.label() << ": " << (v.ok ? "OK" : "MISMATCH") << " betti="
           << betti_summary(v.report) << " witten=" << v.report.witten_index;
        if (!v.ok) {
            for (const auto& o : v.report.oracle)
                if (!o.ok)
                    os << " [f=" << o.f << " predicted=" << o.predicted
                       << " computed=" << o.computed << "]";
        }
        v.line = os.str();
        out[static_cast<std::size_t>(i)] = std::move(v);
    });
    return out;
}

struct LadderVerdict {
    ChainSpec big;
    bool ok = false;
    bool low_grades_zero = false;
    std::vector<DimensionShiftResult::GradePair> grades;
    std::string line;
};

inline std::vector<LadderVerdict> ladder_sweep(const std::vector<ChainSpec>& bigs, int jobs) {
    std::vector<LadderVerdict> out(bigs.size());
    parallel_for(static_cast<long>(bigs.size()), jobs, [&](long i) {
        const ChainSpec& big = bigs[static_cast<std::size_t>(i)];
        const auto res =
            verify_dimension_shift(big, CouplingScheme::all_ones(big.max_cluster));
        LadderVerdict v;
        v.big = big;
        v.ok = res.ok;
        v.low_grades_zero = res.low_grades_zero;
        v.grades = res.grades;
        std::ostringstream os;
        os << big.label() << " -> N'=" << shrink_spec(big).n_sites << ":";
        for (const auto& g : res.grades)
            os << " f" << g.f << (g.match ? "=ok" : "=MISMATCH");
        os << " => " << (res.ok ? "OK" : "MISMATCH");
        if (!res.low_grades_zero) os << " (nonzero betti below grade ell)";
        v.line = os.str();
        out[static_cast<std::size_t>(i)] = std::move(v);
    });
    return out;
}

struct SplitVerdict {
    ChainSpec spec;
    std::string preset;
    bool structure_ok = false;
    bool one_row = false;
    bool matches_betti = false;
    std::string line;
    bool ok() const { return structure_ok && one_row && matches_betti; }
};

// Tic-tac-toe verification of one split preset on one chain: exact structure
// identities, the one-row hypothesis, and grade-by-grade agreement of the
// two-step cohomology with the betti numbers.
inline SplitVerdict split_check(const ChainSpec& spec, const std::string& preset,
                                const CouplingScheme& scheme) {
    SplitVerdict v;
    v.spec = spec;
    v.preset = preset;
    const BigradedComplex complex =
        BigradedComplex::split(spec, split_mask_for_preset(spec, preset), scheme);
    v.structure_ok = complex.check_structure().ok();
    const auto analysis = complex.analyze();
    v.one_row = analysis.one_row;
    const CohomologyReport rep = full_report(spec, scheme);
    v.matches_betti = true;
    const int top = std::max(static_cast<int>(rep.grades.size()),
                             analysis.h21_by_total_grade.empty()
                                 ? 0
                                 : analysis.h21_by_total_grade.rbegin()->first + 1);
    for (int f = 0; f < top; ++f) {
        auto it = analysis.h21_by_total_grade.find(f);
        const long h21 = it == analysis.h21_by_total_grade.end() ? 0 : it->second;
        if (h21 != rep.betti(f)) v.matches_betti = false;
    }
    std::ostringstream os;
    os << spec.label() << " split=" << preset << ": structure "
       << (v.structure_ok ? "OK" : "BROKEN") << ", one-row "
       << (v.one_row ? "true" : "false");
    if (analysis.row_f1) os << " (f1=" << *analysis.row_f1 << ")";
    os << ", h21" << (v.matches_betti ? "==" : "!=") << "betti";
    v.line = os.str();
    return v;
}

inline std::vector<SplitVerdict> split_sweep(const std::vector<ChainSpec>& specs,
                                             const std::string& preset, int jobs) {
    std::vector<SplitVerdict> out(specs.size());
    parallel_for(static_cast<long>(specs.size()), jobs, [&](long i) {
        const ChainSpec& spec = specs[static_cast<std::size_t>(i)];
        out[static_cast<std::size_t>(i)] =
            split_check(spec, preset, CouplingScheme::all_ones(spec.max_cluster));
    });
    return out;
}

struct IndependenceVerdict {
    ChainSpec spec;
    bool ok = false;
    std::string line;
};

inline std::vector<IndependenceVerdict> independence_sweep(const std::vector<ChainSpec>& specs,
                                                           int trials, std::uint64_t seed,
                                                           int jobs) {
    std::vector<IndependenceVerdict> out(specs.size());
    parallel_for(static_cast<long>(specs.size()), jobs, [&](long i) {
        const ChainSpec& spec = specs[static_cast<std::size_t>(i)];
        IndependenceVerdict v;
        v.spec = spec;
        v.ok = parameter_independence_check(spec, trials,
                                            seed + static_cast<std::uint64_t>(i));
        std::ostringstream os;
        os << spec.label() << ": couplings-independent "
           << (v.ok ? "OK" : "MISMATCH") << " (trials=" << trials << ")";
        v.line = os.str();
        out[static_cast<std::size_t>(i)] = std::move(v);
    });
    return out;
}

}  // namespace mell::verify

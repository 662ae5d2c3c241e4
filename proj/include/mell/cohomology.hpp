#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "basis.hpp"
#include "hamiltonian.hpp"
#include "linalg.hpp"
#include "parallel.hpp"
#include "supercharge.hpp"
#include "theory_oracle.hpp"
#include "vendor_json.hpp"

namespace mell {

// Per-grade cohomology dimensions of the supercharge complex on one chain,
// with the alternating sums and optional cross-checks.
struct CohomologyReport {
    struct Grade {
        int f = 0;
        long dim = 0;
        long betti = 0;
    };
    struct OracleVerdict {
        int f = 0;
        long predicted = 0;
        long computed = 0;
        bool ok = false;
    };
    struct HamiltonianCheck {
        int f = 0;
        long kernel_dim = 0;
        long betti = 0;
        bool ok = false;
    };

    ChainSpec spec;
    std::vector<Grade> grades;
    long witten_index = 0;
    long euler_characteristic = 0;
    std::vector<OracleVerdict> oracle;      // filled when requested
    std::vector<HamiltonianCheck> h_check;  // filled when requested
    bool oracle_checked = false;
    bool hamiltonian_checked = false;

    long betti(int f) const {
        if (f < 0 || f >= static_cast<int>(grades.size())) return 0;
        return grades[static_cast<std::size_t>(f)].betti;
    }

    bool oracle_ok() const {
        for (const auto& v : oracle)
            if (!v.ok) return false;
        return true;
    }

    bool hamiltonian_ok() const {
        for (const auto& v : h_check)
            if (!v.ok) return false;
        return true;
    }

    nlohmann::json to_json() const {
        nlohmann::json gr = nlohmann::json::array();
        for (const auto& g : grades)
            gr.push_back({{"f", g.f}, {"dim", g.dim}, {"betti", g.betti}});
        nlohmann::json j{{"spec", spec.to_json()},
                         {"grades", gr},
                         {"witten", witten_index},
                         {"euler", euler_characteristic}};
        if (oracle_checked) {
            nlohmann::json ov = nlohmann::json::array();
            for (const auto& v : oracle)
                ov.push_back({{"f", v.f},
                              {"predicted", v.predicted},
                              {"computed", v.computed},
                              {"ok", v.ok}});
            j["oracle"] = ov;
        }
        if (hamiltonian_checked) {
            nlohmann::json hv = nlohmann::json::array();
            for (const auto& v : h_check)
                hv.push_back({{"f", v.f},
                              {"dim_ker_h", v.kernel_dim},
                              {"betti", v.betti},
                              {"ok", v.ok}});
            j["hamiltonian"] = hv;
        }
        return j;
    }

    // One row per grade: spec label, f, dim, betti.
    std::string to_csv() const {
        std::string out;
        for (const auto& g : grades)
            out += "\"" + spec.label() + "\"," + std::to_string(g.f) + "," +
                   std::to_string(g.dim) + "," + std::to_string(g.betti) + "\n";
        return out;
    }
};

struct ReportOptions {
    bool check_hamiltonian = false;
    bool with_oracle = false;
    int jobs = 1;  // worker threads for the per-grade rank pool
};

// Cohomology dimension at one grade: dim V_f - rank Q_f - rank Q_{f-1}.
inline long betti(const ChainSpec& spec, const GradedBasis& basis, const CouplingScheme& scheme,
                  int f) {
    if (f < 0 || f > basis.f_max()) return 0;
    long r_out = f < basis.f_max() ? rank(build_q(spec, basis, scheme, f)) : 0;
    long r_in = f > 0 ? rank(build_q(spec, basis, scheme, f - 1)) : 0;
    return basis.dim(f) - r_out - r_in;
}

inline long betti(const ChainSpec& spec, const CouplingScheme& scheme, int f) {
    return betti(spec, GradedBasis::enumerate(spec), scheme, f);
}

inline CohomologyReport full_report(const ChainSpec& spec, const CouplingScheme& scheme,
                                    const ReportOptions& opt = {}) {
    const GradedBasis basis = GradedBasis::enumerate(spec);
    const int fmax = basis.f_max();
    std::vector<long> q_rank(static_cast<std::size_t>(fmax) + 1, 0);
    parallel_for(fmax, opt.jobs, [&](long f) {
        q_rank[static_cast<std::size_t>(f)] =
            rank(build_q(spec, basis, scheme, static_cast<int>(f)));
    });

    CohomologyReport rep;
    rep.spec = spec;
    for (int f = 0; f <= fmax; ++f) {
        const long r_out = f < fmax ? q_rank[static_cast<std::size_t>(f)] : 0;
        const long r_in = f > 0 ? q_rank[static_cast<std::size_t>(f - 1)] : 0;
        const long b = basis.dim(f) - r_out - r_in;
        rep.grades.push_back({f, basis.dim(f), b});
        rep.witten_index += (f % 2 == 0) ? b : -b;
        rep.euler_characteristic += (f % 2 == 0) ? basis.dim(f) : -basis.dim(f);
    }
    if (opt.with_oracle) {
        rep.oracle_checked = true;
        Prediction pred = predict(spec);
        for (int f = 0; f <= fmax; ++f) {
            auto it = pred.find(f);
            const long want = it == pred.end() ? 0 : it->second;
            rep.oracle.push_back({f, want, rep.betti(f), want == rep.betti(f)});
        }
        for (const auto& [f, mult] : pred)
            if (f > fmax) rep.oracle.push_back({f, mult, 0, false});
    }
    if (opt.check_hamiltonian) {
        rep.hamiltonian_checked = true;
        for (int f = 0; f <= fmax; ++f) {
            const long k = exact_zero_modes(build_h(spec, basis, scheme, f));
            rep.h_check.push_back({f, k, rep.betti(f), k == rep.betti(f)});
        }
    }
    return rep;
}

// True iff the per-grade cohomology dimensions agree between the all-ones
// scheme and `trials` random nonzero-rational schemes.
inline bool parameter_independence_check(const ChainSpec& spec, int trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    const CohomologyReport ref = full_report(spec, CouplingScheme::all_ones(spec.max_cluster));
    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) {
        const CouplingScheme scheme = CouplingScheme::random(spec.max_cluster, rng);
        const CohomologyReport rep = full_report(spec, scheme);
        if (rep.grades.size() != ref.grades.size()) return false;
        for (std::size_t i = 0; i < rep.grades.size(); ++i)
            if (rep.grades[i].betti != ref.grades[i].betti) return false;
    }
    return true;
}

}  // namespace mell

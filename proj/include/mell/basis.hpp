#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "chain.hpp"
#include "vendor_json.hpp"

namespace mell {

// Graded basis of the constrained Fock space: for each fermion number f the
// ascending-sorted list of allowed occupation words. The grade/value order is
// part of the public contract; matrix layouts depend on it.
class GradedBasis {
public:
    static GradedBasis enumerate(const ChainSpec& spec) {
        spec.validate();
        GradedBasis b;
        b.spec_ = spec;
        b.grades_.resize(static_cast<std::size_t>(spec.n_sites) + 1);
        // Depth-first generation over sites, pruning any run longer than the
        // global cluster bound; boundary caps are re-checked at the leaves.
        struct Frame {
            Configuration word;
            int site;  // next site to decide, 1-based
            int run;   // length of the occupied run ending at site-1
        };
        std::vector<Frame> stack{{0, 1, 0}};
        while (!stack.empty()) {
            Frame fr = stack.back();
            stack.pop_back();
            if (fr.site > spec.n_sites) {
                if (is_allowed(spec, fr.word))
                    b.grades_[static_cast<std::size_t>(particle_count(fr.word))].push_back(fr.word);
                continue;
            }
            stack.push_back({fr.word, fr.site + 1, 0});
            if (fr.run < spec.max_cluster)
                stack.push_back({with_site(fr.word, fr.site), fr.site + 1, fr.run + 1});
        }
        while (b.grades_.size() > 1 && b.grades_.back().empty()) b.grades_.pop_back();
        for (auto& g : b.grades_) std::sort(g.begin(), g.end());
        return b;
    }

    const ChainSpec& spec() const { return spec_; }

    int f_max() const { return static_cast<int>(grades_.size()) - 1; }

    long dim(int f) const {
        if (f < 0 || f > f_max()) return 0;
        return static_cast<long>(grades_[static_cast<std::size_t>(f)].size());
    }

    long total_dim() const {
        long t = 0;
        for (const auto& g : grades_) t += static_cast<long>(g.size());
        return t;
    }

    const std::vector<Configuration>& words(int f) const {
        static const std::vector<Configuration> empty;
        if (f < 0 || f > f_max()) return empty;
        return grades_[static_cast<std::size_t>(f)];
    }

    // Position of a word within its grade, or -1 if not in the basis.
    long index_of(int f, Configuration word) const {
        const auto& g = words(f);
        auto it = std::lower_bound(g.begin(), g.end(), word);
        if (it == g.end() || *it != word) return -1;
        return static_cast<long>(it - g.begin());
    }

    bool contains(Configuration word) const {
        return index_of(particle_count(word), word) >= 0;
    }

    nlohmann::json to_json() const {
        nlohmann::json grades = nlohmann::json::array();
        for (int f = 0; f <= f_max(); ++f) {
            grades.push_back({{"f", f},
                              {"dim", dim(f)},
                              {"words", words(f)}});
        }
        nlohmann::json j = spec_.to_json();
        j["grades"] = grades;
        return j;
    }

private:
    ChainSpec spec_;
    std::vector<std::vector<Configuration>> grades_;
};

// Dimension of the grade-f subspace without keeping the basis around.
inline long grade_dimension(const ChainSpec& spec, int f) {
    if (f < 0) throw std::invalid_argument("fermion number must be >= 0");
    return GradedBasis::enumerate(spec).dim(f);
}

}  // namespace mell

#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "chain.hpp"
#include "vendor_json.hpp"

namespace mell {

// Closed-form ground-state counts per grade. Periodic chains carry one state
// at f = n*ell + p (p <= ell) and ell+1 states at f = (n+1)*ell (p = ell+1),
// where N = n(ell+2) + p + 1. Open chains with end caps (c1, cN) carry at
// most one state, located by the region conditions below.
struct LengthDecomposition {
    int n = 0;  // number of full (ell+2) periods in N-1
    int p = 0;  // remainder, 0 <= p <= ell+1
};

inline LengthDecomposition decompose_length(int n_sites, int ell) {
    if (n_sites < 1 || ell < 1) throw std::invalid_argument("bad chain parameters");
    return {(n_sites - 1) / (ell + 2), (n_sites - 1) % (ell + 2)};
}

// Multiplicity per grade; grades absent from the map have no ground state.
using Prediction = std::map<int, long>;

namespace detail {

// Short open chains, N <= ell+2 (no full period). End caps at or above N
// never bind both at once: if both do, every cluster length is free and the
// cohomology is trivial; otherwise each cap saturates at N-1.
inline Prediction predict_short_special(const ChainSpec& spec) {
    const int n = spec.n_sites;
    if (spec.c1 >= n && spec.cN >= n) return {};  // unconstrained chain
    const int e1 = std::min(spec.c1, n - 1);
    const int eN = std::min(spec.cN, n - 1);
    if (e1 == n - 1 && eN == n - 1) return {{n - 1, 1}};
    if (e1 <= n - 2 && eN <= n - 2 && e1 + eN >= n - 2) return {{n - 2, 1}};
    return {};
}

inline Prediction predict_special(const ChainSpec& spec) {
    const auto [n, p] = decompose_length(spec.n_sites, spec.max_cluster);
    if (n == 0) return predict_short_special(spec);
    const int ell = spec.max_cluster;
    if (p <= ell && spec.c1 >= p && spec.cN >= p && spec.c1 + spec.cN <= ell + p)
        return {{n * ell + p, 1}};
    if (p >= 1 && spec.c1 < p && spec.cN < p && spec.c1 + spec.cN >= p - 1)
        return {{n * ell + p - 1, 1}};
    return {};
}

}  // namespace detail

inline Prediction predict(const ChainSpec& spec) {
    spec.validate();
    const int ell = spec.max_cluster;
    if (spec.is_periodic()) {
        const auto [n, p] = decompose_length(spec.n_sites, ell);
        if (p <= ell) return {{n * ell + p, 1}};
        return {{(n + 1) * ell, static_cast<long>(ell) + 1}};
    }
    return detail::predict_special(spec);
}

// Prediction grid over all end caps (c1, cN) in [0, ell]^2 for an open chain.
struct RegionTable {
    int ell = 0;
    int n_sites = 0;
    std::vector<std::vector<Prediction>> cells;  // cells[c1][cN]

    const Prediction& at(int c1, int cN) const {
        return cells[static_cast<std::size_t>(c1)][static_cast<std::size_t>(cN)];
    }

    std::string to_csv() const {
        std::string out = "c1,cN,multiplicity,grade\n";
        for (int c1 = 0; c1 <= ell; ++c1)
            for (int cN = 0; cN <= ell; ++cN) {
                const Prediction& p = at(c1, cN);
                if (p.empty()) {
                    out += std::to_string(c1) + "," + std::to_string(cN) + ",0,\n";
                } else {
                    out += std::to_string(c1) + "," + std::to_string(cN) + "," +
                           std::to_string(p.begin()->second) + "," +
                           std::to_string(p.begin()->first) + "\n";
                }
            }
        return out;
    }

    // Character-cell picture, c1 increasing upwards, cN to the right;
    // '#' marks caps with a ground state, '.' the empty region.
    std::string to_diagram() const {
        std::string out;
        for (int c1 = ell; c1 >= 0; --c1) {
            out += "c1=" + std::to_string(c1) + " |";
            for (int cN = 0; cN <= ell; ++cN) out += at(c1, cN).empty() ? " ." : " #";
            out += "\n";
        }
        out += "      +";
        for (int cN = 0; cN <= ell; ++cN) out += "--";
        out += "\n       ";
        for (int cN = 0; cN <= ell; ++cN) out += " " + std::to_string(cN);
        out += "  (cN)\n";
        return out;
    }

    nlohmann::json to_json() const {
        nlohmann::json rows = nlohmann::json::array();
        for (int c1 = 0; c1 <= ell; ++c1)
            for (int cN = 0; cN <= ell; ++cN) {
                const Prediction& p = at(c1, cN);
                nlohmann::json cell{{"c1", c1}, {"cN", cN}};
                cell["multiplicity"] = p.empty() ? 0 : p.begin()->second;
                if (!p.empty()) cell["grade"] = p.begin()->first;
                rows.push_back(cell);
            }
        return {{"ell", ell}, {"n_sites", n_sites}, {"cells", rows}};
    }
};

inline RegionTable region_table(int ell, int n_sites) {
    RegionTable t;
    t.ell = ell;
    t.n_sites = n_sites;
    t.cells.assign(static_cast<std::size_t>(ell) + 1,
                   std::vector<Prediction>(static_cast<std::size_t>(ell) + 1));
    for (int c1 = 0; c1 <= ell; ++c1)
        for (int cN = 0; cN <= ell; ++cN)
            t.cells[static_cast<std::size_t>(c1)][static_cast<std::size_t>(cN)] =
                predict(ChainSpec::special(n_sites, ell, c1, cN));
    return t;
}

}  // namespace mell

#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "vendor_json.hpp"

namespace mell {

// Occupation word of a chain: bit i-1 holds the occupation of site i
// (site 1 is the lowest bit).
using Configuration = std::uint64_t;

// Hard cap on the chain length; beyond this the constrained Fock space does
// not fit in memory anyway.
inline constexpr int kMaxSites = 28;

enum class Boundary { Periodic, Special };

// Chain geometry and exclusion data: N sites, clusters of at most ell
// consecutive occupied sites, and either periodic or special boundary
// conditions (c1, cN) capping the clusters that touch the chain ends.
// Free boundary conditions are Special(ell, ell).
struct ChainSpec {
    int n_sites = 0;
    int max_cluster = 0;
    Boundary boundary = Boundary::Periodic;
    int c1 = 0;
    int cN = 0;

    static ChainSpec periodic(int n, int ell) {
        ChainSpec s{n, ell, Boundary::Periodic, 0, 0};
        s.validate();
        return s;
    }
    static ChainSpec special(int n, int ell, int c1, int cN) {
        ChainSpec s{n, ell, Boundary::Special, c1, cN};
        s.validate();
        return s;
    }
    static ChainSpec free_chain(int n, int ell) { return special(n, ell, ell, ell); }

    bool is_periodic() const { return boundary == Boundary::Periodic; }

    void validate() const {
        if (n_sites < 1) throw std::invalid_argument("n_sites must be >= 1");
        if (n_sites > kMaxSites) throw std::length_error("n_sites exceeds supported maximum");
        if (max_cluster < 1) throw std::invalid_argument("max_cluster must be >= 1");
        if (boundary == Boundary::Special) {
            if (c1 < 0 || c1 > max_cluster || cN < 0 || cN > max_cluster)
                throw std::invalid_argument("special boundary caps must lie in [0, max_cluster]");
        }
    }

    std::string label() const {
        std::string s = "ell=" + std::to_string(max_cluster) + " N=" + std::to_string(n_sites);
        if (is_periodic()) return s + " periodic";
        if (c1 == max_cluster && cN == max_cluster) return s + " free";
        return s + " special(" + std::to_string(c1) + "," + std::to_string(cN) + ")";
    }

    nlohmann::json to_json() const {
        nlohmann::json j{{"n_sites", n_sites}, {"max_cluster", max_cluster}};
        if (is_periodic()) {
            j["boundary"] = {{"kind", "periodic"}};
        } else {
            j["boundary"] = {{"kind", "special"}, {"c1", c1}, {"cN", cN}};
        }
        return j;
    }

    friend bool operator==(const ChainSpec&, const ChainSpec&) = default;
    friend auto operator<=>(const ChainSpec&, const ChainSpec&) = default;
};

// Maximal run of consecutive occupied sites. On closed chains a run may wrap
// the seam between site N and site 1; the all-occupied cycle is encoded as a
// single cluster of length N+1 (unbounded, hence never allowed).
struct Cluster {
    int start_site = 0;
    int length = 0;
    friend bool operator==(const Cluster&, const Cluster&) = default;
};

inline bool occupied(Configuration c, int site) { return (c >> (site - 1)) & 1u; }

inline Configuration with_site(Configuration c, int site) {
    return c | (Configuration{1} << (site - 1));
}

inline Configuration full_word(int n_sites) {
    return n_sites == 64 ? ~Configuration{0} : (Configuration{1} << n_sites) - 1;
}

inline int particle_count(Configuration c) { return std::popcount(c); }

// Occupation string, site 1 first: 0110... Matches the usual left-to-right
// way of writing configurations.
inline std::string occupation_string(int n_sites, Configuration c) {
    std::string s(static_cast<std::size_t>(n_sites), '0');
    for (int i = 1; i <= n_sites; ++i)
        if (occupied(c, i)) s[static_cast<std::size_t>(i - 1)] = '1';
    return s;
}

inline Configuration parse_occupation(const std::string& s) {
    if (s.empty() || s.size() > kMaxSites) throw std::invalid_argument("bad occupation string");
    Configuration c = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1')
            c |= Configuration{1} << i;
        else if (s[i] != '0')
            throw std::invalid_argument("bad occupation string");
    }
    return c;
}

// Maximal occupied runs in left-to-right order of first contained site. On
// closed chains a run across the seam is one cluster whose start_site is its
// cyclic start (in the last run before the seam); it is listed first because
// it contains site 1.
inline std::vector<Cluster> cluster_decomposition(const ChainSpec& spec, Configuration config) {
    const int n = spec.n_sites;
    std::vector<Cluster> out;
    if (config == 0) return out;
    if (spec.is_periodic() && config == full_word(n)) {
        out.push_back({1, n + 1});
        return out;
    }
    for (int i = 1; i <= n; ++i) {
        if (!occupied(config, i)) continue;
        if (i > 1 && occupied(config, i - 1)) continue;  // not a run start
        int len = 1;
        while (i + len <= n && occupied(config, i + len)) ++len;
        out.push_back({i, len});
        i += len - 1;
    }
    if (spec.is_periodic() && out.size() >= 2 && occupied(config, 1) && occupied(config, n)) {
        Cluster seam = out.back();
        seam.length += out.front().length;
        out.pop_back();
        out.front() = seam;
    }
    return out;
}

// Exclusion predicate: every cluster has length <= ell; the all-occupied
// cycle is unbounded and always rejected; special caps apply literally to
// the clusters containing site 1 and site N.
inline bool is_allowed(const ChainSpec& spec, Configuration config) {
    const int n = spec.n_sites;
    for (const Cluster& c : cluster_decomposition(spec, config)) {
        if (c.length > n) return false;  // all-occupied cycle
        if (c.length > spec.max_cluster) return false;
        if (spec.boundary == Boundary::Special) {
            if (c.start_site == 1 && c.length > spec.c1) return false;
            if (c.start_site + c.length - 1 == n && c.length > spec.cN) return false;
        }
    }
    return true;
}

}  // namespace mell

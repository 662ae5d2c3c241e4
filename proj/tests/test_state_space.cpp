#include <catch2/catch_amalgamated.hpp>

#include <mell/basis.hpp>
#include <mell/chain.hpp>

#include <random>

using namespace mell;

namespace {

// Independent allowedness predicate working on the occupation string; used
// to cross-check the bitmask implementation for small chains.
bool allowed_by_string(const ChainSpec& spec, Configuration config) {
    std::string s = occupation_string(spec.n_sites, config);
    if (spec.is_periodic()) {
        if (s.find('0') == std::string::npos) return false;  // infinite cluster
        // rotate so the word starts at an empty site, then runs never wrap
        std::size_t z = s.find('0');
        s = s.substr(z) + s.substr(0, z);
        std::size_t run = 0;
        for (char c : s) {
            run = (c == '1') ? run + 1 : 0;
            if (run > static_cast<std::size_t>(spec.max_cluster)) return false;
        }
        return true;
    }
    std::vector<std::size_t> runs;
    std::size_t run = 0;
    for (char c : s) {
        if (c == '1') {
            ++run;
        } else {
            if (run) runs.push_back(run);
            run = 0;
        }
    }
    if (run) runs.push_back(run);
    for (std::size_t r : runs)
        if (r > static_cast<std::size_t>(spec.max_cluster)) return false;
    if (!runs.empty() && s.front() == '1' && runs.front() > static_cast<std::size_t>(spec.c1))
        return false;
    if (!runs.empty() && s.back() == '1' && runs.back() > static_cast<std::size_t>(spec.cN))
        return false;
    return true;
}

std::vector<int> cluster_lengths(const ChainSpec& spec, const std::string& occ) {
    std::vector<int> out;
    for (const Cluster& c : cluster_decomposition(spec, parse_occupation(occ)))
        out.push_back(c.length);
    return out;
}

}  // namespace

TEST_CASE("cluster decomposition on open and closed chains") {
    const std::string word = "101110011001";
    ChainSpec open = ChainSpec::free_chain(12, 3);
    CHECK(cluster_lengths(open, word) == std::vector<int>{1, 3, 2, 1});

    ChainSpec closed = ChainSpec::periodic(12, 3);
    CHECK(cluster_lengths(closed, word) == std::vector<int>{2, 3, 2});
    auto clusters = cluster_decomposition(closed, parse_occupation(word));
    CHECK(clusters.front().start_site == 12);  // seam-crossing cluster listed first

    CHECK(cluster_decomposition(open, 0).empty());
    CHECK(cluster_decomposition(closed, 0).empty());
}

TEST_CASE("all-occupied cycle is one unbounded cluster") {
    ChainSpec spec = ChainSpec::periodic(5, 3);
    auto clusters = cluster_decomposition(spec, full_word(5));
    REQUIRE(clusters.size() == 1);
    CHECK(clusters[0].length == 6);
    CHECK_FALSE(is_allowed(spec, full_word(5)));
    // disallowed even when ell exceeds the chain length
    CHECK_FALSE(is_allowed(ChainSpec::periodic(3, 7), full_word(3)));
}

TEST_CASE("allowedness under the exclusion rule and end caps") {
    CHECK(is_allowed(ChainSpec::periodic(4, 1), parse_occupation("1010")));
    CHECK_FALSE(is_allowed(ChainSpec::free_chain(3, 2), parse_occupation("111")));
    ChainSpec capped = ChainSpec::special(4, 2, 0, 2);
    CHECK_FALSE(is_allowed(capped, parse_occupation("1000")));
    CHECK(is_allowed(capped, parse_occupation("0011")));
}

TEST_CASE("cluster lengths sum to the particle count") {
    std::mt19937_64 rng(7);
    for (int n = 1; n <= 12; ++n) {
        ChainSpec open = ChainSpec::free_chain(n, 2);
        ChainSpec closed = ChainSpec::periodic(n, 2);
        for (int t = 0; t < 200; ++t) {
            Configuration w = rng() & full_word(n);
            for (const ChainSpec& spec : {open, closed}) {
                if (spec.is_periodic() && w == full_word(n)) {
                    auto cl = cluster_decomposition(spec, w);
                    REQUIRE(cl.size() == 1);
                    CHECK(cl[0].length == n + 1);  // sentinel, popcount is n
                    continue;
                }
                int sum = 0;
                for (const Cluster& c : cluster_decomposition(spec, w)) sum += c.length;
                CHECK(sum == particle_count(w));
            }
        }
    }
}

TEST_CASE("enumerated bases match brute force") {
    CHECK(GradedBasis::enumerate(ChainSpec::periodic(4, 1)).dim(0) == 1);
    CHECK(GradedBasis::enumerate(ChainSpec::periodic(4, 1)).dim(1) == 4);
    CHECK(GradedBasis::enumerate(ChainSpec::periodic(4, 1)).dim(2) == 2);
    GradedBasis b2 = GradedBasis::enumerate(ChainSpec::free_chain(2, 2));
    CHECK(b2.dim(0) == 1);
    CHECK(b2.dim(1) == 2);
    CHECK(b2.dim(2) == 1);

    std::vector<ChainSpec> specs = {
        ChainSpec::periodic(9, 1),    ChainSpec::periodic(8, 2),
        ChainSpec::free_chain(9, 2),  ChainSpec::special(8, 2, 0, 1),
        ChainSpec::special(7, 3, 2, 0), ChainSpec::special(6, 3, 3, 3),
        ChainSpec::periodic(1, 1),    ChainSpec::special(1, 2, 0, 2),
        ChainSpec::periodic(16, 2),   ChainSpec::special(16, 3, 2, 1),
    };
    for (const ChainSpec& spec : specs) {
        GradedBasis basis = GradedBasis::enumerate(spec);
        long total = 0;
        for (Configuration w = 0; w <= full_word(spec.n_sites); ++w) {
            const bool expect = allowed_by_string(spec, w);
            CHECK(is_allowed(spec, w) == expect);
            CHECK(basis.contains(w) == expect);
            if (expect) ++total;
        }
        CHECK(basis.total_dim() == total);
        for (int f = 0; f <= basis.f_max(); ++f) {
            const auto& words = basis.words(f);
            CHECK(std::is_sorted(words.begin(), words.end()));
            CHECK(std::adjacent_find(words.begin(), words.end()) == words.end());
            for (Configuration w : words) CHECK(particle_count(w) == f);
        }
    }
}

TEST_CASE("grade dimensions") {
    CHECK(grade_dimension(ChainSpec::periodic(5, 1), 2) == 5);
    CHECK(grade_dimension(ChainSpec::periodic(5, 1), 3) == 0);
    CHECK(grade_dimension(ChainSpec::special(6, 2, 1, 2), 0) == 1);
}

TEST_CASE("cap-zero boundary equals a free chain two sites shorter") {
    for (int ell = 1; ell <= 3; ++ell)
        for (int n = 3; n <= 10; ++n) {
            GradedBasis capped = GradedBasis::enumerate(ChainSpec::special(n, ell, 0, 0));
            GradedBasis free = GradedBasis::enumerate(ChainSpec::free_chain(n - 2, ell));
            CHECK(capped.f_max() == free.f_max());
            for (int f = 0; f <= capped.f_max(); ++f) CHECK(capped.dim(f) == free.dim(f));
        }
}

TEST_CASE("full caps are free boundary conditions") {
    for (int n = 1; n <= 9; ++n) {
        GradedBasis a = GradedBasis::enumerate(ChainSpec::special(n, 2, 2, 2));
        GradedBasis b = GradedBasis::enumerate(ChainSpec::free_chain(n, 2));
        REQUIRE(a.f_max() == b.f_max());
        for (int f = 0; f <= a.f_max(); ++f) CHECK(a.words(f) == b.words(f));
    }
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(ChainSpec::special(4, 2, 3, 0), std::invalid_argument);
    CHECK_THROWS_AS(ChainSpec::special(4, 2, 0, -1), std::invalid_argument);
    CHECK_THROWS_AS(ChainSpec::periodic(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(ChainSpec::periodic(64, 1), std::length_error);
}

TEST_CASE("basis json shape") {
    GradedBasis b = GradedBasis::enumerate(ChainSpec::periodic(4, 1));
    auto j = b.to_json();
    CHECK(j["n_sites"] == 4);
    CHECK(j["max_cluster"] == 1);
    CHECK(j["boundary"]["kind"] == "periodic");
    REQUIRE(j["grades"].size() == 3);
    CHECK(j["grades"][2]["dim"] == 2);
    CHECK(j["grades"][1]["words"] == nlohmann::json({1, 2, 4, 8}));
}

#include <catch2/catch_amalgamated.hpp>

#include <mell/theory_oracle.hpp>

using namespace mell;

TEST_CASE("length decomposition") {
    auto d1 = decompose_length(3, 1);
    CHECK(d1.n == 0);
    CHECK(d1.p == 2);
    auto d2 = decompose_length(8, 2);
    CHECK(d2.n == 1);
    CHECK(d2.p == 3);
    auto d3 = decompose_length(12, 3);
    CHECK(d3.n == 2);
    CHECK(d3.p == 1);
    for (int ell = 1; ell <= 4; ++ell)
        for (int n_sites = 1; n_sites <= 30; ++n_sites) {
            auto d = decompose_length(n_sites, ell);
            CHECK(d.n >= 0);
            CHECK(d.p >= 0);
            CHECK(d.p <= ell + 1);
            CHECK(n_sites == d.n * (ell + 2) + d.p + 1);
        }
}

TEST_CASE("closed-chain predictions") {
    CHECK(predict(ChainSpec::periodic(3, 1)) == Prediction{{1, 2}});
    CHECK(predict(ChainSpec::periodic(5, 1)) == Prediction{{2, 1}});
    for (int ell = 1; ell <= 3; ++ell) {
        CHECK(predict(ChainSpec::periodic(ell + 2, ell)) == Prediction{{ell, ell + 1}});
        CHECK(predict(ChainSpec::periodic(1, ell)) == Prediction{{0, 1}});
    }
}

TEST_CASE("open-chain predictions in the periodic-reduction regime") {
    CHECK(predict(ChainSpec::special(9, 2, 2, 2)).empty());
    CHECK(predict(ChainSpec::special(7, 2, 1, 1)) == Prediction{{3, 1}});
    // free chains carry a state only when p is ell or ell+1
    for (int ell = 1; ell <= 3; ++ell)
        for (int n_sites = ell + 3; n_sites <= 14; ++n_sites) {
            auto [n, p] = decompose_length(n_sites, ell);
            Prediction pred = predict(ChainSpec::free_chain(n_sites, ell));
            if (p == ell || p == ell + 1) {
                REQUIRE(pred.size() == 1);
                CHECK(pred.begin()->first == (n + 1) * ell);
                CHECK(pred.begin()->second == 1);
            } else {
                CHECK(pred.empty());
            }
        }
}

TEST_CASE("short-chain predictions") {
    // single site: forced empty iff some cap is zero
    CHECK(predict(ChainSpec::special(1, 2, 0, 2)) == Prediction{{0, 1}});
    CHECK(predict(ChainSpec::special(1, 2, 1, 1)).empty());
    // an end cap at or above N saturates at N-1
    CHECK(predict(ChainSpec::special(2, 3, 3, 1)) == Prediction{{1, 1}});
    // both caps at or above N leave the chain unconstrained
    CHECK(predict(ChainSpec::special(2, 3, 2, 3)).empty());
    CHECK(predict(ChainSpec::special(4, 2, 1, 1)) == Prediction{{2, 1}});
    // free short chains carry a state only at lengths ell+1 and ell+2
    for (int ell = 1; ell <= 4; ++ell)
        for (int n_sites = 1; n_sites <= ell + 2; ++n_sites) {
            Prediction pred = predict(ChainSpec::free_chain(n_sites, ell));
            if (n_sites == ell + 1 || n_sites == ell + 2)
                CHECK(pred == Prediction{{ell, 1}});
            else
                CHECK(pred.empty());
        }
}

TEST_CASE("the two published short-chain region phrasings coincide") {
    // Main-text reading: dimension one iff (c1 = N-1 and cN > N-1) or
    // (cN = N-1 and c1 >= N-1), else the two-sided condition. The clamped
    // reading used by predict() must agree cell by cell.
    for (int ell = 1; ell <= 4; ++ell)
        for (int n_sites = 1; n_sites <= ell + 2; ++n_sites)
            for (int c1 = 0; c1 <= ell; ++c1)
                for (int cN = 0; cN <= ell; ++cN) {
                    const int nm1 = n_sites - 1;
                    Prediction main_text;
                    if ((c1 == nm1 && cN > nm1) || (cN == nm1 && c1 >= nm1))
                        main_text = {{nm1, 1}};
                    else if (c1 <= n_sites - 2 && cN <= n_sites - 2 &&
                             c1 + cN >= n_sites - 2)
                        main_text = {{n_sites - 2, 1}};
                    CHECK(predict(ChainSpec::special(n_sites, ell, c1, cN)) == main_text);
                }
}

TEST_CASE("prediction-level witten index") {
    for (int ell = 1; ell <= 3; ++ell)
        for (int n_sites = 1; n_sites <= 14; ++n_sites) {
            Prediction pred = predict(ChainSpec::periodic(n_sites, ell));
            long witten = 0;
            for (const auto& [f, mult] : pred) witten += (f % 2 == 0 ? mult : -mult);
            const int p = decompose_length(n_sites, ell).p;
            CHECK(std::abs(witten) == (p == ell + 1 ? ell + 1 : 1));
        }
}

TEST_CASE("predictions shift by ell along the length ladder") {
    for (int ell = 1; ell <= 3; ++ell)
        for (int n_sites = 2 * ell + 3; n_sites <= 14; ++n_sites) {
            for (int c1 = 0; c1 <= ell; ++c1)
                for (int cN = 0; cN <= ell; ++cN) {
                    Prediction big = predict(ChainSpec::special(n_sites, ell, c1, cN));
                    Prediction small =
                        predict(ChainSpec::special(n_sites - ell - 2, ell, c1, cN));
                    Prediction shifted;
                    for (const auto& [f, mult] : small) shifted[f + ell] = mult;
                    CHECK(big == shifted);
                }
            Prediction big = predict(ChainSpec::periodic(n_sites, ell));
            Prediction small = predict(ChainSpec::periodic(n_sites - ell - 2, ell));
            Prediction shifted;
            for (const auto& [f, mult] : small) shifted[f + ell] = mult;
            CHECK(big == shifted);
        }
}

TEST_CASE("region tables") {
    RegionTable t = region_table(2, 9);  // n=2, p=0: white triangle c1+cN <= 2
    int white = 0;
    for (int c1 = 0; c1 <= 2; ++c1)
        for (int cN = 0; cN <= 2; ++cN) {
            const bool expect = c1 + cN <= 2;
            CHECK(t.at(c1, cN).empty() == !expect);
            if (expect) {
                CHECK(t.at(c1, cN) == Prediction{{4, 1}});
                ++white;
            }
        }
    CHECK(white == 6);

    RegionTable s = region_table(2, 4);  // short chain: white iff c1+cN >= 2
    for (int c1 = 0; c1 <= 2; ++c1)
        for (int cN = 0; cN <= 2; ++cN)
            CHECK(s.at(c1, cN).empty() == (c1 + cN < 2));

    std::string csv = t.to_csv();
    CHECK(csv.find("c1,cN,multiplicity,grade") == 0);
    CHECK(csv.find("0,0,1,4") != std::string::npos);
    CHECK(csv.find("2,2,0,") != std::string::npos);
    std::string diagram = s.to_diagram();
    CHECK(diagram.find('#') != std::string::npos);
    CHECK(diagram.find('.') != std::string::npos);
}

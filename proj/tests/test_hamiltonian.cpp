#include <catch2/catch_amalgamated.hpp>

#include <mell/cohomology.hpp>
#include <mell/hamiltonian.hpp>

#include <random>

using namespace mell;

TEST_CASE("smallest blocks by hand") {
    ChainSpec spec = ChainSpec::free_chain(2, 1);
    GradedBasis basis = GradedBasis::enumerate(spec);
    CouplingScheme ones = CouplingScheme::all_ones(1);
    SparseRationalMatrix h0 = build_h(spec, basis, ones, 0);
    REQUIRE(h0.n_rows == 1);
    REQUIRE(h0.nnz() == 1);
    CHECK(h0.entries[0].value == 2);
}

TEST_CASE("triangle chain has a two-fold degenerate zero level") {
    ChainSpec spec = ChainSpec::periodic(3, 1);
    GradedBasis basis = GradedBasis::enumerate(spec);
    CouplingScheme ones = CouplingScheme::all_ones(1);
    SparseRationalMatrix h1 = build_h(spec, basis, ones, 1);
    REQUIRE(h1.n_rows == 3);
    CHECK(exact_zero_modes(h1) == 2);
    CHECK(numeric_zero_modes(h1) == 2);
    auto kb = kernel_basis(h1);
    CHECK(kb.size() == 2);
    for (const auto& v : kb)
        for (const Rational& y : h1.apply(v)) CHECK(y == 0);
    CHECK(numeric_zero_modes(build_h(ChainSpec::free_chain(2, 1),
                                     GradedBasis::enumerate(ChainSpec::free_chain(2, 1)), ones,
                                     0)) == 0);
    auto ev = numeric_spectrum(h1);
    REQUIRE(ev.size() == 3);
    CHECK(ev[0] == Catch::Approx(0.0).margin(1e-12));
    CHECK(ev[2] == Catch::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("hamiltonian blocks are symmetric, positive and supersymmetric") {
    std::mt19937_64 rng(5);
    std::vector<ChainSpec> specs = {
        ChainSpec::periodic(7, 1),      ChainSpec::periodic(6, 2),
        ChainSpec::free_chain(7, 2),     ChainSpec::special(6, 2, 1, 2),
        ChainSpec::special(5, 3, 0, 2),  ChainSpec::periodic(5, 3),
    };
    for (const ChainSpec& spec : specs) {
        GradedBasis basis = GradedBasis::enumerate(spec);
        CouplingScheme scheme = CouplingScheme::random(spec.max_cluster, rng);
        for (int f = 0; f <= basis.f_max(); ++f) {
            SparseRationalMatrix h = build_h(spec, basis, scheme, f);
            CHECK(h == h.transpose());
            if (h.n_rows > 0 && h.n_rows <= 400)
                for (double ev : numeric_spectrum(h)) CHECK(ev > -1e-9);
            if (f < basis.f_max()) {
                SparseRationalMatrix q = build_q(spec, basis, scheme, f);
                SparseRationalMatrix h_next = build_h(spec, basis, scheme, f + 1);
                CHECK((q * h - h_next * q).is_zero());
            }
        }
    }
}

TEST_CASE("numeric zero modes match the exact kernel dimension") {
    for (const ChainSpec& spec :
         {ChainSpec::periodic(8, 2), ChainSpec::free_chain(9, 1), ChainSpec::periodic(7, 3)}) {
        GradedBasis basis = GradedBasis::enumerate(spec);
        CouplingScheme ones = CouplingScheme::all_ones(spec.max_cluster);
        for (int f = 0; f <= basis.f_max(); ++f) {
            SparseRationalMatrix h = build_h(spec, basis, ones, f);
            CHECK(numeric_zero_modes(h) == exact_zero_modes(h));
        }
    }
}

TEST_CASE("dense decomposition refuses oversized blocks") {
    ChainSpec spec = ChainSpec::periodic(6, 2);
    GradedBasis basis = GradedBasis::enumerate(spec);
    SparseRationalMatrix h = build_h(spec, basis, CouplingScheme::all_ones(2), 2);
    CHECK_THROWS_AS(numeric_zero_modes(h, 1e-9, 2), ResourceError);
}

TEST_CASE("empty grade gives an empty block") {
    ChainSpec spec = ChainSpec::periodic(4, 1);
    GradedBasis basis = GradedBasis::enumerate(spec);
    CHECK_THROWS_AS(build_h(spec, basis, CouplingScheme::all_ones(1), 3), std::out_of_range);
    CHECK(numeric_zero_modes(SparseRationalMatrix(0, 0)) == 0);
}

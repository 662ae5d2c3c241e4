#include <catch2/catch_amalgamated.hpp>

#include <mell/supercharge.hpp>

#include <random>

using namespace mell;

namespace {

// Independent assembly of the particle-removal operator V_{f+1} -> V_f:
// remove each particle, weight by lambda_{m,n} for the n-th member of an
// m-cluster, with the fermionic string. The insertion operator must be its
// transpose.
SparseRationalMatrix build_removal(const ChainSpec& spec, const GradedBasis& basis,
                                   const CouplingScheme& scheme, int f_src) {
    std::vector<SparseRationalMatrix::Entry> trip;
    const auto& src = basis.words(f_src);
    for (std::size_t j = 0; j < src.size(); ++j) {
        const Configuration sigma = src[j];
        for (int site = 1; site <= spec.n_sites; ++site) {
            if (!occupied(sigma, site)) continue;
            const Cluster c = cluster_at(spec, sigma, site);
            const int n = cluster_member_index(spec, c, site);
            Rational amp = scheme.lambda(c.length, n);
            if (string_sign(sigma, site) < 0) amp = -amp;
            const Configuration target = sigma & ~(Configuration{1} << (site - 1));
            const long row = basis.index_of(f_src - 1, target);
            REQUIRE(row >= 0);  // removal never leaves the constrained space
            trip.push_back({row, static_cast<long>(j), amp});
        }
    }
    return SparseRationalMatrix::from_triplets(basis.dim(f_src - 1), basis.dim(f_src),
                                               std::move(trip));
}

std::vector<ChainSpec> sample_specs() {
    return {
        ChainSpec::periodic(6, 1),      ChainSpec::periodic(6, 2),
        ChainSpec::periodic(5, 3),      ChainSpec::free_chain(6, 2),
        ChainSpec::free_chain(5, 3),    ChainSpec::special(6, 2, 1, 0),
        ChainSpec::special(6, 3, 2, 1), ChainSpec::special(4, 2, 0, 2),
    };
}

}  // namespace

TEST_CASE("fermionic string signs") {
    CHECK(string_sign(parse_occupation("0110"), 1) == 1);
    CHECK(string_sign(parse_occupation("0110"), 4) == 1);
    CHECK(string_sign(parse_occupation("1010"), 3) == -1);
}

TEST_CASE("insertion block for the empty two-site chain") {
    ChainSpec spec = ChainSpec::free_chain(2, 1);
    GradedBasis basis = GradedBasis::enumerate(spec);
    CouplingScheme scheme = CouplingScheme::build({Rational(5, 3)});
    SparseRationalMatrix q0 = build_q(spec, basis, scheme, 0);
    REQUIRE(q0.n_rows == 2);
    REQUIRE(q0.n_cols == 1);
    REQUIRE(q0.nnz() == 2);
    CHECK(q0.entries[0].value == Rational(5, 3));
    CHECK(q0.entries[1].value == Rational(5, 3));
}

TEST_CASE("insertion block at grade one on two sites, ell=2") {
    // Columns |10>, |01>; inserting at site 2 crosses one particle, at site 1
    // none, so the signed block is (-lambda_22, +lambda_21).
    ChainSpec spec = ChainSpec::free_chain(2, 2);
    GradedBasis basis = GradedBasis::enumerate(spec);
    CouplingScheme scheme = CouplingScheme::build({Rational(2), Rational(7)});
    SparseRationalMatrix q1 = build_q(spec, basis, scheme, 1);
    REQUIRE(q1.n_rows == 1);
    REQUIRE(q1.n_cols == 2);
    REQUIRE(q1.nnz() == 2);
    CHECK(q1.entries[0].col == 0);
    CHECK(q1.entries[0].value == -scheme.lambda(2, 2));
    CHECK(q1.entries[1].col == 1);
    CHECK(q1.entries[1].value == scheme.lambda(2, 1));
    // nilpotency fixes the relative sign
    SparseRationalMatrix q0 = build_q(spec, basis, scheme, 0);
    CHECK((q1 * q0).is_zero());
}

TEST_CASE("top grade block is empty") {
    ChainSpec spec = ChainSpec::periodic(4, 1);
    GradedBasis basis = GradedBasis::enumerate(spec);
    SparseRationalMatrix q = build_q(spec, basis, CouplingScheme::all_ones(1), basis.f_max());
    CHECK(q.n_rows == 0);
    CHECK(q.is_zero());
    CHECK_THROWS_AS(build_q(spec, basis, CouplingScheme::all_ones(1), basis.f_max() + 1),
                    std::out_of_range);
}

TEST_CASE("adjoint is the transpose and matches the removal rule") {
    std::mt19937_64 rng(3);
    for (const ChainSpec& spec : sample_specs()) {
        GradedBasis basis = GradedBasis::enumerate(spec);
        CouplingScheme scheme = CouplingScheme::random(spec.max_cluster, rng);
        for (int f = 0; f < basis.f_max(); ++f) {
            SparseRationalMatrix q = build_q(spec, basis, scheme, f);
            CHECK(adjoint(adjoint(q)) == q);
            CHECK(adjoint(q) == build_removal(spec, basis, scheme, f + 1));
        }
    }
}

TEST_CASE("nilpotency, grading and entry structure") {
    std::mt19937_64 rng(11);
    std::vector<ChainSpec> specs = sample_specs();
    for (int n = 1; n <= 12; ++n) specs.push_back(ChainSpec::periodic(n, 2));
    for (int n = 1; n <= 12; ++n) specs.push_back(ChainSpec::free_chain(n, 3));
    for (const ChainSpec& spec : specs) {
        GradedBasis basis = GradedBasis::enumerate(spec);
        for (const CouplingScheme& scheme :
             {CouplingScheme::all_ones(spec.max_cluster),
              CouplingScheme::random(spec.max_cluster, rng)}) {
            SparseRationalMatrix prev;
            for (int f = 0; f < basis.f_max(); ++f) {
                SparseRationalMatrix q = build_q(spec, basis, scheme, f);
                for (const auto& e : q.entries) {
                    // every entry connects an allowed f-configuration to an
                    // allowed (f+1)-configuration
                    const Configuration src = basis.words(f)[static_cast<std::size_t>(e.col)];
                    const Configuration dst =
                        basis.words(f + 1)[static_cast<std::size_t>(e.row)];
                    CHECK(is_allowed(spec, src));
                    CHECK(is_allowed(spec, dst));
                    CHECK(particle_count(dst) == particle_count(src) + 1);
                }
                if (f > 0) CHECK((q * prev).is_zero());
                prev = q;
            }
        }
    }
}

TEST_CASE("all-ones scheme gives unit entries") {
    ChainSpec spec = ChainSpec::periodic(8, 3);
    GradedBasis basis = GradedBasis::enumerate(spec);
    CouplingScheme scheme = CouplingScheme::all_ones(3);
    for (int f = 0; f < basis.f_max(); ++f)
        for (const auto& e : build_q(spec, basis, scheme, f).entries)
            CHECK((e.value == 1 || e.value == -1));
}

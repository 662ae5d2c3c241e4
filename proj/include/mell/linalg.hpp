#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rational.hpp"
#include "sparse.hpp"

namespace mell {

// Raised when a quotient construction detects inconsistent inputs, e.g. an
// induced map leaving the target subquotient. Signals a broken differential
// upstream rather than a numerical problem (there is none: all arithmetic is
// exact).
struct StructuralViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

struct RationalField {
    using Value = Rational;
    static bool is_zero(const Value& v) { return v == 0; }
    static Value div(const Value& a, const Value& b) { return a / b; }
    // d -= alpha * s
    static void submul(Value& d, const Value& alpha, const Value& s) { d -= alpha * s; }
};

struct PrimeField {
    using Value = std::uint64_t;
    std::uint64_t p;
    static bool is_zero(Value v) { return v == 0; }
    Value mul(Value a, Value b) const { return (a * b) % p; }  // p < 2^31, no overflow
    Value pow(Value a, std::uint64_t e) const {
        Value r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    Value inv(Value a) const { return pow(a, p - 2); }
    Value div(Value a, Value b) const { return mul(a, inv(b)); }
    void submul(Value& d, Value alpha, Value s) const { d = (d + p - mul(alpha, s)) % p; }
};

// Sparse elimination over a field with Markowitz-style pivoting: pick the
// lowest-count active column (first index on ties), then the sparsest row in
// it (lowest index on ties). Each pivot step eliminates the pivot column from
// every other active row, so a pivot row never re-acquires an earlier pivot
// column; back substitution can then walk the pivot list in reverse.
template <class Field>
class SparseElimination {
public:
    using Value = typename Field::Value;
    using Row = std::vector<std::pair<long, Value>>;

    struct Options {
        long pivot_col_limit = -1;  // columns >= limit are carried along, never pivoted
    };

    SparseElimination(long n_rows, long n_cols, std::vector<Row> rows, Field field,
                      Options opt = {})
        : field_(field), n_rows_(n_rows), n_cols_(n_cols), rows_(std::move(rows)) {
        limit_ = opt.pivot_col_limit < 0 ? n_cols_ : opt.pivot_col_limit;
        active_.assign(static_cast<std::size_t>(n_rows_), true);
        col_count_.assign(static_cast<std::size_t>(n_cols_), 0);
        col_rows_.resize(static_cast<std::size_t>(n_cols_));
        is_pivot_col_.assign(static_cast<std::size_t>(n_cols_), false);
        for (long r = 0; r < n_rows_; ++r)
            for (const auto& [c, v] : rows_[static_cast<std::size_t>(r)]) {
                ++col_count_[static_cast<std::size_t>(c)];
                col_rows_[static_cast<std::size_t>(c)].push_back(r);
            }
        run();
    }

    long rank() const { return static_cast<long>(pivots_.size()); }

    const std::vector<std::pair<long, long>>& pivots() const { return pivots_; }

    const Row& final_row(long r) const { return rows_[static_cast<std::size_t>(r)]; }

    const std::vector<bool>& active_rows() const { return active_; }

    std::vector<long> free_columns() const {
        std::vector<long> out;
        for (long c = 0; c < limit_; ++c)
            if (!is_pivot_col_[static_cast<std::size_t>(c)]) out.push_back(c);
        return out;
    }

private:
    static const Value* find(const Row& row, long col) {
        auto it = std::lower_bound(row.begin(), row.end(), col,
                                   [](const auto& e, long c) { return e.first < c; });
        if (it == row.end() || it->first != col) return nullptr;
        return &it->second;
    }

    // dst -= alpha * src, maintaining column counts and row lists for dst.
    void row_axpy(long dst_id, const Row& src, const Value& alpha) {
        Row& dst = rows_[static_cast<std::size_t>(dst_id)];
        Row out;
        out.reserve(dst.size() + src.size());
        std::size_t i = 0, j = 0;
        while (i < dst.size() || j < src.size()) {
            if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
                out.push_back(std::move(dst[i++]));
            } else if (i == dst.size() || src[j].first < dst[i].first) {
                Value v{};
                field_.submul(v, alpha, src[j].second);
                if (!Field::is_zero(v)) {
                    ++col_count_[static_cast<std::size_t>(src[j].first)];
                    col_rows_[static_cast<std::size_t>(src[j].first)].push_back(dst_id);
                    out.emplace_back(src[j].first, std::move(v));
                }
                ++j;
            } else {
                Value v = std::move(dst[i].second);
                field_.submul(v, alpha, src[j].second);
                if (Field::is_zero(v))
                    --col_count_[static_cast<std::size_t>(dst[i].first)];
                else
                    out.emplace_back(dst[i].first, std::move(v));
                ++i;
                ++j;
            }
        }
        dst = std::move(out);
    }

    void run() {
        while (true) {
            long c = -1;
            for (long j = 0; j < limit_; ++j) {
                const long cnt = col_count_[static_cast<std::size_t>(j)];
                if (cnt > 0 && (c < 0 || cnt < col_count_[static_cast<std::size_t>(c)])) c = j;
            }
            if (c < 0) break;
            auto& list = col_rows_[static_cast<std::size_t>(c)];
            std::vector<long> live;
            for (long r : list)
                if (active_[static_cast<std::size_t>(r)] &&
                    find(rows_[static_cast<std::size_t>(r)], c))
                    live.push_back(r);
            std::sort(live.begin(), live.end());
            live.erase(std::unique(live.begin(), live.end()), live.end());
            long pr = live.front();
            for (long r : live)
                if (rows_[static_cast<std::size_t>(r)].size() <
                    rows_[static_cast<std::size_t>(pr)].size())
                    pr = r;
            const Value piv = *find(rows_[static_cast<std::size_t>(pr)], c);
            for (long r : live) {
                if (r == pr) continue;
                const Value* a = find(rows_[static_cast<std::size_t>(r)], c);
                row_axpy(r, rows_[static_cast<std::size_t>(pr)], field_.div(*a, piv));
            }
            // retire the pivot row; its entries keep their final values
            active_[static_cast<std::size_t>(pr)] = false;
            for (const auto& [col, v] : rows_[static_cast<std::size_t>(pr)])
                --col_count_[static_cast<std::size_t>(col)];
            list.clear();
            pivots_.emplace_back(pr, c);
            is_pivot_col_[static_cast<std::size_t>(c)] = true;
        }
    }

    Field field_;
    long n_rows_, n_cols_, limit_;
    std::vector<Row> rows_;
    std::vector<bool> active_;
    std::vector<long> col_count_;
    std::vector<std::vector<long>> col_rows_;
    std::vector<bool> is_pivot_col_;
    std::vector<std::pair<long, long>> pivots_;
};

inline std::vector<SparseElimination<RationalField>::Row> rows_of(const SparseRationalMatrix& m) {
    std::vector<SparseElimination<RationalField>::Row> rows(
        static_cast<std::size_t>(m.n_rows));
    for (const auto& e : m.entries)
        rows[static_cast<std::size_t>(e.row)].emplace_back(e.col, e.value);
    return rows;
}

}  // namespace detail

using RationalElimination = detail::SparseElimination<detail::RationalField>;

inline RationalElimination eliminate(const SparseRationalMatrix& m, long pivot_col_limit = -1) {
    return RationalElimination(m.n_rows, m.n_cols, detail::rows_of(m), {},
                               {.pivot_col_limit = pivot_col_limit});
}

// Exact rank over the rationals.
inline long rank(const SparseRationalMatrix& m) { return eliminate(m).rank(); }

// Exact basis of the null space; size n_cols - rank. Each vector is dense of
// length n_cols with v[free column] = 1 for its generating free column.
inline std::vector<std::vector<Rational>> kernel_basis(const SparseRationalMatrix& m) {
    RationalElimination e = eliminate(m);
    std::vector<std::vector<Rational>> out;
    for (long fc : e.free_columns()) {
        std::vector<Rational> v(static_cast<std::size_t>(m.n_cols), Rational(0));
        v[static_cast<std::size_t>(fc)] = 1;
        const auto& pivots = e.pivots();
        for (std::size_t k = pivots.size(); k-- > 0;) {
            const auto [pr, pc] = pivots[k];
            Rational s(0);
            const Rational* piv = nullptr;
            for (const auto& [col, val] : e.final_row(pr)) {
                if (col == pc) {
                    piv = &val;
                } else if (v[static_cast<std::size_t>(col)] != 0) {
                    s += val * v[static_cast<std::size_t>(col)];
                }
            }
            v[static_cast<std::size_t>(pc)] = -s / *piv;
        }
        out.push_back(std::move(v));
    }
    return out;
}

// Basis of the column space, as dense vectors of length n_rows.
inline std::vector<std::vector<Rational>> column_space_basis(const SparseRationalMatrix& m) {
    RationalElimination e = eliminate(m.transpose());
    std::vector<std::vector<Rational>> out;
    for (const auto& [pr, pc] : e.pivots()) {
        std::vector<Rational> v(static_cast<std::size_t>(m.n_rows), Rational(0));
        for (const auto& [col, val] : e.final_row(pr)) v[static_cast<std::size_t>(col)] = val;
        out.push_back(std::move(v));
    }
    return out;
}

// Solves A x = b for every right-hand side at once (one elimination of the
// augmented system). Returns nullopt if any system is inconsistent. Free
// variables are set to zero.
inline std::optional<std::vector<std::vector<Rational>>> solve_many(
    const SparseRationalMatrix& a, const std::vector<std::vector<Rational>>& rhs) {
    const long k = static_cast<long>(rhs.size());
    std::vector<SparseRationalMatrix::Entry> trip = a.entries;
    for (long j = 0; j < k; ++j) {
        const auto& b = rhs[static_cast<std::size_t>(j)];
        if (static_cast<long>(b.size()) != a.n_rows)
            throw std::invalid_argument("rhs length does not match n_rows");
        for (long i = 0; i < a.n_rows; ++i)
            if (b[static_cast<std::size_t>(i)] != 0)
                trip.push_back({i, a.n_cols + j, b[static_cast<std::size_t>(i)]});
    }
    SparseRationalMatrix aug =
        SparseRationalMatrix::from_triplets(a.n_rows, a.n_cols + k, std::move(trip));
    RationalElimination e = eliminate(aug, a.n_cols);
    for (long r = 0; r < a.n_rows; ++r)
        if (e.active_rows()[static_cast<std::size_t>(r)] && !e.final_row(r).empty())
            return std::nullopt;  // 0 = nonzero residue in some rhs
    std::vector<std::vector<Rational>> xs;
    for (long j = 0; j < k; ++j) {
        std::vector<Rational> x(static_cast<std::size_t>(a.n_cols), Rational(0));
        const auto& pivots = e.pivots();
        for (std::size_t t = pivots.size(); t-- > 0;) {
            const auto [pr, pc] = pivots[t];
            Rational s(0);
            const Rational* piv = nullptr;
            for (const auto& [col, val] : e.final_row(pr)) {
                if (col == pc)
                    piv = &val;
                else if (col < a.n_cols && x[static_cast<std::size_t>(col)] != 0)
                    s += val * x[static_cast<std::size_t>(col)];
                else if (col == a.n_cols + j)
                    s -= val;  // move the rhs over
            }
            x[static_cast<std::size_t>(pc)] = -s / *piv;
        }
        xs.push_back(std::move(x));
    }
    return xs;
}

// Incremental independence filter over dense rational vectors.
class IncrementalReducer {
public:
    // Returns true (and absorbs the reduced vector) if v extends the span.
    bool insert(const std::vector<Rational>& v) {
        std::vector<std::pair<long, Rational>> row;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] != 0) row.emplace_back(static_cast<long>(i), v[i]);
        while (!row.empty()) {
            auto it = rows_.find(row.front().first);
            if (it == rows_.end()) {
                rows_.emplace(row.front().first, std::move(row));
                return true;
            }
            const Rational alpha = row.front().second / it->second.front().second;
            std::vector<std::pair<long, Rational>> out;
            std::size_t i = 0, j = 0;
            const auto& src = it->second;
            while (i < row.size() || j < src.size()) {
                if (j == src.size() || (i < row.size() && row[i].first < src[j].first)) {
                    out.push_back(std::move(row[i++]));
                } else if (i == row.size() || src[j].first < row[i].first) {
                    out.emplace_back(src[j].first, -alpha * src[j].second);
                    ++j;
                } else {
                    Rational d = row[i].second - alpha * src[j].second;
                    if (d != 0) out.emplace_back(row[i].first, std::move(d));
                    ++i, ++j;
                }
            }
            row = std::move(out);
        }
        return false;
    }

    long rank() const { return static_cast<long>(rows_.size()); }

private:
    std::map<long, std::vector<std::pair<long, Rational>>> rows_;
};

// ker/im data of one differential at a fixed block: kernel basis of the
// outgoing map, image basis of the incoming map, and a chosen complement of
// the image inside the kernel representing the subquotient.
struct Subquotient {
    long ambient_dim = 0;
    std::vector<std::vector<Rational>> kernel;
    std::vector<std::vector<Rational>> image;
    std::vector<std::vector<Rational>> complement;

    long dim() const { return static_cast<long>(complement.size()); }
};

inline Subquotient make_subquotient(const SparseRationalMatrix& outgoing,
                                    const SparseRationalMatrix& incoming) {
    if (outgoing.n_cols != incoming.n_rows)
        throw std::invalid_argument("subquotient blocks disagree on ambient dimension");
    Subquotient s;
    s.ambient_dim = outgoing.n_cols;
    s.kernel = kernel_basis(outgoing);
    s.image = column_space_basis(incoming);
    IncrementalReducer red;
    for (const auto& v : s.image) {
        for (const Rational& y : outgoing.apply(v))
            if (y != 0)
                throw StructuralViolation("image not contained in kernel: differential broken");
        if (!red.insert(v)) throw std::logic_error("column space basis not independent");
    }
    for (const auto& v : s.kernel)
        if (red.insert(v)) s.complement.push_back(v);
    if (static_cast<long>(s.complement.size()) !=
        static_cast<long>(s.kernel.size()) - static_cast<long>(s.image.size()))
        throw StructuralViolation("quotient dimension bookkeeping failed");
    return s;
}

// Matrix of the map a block operator induces between two subquotients:
// each source complement vector is pushed through `big` and expressed in
// target complement + image coordinates by an exact solve. Failure of the
// solve means the operator does not descend to the quotients.
inline SparseRationalMatrix induced_quotient_map(const SparseRationalMatrix& big,
                                                 const Subquotient& src,
                                                 const Subquotient& dst) {
    if (big.n_cols != src.ambient_dim || big.n_rows != dst.ambient_dim)
        throw std::invalid_argument("induced map shape mismatch");
    const long qs = src.dim(), qt = dst.dim();
    std::vector<std::vector<Rational>> rhs;
    rhs.reserve(static_cast<std::size_t>(qs));
    for (const auto& v : src.complement) rhs.push_back(big.apply(v));
    std::vector<SparseRationalMatrix::Entry> trip;
    const long n_basis = qt + static_cast<long>(dst.image.size());
    for (long j = 0; j < n_basis; ++j) {
        const auto& col = j < qt ? dst.complement[static_cast<std::size_t>(j)]
                                 : dst.image[static_cast<std::size_t>(j - qt)];
        for (long i = 0; i < dst.ambient_dim; ++i)
            if (col[static_cast<std::size_t>(i)] != 0)
                trip.push_back({i, j, col[static_cast<std::size_t>(i)]});
    }
    SparseRationalMatrix basis_mat =
        SparseRationalMatrix::from_triplets(dst.ambient_dim, n_basis, std::move(trip));
    auto sols = solve_many(basis_mat, rhs);
    if (!sols)
        throw StructuralViolation("induced map leaves the target subquotient");
    std::vector<SparseRationalMatrix::Entry> out;
    for (long j = 0; j < qs; ++j)
        for (long i = 0; i < qt; ++i) {
            const Rational& v = (*sols)[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
            if (v != 0) out.push_back({i, j, v});
        }
    return SparseRationalMatrix::from_triplets(qt, qs, std::move(out));
}

// ---- modular fast path ----------------------------------------------------

namespace detail {

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull}) {
        if (n % q == 0) return n == q;
    }
    auto mulmod = [](std::uint64_t a, std::uint64_t b, std::uint64_t m) {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
    };
    auto powmod = [&](std::uint64_t a, std::uint64_t e, std::uint64_t m) {
        std::uint64_t r = 1;
        a %= m;
        while (e) {
            if (e & 1) r = mulmod(r, a, m);
            a = mulmod(a, a, m);
            e >>= 1;
        }
        return r;
    };
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

}  // namespace detail

// Deterministic prime > 2^30 derived from the seed.
inline std::uint64_t random_prime(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    while (true) {
        std::uint64_t c = ((1ull << 30) | (rng() & ((1ull << 30) - 1))) | 1ull;
        if (detail::is_prime_u64(c)) return c;
    }
}

// Process-wide seed for the modular path, drawn once and logged by callers.
inline std::uint64_t default_modular_seed() {
    static std::uint64_t seed = [] {
        std::random_device rd;
        return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    }();
    return seed;
}

struct ModularRankResult {
    long modular_rank = 0;
    std::uint64_t prime = 0;
    std::uint64_t seed = 0;
    bool certified = false;   // exact elimination was run
    long exact_rank = -1;     // valid when certified
};

// Rank modulo a random prime derived from `seed`. Always a lower bound on
// the exact rank; with `certify` the exact rank is computed as well.
inline ModularRankResult rank_modular(const SparseRationalMatrix& m, std::uint64_t seed,
                                      bool certify = false) {
    ModularRankResult res;
    res.seed = seed;
    std::uint64_t salt = seed;
    while (true) {
        res.prime = random_prime(salt);
        detail::PrimeField field{res.prime};
        std::vector<detail::SparseElimination<detail::PrimeField>::Row> rows(
            static_cast<std::size_t>(m.n_rows));
        bool bad_prime = false;
        for (const auto& e : m.entries) {
            const std::uint64_t den = mpz_fdiv_ui(e.value.get_den().get_mpz_t(), res.prime);
            if (den == 0) {
                bad_prime = true;
                break;
            }
            const std::uint64_t num = mpz_fdiv_ui(e.value.get_num().get_mpz_t(), res.prime);
            const std::uint64_t v = field.div(num, den);
            if (v != 0) rows[static_cast<std::size_t>(e.row)].emplace_back(e.col, v);
        }
        if (!bad_prime) {
            detail::SparseElimination<detail::PrimeField> elim(m.n_rows, m.n_cols,
                                                               std::move(rows), field);
            res.modular_rank = elim.rank();
            break;
        }
        ++salt;  // denominator hit the prime: draw the next one
    }
    if (certify) {
        res.exact_rank = rank(m);
        res.certified = true;
    }
    return res;
}

}  // namespace mell

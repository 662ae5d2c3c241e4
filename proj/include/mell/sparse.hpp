#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"
#include "vendor_json.hpp"

namespace mell {

// Exact sparse matrix over the rationals in coordinate form. Entries are
// kept sorted by (row, col) with no duplicates and no stored zeros; row and
// column index spaces are tied to graded basis blocks.
struct SparseRationalMatrix {
    struct Entry {
        long row;
        long col;
        Rational value;
    };

    long n_rows = 0;
    long n_cols = 0;
    std::vector<Entry> entries;

    SparseRationalMatrix() = default;
    SparseRationalMatrix(long rows, long cols) : n_rows(rows), n_cols(cols) {}

    static SparseRationalMatrix from_triplets(long rows, long cols, std::vector<Entry> trip) {
        SparseRationalMatrix m(rows, cols);
        std::sort(trip.begin(), trip.end(), [](const Entry& a, const Entry& b) {
            return std::tie(a.row, a.col) < std::tie(b.row, b.col);
        });
        for (auto& e : trip) {
            if (e.row < 0 || e.row >= rows || e.col < 0 || e.col >= cols)
                throw std::out_of_range("matrix entry out of range");
            if (!m.entries.empty() && m.entries.back().row == e.row && m.entries.back().col == e.col)
                m.entries.back().value += e.value;
            else
                m.entries.push_back(std::move(e));
        }
        std::erase_if(m.entries, [](const Entry& e) { return e.value == 0; });
        return m;
    }

    std::size_t nnz() const { return entries.size(); }

    bool is_zero() const { return entries.empty(); }

    SparseRationalMatrix transpose() const {
        std::vector<Entry> t;
        t.reserve(entries.size());
        for (const Entry& e : entries) t.push_back({e.col, e.row, e.value});
        return from_triplets(n_cols, n_rows, std::move(t));
    }

    // y = M x, exact.
    std::vector<Rational> apply(const std::vector<Rational>& x) const {
        if (static_cast<long>(x.size()) != n_cols)
            throw std::invalid_argument("vector length does not match n_cols");
        std::vector<Rational> y(static_cast<std::size_t>(n_rows), Rational(0));
        for (const Entry& e : entries)
            y[static_cast<std::size_t>(e.row)] += e.value * x[static_cast<std::size_t>(e.col)];
        return y;
    }

    friend SparseRationalMatrix operator*(const SparseRationalMatrix& a,
                                          const SparseRationalMatrix& b) {
        if (a.n_cols != b.n_rows) throw std::invalid_argument("matrix shape mismatch in product");
        // Row-major accumulation; b's rows located by binary search since
        // entries are sorted by row first.
        std::vector<Entry> out;
        std::map<long, Rational> acc;
        std::size_t ia = 0;
        while (ia < a.entries.size()) {
            const long row = a.entries[ia].row;
            acc.clear();
            for (; ia < a.entries.size() && a.entries[ia].row == row; ++ia) {
                const Entry& ea = a.entries[ia];
                auto lo = std::lower_bound(b.entries.begin(), b.entries.end(), ea.col,
                                           [](const Entry& e, long r) { return e.row < r; });
                for (; lo != b.entries.end() && lo->row == ea.col; ++lo)
                    acc[lo->col] += ea.value * lo->value;
            }
            for (auto& [col, v] : acc)
                if (v != 0) out.push_back({row, col, std::move(v)});
        }
        SparseRationalMatrix m(a.n_rows, b.n_cols);
        m.entries = std::move(out);  // already sorted by (row, col)
        return m;
    }

    friend SparseRationalMatrix operator+(const SparseRationalMatrix& a,
                                          const SparseRationalMatrix& b) {
        if (a.n_rows != b.n_rows || a.n_cols != b.n_cols)
            throw std::invalid_argument("matrix shape mismatch in sum");
        std::vector<Entry> t = a.entries;
        t.insert(t.end(), b.entries.begin(), b.entries.end());
        return from_triplets(a.n_rows, a.n_cols, std::move(t));
    }

    friend SparseRationalMatrix operator-(const SparseRationalMatrix& a,
                                          const SparseRationalMatrix& b) {
        SparseRationalMatrix nb = b;
        for (auto& e : nb.entries) e.value = -e.value;
        return a + nb;
    }

    friend bool operator==(const SparseRationalMatrix& a, const SparseRationalMatrix& b) {
        if (a.n_rows != b.n_rows || a.n_cols != b.n_cols) return false;
        if (a.entries.size() != b.entries.size()) return false;
        for (std::size_t i = 0; i < a.entries.size(); ++i)
            if (a.entries[i].row != b.entries[i].row || a.entries[i].col != b.entries[i].col ||
                a.entries[i].value != b.entries[i].value)
                return false;
        return true;
    }

    // Coordinate text: one "row col numerator denominator" line per entry.
    std::string to_coord_text() const {
        std::string s = std::to_string(n_rows) + " " + std::to_string(n_cols) + " " +
                        std::to_string(entries.size()) + "\n";
        for (const Entry& e : entries) {
            s += std::to_string(e.row) + " " + std::to_string(e.col) + " " +
                 e.value.get_num().get_str() + " " + e.value.get_den().get_str() + "\n";
        }
        return s;
    }

    nlohmann::json to_json() const {
        nlohmann::json ent = nlohmann::json::array();
        for (const Entry& e : entries)
            ent.push_back({e.row, e.col, e.value.get_num().get_str(), e.value.get_den().get_str()});
        return {{"n_rows", n_rows}, {"n_cols", n_cols}, {"entries", ent}};
    }
};

}  // namespace mell

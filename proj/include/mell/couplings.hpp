#pragma once

#include <random>
#include <stdexcept>
#include <vector>

#include "rational.hpp"

namespace mell {

// Amplitude table lambda_{m,n} for 1 <= n <= m <= ell, generated from the
// free primitives lambda_{m,1} via mu_m = prod_{j<=m} lambda_{j,1} and
// lambda_{m,n} = mu_m / (mu_{n-1} mu_{m-n}). The lambda_{m,n} weight the
// insertion/removal of the n-th member of an m-cluster; the product formula
// makes the quadratic compatibility relations hold identically.
class CouplingScheme {
public:
    static CouplingScheme build(const std::vector<Rational>& primitive) {
        if (primitive.empty()) throw std::invalid_argument("need at least one primitive amplitude");
        for (const Rational& p : primitive)
            if (p == 0) throw std::invalid_argument("primitive amplitudes must be nonzero");
        CouplingScheme s;
        s.ell_ = static_cast<int>(primitive.size());
        s.primitive_ = primitive;
        s.mu_.assign(static_cast<std::size_t>(s.ell_) + 1, Rational(1));
        for (int m = 1; m <= s.ell_; ++m)
            s.mu_[static_cast<std::size_t>(m)] =
                s.mu_[static_cast<std::size_t>(m - 1)] * primitive[static_cast<std::size_t>(m - 1)];
        s.table_.resize(static_cast<std::size_t>(s.ell_) * (static_cast<std::size_t>(s.ell_) + 1) / 2);
        for (int m = 1; m <= s.ell_; ++m)
            for (int n = 1; n <= m; ++n)
                s.table_[tri_index(m, n)] = s.mu_[static_cast<std::size_t>(m)] /
                                            (s.mu_[static_cast<std::size_t>(n - 1)] *
                                             s.mu_[static_cast<std::size_t>(m - n)]);
        return s;
    }

    static CouplingScheme all_ones(int ell) {
        return build(std::vector<Rational>(static_cast<std::size_t>(ell), Rational(1)));
    }

    static CouplingScheme random(int ell, std::mt19937_64& rng) {
        std::vector<Rational> p;
        p.reserve(static_cast<std::size_t>(ell));
        for (int i = 0; i < ell; ++i) p.push_back(random_nonzero_rational(rng));
        return build(p);
    }

    int ell() const { return ell_; }

    const std::vector<Rational>& primitive() const { return primitive_; }

    const Rational& mu(int m) const { return mu_.at(static_cast<std::size_t>(m)); }

    const Rational& lambda(int m, int n) const {
        if (n < 1 || m < n || m > ell_) throw std::out_of_range("lambda index out of range");
        return table_[tri_index(m, n)];
    }

    // Exhaustive check of lambda_{m,n} lambda_{m-n,p-n} == lambda_{m,p} lambda_{p-1,n}
    // over all 1 <= n < p <= m <= ell, exact.
    bool check_compatibility() const {
        for (int m = 1; m <= ell_; ++m)
            for (int p = 2; p <= m; ++p)
                for (int n = 1; n < p; ++n)
                    if (lambda(m, n) * lambda(m - n, p - n) != lambda(m, p) * lambda(p - 1, n))
                        return false;
        return true;
    }

    // Copy with one table entry replaced; test hook for corrupted tables.
    CouplingScheme with_lambda(int m, int n, const Rational& v) const {
        CouplingScheme s = *this;
        s.table_[tri_index(m, n)] = v;
        return s;
    }

private:
    static std::size_t tri_index(int m, int n) {
        return static_cast<std::size_t>(m - 1) * static_cast<std::size_t>(m) / 2 +
               static_cast<std::size_t>(n - 1);
    }

    int ell_ = 0;
    std::vector<Rational> primitive_;
    std::vector<Rational> mu_;
    std::vector<Rational> table_;
};

}  // namespace mell

#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <vector>

#include "basis.hpp"
#include "linalg.hpp"
#include "supercharge.hpp"

namespace mell {

struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Grade-f Hamiltonian block H_f = Q_{f-1} Q_{f-1}^T + Q_f^T Q_f (empty
// factors at the ends of the complex). Square, symmetric, exact.
inline SparseRationalMatrix build_h(const ChainSpec& spec, const GradedBasis& basis,
                                    const CouplingScheme& scheme, int f) {
    if (f < 0 || f > basis.f_max()) throw std::out_of_range("grade out of range");
    const long d = basis.dim(f);
    SparseRationalMatrix h(d, d);
    if (f > 0) {
        SparseRationalMatrix qprev = build_q(spec, basis, scheme, f - 1);
        h = h + qprev * qprev.transpose();
    }
    if (f < basis.f_max()) {
        SparseRationalMatrix qf = build_q(spec, basis, scheme, f);
        h = h + qf.transpose() * qf;
    }
    return h;
}

inline Eigen::MatrixXd densify(const SparseRationalMatrix& m) {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(m.n_rows, m.n_cols);
    for (const auto& e : m.entries) d(e.row, e.col) = e.value.get_d();
    return d;
}

// Eigenvalues of a symmetric block in double precision, ascending.
inline std::vector<double> numeric_spectrum(const SparseRationalMatrix& h,
                                            long max_dense_dim = 4096) {
    if (h.n_rows != h.n_cols) throw std::invalid_argument("block is not square");
    if (h.n_rows > max_dense_dim)
        throw ResourceError("block too large for dense eigendecomposition");
    if (h.n_rows == 0) return {};
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(densify(h),
                                                          Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigendecomposition failed");
    const auto& ev = solver.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

// Floating-point count of near-zero eigenvalues; advisory cross-check of the
// exact kernel dimension. Default tolerance 1e-9 (spectral gaps of these
// small blocks are O(1)).
inline long numeric_zero_modes(const SparseRationalMatrix& h, double tol = 1e-9,
                               long max_dense_dim = 4096) {
    long count = 0;
    for (double ev : numeric_spectrum(h, max_dense_dim))
        if (ev > -tol && ev < tol) ++count;
    return count;
}

// Exact dimension of ker H_f, via rank.
inline long exact_zero_modes(const SparseRationalMatrix& h) {
    if (h.n_rows != h.n_cols) throw std::invalid_argument("block is not square");
    return h.n_cols - rank(h);
}

}  // namespace mell

#pragma once

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <IterativeLinearSolvers>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace cstokes {

struct Triplet {
    int row = 0;
    int col = 0;
    double val = 0.0;
};

// Sparse matrix in compressed storage, assembled from (row, col, value)
// triplets with duplicate summation. Immutable after construction.
class SparseMatrix {
public:
    SparseMatrix() = default;

    SparseMatrix(int rows, int cols, const std::vector<Triplet>& triplets) : mat_(rows, cols) {
        std::vector<Eigen::Triplet<double>> ts;
        ts.reserve(triplets.size());
        for (const auto& t : triplets) {
            if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
                throw std::invalid_argument("SparseMatrix: triplet index (" + std::to_string(t.row) +
                                            "," + std::to_string(t.col) + ") out of range");
            ts.emplace_back(t.row, t.col, t.val);
        }
        mat_.setFromTriplets(ts.begin(), ts.end());
        mat_.prune(0.0, 0.0);  // drop explicit zeros
        mat_.makeCompressed();
    }

    int rows() const { return static_cast<int>(mat_.rows()); }
    int cols() const { return static_cast<int>(mat_.cols()); }
    int nnz() const { return static_cast<int>(mat_.nonZeros()); }

    double coeff(int i, int j) const { return mat_.coeff(i, j); }

    std::vector<double> apply(const std::vector<double>& x) const {
        Eigen::Map<const Eigen::VectorXd> xv(x.data(), mat_.cols());
        Eigen::VectorXd yv = mat_ * xv;
        return {yv.data(), yv.data() + yv.size()};
    }

    const Eigen::SparseMatrix<double>& eigen() const { return mat_; }

private:
    Eigen::SparseMatrix<double> mat_;
};

inline SparseMatrix assemble(int rows, int cols, const std::vector<Triplet>& triplets) {
    return SparseMatrix(rows, cols, triplets);
}

// Every solve returns its residual so callers can assert it.
struct SolveResult {
    std::vector<double> x;
    double residual = 0.0;  // ||Ax - b|| / ||b|| (absolute if b = 0)
    int iterations = 0;     // 0 for direct solves
};

namespace detail {
inline double relative_residual(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& x,
                                const Eigen::VectorXd& b) {
    const double bn = b.norm();
    const double rn = (A * x - b).norm();
    return bn > 0.0 ? rn / bn : rn;
}
}  // namespace detail

// Sparse LU with partial pivoting. Throws if the factorization fails or the
// residual exceeds tol (singular-to-tolerance systems).
inline SolveResult solve_direct(const SparseMatrix& A, const std::vector<double>& b,
                                double tol = 1e-12) {
    if (A.rows() != A.cols()) throw std::invalid_argument("solve_direct: matrix must be square");
    if (static_cast<int>(b.size()) != A.rows())
        throw std::invalid_argument("solve_direct: rhs size mismatch");

    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
    lu.compute(A.eigen());
    if (lu.info() != Eigen::Success)
        throw std::runtime_error("solve_direct: factorization failed (" + lu.lastErrorMessage() + ")");

    Eigen::Map<const Eigen::VectorXd> bv(b.data(), b.size());
    Eigen::VectorXd xv = lu.solve(bv);
    SolveResult r;
    r.residual = detail::relative_residual(A.eigen(), xv, bv);
    if (!std::isfinite(r.residual) || r.residual > tol)
        throw std::runtime_error("solve_direct: singular to tolerance, residual " +
                                 std::to_string(r.residual) + ", log|det| " +
                                 std::to_string(lu.logAbsDeterminant()));
    r.x.assign(xv.data(), xv.data() + xv.size());
    return r;
}

// Conjugate gradients for symmetric positive definite systems.
inline SolveResult solve_cg(const SparseMatrix& A, const std::vector<double>& b, double tol = 1e-10,
                            int max_iterations = 0) {
    if (A.rows() != A.cols()) throw std::invalid_argument("solve_cg: matrix must be square");
    if (static_cast<int>(b.size()) != A.rows())
        throw std::invalid_argument("solve_cg: rhs size mismatch");

    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
    cg.setTolerance(tol);
    if (max_iterations > 0) cg.setMaxIterations(max_iterations);
    cg.compute(A.eigen());

    Eigen::Map<const Eigen::VectorXd> bv(b.data(), b.size());
    Eigen::VectorXd xv = cg.solve(bv);
    SolveResult r;
    r.iterations = static_cast<int>(cg.iterations());
    r.residual = detail::relative_residual(A.eigen(), xv, bv);
    if (cg.info() != Eigen::Success)
        throw std::runtime_error("solve_cg: no convergence after " + std::to_string(r.iterations) +
                                 " iterations, residual " + std::to_string(r.residual));
    r.x.assign(xv.data(), xv.data() + xv.size());
    return r;
}

}  // namespace cstokes

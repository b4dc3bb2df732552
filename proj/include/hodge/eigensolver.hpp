#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "hodge/complex.hpp"

namespace hodge {

/// Eigenvalues of a pencil with their residuals. Values ascend; `zero_modes` counts
/// the leading entries classified as zero.
struct SpectrumResult {
    int degree = -1;
    double eps = 0.0;
    std::vector<double> eigenvalues;
    int zero_modes = 0;
    std::vector<double> residuals; ///< ‖Av − λBv‖ / (‖Bv‖ max(1, λ)), one per eigenvalue
    int iterations = 0;
    std::string solver;
    bool converged = true;
    double cond_estimate = 0.0; ///< of the mass matrix B; 0 when not estimated
    Eigen::MatrixXd vectors; ///< B-orthonormal eigenvectors (not serialized)
};

/// Raised when the iterative solver exhausts its iteration cap; carries the partial result.
class ConvergenceError : public NumericalError {
public:
    ConvergenceError(const std::string& what, SpectrumResult partial)
        : NumericalError(what), partial_(std::move(partial))
    {
    }
    const SpectrumResult& partial() const { return partial_; }

private:
    SpectrumResult partial_;
};

struct EigensolverOptions {
    double tol = 1e-10;          ///< relative residual target
    int max_iterations = 1000;
    int guard = -1;              ///< extra block vectors; negative selects max(4, k/2)
    std::uint64_t seed = 20020211;
};

/// Matrix-free view of a pencil (A, B) plus an approximate inverse of A + σB.
struct PencilOperators {
    Eigen::Index size = 0;
    std::function<Eigen::MatrixXd(const Eigen::MatrixXd&)> apply_a;
    std::function<Eigen::MatrixXd(const Eigen::MatrixXd&)> apply_b;
    /// Factorizes A + σB for the given shift and returns its solve.
    std::function<std::function<Eigen::MatrixXd(const Eigen::MatrixXd&)>(double)> make_preconditioner;
    double scale = 1.0; ///< rough magnitude of the spectrum, trace(A)/trace(B)
};

PencilOperators make_pencil(const Eigen::SparseMatrix<double>& a, const Eigen::SparseMatrix<double>& b);
PencilOperators make_pencil(const Eigen::MatrixXd& a, const Eigen::SparseMatrix<double>& b);

/// Block LOBPCG for the k smallest eigenpairs of Av = λBv on the B-orthogonal complement
/// of span(constraints). Vectors come out B-orthonormal. Deterministic for a fixed seed.
/// Throws ConvergenceError at the iteration cap.
SpectrumResult lobpcg(const PencilOperators& pencil, int k, const Eigen::MatrixXd& constraints,
                      const EigensolverOptions& options = {});

/// All eigenpairs by a dense Cholesky-reduced symmetric solve.
SpectrumResult dense_generalized_eigenpairs(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// The k smallest eigenvalues of Av = λBv (A symmetric PSD, B SPD) by LOBPCG.
/// Zero modes are those below zero_tol · max(λ_max(window), trace(A)/trace(B)).
SpectrumResult smallest_generalized_eigenpairs(const Eigen::SparseMatrix<double>& a,
                                               const Eigen::SparseMatrix<double>& b, int k,
                                               double tol = 1e-10, const EigensolverOptions& options = {});

/// Throws DomainError unless B is symmetric positive definite.
void require_spd(const Eigen::SparseMatrix<double>& b, const std::string& what);

/// Count of leading values below zero_tol · reference.
int count_zero_modes(const std::vector<double>& values, double reference, double zero_tol = 1e-8);

/// Consecutive eigenvalues whose relative gap is below `relative_gap` share a group.
struct EigenvalueGroup {
    double value = 0.0;
    int multiplicity = 0;
};
std::vector<EigenvalueGroup> group_multiplicities(const std::vector<double>& values, double relative_gap = 1e-6);

/// λ_max(B)/λ_min(B) for SPD B by power and inverse iteration.
double condition_estimate(const Eigen::SparseMatrix<double>& b, int iterations = 60);

} // namespace hodge

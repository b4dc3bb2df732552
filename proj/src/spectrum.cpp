#include "hodge/spectrum.hpp"

#include <algorithm>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include "hodge/cohomology.hpp"

namespace hodge {

namespace {

using Eigen::MatrixXd;

void check_conditioning(SpectrumResult& out, const SparseMatrix& b, const SpectrumOptions& options)
{
    out.cond_estimate = condition_estimate(b);
    if (!(out.cond_estimate <= options.max_condition)) {
        std::ostringstream os;
        os << "mass matrix condition estimate " << out.cond_estimate << " exceeds " << options.max_condition;
        throw NumericalError(os.str());
    }
}

std::string mismatch(const std::string& what, int found, int expected)
{
    return what + ": zero-mode count " + std::to_string(found) + " differs from the topological count " +
           std::to_string(expected);
}

template <typename Iterative, typename Dense>
SpectrumResult run_with_policy(const SpectrumOptions& options, int size, Iterative&& iterative, Dense&& dense)
{
    switch (options.solver) {
    case SolverChoice::Dense:
        return dense();
    case SolverChoice::Iterative:
        return iterative();
    case SolverChoice::Auto:
        try {
            return iterative();
        } catch (const ConvergenceError&) {
            if (size > dense_limit) throw;
            SpectrumResult out = dense();
            out.solver = "dense-fallback";
            return out;
        }
    }
    throw DomainError("unknown solver choice");
}

} // namespace

std::string to_string(SolverChoice s)
{
    switch (s) {
    case SolverChoice::Auto: return "auto";
    case SolverChoice::Iterative: return "iterative";
    case SolverChoice::Dense: return "dense";
    }
    return "auto";
}

SolverChoice solver_from_string(const std::string& s)
{
    if (s == "auto") return SolverChoice::Auto;
    if (s == "iterative") return SolverChoice::Iterative;
    if (s == "dense") return SolverChoice::Dense;
    throw DomainError("unknown solver '" + s + "'");
}

Eigen::MatrixXd coboundary_kernel_basis(const SimplicialComplex& complex, int p)
{
    const int cols = complex.count(p - 1);
    if (p - 1 >= complex.dimension()) return MatrixXd::Identity(cols, cols);
    const MatrixXd d = coboundary_matrix(complex, p - 1).to_dense();
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(d.transpose() * d);
    const auto& mu = es.eigenvalues();
    const double top = std::max(mu.size() ? mu.maxCoeff() : 0.0, 1.0);
    int kernel = 0;
    while (kernel < mu.size() && mu(kernel) < rank_threshold * top) ++kernel;
    return es.eigenvectors().leftCols(kernel);
}

Pencil im_d_pencil(const MassFamily& family, double eps, int p)
{
    if (p < 1 || p > family.dimension()) throw DomainError("spectrum_im_d: degree must lie in [1, n]");
    return {coboundary_stiffness(family, eps, p), family.weighted(eps, p - 1)};
}

SpectrumResult spectrum_im_d(const MassFamily& family, double eps, int p, const SpectrumOptions& options)
{
    if (!(eps > 0)) throw DomainError("spectrum_im_d: ε must be positive");
    const Pencil pencil = im_d_pencil(family, eps, p);
    const SimplicialComplex& complex = family.complex();
    const int size = static_cast<int>(pencil.b.rows());
    const int expected = complex.count(p - 1) - coboundary_rank(complex, p - 1);
    const int k = std::min(options.k, size - expected);
    if (k <= 0) throw DomainError("spectrum_im_d: Im(d) is trivial in this degree");

    SpectrumResult base;
    base.degree = p;
    base.eps = eps;
    check_conditioning(base, pencil.b, options);

    auto dense = [&]() -> SpectrumResult {
        SpectrumResult all = dense_generalized_eigenpairs(MatrixXd(pencil.a), MatrixXd(pencil.b));
        const double top = all.eigenvalues.back();
        const int zeros = count_zero_modes(all.eigenvalues, top, options.zero_tol);
        if (zeros != expected) throw NumericalError(mismatch("spectrum_im_d", zeros, expected));
        SpectrumResult out = base;
        out.solver = all.solver;
        out.zero_modes = zeros;
        out.eigenvalues.assign(all.eigenvalues.begin() + zeros, all.eigenvalues.begin() + zeros + k);
        out.residuals.assign(all.residuals.begin() + zeros, all.residuals.begin() + zeros + k);
        out.vectors = all.vectors.middleCols(zeros, k);
        return out;
    };
    auto iterative = [&]() -> SpectrumResult {
        const MatrixXd kernel = coboundary_kernel_basis(complex, p);
        if (kernel.cols() != expected) {
            throw NumericalError(mismatch("spectrum_im_d", static_cast<int>(kernel.cols()), expected));
        }
        const PencilOperators ops = make_pencil(pencil.a, pencil.b);
        EigensolverOptions e = options.eigensolver;
        e.tol = options.tol;
        SpectrumResult solved = lobpcg(ops, k, kernel, e);
        const double reference = std::max(solved.eigenvalues.back(), ops.scale);
        if (count_zero_modes(solved.eigenvalues, reference, options.zero_tol) != 0) {
            throw NumericalError(mismatch("spectrum_im_d", expected + 1, expected));
        }
        SpectrumResult out = base;
        out.solver = solved.solver;
        out.zero_modes = expected;
        out.eigenvalues = std::move(solved.eigenvalues);
        out.residuals = std::move(solved.residuals);
        out.iterations = solved.iterations;
        out.vectors = std::move(solved.vectors);
        return out;
    };
    return run_with_policy(options, size, iterative, dense);
}

SpectrumResult hodge_spectrum(const MassFamily& family, double eps, int p, const SpectrumOptions& options)
{
    if (!(eps > 0)) throw DomainError("hodge_spectrum: ε must be positive");
    const int n = family.dimension();
    if (p < 0 || p > n) throw DomainError("hodge_spectrum: degree must lie in [0, n]");
    const SimplicialComplex& complex = family.complex();
    const SparseMatrix m = family.weighted(eps, p);
    const int size = static_cast<int>(m.rows());

    MatrixXd a = MatrixXd::Zero(size, size);
    if (p < n) a += MatrixXd(coboundary_stiffness(family, eps, p + 1));
    if (p > 0) {
        const SparseMatrix d = coboundary(complex, p - 1);
        const SparseMatrix lower = family.weighted(eps, p - 1);
        Eigen::SimplicialLDLT<SparseMatrix> solver(lower);
        if (solver.info() != Eigen::Success) throw NumericalError("hodge_spectrum: lower mass matrix is singular");
        const MatrixXd md = MatrixXd(m * d);
        const MatrixXd z = solver.solve(MatrixXd(md.transpose()));
        a += md * z;
    }
    a = 0.5 * (a + a.transpose());

    const int expected = compute_betti(complex).betti[p];
    SpectrumResult base;
    base.degree = p;
    base.eps = eps;
    check_conditioning(base, m, options);

    auto finish = [&](SpectrumResult solved, int zeros) {
        if (zeros != expected) throw NumericalError(mismatch("hodge_spectrum", zeros, expected));
        const int keep = std::min<int>(std::max(options.k, zeros + 1), static_cast<int>(solved.eigenvalues.size()));
        SpectrumResult out = base;
        out.solver = solved.solver;
        out.zero_modes = zeros;
        out.iterations = solved.iterations;
        out.eigenvalues.assign(solved.eigenvalues.begin(), solved.eigenvalues.begin() + keep);
        out.residuals.assign(solved.residuals.begin(), solved.residuals.begin() + keep);
        out.vectors = solved.vectors.leftCols(keep);
        return out;
    };
    auto dense = [&]() -> SpectrumResult {
        SpectrumResult all = dense_generalized_eigenpairs(a, MatrixXd(m));
        return finish(all, count_zero_modes(all.eigenvalues, all.eigenvalues.back(), options.zero_tol));
    };
    auto iterative = [&]() -> SpectrumResult {
        const PencilOperators ops = make_pencil(a, m);
        EigensolverOptions e = options.eigensolver;
        e.tol = options.tol;
        // widen the window until it reaches past the zero modes
        int window = std::min(std::max(options.k, 1), size);
        while (true) {
            SpectrumResult solved = lobpcg(ops, window, MatrixXd(size, 0), e);
            const double reference = std::max(solved.eigenvalues.back(), ops.scale);
            const int zeros = count_zero_modes(solved.eigenvalues, reference, options.zero_tol);
            if (zeros < window || window == size) return finish(std::move(solved), zeros);
            window = std::min(2 * window, size);
        }
    };
    return run_with_policy(options, size, iterative, dense);
}

} // namespace hodge

#include "hodge/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <random>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

namespace hodge {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

struct RitzResult {
    MatrixXd coefficients; // basis coordinates of the Ritz vectors
    VectorXd values;
};

// B-orthonormal coordinates for span(S): column scaling, then two passes of Gram
// eigen-decomposition; directions with relative Gram eigenvalue below 1e-10 are dropped.
MatrixXd b_orthonormal_coordinates(const MatrixXd& s, const MatrixXd& bs)
{
    const Index m = s.cols();
    VectorXd scale(m);
    for (Index j = 0; j < m; ++j) {
        const double norm2 = s.col(j).dot(bs.col(j));
        scale(j) = norm2 > 0 ? 1.0 / std::sqrt(norm2) : 0.0;
    }
    MatrixXd coords = scale.asDiagonal();
    for (int pass = 0; pass < 2; ++pass) {
        const MatrixXd z = s * coords;
        const MatrixXd bz = bs * coords;
        MatrixXd gram = z.transpose() * bz;
        gram = 0.5 * (gram + gram.transpose());
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(gram);
        const VectorXd& mu = es.eigenvalues();
        const double top = mu.size() ? mu.maxCoeff() : 0.0;
        std::vector<Index> keep;
        for (Index i = 0; i < mu.size(); ++i) {
            if (mu(i) > 1e-10 * top) keep.push_back(i);
        }
        MatrixXd step(mu.size(), static_cast<Index>(keep.size()));
        for (std::size_t c = 0; c < keep.size(); ++c) {
            step.col(static_cast<Index>(c)) = es.eigenvectors().col(keep[c]) / std::sqrt(mu(keep[c]));
        }
        coords = coords * step;
    }
    return coords;
}

RitzResult rayleigh_ritz(const MatrixXd& s, const MatrixXd& as, const MatrixXd& bs, Index wanted)
{
    const MatrixXd v = b_orthonormal_coordinates(s, bs);
    MatrixXd h = v.transpose() * (s.transpose() * as) * v;
    h = 0.5 * (h + h.transpose());
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(h);
    const Index count = std::min<Index>(wanted, h.rows());
    return {v * es.eigenvectors().leftCols(count), es.eigenvalues().head(count)};
}

// X ← X − Y (BY)ᵀ X for B-orthonormal Y.
void project_out(MatrixXd& x, const MatrixXd& y, const MatrixXd& by)
{
    if (y.cols() == 0) return;
    x -= y * (by.transpose() * x);
}

double relative_residual(const VectorXd& r, const VectorXd& bv, double lambda)
{
    const double denom = bv.norm() * std::max(1.0, std::abs(lambda));
    return denom > 0 ? r.norm() / denom : r.norm();
}

// V ← B-orthonormal basis of span(V) B-orthogonal to the B-orthonormal Q; returns BV.
MatrixXd orthonormalize_against(MatrixXd& v, const MatrixXd& q, const MatrixXd& bq, const PencilOperators& pencil)
{
    MatrixXd bv;
    for (int pass = 0; pass < 2; ++pass) {
        v -= q * (bq.transpose() * v);
        bv = pencil.apply_b(v);
        const MatrixXd c = b_orthonormal_coordinates(v, bv);
        v = v * c;
        bv = bv * c;
    }
    return bv;
}

// Half the first Ritz value clear of the zero modes; near-zero shifts make A + σB singular.
double shift_target(const VectorXd& lambda, double scale)
{
    const double top = std::max(lambda(lambda.size() - 1), 1e-12 * std::max(scale, 1.0));
    for (Index i = 0; i < lambda.size(); ++i) {
        if (lambda(i) > 1e-6 * top) return 0.5 * lambda(i);
    }
    return 0.5 * top;
}

} // namespace

PencilOperators make_pencil(const Eigen::SparseMatrix<double>& a, const Eigen::SparseMatrix<double>& b)
{
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
        throw DomainError("pencil: A and B must be square of equal size");
    }
    PencilOperators ops;
    ops.size = a.rows();
    ops.apply_a = [a](const MatrixXd& x) -> MatrixXd { return a * x; };
    ops.apply_b = [b](const MatrixXd& x) -> MatrixXd { return b * x; };
    ops.make_preconditioner = [a, b](double sigma) {
        auto solver = std::make_shared<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>>();
        const Eigen::SparseMatrix<double> shifted = a + sigma * b;
        solver->compute(shifted);
        if (solver->info() != Eigen::Success) throw NumericalError("pencil: factorization of A + σB failed");
        return std::function<MatrixXd(const MatrixXd&)>([solver](const MatrixXd& r) -> MatrixXd {
            return solver->solve(r);
        });
    };
    const double tb = b.diagonal().sum();
    ops.scale = tb > 0 ? std::max(a.diagonal().sum() / tb, 0.0) : 1.0;
    return ops;
}

PencilOperators make_pencil(const MatrixXd& a, const Eigen::SparseMatrix<double>& b)
{
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
        throw DomainError("pencil: A and B must be square of equal size");
    }
    PencilOperators ops;
    ops.size = a.rows();
    ops.apply_a = [a](const MatrixXd& x) -> MatrixXd { return a * x; };
    ops.apply_b = [b](const MatrixXd& x) -> MatrixXd { return b * x; };
    ops.make_preconditioner = [a, b](double sigma) {
        auto solver = std::make_shared<Eigen::LLT<MatrixXd>>(a + sigma * MatrixXd(b));
        if (solver->info() != Eigen::Success) throw NumericalError("pencil: factorization of A + σB failed");
        return std::function<MatrixXd(const MatrixXd&)>([solver](const MatrixXd& r) -> MatrixXd {
            return solver->solve(r);
        });
    };
    const double tb = b.diagonal().sum();
    ops.scale = tb > 0 ? std::max(a.trace() / tb, 0.0) : 1.0;
    return ops;
}

SpectrumResult lobpcg(const PencilOperators& pencil, int k, const MatrixXd& constraints,
                      const EigensolverOptions& options)
{
    const Index n = pencil.size;
    if (k <= 0) throw DomainError("lobpcg: k must be positive");
    if (constraints.rows() != n && constraints.cols() > 0) throw DomainError("lobpcg: constraint size mismatch");

    // B-orthonormal constraint basis
    MatrixXd y = constraints.cols() > 0 ? constraints : MatrixXd(n, 0);
    MatrixXd by = y.cols() > 0 ? pencil.apply_b(y) : MatrixXd(n, 0);
    if (y.cols() > 0) {
        const MatrixXd c = b_orthonormal_coordinates(y, by);
        y = y * c;
        by = by * c;
    }
    const Index free = n - y.cols();
    if (k > free) throw DomainError("lobpcg: k exceeds the dimension of the constrained space");

    const int guard = options.guard >= 0 ? options.guard : std::max(4, k / 2);
    const Index m = std::min<Index>(k + guard, free);

    SpectrumResult out;
    out.solver = "lobpcg";

    // Small complements are solved exactly by Rayleigh–Ritz on the whole space.
    if (free <= 4 * m) {
        MatrixXd s = MatrixXd::Identity(n, n);
        project_out(s, y, by);
        const MatrixXd bs = pencil.apply_b(s);
        const MatrixXd as = pencil.apply_a(s);
        const RitzResult rr = rayleigh_ritz(s, as, bs, k);
        if (rr.values.size() < k) throw NumericalError("lobpcg: constrained space collapsed");
        const MatrixXd x = s * rr.coefficients;
        const MatrixXd ax = as * rr.coefficients;
        const MatrixXd bx = bs * rr.coefficients;
        for (int i = 0; i < k; ++i) {
            out.eigenvalues.push_back(rr.values(i));
            out.residuals.push_back(relative_residual(ax.col(i) - rr.values(i) * bx.col(i), bx.col(i), rr.values(i)));
        }
        out.vectors = x;
        return out;
    }

    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> normal;
    MatrixXd x(n, m);
    for (Index j = 0; j < m; ++j) {
        for (Index i = 0; i < n; ++i) x(i, j) = normal(rng);
    }
    project_out(x, y, by);
    MatrixXd ax = pencil.apply_a(x);
    MatrixXd bx = pencil.apply_b(x);
    {
        const RitzResult rr = rayleigh_ritz(x, ax, bx, m);
        if (rr.values.size() < m) throw NumericalError("lobpcg: degenerate start block");
        x = x * rr.coefficients;
        ax = ax * rr.coefficients;
        bx = bx * rr.coefficients;
        out.eigenvalues.assign(rr.values.data(), rr.values.data() + m);
    }
    VectorXd lambda = Eigen::Map<VectorXd>(out.eigenvalues.data(), m);

    // shift-invert preconditioner (A + σB)⁻¹, refactored as the Ritz values settle
    double sigma = shift_target(lambda, pencil.scale);
    auto precondition = pencil.make_preconditioner(sigma);

    MatrixXd p(n, 0);
    std::vector<double> residuals(m, 0.0);
    for (int it = 0;; ++it) {
        const MatrixXd r = ax - bx * lambda.asDiagonal();
        std::vector<Index> active;
        bool done = true;
        for (Index i = 0; i < m; ++i) {
            residuals[i] = relative_residual(r.col(i), bx.col(i), lambda(i));
            const bool ok = residuals[i] <= options.tol;
            if (i < k && !ok) done = false;
            if (!(i < k && ok)) active.push_back(i);
        }
        out.iterations = it;
        if (done) break;
        if (it == options.max_iterations) {
            out.converged = false;
            break;
        }

        MatrixXd w(n, static_cast<Index>(active.size()));
        for (std::size_t c = 0; c < active.size(); ++c) w.col(static_cast<Index>(c)) = r.col(active[c]);
        w = precondition(w);
        MatrixXd q(n, y.cols() + m), bq(n, y.cols() + m);
        q << y, x;
        bq << by, bx;
        const MatrixXd bw = orthonormalize_against(w, q, bq, pencil);
        const MatrixXd aw = pencil.apply_a(w);

        MatrixXd pa(n, 0), apa(n, 0), bpa(n, 0);
        if (p.cols() > 0) {
            pa.resize(n, static_cast<Index>(active.size()));
            for (std::size_t c = 0; c < active.size(); ++c) pa.col(static_cast<Index>(c)) = p.col(active[c]);
            MatrixXd qw(n, q.cols() + w.cols()), bqw(n, q.cols() + w.cols());
            qw << q, w;
            bqw << bq, bw;
            bpa = orthonormalize_against(pa, qw, bqw, pencil);
            apa = pencil.apply_a(pa);
        }
        const Index width = m + w.cols() + pa.cols();
        MatrixXd s(n, width), as(n, width), bs(n, width);
        s << x, w, pa;
        as << ax, aw, apa;
        bs << bx, bw, bpa;

        const RitzResult rr = rayleigh_ritz(s, as, bs, m);
        if (rr.values.size() < m) throw NumericalError("lobpcg: search space collapsed");
        const MatrixXd& c = rr.coefficients;
        p = s.rightCols(width - m) * c.bottomRows(width - m);
        x = s * c;
        project_out(x, y, by);
        ax = pencil.apply_a(x);
        bx = pencil.apply_b(x);
        lambda = rr.values;

        const double target = shift_target(lambda, pencil.scale);
        if (sigma > 4 * target || sigma < 0.05 * target) {
            sigma = target;
            precondition = pencil.make_preconditioner(sigma);
        }
    }

    out.eigenvalues.assign(lambda.data(), lambda.data() + k);
    out.residuals.assign(residuals.begin(), residuals.begin() + k);
    out.vectors = x.leftCols(k);
    if (!out.converged) {
        throw ConvergenceError("lobpcg: no convergence after " + std::to_string(options.max_iterations) + " iterations",
                               out);
    }
    return out;
}

SpectrumResult dense_generalized_eigenpairs(const MatrixXd& a, const MatrixXd& b)
{
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
        throw DomainError("dense eigensolver: A and B must be square of equal size");
    }
    const MatrixXd as = 0.5 * (a + a.transpose());
    const MatrixXd bs = 0.5 * (b + b.transpose());
    Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXd> es(as, bs, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
    if (es.info() != Eigen::Success) throw NumericalError("dense eigensolver: B is not positive definite");
    SpectrumResult out;
    out.solver = "dense";
    const VectorXd& values = es.eigenvalues();
    out.vectors = es.eigenvectors();
    const MatrixXd av = as * out.vectors;
    const MatrixXd bv = bs * out.vectors;
    for (Index i = 0; i < values.size(); ++i) {
        out.eigenvalues.push_back(values(i));
        out.residuals.push_back(relative_residual(av.col(i) - values(i) * bv.col(i), bv.col(i), values(i)));
    }
    return out;
}

void require_spd(const Eigen::SparseMatrix<double>& b, const std::string& what)
{
    if (b.rows() != b.cols()) throw DomainError(what + ": matrix is not square");
    const Eigen::SparseMatrix<double> bt = b.transpose();
    const double asym = (b - bt).norm();
    if (asym > 1e-12 * std::max(1.0, b.norm())) throw DomainError(what + ": matrix is not symmetric");
    Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(b);
    if (llt.info() != Eigen::Success) throw DomainError(what + ": matrix is not positive definite");
}

int count_zero_modes(const std::vector<double>& values, double reference, double zero_tol)
{
    int count = 0;
    for (double v : values) {
        if (v < zero_tol * reference) ++count;
        else break;
    }
    return count;
}

SpectrumResult smallest_generalized_eigenpairs(const Eigen::SparseMatrix<double>& a,
                                               const Eigen::SparseMatrix<double>& b, int k, double tol,
                                               const EigensolverOptions& options)
{
    require_spd(b, "generalized eigenproblem B");
    EigensolverOptions opts = options;
    opts.tol = tol;
    const PencilOperators pencil = make_pencil(a, b);
    SpectrumResult out = lobpcg(pencil, k, MatrixXd(a.rows(), 0), opts);
    const double top = out.eigenvalues.empty() ? 0.0 : out.eigenvalues.back();
    out.zero_modes = count_zero_modes(out.eigenvalues, std::max(top, pencil.scale));
    return out;
}

std::vector<EigenvalueGroup> group_multiplicities(const std::vector<double>& values, double relative_gap)
{
    std::vector<EigenvalueGroup> groups;
    for (double v : values) {
        if (!groups.empty()) {
            EigenvalueGroup& last = groups.back();
            const double reference = std::max({std::abs(v), std::abs(last.value), 1e-300});
            if (std::abs(v - last.value) <= relative_gap * reference) {
                last.value = (last.value * last.multiplicity + v) / (last.multiplicity + 1);
                ++last.multiplicity;
                continue;
            }
        }
        groups.push_back({v, 1});
    }
    return groups;
}

double condition_estimate(const Eigen::SparseMatrix<double>& b, int iterations)
{
    const Index n = b.rows();
    if (n == 0) return 1.0;
    VectorXd start(n);
    for (Index i = 0; i < n; ++i) start(i) = 1.0 + 0.5 * std::sin(1.0 + 0.7 * static_cast<double>(i));
    start.normalize();

    VectorXd v = start;
    double largest = 0;
    for (int it = 0; it < iterations; ++it) {
        VectorXd w = b * v;
        largest = v.dot(w);
        const double norm = w.norm();
        if (norm == 0) return std::numeric_limits<double>::infinity();
        v = w / norm;
    }

    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(b);
    if (ldlt.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
    v = start;
    double smallest_inverse = 0;
    for (int it = 0; it < iterations; ++it) {
        VectorXd w = ldlt.solve(v);
        smallest_inverse = v.dot(w);
        const double norm = w.norm();
        if (!std::isfinite(norm) || norm == 0) return std::numeric_limits<double>::infinity();
        v = w / norm;
    }
    if (!(smallest_inverse > 0)) return std::numeric_limits<double>::infinity();
    return largest * smallest_inverse;
}

} // namespace hodge

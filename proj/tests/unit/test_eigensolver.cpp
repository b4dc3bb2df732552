#include <doctest.h>

#include <random>

#include <Eigen/Eigenvalues>

#include "hodge/eigensolver.hpp"

using namespace hodge;

namespace {

using Sparse = Eigen::SparseMatrix<double>;

Sparse sparse(const Eigen::MatrixXd& m)
{
    return m.sparseView();
}

// Path-graph Laplacian on n vertices.
Eigen::MatrixXd path_laplacian(int n)
{
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) {
        l(i, i) += 1;
        l(i + 1, i + 1) += 1;
        l(i, i + 1) -= 1;
        l(i + 1, i) -= 1;
    }
    return l;
}

// Random sparse-ish SPD pencil with a 3-dimensional kernel in A.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> random_pencil(int n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    Eigen::MatrixXd g(n, n - 3);
    for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = normal(rng);
    Eigen::MatrixXd h(n, n);
    for (Eigen::Index i = 0; i < h.size(); ++i) h.data()[i] = normal(rng);
    const Eigen::MatrixXd a = g * g.transpose();
    const Eigen::MatrixXd b = h * h.transpose() / n + Eigen::MatrixXd::Identity(n, n);
    return {a, b};
}

} // namespace

TEST_CASE("diagonal pencil diag(0,1,4) against I")
{
    Eigen::MatrixXd a = Eigen::Vector3d(0, 1, 4).asDiagonal();
    const SpectrumResult r = smallest_generalized_eigenpairs(sparse(a), sparse(Eigen::Matrix3d::Identity()), 3);
    REQUIRE(r.eigenvalues.size() == 3);
    CHECK(std::abs(r.eigenvalues[0]) <= 1e-12);
    CHECK(r.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.eigenvalues[2] == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(r.zero_modes == 1);
}

TEST_CASE("doubling B halves every eigenvalue")
{
    const int n = 30;
    const Eigen::MatrixXd l = path_laplacian(n);
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    const SpectrumResult one = smallest_generalized_eigenpairs(sparse(l), sparse(id), 6);
    const SpectrumResult two = smallest_generalized_eigenpairs(sparse(l), sparse(2 * id), 6);
    for (int j = 1; j < 6; ++j) {
        CHECK(two.eigenvalues[j] == doctest::Approx(one.eigenvalues[j] / 2).epsilon(1e-10));
        // path Laplacian: 4 sin²(jπ/2n)
        const double exact = 4 * std::pow(std::sin(j * EIGEN_PI / (2 * n)), 2);
        CHECK(one.eigenvalues[j] == doctest::Approx(exact).epsilon(1e-10));
    }
    CHECK(one.zero_modes == 1);
}

TEST_CASE("iterative solver matches the dense solve on a random pencil")
{
    const auto [a, b] = random_pencil(50, 11);
    const SpectrumResult iterative = smallest_generalized_eigenpairs(sparse(a), sparse(b), 8);
    const SpectrumResult dense = dense_generalized_eigenpairs(a, b);
    CHECK(iterative.solver == "lobpcg");
    CHECK(dense.solver == "dense");
    CHECK(iterative.zero_modes == 3);
    for (int j = 0; j < 8; ++j) {
        const double scale = std::max(1.0, std::abs(dense.eigenvalues[j]));
        CHECK(std::abs(iterative.eigenvalues[j] - dense.eigenvalues[j]) <= 1e-9 * scale);
    }
    for (double r : iterative.residuals) CHECK(r <= 1e-10);
}

TEST_CASE("eigenvectors are B-orthonormal")
{
    const auto [a, b] = random_pencil(40, 5);
    const SpectrumResult r = smallest_generalized_eigenpairs(sparse(a), sparse(b), 6);
    const Eigen::MatrixXd gram = r.vectors.transpose() * b * r.vectors;
    CHECK((gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("constraints deflate a subspace")
{
    const int n = 30;
    const Eigen::MatrixXd l = path_laplacian(n);
    const Eigen::MatrixXd ones = Eigen::VectorXd::Ones(n).normalized();
    const PencilOperators pencil = make_pencil(sparse(l), sparse(Eigen::MatrixXd::Identity(n, n)));
    const SpectrumResult r = lobpcg(pencil, 3, ones);
    const double first = 4 * std::pow(std::sin(EIGEN_PI / (2 * n)), 2);
    CHECK(r.eigenvalues[0] == doctest::Approx(first).epsilon(1e-10));
    CHECK(std::abs(ones.col(0).dot(r.vectors.col(0))) <= 1e-10);
}

TEST_CASE("a fixed seed is bit-reproducible")
{
    const auto [a, b] = random_pencil(60, 3);
    const SpectrumResult first = smallest_generalized_eigenpairs(sparse(a), sparse(b), 5);
    const SpectrumResult second = smallest_generalized_eigenpairs(sparse(a), sparse(b), 5);
    CHECK(first.eigenvalues == second.eigenvalues);
    CHECK(first.iterations == second.iterations);
}

TEST_CASE("B must be symmetric positive definite")
{
    const Eigen::MatrixXd a = path_laplacian(5);
    Eigen::MatrixXd b = Eigen::MatrixXd::Identity(5, 5);
    b(2, 2) = -1;
    CHECK_THROWS_AS(smallest_generalized_eigenpairs(sparse(a), sparse(b), 2), DomainError);
    Eigen::MatrixXd skew = Eigen::MatrixXd::Identity(5, 5);
    skew(0, 1) = 0.5;
    CHECK_THROWS_AS(require_spd(sparse(skew), "B"), DomainError);
}

TEST_CASE("the iteration cap raises ConvergenceError with a partial result")
{
    const auto [a, b] = random_pencil(80, 9);
    EigensolverOptions options;
    options.max_iterations = 1;
    options.tol = 1e-14;
    try {
        smallest_generalized_eigenpairs(sparse(a), sparse(b), 6, 1e-14, options);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK_FALSE(e.partial().converged);
        CHECK(e.partial().iterations == 1);
    }
}

TEST_CASE("zero-mode classification and multiplicity grouping")
{
    CHECK(count_zero_modes({1e-12, 2e-10, 1.0, 3.0}, 3.0) == 2);
    CHECK(count_zero_modes({1.0, 2.0}, 2.0) == 0);
    const auto groups = group_multiplicities({2.0, 2.0 + 1e-9, 2.0 - 1e-9, 6.0, 6.0, 6.0, 6.0, 6.0, 12.0});
    REQUIRE(groups.size() == 3);
    CHECK(groups[0].multiplicity == 3);
    CHECK(groups[1].multiplicity == 5);
    CHECK(groups[2].multiplicity == 1);
    CHECK(group_multiplicities({1.0, 1.001}).size() == 2);
}

TEST_CASE("condition estimate of a diagonal matrix")
{
    Eigen::VectorXd d(6);
    d << 1, 2, 3, 5, 8, 100;
    const double c = condition_estimate(sparse(Eigen::MatrixXd(d.asDiagonal())));
    CHECK(c == doctest::Approx(100.0).epsilon(1e-6));
}

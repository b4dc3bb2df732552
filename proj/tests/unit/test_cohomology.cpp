#include <doctest.h>

#include "hodge/builders.hpp"
#include "hodge/catalog.hpp"
#include "hodge/cohomology.hpp"

using namespace hodge;

namespace {

std::vector<Mesh> builtins()
{
    return {build_circle(12), build_flat_torus(4, 4), build_icosphere(0), build_icosphere(1), build_s3_600cell(0)};
}

// Closed-form Betti numbers of the model manifolds.
std::vector<int> expected_betti(const std::string& name)
{
    if (name.rfind("circle", 0) == 0) return {1, 1};
    if (name.rfind("torus", 0) == 0) return {1, 2, 1};
    if (name.rfind("icosphere", 0) == 0) return {1, 0, 1};
    return {1, 0, 0, 1};
}

} // namespace

TEST_CASE("Betti numbers of the model manifolds")
{
    for (const Mesh& m : builtins()) {
        INFO(m.name);
        const BettiResult r = compute_betti(*m.complex);
        CHECK(r.betti == expected_betti(m.name));
        CHECK(r.warnings.empty());
    }
}

TEST_CASE("alternating Betti sum equals the Euler characteristic")
{
    for (const Mesh& m : builtins()) {
        const auto b = betti_numbers(*m.complex);
        long sum = 0;
        for (std::size_t p = 0; p < b.size(); ++p) sum += (p % 2 ? -1 : 1) * b[p];
        CHECK(sum == euler_characteristic(*m.complex));
    }
}

TEST_CASE("subdivision preserves Betti numbers")
{
    for (const Mesh& m : {build_circle(5), build_flat_torus(3, 3), build_icosphere(0), build_s3_600cell(0)}) {
        CHECK(betti_numbers(refine(*m.complex).complex) == betti_numbers(*m.complex));
    }
}

TEST_CASE("reduced Betti numbers shift under suspension")
{
    for (const Mesh& m : builtins()) {
        const auto base = reduced_betti(betti_numbers(*m.complex));
        const auto susp = reduced_betti(betti_numbers(suspension(*m.complex)));
        REQUIRE(susp.size() == base.size() + 1);
        CHECK(susp[0] == 0);
        for (std::size_t p = 1; p < susp.size(); ++p) CHECK(susp[p] == base[p - 1]);
    }
    CHECK(betti_numbers(suspension(*build_circle(12).complex)) == std::vector<int>{1, 0, 1});
    CHECK(betti_numbers(suspension(icosahedron_complex())) == std::vector<int>{1, 0, 0, 1});
    CHECK(betti_numbers(suspension(cell600_complex())) == std::vector<int>{1, 0, 0, 0, 1});
}

TEST_CASE("kernel_dimension reads dim Ker d_p")
{
    const auto k = *build_flat_torus(4, 4).complex;
    const BettiResult r = compute_betti(k);
    CHECK(kernel_dimension(r, 0) == 1);
    CHECK(kernel_dimension(r, 1) == 2 + 15);
    CHECK(kernel_dimension(r, 2) == 32);
}

TEST_CASE("circle harmonic 1-cochain is uniform")
{
    const auto k = *build_circle(12).complex;
    const CohomologyBasis basis = cohomology_basis(k, 1);
    REQUIRE(basis.dimension() == 1);
    // orientation of the closing edge {0, 11} is reversed relative to the cycle
    Eigen::VectorXd cycle = Eigen::VectorXd::Ones(12);
    cycle(k.find({0, 11})) = -1;
    const double overlap = std::abs(cycle.normalized().dot(basis.cocycles.col(0)));
    CHECK(overlap == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("icosphere has no harmonic 1-cochains")
{
    CHECK(cohomology_basis(*build_icosphere(1).complex, 1).dimension() == 0);
}

TEST_CASE("torus harmonic 1-cochains pair nondegenerately with the axis cycles")
{
    const int n = 4;
    const auto k = *build_flat_torus(n, n).complex;
    const CohomologyBasis basis = cohomology_basis(k, 1);
    REQUIRE(basis.dimension() == 2);
    CHECK((Eigen::MatrixXd(coboundary(k, 1) * basis.cocycles)).cwiseAbs().maxCoeff() <= 1e-10);
    // integrate over the cycles j = 0 (x-axis) and i = 0 (y-axis)
    Eigen::MatrixXd cycles = Eigen::MatrixXd::Zero(k.count(1), 2);
    for (int i = 0; i < n; ++i) {
        const int a = i, b = (i + 1) % n;
        cycles(k.find({std::min(a, b), std::max(a, b)}), 0) = a < b ? 1 : -1;
        const int c = n * i, d = n * ((i + 1) % n);
        cycles(k.find({std::min(c, d), std::max(c, d)}), 1) = c < d ? 1 : -1;
    }
    const Eigen::MatrixXd pairing = cycles.transpose() * basis.cocycles;
    CHECK(std::abs(pairing.determinant()) > 1e-3);
}

TEST_CASE("identity map induces an injective map")
{
    for (const Mesh& m : builtins()) {
        std::vector<int> identity(m.complex->count(0));
        for (int i = 0; i < m.complex->count(0); ++i) identity[i] = i;
        const auto maps = simplicial_pullback(*m.complex, *m.complex, identity);
        for (int p = 0; p <= m.complex->dimension(); ++p) {
            CHECK(induced_map_kernel_dim(maps, *m.complex, *m.complex, p) == 0);
        }
    }
}

TEST_CASE("torus to circle projection pulls back injectively")
{
    const Mesh torus = with_action(build_flat_torus(4, 4), "translation");
    const QuotientModel q = builtin_quotient(torus);
    REQUIRE(q.vertex_map);
    CHECK(q.complex.count(0) == 4);
    const auto maps = simplicial_pullback(q.complex, *torus.complex, *q.vertex_map);
    CHECK(induced_map_kernel_dim(maps, q.complex, *torus.complex, 1) == 0);
    CHECK(induced_map_kernel_dim(maps, q.complex, *torus.complex, 0) == 0);
}

TEST_CASE("map to a point induces an injective map in degree 0")
{
    const auto k = *build_icosphere(0).complex;
    const auto maps = simplicial_pullback(point_complex(), k, std::vector<int>(k.count(0), 0));
    CHECK(induced_map_kernel_dim(maps, point_complex(), k, 0) == 0);
}

TEST_CASE("a non-chain map is rejected")
{
    const auto k = *build_circle(5).complex;
    std::vector<int> identity{0, 1, 2, 3, 4};
    auto maps = simplicial_pullback(k, k, identity);
    maps[1] *= 2.0;
    CHECK_THROWS_AS(induced_map_kernel_dim(maps, k, k, 1), DomainError);
}

TEST_CASE("induced kernel never exceeds the source Betti number")
{
    const Mesh torus = build_flat_torus(5, 3);
    const QuotientModel q = builtin_quotient(torus);
    const auto maps = simplicial_pullback(q.complex, *torus.complex, *q.vertex_map);
    const auto b = betti_numbers(q.complex);
    for (int p = 0; p <= q.complex.dimension(); ++p) {
        CHECK(induced_map_kernel_dim(maps, q.complex, *torus.complex, p) <= b[p]);
    }
}

TEST_CASE("kernel lower bound")
{
    const KernelBound hopf = kernel_dim_lower_bound({1, 0, 1}, {1, 0, 0, 1}, 2);
    CHECK(hopf.dimension == 1);
    CHECK(hopf.exact);
    const KernelBound torus = kernel_dim_lower_bound({1, 1}, {1, 2, 1}, 1);
    CHECK(torus.dimension == 0);
    CHECK_FALSE(torus.exact);
    // suspension-of-Hopf model: ΣCP¹ = ΣS² over M = S⁴, both built as complexes
    const auto quotient = betti_numbers(suspension(icosahedron_complex()));
    const auto sphere4 = betti_numbers(suspension(suspension(icosahedron_complex())));
    CHECK(sphere4 == std::vector<int>{1, 0, 0, 0, 1});
    const KernelBound suspended = kernel_dim_lower_bound(quotient, sphere4, 3);
    CHECK(suspended.dimension == 1);
    CHECK(suspended.exact);
    CHECK(kernel_dim_lower_bound(quotient, sphere4, 7).dimension == 0);
}

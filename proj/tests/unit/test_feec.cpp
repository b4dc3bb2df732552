#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include "hodge/builders.hpp"
#include "hodge/feec.hpp"

using namespace hodge;

namespace {

double factorial(int k)
{
    double f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

GeometryData single_simplex(const Eigen::MatrixXd& vertices)
{
    const int n = static_cast<int>(vertices.rows()) - 1;
    Simplex top(n + 1);
    for (int i = 0; i <= n; ++i) top[i] = i;
    auto k = std::make_shared<const SimplicialComplex>(SimplicialComplex::from_top_simplices({top}, n + 1));
    return make_geometry(k, vertices);
}

// Ambient gradients of the barycentric coordinates, one per row.
Eigen::MatrixXd barycentric_gradients(const Eigen::MatrixXd& vertices)
{
    const int n = static_cast<int>(vertices.rows()) - 1;
    Eigen::MatrixXd e(vertices.cols(), n);
    for (int i = 1; i <= n; ++i) e.col(i - 1) = (vertices.row(i) - vertices.row(0)).transpose();
    const Eigen::MatrixXd pinv = (e.transpose() * e).inverse() * e.transpose();
    Eigen::MatrixXd grads(n + 1, vertices.cols());
    grads.bottomRows(n) = pinv;
    grads.row(0) = -pinv.colwise().sum();
    return grads;
}

double simplex_volume(const Eigen::MatrixXd& vertices)
{
    const int n = static_cast<int>(vertices.rows()) - 1;
    Eigen::MatrixXd e(vertices.cols(), n);
    for (int i = 1; i <= n; ++i) e.col(i - 1) = (vertices.row(i) - vertices.row(0)).transpose();
    return std::sqrt((e.transpose() * e).determinant()) / factorial(n);
}

// Whitney mass on one flat simplex from wedges of barycentric gradients:
// ⟨dλ_I, dλ_J⟩ = det(∇λ_I · ∇λ_J) and ∫λ_aλ_b = vol·n!(1 + δ_ab)/(n + 2)!.
Eigen::MatrixXd oracle_mass(const Eigen::MatrixXd& vertices, const std::vector<Simplex>& faces)
{
    const int n = static_cast<int>(vertices.rows()) - 1;
    const Eigen::MatrixXd grads = barycentric_gradients(vertices);
    const Eigen::MatrixXd g = grads * grads.transpose();
    const double vol = simplex_volume(vertices);
    const auto lambda_product = [&](int a, int b) { return vol * factorial(n) * (a == b ? 2 : 1) / factorial(n + 2); };
    const int p = static_cast<int>(faces.front().size()) - 1;
    const auto drop = [](const Simplex& s, int k) {
        Simplex out;
        for (int i = 0; i < static_cast<int>(s.size()); ++i) {
            if (i != k) out.push_back(s[i]);
        }
        return out;
    };
    const int count = static_cast<int>(faces.size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(count, count);
    for (int x = 0; x < count; ++x) {
        for (int y = 0; y < count; ++y) {
            double sum = 0;
            for (int k = 0; k <= p; ++k) {
                for (int l = 0; l <= p; ++l) {
                    const Simplex a = drop(faces[x], k);
                    const Simplex b = drop(faces[y], l);
                    Eigen::MatrixXd minor(p, p);
                    for (int i = 0; i < p; ++i) {
                        for (int j = 0; j < p; ++j) minor(i, j) = g(a[i], b[j]);
                    }
                    const double wedge = p == 0 ? 1.0 : minor.determinant();
                    sum += ((k + l) % 2 ? -1 : 1) * lambda_product(faces[x][k], faces[y][l]) * wedge;
                }
            }
            m(x, y) = factorial(p) * factorial(p) * sum;
        }
    }
    return m;
}

Eigen::MatrixXd ordered(const SparseMatrix& m, const SimplicialComplex& k, const std::vector<Simplex>& faces)
{
    const Eigen::MatrixXd dense(m);
    Eigen::MatrixXd out(faces.size(), faces.size());
    for (std::size_t i = 0; i < faces.size(); ++i) {
        for (std::size_t j = 0; j < faces.size(); ++j) out(i, j) = dense(k.find(faces[i]), k.find(faces[j]));
    }
    return out;
}

std::vector<Simplex> faces_of(const SimplicialComplex& k, int p)
{
    std::vector<Simplex> out;
    for (int i = 0; i < k.count(p); ++i) out.push_back(k.simplex(p, i));
    return out;
}

void check_against_oracle(const Eigen::MatrixXd& vertices, int p)
{
    const GeometryData geom = single_simplex(vertices);
    const auto faces = faces_of(*geom.complex, p);
    const Eigen::MatrixXd expected = oracle_mass(vertices, faces);
    const Eigen::MatrixXd actual = ordered(mass_matrix(geom, p), *geom.complex, faces);
    INFO("p = " << p);
    CHECK((actual - expected).cwiseAbs().maxCoeff() <= 1e-12 * expected.cwiseAbs().maxCoeff());
}

Eigen::MatrixXd triangle_vertices()
{
    Eigen::MatrixXd v(3, 2);
    v << 0.1, -0.2, 1.3, 0.1, 0.4, 0.9;
    return v;
}

Eigen::MatrixXd tet_vertices()
{
    Eigen::MatrixXd v(4, 3);
    v << 0, 0, 0, 1.1, 0.1, -0.2, 0.3, 0.8, 0.1, 0.2, 0.3, 1.4;
    return v;
}

double quadratic_form(const SparseMatrix& m, const Eigen::VectorXd& x)
{
    return x.dot(m * x);
}

bool is_positive_definite(const SparseMatrix& m)
{
    Eigen::SimplicialLLT<SparseMatrix> llt(m);
    return llt.info() == Eigen::Success;
}

double max_asymmetry(const SparseMatrix& m)
{
    const Eigen::MatrixXd d(m);
    return (d - d.transpose()).cwiseAbs().maxCoeff() / d.cwiseAbs().maxCoeff();
}

} // namespace

TEST_CASE("Whitney mass matches the gradient-wedge oracle on a triangle")
{
    for (int p = 0; p <= 2; ++p) check_against_oracle(triangle_vertices(), p);
}

TEST_CASE("Whitney mass matches the gradient-wedge oracle on a tetrahedron")
{
    for (int p = 0; p <= 3; ++p) check_against_oracle(tet_vertices(), p);
}

TEST_CASE("mass is intrinsic: an isometric embedding in higher dimension changes nothing")
{
    const Eigen::MatrixXd flat = triangle_vertices();
    // rotate the plane into ℝ³ and translate
    const Eigen::Matrix3d q = Eigen::AngleAxisd(0.7, Eigen::Vector3d(1, 2, 3).normalized()).toRotationMatrix();
    Eigen::MatrixXd lifted(3, 3);
    for (int i = 0; i < 3; ++i) lifted.row(i) = (q * Eigen::Vector3d(flat(i, 0), flat(i, 1), 0)).transpose() + Eigen::RowVector3d(5, -1, 2);
    for (int p = 0; p <= 2; ++p) {
        const Eigen::MatrixXd a(mass_matrix(single_simplex(flat), p));
        const Eigen::MatrixXd b(mass_matrix(single_simplex(lifted), p));
        CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-12 * a.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("interval mass: closed-form linear-element integrals")
{
    Eigen::Matrix3d pattern;
    pattern << 2, 1, 0, 1, 4, 1, 0, 1, 2;
    // two unit-length elements
    const Eigen::MatrixXd unit_elements(mass_matrix(build_path(2, 2.0).geometry, 0));
    CHECK((unit_elements - pattern / 6.0).cwiseAbs().maxCoeff() <= 1e-14);
    // unit interval split in two: half-length elements
    const Eigen::MatrixXd unit_interval(mass_matrix(build_path(2, 1.0).geometry, 0));
    CHECK((unit_interval - pattern / 12.0).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("p = 0 mass entries total the mesh volume")
{
    for (const Mesh& m : {build_circle(12), build_flat_torus(3, 4), build_icosphere(1), build_s3_600cell(0)}) {
        const SparseMatrix mass = mass_matrix(m.geometry, 0);
        CHECK(Eigen::MatrixXd(mass).sum() == doctest::Approx(m.geometry.total_volume()).epsilon(1e-12));
    }
}

TEST_CASE("icosphere level 2 area approaches 4π")
{
    const Mesh m = build_icosphere(2);
    const double area = Eigen::MatrixXd(mass_matrix(m.geometry, 0)).sum();
    CHECK(std::abs(area - 4 * std::numbers::pi) <= 0.02 * 4 * std::numbers::pi);
}

TEST_CASE("ρ_ε from the determinant formula")
{
    CHECK(rho_from_fields(Eigen::Vector3d(0, 1, 0), 0.5) == doctest::Approx(std::sqrt(1.25)).epsilon(1e-15));
    CHECK(rho_from_fields(Eigen::Vector3d::Zero(), 0.5) == doctest::Approx(0.5).epsilon(1e-15));
    const Mesh s3 = build_s3_600cell(0);
    const auto rule = s3.geometry.quadrature();
    for (int s = 0; s < 20; ++s) {
        for (int q = 0; q < rule.size(); ++q) {
            const Eigen::VectorXd x = s3.geometry.position(s, rule.barycentric.col(q));
            CHECK(rho(s3.action, s3.geometry, x, 1.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(rho_from_fields(Eigen::Vector3d(0, 1, 0), 0.0), DomainError);
}

TEST_CASE("ρ_ε is nondecreasing in ε and bounded below by ε^dim G")
{
    const Mesh s2 = build_icosphere(1);
    const auto rule = s2.geometry.quadrature();
    for (int s = 0; s < s2.complex->count(2); s += 7) {
        const Eigen::VectorXd x = s2.geometry.position(s, rule.barycentric.col(0));
        double previous = 0;
        for (double eps : {0.05, 0.1, 0.5, 1.0}) {
            const double r = rho(s2.action, s2.geometry, x, eps);
            CHECK(r >= eps);
            CHECK(r >= previous);
            previous = r;
        }
    }
}

TEST_CASE("free action: the 𝔤/𝔥 formula agrees with the full determinant at every node")
{
    const Mesh s3 = build_s3_600cell(0);
    const auto rule = s3.geometry.quadrature();
    for (int s = 0; s < s3.complex->count(3); ++s) {
        for (int q = 0; q < rule.size(); ++q) {
            const Eigen::VectorXd x = project_to_manifold(s3.geometry.manifold, s3.geometry.position(s, rule.barycentric.col(q)));
            const Eigen::MatrixXd fields = s3.action.fields_at(x);
            for (double eps : {0.1, 1.0}) {
                CHECK(std::abs(rho_from_fields(fields, eps, 0) - orbit_volume_density(fields, eps)) <= 1e-12);
            }
        }
    }
}

TEST_CASE("Hopf action at ε = 1 reweights 0-forms by 1/√2")
{
    const Mesh s3 = build_s3_600cell(0);
    const MassFamily family(s3.geometry, s3.action);
    const Eigen::MatrixXd weighted(family.weighted(1.0, 0));
    const Eigen::MatrixXd plain(family.plain(0));
    CHECK((weighted - plain / std::sqrt(2.0)).cwiseAbs().maxCoeff() <= 1e-12 * plain.cwiseAbs().maxCoeff());
}

TEST_CASE("without an action the family is constant in ε")
{
    const Mesh m = build_icosphere(1);
    const MassFamily family(m.geometry, no_action());
    for (int p = 0; p <= 2; ++p) {
        for (double eps : {1.0, 0.3, 0.05}) {
            CHECK(Eigen::MatrixXd(family.weighted(eps, p)).isApprox(Eigen::MatrixXd(family.plain(p)), 1e-14));
        }
    }
}

TEST_CASE("weighted mass matches a subdivided-quadrature oracle for the planar rotation field")
{
    // triangle in z = 0 away from the rotation axis; X = (−y, x, 0) is tangent
    Eigen::MatrixXd v(3, 3);
    v << 1.0, 0.0, 0.0, 2.0, 0.3, 0.0, 1.2, 1.1, 0.0;
    GeometryData geom = single_simplex(v);
    geom.quadrature_degree = 6;
    const MassFamily family(geom, rotation_action());
    const Eigen::MatrixXd grads = barycentric_gradients(v);
    const double area = simplex_volume(v);
    const auto faces1 = faces_of(*geom.complex, 1);
    const double eps = 0.4;

    // degree-2 edge-midpoint rule on a 64 × 64 subdivision of the triangle
    const int n = 64;
    Eigen::MatrixXd m0 = Eigen::MatrixXd::Zero(3, 3);
    Eigen::MatrixXd m1 = Eigen::MatrixXd::Zero(3, 3);
    double m2 = 0;
    const auto accumulate = [&](const Eigen::Vector3d& lam, double weight) {
        const Eigen::Vector3d x = v.transpose() * lam;
        const Eigen::Vector3d field(-x(1), x(0), 0);
        const double r = std::sqrt(eps * eps + field.squaredNorm());
        m0 += weight / r * lam * lam.transpose();
        std::vector<Eigen::Vector3d> w;
        for (const Simplex& e : faces1) {
            w.push_back(lam(e[0]) * grads.row(e[1]).transpose() - lam(e[1]) * grads.row(e[0]).transpose());
        }
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                m1(i, j) += weight / r * (w[i].dot(w[j]) + w[i].dot(field) * w[j].dot(field) / (eps * eps));
            }
        }
        m2 += weight / r * (1 + field.squaredNorm() / (eps * eps)) / (area * area);
    };
    const double cell = area / (n * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; i + j < n; ++j) {
            const std::vector<std::array<Eigen::Vector2d, 3>> cells = [&] {
                std::vector<std::array<Eigen::Vector2d, 3>> out;
                const Eigen::Vector2d a(i, j), b(i + 1, j), c(i, j + 1), d(i + 1, j + 1);
                out.push_back({a, b, c});
                if (i + j + 1 < n) out.push_back({b, d, c});
                return out;
            }();
            for (const auto& t : cells) {
                for (int k = 0; k < 3; ++k) {
                    const Eigen::Vector2d mid = (t[k] + t[(k + 1) % 3]) / (2.0 * n);
                    accumulate(Eigen::Vector3d(1 - mid.sum(), mid(0), mid(1)), cell / 3);
                }
            }
        }
    }
    const auto faces0 = faces_of(*geom.complex, 0);
    const Eigen::MatrixXd a0 = ordered(family.weighted(eps, 0), *geom.complex, faces0);
    const Eigen::MatrixXd a1 = ordered(family.weighted(eps, 1), *geom.complex, faces1);
    const double a2 = Eigen::MatrixXd(family.weighted(eps, 2))(0, 0);
    CHECK((a0 - m0).cwiseAbs().maxCoeff() <= 1e-5 * m0.cwiseAbs().maxCoeff());
    CHECK((a1 - m1).cwiseAbs().maxCoeff() <= 1e-5 * m1.cwiseAbs().maxCoeff());
    CHECK(a2 == doctest::Approx(m2).epsilon(1e-5));
}

TEST_CASE("weighted matrices are symmetric positive definite")
{
    const Mesh s2 = build_icosphere(1);
    const Mesh s3 = build_s3_600cell(0);
    const MassFamily f2(s2.geometry, s2.action);
    const MassFamily f3(s3.geometry, s3.action);
    for (double eps : {1.0, 0.25, 0.05}) {
        for (int p = 0; p <= 2; ++p) {
            const SparseMatrix m = f2.weighted(eps, p);
            CHECK(max_asymmetry(m) <= 1e-12);
            CHECK(is_positive_definite(m));
        }
        for (int p = 0; p <= 3; ++p) {
            const SparseMatrix m = f3.weighted(eps, p);
            CHECK(max_asymmetry(m) <= 1e-12);
            CHECK(is_positive_definite(m));
        }
    }
}

TEST_CASE("smaller ε dominates in the Rayleigh sense")
{
    std::mt19937_64 rng(7);
    std::normal_distribution<double> normal;
    for (const Mesh& m : {build_icosphere(1), build_s3_600cell(0), build_flat_torus(4, 4)}) {
        const MassFamily family(m.geometry, m.action);
        for (int p = 0; p <= family.dimension(); ++p) {
            const SparseMatrix coarse = family.weighted(1.0, p);
            const SparseMatrix fine = family.weighted(0.2, p);
            for (int trial = 0; trial < 5; ++trial) {
                Eigen::VectorXd x(coarse.rows());
                for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = normal(rng);
                CHECK(quadratic_form(fine, x) >= quadratic_form(coarse, x));
            }
        }
    }
}

TEST_CASE("stiffness annihilates constants and is symmetric")
{
    const Mesh m = build_icosphere(1);
    const MassFamily family(m.geometry, m.action);
    const SparseMatrix a = coboundary_stiffness(family, 0.5, 1);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(a.cols());
    CHECK((a * ones).cwiseAbs().maxCoeff() <= 1e-12 * Eigen::MatrixXd(a).cwiseAbs().maxCoeff());
    CHECK(max_asymmetry(a) <= 1e-12);
    CHECK(max_asymmetry(coboundary_stiffness(family, 0.5, 2)) <= 1e-12);
}

TEST_CASE("circle of 48 segments: first nonzero eigenvalue approaches (2π/L)²")
{
    const Mesh c = build_circle(48);
    const MassFamily family(c.geometry, no_action());
    const Eigen::MatrixXd a(coboundary_stiffness(family, 1.0, 1));
    const Eigen::MatrixXd b(family.plain(0));
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(a, b, Eigen::EigenvaluesOnly);
    const double perimeter = 48 * 2 * std::sin(std::numbers::pi / 48);
    const double expected = std::pow(2 * std::numbers::pi / perimeter, 2);
    CHECK(std::abs(es.eigenvalues()(0)) <= 1e-10);
    CHECK(std::abs(es.eigenvalues()(1) - expected) <= 0.02 * expected);
}

TEST_CASE("∫ρ_ε⁻¹ on the rotating sphere stays finite as ε → 0 and is stable under refinement")
{
    const double coarse = integrate_inverse_rho(build_icosphere(2).geometry, rotation_action(), 1e-4);
    const double fine = integrate_inverse_rho(build_icosphere(3).geometry, rotation_action(), 1e-4);
    CHECK(std::abs(fine - coarse) <= 0.05 * fine);
    // ∫ 1/sin θ dA over the unit sphere = 2π²
    CHECK(std::abs(fine - 2 * std::numbers::pi * std::numbers::pi) <= 0.05 * fine);
    const Mesh s2 = build_icosphere(2);
    CHECK(integrate_inverse_rho(s2.geometry, s2.action, 1e-3) ==
          doctest::Approx(integrate_inverse_rho(s2.geometry, s2.action, 1e-4)).epsilon(1e-2));
}

TEST_CASE("assembly is bit-identical across worker counts")
{
    const Mesh s3 = build_s3_600cell(0);
    const MassFamily one(s3.geometry, s3.action, 1);
    const MassFamily three(s3.geometry, s3.action, 3);
    for (int p = 0; p <= 3; ++p) {
        const Eigen::MatrixXd a(one.weighted(0.3, p));
        const Eigen::MatrixXd b(three.weighted(0.3, p));
        CHECK((a.array() == b.array()).all());
    }
}

TEST_CASE("nonpositive ε is rejected")
{
    const Mesh m = build_icosphere(0);
    const MassFamily family(m.geometry, m.action);
    CHECK_THROWS_AS(family.weighted(0.0, 1), DomainError);
    CHECK_THROWS_AS(family.weighted(-1.0, 1), DomainError);
    CHECK_THROWS_AS(coboundary_stiffness(family, 1.0, 0), DomainError);
}

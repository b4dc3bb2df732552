#include "hodge/builders.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace hodge {

namespace {

// Vertices within squared distance `edge2` (relative tolerance 1e-6) of each other.
std::vector<std::vector<int>> neighbours(const Eigen::MatrixXd& v, double edge2)
{
    std::vector<std::vector<int>> adj(v.rows());
    for (int a = 0; a < v.rows(); ++a) {
        for (int b = a + 1; b < v.rows(); ++b) {
            if (std::abs((v.row(a) - v.row(b)).squaredNorm() - edge2) < 1e-6 * edge2) {
                adj[a].push_back(b);
                adj[b].push_back(a);
            }
        }
    }
    return adj;
}

// Increasing cliques of size k in the neighbourhood graph.
std::vector<Simplex> cliques(const std::vector<std::vector<int>>& adj, int k)
{
    std::vector<Simplex> out;
    Simplex current;
    auto connected = [&](int a, int b) {
        return std::find(adj[a].begin(), adj[a].end(), b) != adj[a].end();
    };
    auto grow = [&](auto&& self, int start) -> void {
        if (static_cast<int>(current.size()) == k) {
            out.push_back(current);
            return;
        }
        for (int v = start; v < static_cast<int>(adj.size()); ++v) {
            if (std::all_of(current.begin(), current.end(), [&](int u) { return connected(u, v); })) {
                current.push_back(v);
                self(self, v + 1);
                current.pop_back();
            }
        }
    };
    grow(grow, 0);
    return out;
}

Mesh refine_on_sphere(Mesh mesh, int level)
{
    for (int l = 0; l < level; ++l) {
        Refinement r = refine(*mesh.complex);
        Eigen::MatrixXd v(r.vertex_parents.size(), mesh.geometry.vertices.cols());
        for (std::size_t i = 0; i < r.vertex_parents.size(); ++i) {
            const auto [a, b] = r.vertex_parents[i];
            v.row(i) = (0.5 * (mesh.geometry.vertices.row(a) + mesh.geometry.vertices.row(b))).normalized();
        }
        mesh.complex = std::make_shared<const SimplicialComplex>(std::move(r.complex));
        mesh.geometry = make_geometry(mesh.complex, std::move(v), Manifold::Sphere);
    }
    return mesh;
}

} // namespace

Mesh build_circle(int segments)
{
    if (segments < 3) throw DomainError("build_circle: need at least 3 segments");
    std::vector<Simplex> edges;
    Eigen::MatrixXd v(segments, 2);
    for (int i = 0; i < segments; ++i) {
        const double t = 2.0 * std::numbers::pi * i / segments;
        v.row(i) << std::cos(t), std::sin(t);
        edges.push_back({i, (i + 1) % segments});
    }
    auto complex = std::make_shared<const SimplicialComplex>(SimplicialComplex::from_top_simplices(edges, segments));
    Mesh mesh{"circle:" + std::to_string(segments), complex, make_geometry(complex, std::move(v), Manifold::Sphere),
              no_action()};
    return mesh;
}

Mesh build_path(int segments, double length)
{
    if (segments < 1) throw DomainError("build_path: need at least one segment");
    std::vector<Simplex> edges;
    Eigen::MatrixXd v(segments + 1, 1);
    for (int i = 0; i <= segments; ++i) v(i, 0) = length * i / segments;
    for (int i = 0; i < segments; ++i) edges.push_back({i, i + 1});
    auto complex = std::make_shared<const SimplicialComplex>(SimplicialComplex::from_top_simplices(edges, segments + 1));
    return {"path:" + std::to_string(segments), complex, make_geometry(complex, std::move(v)), no_action()};
}

Mesh build_flat_torus(int nx, int ny)
{
    if (nx < 3 || ny < 3) throw DomainError("build_flat_torus: grid must be at least 3x3");
    auto id = [&](int i, int j) { return ((i + nx) % nx) + nx * ((j + ny) % ny); };
    std::vector<Simplex> triangles;
    const double radius = 1.0 / (2.0 * std::numbers::pi);
    Eigen::MatrixXd v(nx * ny, 4);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const double a = 2.0 * std::numbers::pi * i / nx, b = 2.0 * std::numbers::pi * j / ny;
            v.row(id(i, j)) << radius * std::cos(a), radius * std::sin(a), radius * std::cos(b), radius * std::sin(b);
            triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
        }
    }
    auto complex = std::make_shared<const SimplicialComplex>(SimplicialComplex::from_top_simplices(triangles, nx * ny));
    return {"torus:" + std::to_string(nx) + "x" + std::to_string(ny), complex,
            make_geometry(complex, std::move(v), Manifold::CliffordTorus), torus_translation_action()};
}

SimplicialComplex icosahedron_complex(Eigen::MatrixXd* vertices)
{
    const double phi = std::numbers::phi;
    Eigen::MatrixXd v(12, 3);
    int r = 0;
    for (double s1 : {-1.0, 1.0}) {
        for (double s2 : {-1.0, 1.0}) {
            v.row(r++) << 0, s1, s2 * phi;
            v.row(r++) << s1, s2 * phi, 0;
            v.row(r++) << s2 * phi, 0, s1;
        }
    }
    const auto adj = neighbours(v, 4.0);
    SimplicialComplex complex = SimplicialComplex::from_top_simplices(cliques(adj, 3), 12);
    if (vertices) *vertices = v.rowwise().normalized();
    return complex;
}

Mesh build_icosphere(int level)
{
    if (level < 0 || level > max_icosphere_level) {
        throw DomainError("build_icosphere: level must lie in [0, " + std::to_string(max_icosphere_level) + "]");
    }
    Eigen::MatrixXd v;
    auto complex = std::make_shared<const SimplicialComplex>(icosahedron_complex(&v));
    Mesh mesh{"", complex, make_geometry(complex, std::move(v), Manifold::Sphere), rotation_action()};
    mesh = refine_on_sphere(std::move(mesh), level);
    mesh.name = "icosphere:" + std::to_string(level);
    return mesh;
}

SimplicialComplex cell600_complex(Eigen::MatrixXd* vertices)
{
    const double phi = std::numbers::phi;
    std::vector<Eigen::Vector4d> pts;
    for (int axis = 0; axis < 4; ++axis) {
        for (double s : {-1.0, 1.0}) {
            Eigen::Vector4d p = Eigen::Vector4d::Zero();
            p(axis) = s;
            pts.push_back(p);
        }
    }
    for (int mask = 0; mask < 16; ++mask) {
        Eigen::Vector4d p;
        for (int i = 0; i < 4; ++i) p(i) = (mask & (1 << i)) ? 0.5 : -0.5;
        pts.push_back(p);
    }
    // ½(±φ, ±1, ±1/φ, 0) under the even permutations of the four slots
    std::array<int, 4> perm{0, 1, 2, 3};
    do {
        int inversions = 0;
        for (int i = 0; i < 4; ++i) {
            for (int j = i + 1; j < 4; ++j) inversions += perm[i] > perm[j];
        }
        if (inversions % 2) continue;
        for (int mask = 0; mask < 8; ++mask) {
            const std::array<double, 4> base{(mask & 1 ? -1 : 1) * phi, (mask & 2 ? -1.0 : 1.0),
                                             (mask & 4 ? -1 : 1) / phi, 0.0};
            Eigen::Vector4d p;
            for (int i = 0; i < 4; ++i) p(perm[i]) = 0.5 * base[i];
            pts.push_back(p);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    Eigen::MatrixXd v(pts.size(), 4);
    for (std::size_t i = 0; i < pts.size(); ++i) v.row(i) = pts[i].transpose();
    const auto adj = neighbours(v, 1.0 / (phi * phi));
    SimplicialComplex complex = SimplicialComplex::from_top_simplices(cliques(adj, 4), static_cast<int>(pts.size()));
    if (vertices) *vertices = v;
    return complex;
}

Mesh build_s3_600cell(int level)
{
    if (level < 0 || level > max_600cell_level) {
        throw DomainError("build_s3_600cell: level must lie in [0, " + std::to_string(max_600cell_level) + "]");
    }
    Eigen::MatrixXd v;
    auto complex = std::make_shared<const SimplicialComplex>(cell600_complex(&v));
    Mesh mesh{"", complex, make_geometry(complex, std::move(v), Manifold::Sphere), hopf_action()};
    mesh = refine_on_sphere(std::move(mesh), level);
    mesh.name = level == 0 ? "s3:600cell" : "s3:600cell:" + std::to_string(level);
    return mesh;
}

} // namespace hodge

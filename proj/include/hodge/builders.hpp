#pragma once

#include <memory>
#include <string>

#include "hodge/complex.hpp"
#include "hodge/geometry.hpp"

namespace hodge {

/// A built mesh: complex, chord geometry and (possibly empty) isometric action.
struct Mesh {
    std::string name;
    std::shared_ptr<const SimplicialComplex> complex;
    GeometryData geometry;
    ActionData action;

    bool has_geometry() const { return geometry.vertices.rows() > 0; }
};

/// Cycle with `segments` vertices on the unit circle. segments ≥ 3.
Mesh build_circle(int segments);

/// Straight segment [0, length] split into `segments` equal edges (not a closed manifold).
Mesh build_path(int segments, double length);

/// Flat unit torus on an nx × ny grid, each cell split along its (i,j)–(i+1,j+1) diagonal,
/// embedded isometrically as a Clifford torus in ℝ⁴. Action: unit x-translation.
Mesh build_flat_torus(int nx, int ny);

/// Icosahedron refined `level` times and projected to the unit sphere; action: z-rotation.
Mesh build_icosphere(int level);

/// Boundary of the 600-cell refined `level` times and projected to S³ ⊂ ℝ⁴; action: Hopf.
Mesh build_s3_600cell(int level);

inline constexpr int max_icosphere_level = 6;
inline constexpr int max_600cell_level = 2;

/// The icosahedron surface: 12 vertices, 20 faces.
SimplicialComplex icosahedron_complex(Eigen::MatrixXd* vertices = nullptr);

/// The 600-cell boundary: 120 vertices, 600 tetrahedra.
SimplicialComplex cell600_complex(Eigen::MatrixXd* vertices = nullptr);

} // namespace hodge

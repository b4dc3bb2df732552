#pragma once

#include <filesystem>
#include <string>

#include "hodge/builders.hpp"

namespace hodge {

// Mesh interchange document (JSON):
//   {"format": "hodge-mesh", "version": 1, "name": ..., "dimension": n,
//    "simplices": [[[v0], ...], [[v0, v1], ...], ...],
//    "vertices": [[x, y, ...], ...],            optional
//    "manifold": "sphere" | ..., "action": "hopf" | ...}   optional
// Integers round-trip exactly; coordinates are written with max_digits10 precision.

std::string write_mesh(const Mesh& mesh);
Mesh read_mesh(const std::string& text);

void save_mesh(const Mesh& mesh, const std::filesystem::path& path);
Mesh load_mesh_file(const std::filesystem::path& path);

/// Mesh around a bare complex (no coordinates, no action).
Mesh mesh_from_complex(SimplicialComplex complex, std::string name);

} // namespace hodge

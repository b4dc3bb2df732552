#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hodge/builders.hpp"

namespace hodge {

/// Parses a mesh descriptor: circle:N, path:N, torus:NxM, icosphere:L, s3:600cell[:L], file:PATH.
Mesh mesh_from_spec(const std::string& spec);

/// Replaces the mesh's action by a built-in one ("none", "rotation", "hopf", "translation").
Mesh with_action(Mesh mesh, const std::string& action_tag);

/// Orbit space G\M as a simplicial complex. When `vertex_map` is present it sends each
/// mesh vertex to a quotient vertex and defines a simplicial projection M → G\M.
struct QuotientModel {
    SimplicialComplex complex;
    std::string description;
    std::optional<std::vector<int>> vertex_map;
};

/// Built-in quotients: Hopf S³ → S², z-rotation of S² → interval, x-translation of the
/// flat torus → circle. DomainError for any other mesh/action pair.
QuotientModel builtin_quotient(const Mesh& mesh);

} // namespace hodge

#pragma once

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hodge/complex.hpp"
#include "hodge/quadrature.hpp"

namespace hodge {

/// Smooth manifold the affine mesh approximates; selects the radial projection
/// applied to quadrature nodes before the Killing fields are evaluated.
enum class Manifold {
    Euclidean,     ///< no projection
    Sphere,        ///< unit sphere in the ambient space
    CliffordTorus, ///< product of two circles of radius 1/(2π) in ℝ⁴ (flat unit torus)
};

std::string to_string(Manifold m);
Manifold manifold_from_string(const std::string& s);

/// Nearest point of the manifold (identity for Euclidean).
Eigen::VectorXd project_to_manifold(Manifold m, const Eigen::VectorXd& x);

/// Embedding plus per-top-simplex constant metric. The metric in the local affine
/// coordinates t of a top simplex (x = v₀ + E t) is `grams[s]`; by default EᵀE.
struct GeometryData {
    std::shared_ptr<const SimplicialComplex> complex;
    Eigen::MatrixXd vertices; ///< one row per vertex
    Manifold manifold = Manifold::Euclidean;
    std::vector<Eigen::MatrixXd> frames; ///< edge vectors E (ambient × n) per top simplex
    std::vector<Eigen::MatrixXd> grams;  ///< metric tensor per top simplex (n × n), length²
    int quadrature_degree = 2;

    int dimension() const { return complex->dimension(); }
    int ambient_dimension() const { return static_cast<int>(vertices.cols()); }

    /// Physical volume of top simplex s: √det(G)/n!.
    double simplex_volume(int s) const;
    double total_volume() const;

    QuadratureRule<double> quadrature() const { return simplex_quadrature<double>(dimension(), quadrature_degree); }

    /// Ambient position of a quadrature node given by barycentric coordinates in top simplex s.
    Eigen::VectorXd position(int s, const Eigen::VectorXd& barycentric) const;
};

/// Chord geometry: frames and Gram matrices from the embedded vertex positions.
GeometryData make_geometry(std::shared_ptr<const SimplicialComplex> complex, Eigen::MatrixXd vertices,
                           Manifold manifold = Manifold::Euclidean);

/// Same geometry with every Gram matrix multiplied by e^{u_s}.
GeometryData conformally_scaled(const GeometryData& geom, const Eigen::VectorXd& log_factors);

/// Same geometry with every vertex coordinate multiplied by c.
GeometryData uniformly_scaled(const GeometryData& geom, double c);

/// Violations of the GeometryData invariants (empty when sound).
std::vector<std::string> validate_geometry(const GeometryData& geom);

/// Isometric action of a compact group through linear Killing fields X_j(y) = Ω_j y,
/// with Ω_j skew-symmetric on the ambient space. The Lie algebra basis is orthonormal.
struct ActionData {
    std::vector<Eigen::MatrixXd> generators;
    int stabilizer_dimension = 0; ///< dim 𝔥 of a principal isotropy algebra
    std::string tag = "none";

    int group_dimension() const { return static_cast<int>(generators.size()); }

    /// Ambient field values at y, one column per generator.
    Eigen::MatrixXd fields_at(const Eigen::VectorXd& y) const;
};

ActionData no_action();
/// Rotation about the z-axis on S² ⊂ ℝ³: X = (−y, x, 0).
ActionData rotation_action();
/// Hopf action on S³ ⊂ ℝ⁴: X = (−y, x, −w, z).
ActionData hopf_action();
/// Unit translation along the first factor of the Clifford torus in ℝ⁴.
ActionData torus_translation_action();

/// Rebuilds a built-in action from its tag ("none", "rotation", "hopf", "translation").
ActionData action_from_tag(const std::string& tag);

} // namespace hodge

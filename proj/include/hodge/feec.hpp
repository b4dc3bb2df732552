#pragma once

#include <memory>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "hodge/complex.hpp"
#include "hodge/geometry.hpp"

namespace hodge {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// det^{1/2}(ε² Id + αᵀα) over the full Lie algebra; `fields` holds α(x_j) as columns.
double orbit_volume_density(const Eigen::MatrixXd& fields, double eps);

/// ρ_ε = det^{1/2}(ε² Id|_{𝔤/𝔥} + ᾱ*ᾱ): the `stabilizer_dimension` directions on which
/// α is smallest are treated as 𝔥 and dropped. ε must be positive.
double rho_from_fields(const Eigen::MatrixXd& fields, double eps, int stabilizer_dimension = 0);

/// ρ_ε at a point of the embedded manifold (the point is projected onto it first).
struct RhoEvaluator {
    const ActionData* action = nullptr;
    Manifold manifold = Manifold::Euclidean;

    double operator()(const Eigen::VectorXd& point, double eps) const;
};

double rho(const ActionData& action, const GeometryData& geom, const Eigen::VectorXd& point, double eps);

/// ∫_M ρ_ε⁻¹ dvol by the geometry's quadrature rule.
double integrate_inverse_rho(const GeometryData& geom, const ActionData& action, double eps);

/// Galerkin matrix of the L² inner product on lowest-order Whitney p-forms.
SparseMatrix mass_matrix(const GeometryData& geom, int p, int workers = 1);

/// ε ↦ weighted mass matrices
///   ∫ ρ_ε⁻¹ (⟨ω,η⟩ + Σ_k ε^{-2k} Σ_{j₁<…<j_k} ⟨i_{X_{j₁}}…i_{X_{j_k}} ω, i_{X_{j₁}}…i_{X_{j_k}} η⟩) dvol
/// on a fixed mesh, with the Killing fields projected onto each simplex's tangent space.
/// Local contributions are computed per top simplex (optionally on several threads) and
/// summed in simplex order, so results do not depend on the worker count.
class MassFamily {
public:
    MassFamily(GeometryData geometry, ActionData action, int workers = 1);

    const GeometryData& geometry() const { return geometry_; }
    const ActionData& action() const { return action_; }
    const SimplicialComplex& complex() const { return *geometry_.complex; }
    int dimension() const { return geometry_.dimension(); }

    /// ε-independent plain mass matrix, cached at construction.
    const SparseMatrix& plain(int p) const;

    /// Weighted matrix; equals plain(p) when the action is trivial.
    SparseMatrix weighted(double eps, int p) const;

private:
    SparseMatrix assemble(double eps, int p, bool weighted) const;

    GeometryData geometry_;
    ActionData action_;
    int workers_;
    std::vector<SparseMatrix> plain_;
};

SparseMatrix weighted_mass_matrix(const MassFamily& family, double eps, int p);

/// A = Dᵀ M_ε^{(p)} D with D the coboundary C^{p-1} → C^p; 1 ≤ p ≤ n.
SparseMatrix coboundary_stiffness(const MassFamily& family, double eps, int p);

inline constexpr int max_group_dimension = 2;

} // namespace hodge

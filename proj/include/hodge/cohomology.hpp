#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "hodge/complex.hpp"

namespace hodge {

/// Relative singular-value threshold separating rank from noise.
inline constexpr double rank_threshold = 1e-9;

struct BettiResult {
    std::vector<int> betti;             ///< b_0 … b_n
    std::vector<int> coboundary_ranks;  ///< rank d_0 … rank d_{n-1}
    std::vector<std::string> warnings;  ///< singular values within a factor 10 of the threshold
};

/// Rank of d_p over ℝ from a dense singular value decomposition.
int coboundary_rank(const SimplicialComplex& complex, int p, std::vector<std::string>* warnings = nullptr);

BettiResult compute_betti(const SimplicialComplex& complex);
std::vector<int> betti_numbers(const SimplicialComplex& complex);

/// b̃_0 = b_0 − 1, b̃_p = b_p otherwise.
std::vector<int> reduced_betti(std::vector<int> betti);

/// dim Ker d_p = b_p + rank d_{p-1}, from a BettiResult.
int kernel_dimension(const BettiResult& betti, int p);

/// Orthonormal columns spanning the discrete harmonic p-cochains (identity inner products).
struct CohomologyBasis {
    int degree = 0;
    Eigen::MatrixXd cocycles;
    int dimension() const { return static_cast<int>(cocycles.cols()); }
};

CohomologyBasis cohomology_basis(const SimplicialComplex& complex, int p);

/// Pullback cochain maps of a simplicial vertex map φ: target → source, one matrix
/// C^q(source) → C^q(target) per degree q = 0 … dim(target). A q-simplex whose image
/// is degenerate pulls back to zero; otherwise the sign is the parity of sorting φ(σ).
std::vector<Eigen::SparseMatrix<double>> simplicial_pullback(const SimplicialComplex& source,
                                                             const SimplicialComplex& target,
                                                             const std::vector<int>& vertex_map);

/// Dimension of the kernel of the map H^p(source) → H^p(target) induced by the cochain
/// map `maps` (maps[q] : C^q(source) → C^q(target)). Rejects inputs that fail to commute
/// with the coboundaries to 1e-10.
int induced_map_kernel_dim(const std::vector<Eigen::SparseMatrix<double>>& maps, const SimplicialComplex& source,
                           const SimplicialComplex& target, int p);

struct KernelBound {
    int dimension = 0;
    bool exact = false; ///< target cohomology vanishes, so the bound is the kernel dimension
};

/// max(0, b_p(quotient) − b_p(M)); exact iff b_p(M) = 0.
KernelBound kernel_dim_lower_bound(const std::vector<int>& betti_quotient, const std::vector<int>& betti_manifold, int p);

} // namespace hodge

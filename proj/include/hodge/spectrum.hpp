#pragma once

#include "hodge/eigensolver.hpp"
#include "hodge/feec.hpp"

namespace hodge {

enum class SolverChoice {
    Auto,      ///< iterative; dense fallback on non-convergence when size ≤ dense_limit
    Iterative,
    Dense,
};

std::string to_string(SolverChoice s);
SolverChoice solver_from_string(const std::string& s);

inline constexpr int dense_limit = 2000;

struct SpectrumOptions {
    int k = 8;
    double tol = 1e-10;       ///< relative residual target of the iterative solver
    double zero_tol = 1e-8;   ///< zero mode: λ < zero_tol · reference
    double max_condition = 1e12;
    SolverChoice solver = SolverChoice::Auto;
    EigensolverOptions eigensolver;
};

/// Positive spectrum of the pencil (Dᵀ M_ε^{(p)} D, M_ε^{(p−1)}), D : C^{p−1} → C^p;
/// the eigenvalues of the Laplacian on Im(d) ⊂ Ω^p. `zero_modes` is dim Ker D and must
/// agree with the eigenvalue classification (NumericalError otherwise). 1 ≤ p ≤ n.
SpectrumResult spectrum_im_d(const MassFamily& family, double eps, int p, const SpectrumOptions& options = {});

/// Smallest eigenvalues of the full discrete Δ_p: the pencil (A, M_p) with
/// A = D_pᵀ M_{p+1} D_p + M_p D_{p−1} M_{p−1}⁻¹ D_{p−1}ᵀ M_p. The list starts with the
/// zero modes, whose count must equal b_p (NumericalError otherwise). 0 ≤ p ≤ n.
SpectrumResult hodge_spectrum(const MassFamily& family, double eps, int p, const SpectrumOptions& options = {});

/// The two matrices of the Im(d) pencil, as used by spectrum_im_d.
struct Pencil {
    SparseMatrix a;
    SparseMatrix b;
};
Pencil im_d_pencil(const MassFamily& family, double eps, int p);

/// Orthonormal basis of Ker D for the integer coboundary D : C^{p−1} → C^p.
Eigen::MatrixXd coboundary_kernel_basis(const SimplicialComplex& complex, int p);

} // namespace hodge

#pragma once

#include <string>
#include <vector>

#include "hodge/builders.hpp"
#include "hodge/catalog.hpp"
#include "hodge/cohomology.hpp"
#include "hodge/spectrum.hpp"

namespace hodge {

struct SweepOptions {
    std::vector<double> eps_grid{1.0, 0.5, 0.25, 0.1};
    int k = 4;
    double decay_factor = 10.0;
    double stability_factor = 3.0;
    int workers = 1;
    SpectrumOptions spectrum;
};

/// Eigenvalue table λ_{p,j}(ε) of the Im(d) pencil across an ε grid, with the kernel
/// dimension forced by cohomology and the verdict of the collapse check.
struct SweepReport {
    std::string mesh;
    std::string action;
    std::string quotient;
    int p = 0;
    std::vector<double> eps;                       ///< strictly decreasing
    std::vector<std::vector<double>> eigenvalues;  ///< one ascending row per ε
    std::vector<int> zero_modes;
    std::vector<double> cond_estimates;
    std::vector<std::string> solvers;
    std::vector<int> betti_manifold;
    std::vector<int> betti_quotient;
    int j_theorem = 0;
    bool j_exact = false;
    double decay_factor = 10.0;
    double stability_factor = 3.0;
    double decay_ratio = 0.0;     ///< max_{j ≤ j_theorem} λ_j(ε_min)/λ_j(ε_max)
    double stability_ratio = 0.0; ///< max/min of λ_{j_theorem+1} over the grid
    std::string verdict;          ///< "consistent", "inconsistent", "no prediction" or "aborted"
    std::vector<std::string> notes;
    bool complete = true;

    bool operator==(const SweepReport&) const = default;
};

/// Runs the Im(d) spectrum at each ε. The verdict is "consistent" iff the first j_theorem
/// eigenvalues fall by at least decay_factor from the largest to the smallest ε while
/// λ_{j_theorem+1} varies by less than stability_factor; j_theorem = 0 gives "no prediction".
/// A numerical failure at some ε ends the sweep with a partial report marked "aborted".
SweepReport collapse_sweep(const Mesh& mesh, const QuotientModel& quotient, int p, const SweepOptions& options = {});

/// j_theorem: the induced-map kernel when the quotient carries a projection, otherwise the
/// Betti lower bound.
KernelBound theorem_kernel_dimension(const Mesh& mesh, const QuotientModel& quotient, int p);

struct CompareReport {
    std::string geometry_a;
    std::string geometry_b;
    int p = 0;
    int n = 0;
    int J = 0;
    double distortion = 0.0; ///< s: e^{−2s} G_A ≤ G_B ≤ e^{2s} G_A on every top simplex
    double bound = 1.0;      ///< e^{J s}
    std::vector<double> lambda_a;
    std::vector<double> lambda_b;
    std::vector<double> ratios;
    std::vector<bool> within;
    bool pass = true;

    bool operator==(const CompareReport&) const = default;
};

/// s = ½ max over top simplices of max |log μ| with μ the eigenvalues of G_A⁻¹G_B.
double metric_distortion(const GeometryData& a, const GeometryData& b);

/// Compares the Im(d) spectra (no action) of two geometries on the same complex and checks
/// λ^B_j/λ^A_j ∈ [e^{−Js}, e^{Js}], J = 2p + n.
CompareReport bilipschitz_compare(const GeometryData& a, const GeometryData& b, int p, int k,
                                  const std::string& name_a, const std::string& name_b,
                                  const SpectrumOptions& options = {}, int workers = 1);

/// Per-simplex log factors drawn uniformly from [−amplitude, amplitude].
Eigen::VectorXd random_conformal_factors(const GeometryData& geom, double amplitude, std::uint64_t seed);

struct DualityRow {
    int p = 0;           ///< Im(d) ⊂ Ω^p
    int dual_degree = 0; ///< Im(d*) ⊂ Ω^{n−p}, the Im(d) pencil of degree n − p + 1
    std::vector<double> lambda;
    std::vector<double> lambda_dual;
    std::vector<double> relative_gaps;
    double max_gap = 0.0;

    bool operator==(const DualityRow&) const = default;
};

struct DualityReport {
    std::string mesh;
    std::string action;
    double eps = 1.0;
    std::vector<DualityRow> rows;

    bool operator==(const DualityReport&) const = default;
};

DualityReport hodge_duality_report(const Mesh& mesh, double eps, int k, const SpectrumOptions& options = {},
                                   int workers = 1);

} // namespace hodge

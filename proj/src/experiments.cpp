#include "hodge/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "hodge/cohomology.hpp"

namespace hodge {

namespace {

void check_grid(const std::vector<double>& grid)
{
    if (grid.empty()) throw DomainError("collapse_sweep: empty ε grid");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] >= 0.05 && grid[i] <= 1.0)) throw DomainError("collapse_sweep: ε grid must lie in [0.05, 1]");
        if (i > 0 && !(grid[i] < grid[i - 1])) throw DomainError("collapse_sweep: ε grid must be strictly decreasing");
    }
}

std::string format_note(const std::string& text, double a, double b)
{
    std::ostringstream os;
    os.precision(6);
    os << text << " (" << a << " -> " << b << ")";
    return os.str();
}

} // namespace

KernelBound theorem_kernel_dimension(const Mesh& mesh, const QuotientModel& quotient, int p)
{
    if (quotient.vertex_map) {
        const auto maps = simplicial_pullback(quotient.complex, *mesh.complex, *quotient.vertex_map);
        if (p > quotient.complex.dimension()) return {0, true};
        return {induced_map_kernel_dim(maps, quotient.complex, *mesh.complex, p), true};
    }
    return kernel_dim_lower_bound(betti_numbers(quotient.complex), betti_numbers(*mesh.complex), p);
}

SweepReport collapse_sweep(const Mesh& mesh, const QuotientModel& quotient, int p, const SweepOptions& options)
{
    check_grid(options.eps_grid);
    if (mesh.action.group_dimension() == 0) throw DomainError("collapse_sweep: mesh carries no action");
    if (!mesh.has_geometry()) throw DomainError("collapse_sweep: mesh has no geometry");

    SweepReport report;
    report.mesh = mesh.name;
    report.action = mesh.action.tag;
    report.quotient = quotient.description;
    report.p = p;
    report.decay_factor = options.decay_factor;
    report.stability_factor = options.stability_factor;
    report.betti_manifold = betti_numbers(*mesh.complex);
    report.betti_quotient = betti_numbers(quotient.complex);
    const KernelBound bound = theorem_kernel_dimension(mesh, quotient, p);
    report.j_theorem = bound.dimension;
    report.j_exact = bound.exact;

    SpectrumOptions spectrum = options.spectrum;
    spectrum.k = std::max(options.k, report.j_theorem + 1);
    const MassFamily family(mesh.geometry, mesh.action, options.workers);
    for (double eps : options.eps_grid) {
        try {
            const SpectrumResult result = spectrum_im_d(family, eps, p, spectrum);
            report.eps.push_back(eps);
            report.eigenvalues.push_back(result.eigenvalues);
            report.zero_modes.push_back(result.zero_modes);
            report.cond_estimates.push_back(result.cond_estimate);
            report.solvers.push_back(result.solver);
        } catch (const NumericalError& e) {
            report.complete = false;
            report.verdict = "aborted";
            std::ostringstream os;
            os << "aborted at eps = " << eps << ": " << e.what();
            report.notes.push_back(os.str());
            return report;
        }
    }

    // monotonicity in ε is expected of the forced eigenvalues only
    const std::size_t last = report.eps.size() - 1;
    const std::size_t watched = std::min<std::size_t>(std::max(report.j_theorem, 1), report.eigenvalues.front().size());
    for (std::size_t j = 0; j < watched; ++j) {
        for (std::size_t e = 1; e <= last; ++e) {
            const double before = report.eigenvalues[e - 1][j];
            const double after = report.eigenvalues[e][j];
            if (after > before * (1 + 1e-12)) {
                report.notes.push_back(format_note("lambda_" + std::to_string(j + 1) +
                                                       " increased as eps decreased (discretization artifact)",
                                                   before, after));
            }
        }
    }

    const int jt = report.j_theorem;
    if (jt == 0) {
        report.verdict = "no prediction";
        return report;
    }
    for (int j = 0; j < jt; ++j) {
        report.decay_ratio = std::max(report.decay_ratio, report.eigenvalues[last][j] / report.eigenvalues[0][j]);
    }
    double low = report.eigenvalues[0][jt];
    double high = low;
    for (const auto& row : report.eigenvalues) {
        low = std::min(low, row[jt]);
        high = std::max(high, row[jt]);
    }
    report.stability_ratio = high / low;
    const bool decayed = report.decay_ratio <= 1.0 / options.decay_factor;
    const bool stable = report.stability_ratio < options.stability_factor;
    report.verdict = decayed && stable ? "consistent" : "inconsistent";
    return report;
}

double metric_distortion(const GeometryData& a, const GeometryData& b)
{
    if (a.grams.size() != b.grams.size()) throw DomainError("metric_distortion: different simplex counts");
    double s = 0;
    for (std::size_t i = 0; i < a.grams.size(); ++i) {
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(b.grams[i], a.grams[i], Eigen::EigenvaluesOnly);
        for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j) {
            s = std::max(s, 0.5 * std::abs(std::log(es.eigenvalues()(j))));
        }
    }
    return s;
}

CompareReport bilipschitz_compare(const GeometryData& a, const GeometryData& b, int p, int k,
                                  const std::string& name_a, const std::string& name_b,
                                  const SpectrumOptions& options, int workers)
{
    if (!a.complex || !b.complex || !(*a.complex == *b.complex)) {
        throw DomainError("bilipschitz_compare: geometries live on different complexes");
    }
    CompareReport report;
    report.geometry_a = name_a;
    report.geometry_b = name_b;
    report.p = p;
    report.n = a.dimension();
    report.J = 2 * p + report.n;
    report.distortion = metric_distortion(a, b);
    report.bound = std::exp(report.J * report.distortion);

    SpectrumOptions spectrum = options;
    spectrum.k = k;
    const MassFamily fa(a, no_action(), workers);
    const MassFamily fb(b, no_action(), workers);
    report.lambda_a = spectrum_im_d(fa, 1.0, p, spectrum).eigenvalues;
    report.lambda_b = spectrum_im_d(fb, 1.0, p, spectrum).eigenvalues;
    // slack for rounding when s = 0
    const double slack = 1e-10;
    for (std::size_t j = 0; j < report.lambda_a.size(); ++j) {
        const double ratio = report.lambda_b[j] / report.lambda_a[j];
        const bool ok = ratio <= report.bound * (1 + slack) && ratio >= (1 - slack) / report.bound;
        report.ratios.push_back(ratio);
        report.within.push_back(ok);
        report.pass = report.pass && ok;
    }
    return report;
}

Eigen::VectorXd random_conformal_factors(const GeometryData& geom, double amplitude, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(-amplitude, amplitude);
    Eigen::VectorXd u(static_cast<Eigen::Index>(geom.grams.size()));
    for (Eigen::Index i = 0; i < u.size(); ++i) u(i) = uniform(rng);
    return u;
}

DualityReport hodge_duality_report(const Mesh& mesh, double eps, int k, const SpectrumOptions& options, int workers)
{
    if (!(eps > 0)) throw DomainError("hodge_duality_report: ε must be positive");
    DualityReport report;
    report.mesh = mesh.name;
    report.action = mesh.action.tag;
    report.eps = eps;
    const MassFamily family(mesh.geometry, mesh.action, workers);
    const int n = family.dimension();
    SpectrumOptions spectrum = options;
    spectrum.k = k;
    std::vector<std::vector<double>> spectra(n + 1);
    for (int p = 1; p <= n; ++p) spectra[p] = spectrum_im_d(family, eps, p, spectrum).eigenvalues;
    for (int p = 1; p <= n; ++p) {
        DualityRow row;
        row.p = p;
        row.dual_degree = n - p + 1;
        row.lambda = spectra[p];
        row.lambda_dual = spectra[row.dual_degree];
        const std::size_t count = std::min(row.lambda.size(), row.lambda_dual.size());
        for (std::size_t j = 0; j < count; ++j) {
            const double gap = std::abs(row.lambda[j] - row.lambda_dual[j]) / std::max(row.lambda[j], row.lambda_dual[j]);
            row.relative_gaps.push_back(gap);
            row.max_gap = std::max(row.max_gap, gap);
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace hodge

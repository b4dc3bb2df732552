#include "hodge/feec.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "hodge/exterior.hpp"

namespace hodge {

double orbit_volume_density(const Eigen::MatrixXd& fields, double eps)
{
    const Eigen::Index g = fields.cols();
    const Eigen::MatrixXd m = eps * eps * Eigen::MatrixXd::Identity(g, g) + fields.transpose() * fields;
    return std::sqrt(m.determinant());
}

double rho_from_fields(const Eigen::MatrixXd& fields, double eps, int stabilizer_dimension)
{
    if (!(eps > 0)) throw DomainError("rho: ε must be positive");
    const Eigen::Index g = fields.cols();
    if (stabilizer_dimension < 0 || stabilizer_dimension > g) throw DomainError("rho: bad stabilizer dimension");
    if (g == 0) return 1.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(fields.transpose() * fields, Eigen::EigenvaluesOnly);
    double product = 1.0;
    for (Eigen::Index i = stabilizer_dimension; i < g; ++i) product *= eps * eps + std::max(es.eigenvalues()(i), 0.0);
    return std::sqrt(product);
}

double RhoEvaluator::operator()(const Eigen::VectorXd& point, double eps) const
{
    if (!action || action->group_dimension() == 0) {
        if (!(eps > 0)) throw DomainError("rho: ε must be positive");
        return 1.0;
    }
    const Eigen::VectorXd y = project_to_manifold(manifold, point);
    return rho_from_fields(action->fields_at(y), eps, action->stabilizer_dimension);
}

double rho(const ActionData& action, const GeometryData& geom, const Eigen::VectorXd& point, double eps)
{
    return RhoEvaluator{&action, geom.manifold}(point, eps);
}

double integrate_inverse_rho(const GeometryData& geom, const ActionData& action, double eps)
{
    const auto rule = geom.quadrature();
    const RhoEvaluator evaluate{&action, geom.manifold};
    const int n = geom.dimension();
    double total = 0;
    for (int s = 0; s < geom.complex->count(n); ++s) {
        const double jacobian = std::sqrt(geom.grams[s].determinant());
        for (int q = 0; q < rule.size(); ++q) {
            total += rule.weights(q) * jacobian / evaluate(geom.position(s, rule.barycentric.col(q)), eps);
        }
    }
    return total;
}

namespace {

// Ordered sequences j₁ < … < j_k of generator indices.
std::vector<std::vector<int>> generator_subsets(int g, int k)
{
    return exterior::subsets(g, k);
}

template <typename Body>
void parallel_for(int count, int workers, Body&& body)
{
    workers = std::clamp(workers, 1, std::max(1, count));
    if (workers == 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (int i = w; i < count; i += workers) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace

SparseMatrix mass_matrix(const GeometryData& geom, int p, int workers)
{
    return MassFamily(geom, no_action(), workers).plain(p);
}

MassFamily::MassFamily(GeometryData geometry, ActionData action, int workers)
    : geometry_(std::move(geometry)), action_(std::move(action)), workers_(workers)
{
    if (!geometry_.complex || geometry_.vertices.rows() == 0) throw DomainError("MassFamily: mesh has no geometry");
    const auto issues = validate_geometry(geometry_);
    if (!issues.empty()) throw DomainError("MassFamily: degenerate geometry: " + issues.front());
    if (action_.group_dimension() > max_group_dimension) {
        throw DomainError("MassFamily: group dimension above " + std::to_string(max_group_dimension) + " unsupported");
    }
    for (const auto& omega : action_.generators) {
        if (omega.rows() != geometry_.ambient_dimension() || omega.cols() != geometry_.ambient_dimension()) {
            throw DomainError("MassFamily: Killing field generator does not match the ambient dimension");
        }
    }
    for (int p = 0; p <= dimension(); ++p) plain_.push_back(assemble(1.0, p, false));
}

const SparseMatrix& MassFamily::plain(int p) const
{
    if (p < 0 || p > dimension()) throw DomainError("mass matrix: degree out of range");
    return plain_[p];
}

SparseMatrix MassFamily::weighted(double eps, int p) const
{
    if (!(eps > 0)) throw DomainError("weighted mass matrix: ε must be positive");
    if (p < 0 || p > dimension()) throw DomainError("weighted mass matrix: degree out of range");
    if (action_.group_dimension() == 0) return plain_[p];
    return assemble(eps, p, true);
}

SparseMatrix MassFamily::assemble(double eps, int p, bool weighted) const
{
    const int n = dimension();
    const SimplicialComplex& complex = *geometry_.complex;
    const auto rule = geometry_.quadrature();
    const auto local_faces = exterior::subsets(n + 1, p + 1);
    const int nfaces = static_cast<int>(local_faces.size());
    const int g = weighted ? action_.group_dimension() : 0;
    const RhoEvaluator evaluate{&action_, geometry_.manifold};

    std::vector<Eigen::MatrixXd> whitney;
    for (int q = 0; q < rule.size(); ++q) whitney.push_back(exterior::whitney_forms(rule.barycentric.col(q), p));

    const int ntop = complex.count(n);
    std::vector<Eigen::MatrixXd> local(ntop);
    parallel_for(ntop, workers_, [&](int s) {
        const Eigen::MatrixXd& gram = geometry_.grams[s];
        const Eigen::MatrixXd inverse = gram.inverse();
        const double jacobian = std::sqrt(gram.determinant());
        std::vector<Eigen::MatrixXd> metric;
        for (int q = 0; q <= p; ++q) metric.push_back(exterior::form_metric(inverse, q));
        const Eigen::MatrixXd& frame = geometry_.frames[s];
        // least-squares tangent coordinates of an ambient vector
        const Eigen::MatrixXd to_tangent = (frame.transpose() * frame).ldlt().solve(frame.transpose());

        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(nfaces, nfaces);
        for (int q = 0; q < rule.size(); ++q) {
            const Eigen::MatrixXd& w = whitney[q];
            Eigen::MatrixXd integrand = w.transpose() * metric[p] * w;
            double weight = rule.weights(q) * jacobian;
            if (g > 0) {
                const Eigen::VectorXd x = geometry_.position(s, rule.barycentric.col(q));
                weight /= evaluate(x, eps);
                const Eigen::MatrixXd xi = to_tangent * action_.fields_at(project_to_manifold(geometry_.manifold, x));
                for (int k = 1; k <= std::min(g, p); ++k) {
                    const double factor = std::pow(eps, -2.0 * k);
                    for (const auto& js : generator_subsets(g, k)) {
                        // i_{X_{j₁}} ⋯ i_{X_{j_k}} ω: the innermost contraction is j_k
                        Eigen::MatrixXd contracted = w;
                        for (int level = k - 1, degree = p; level >= 0; --level, --degree) {
                            contracted = exterior::interior_product(xi.col(js[level]), degree) * contracted;
                        }
                        integrand += factor * contracted.transpose() * metric[p - k] * contracted;
                    }
                }
            }
            m += weight * integrand;
        }
        local[s] = 0.5 * (m + m.transpose());
    });

    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<std::size_t>(ntop) * nfaces * nfaces);
    std::vector<int> global(nfaces);
    for (int s = 0; s < ntop; ++s) {
        const Simplex& top = complex.simplex(n, s);
        for (int f = 0; f < nfaces; ++f) {
            Simplex face;
            for (int i : local_faces[f]) face.push_back(top[i]);
            global[f] = complex.find(face);
        }
        for (int a = 0; a < nfaces; ++a) {
            for (int b = 0; b < nfaces; ++b) trips.emplace_back(global[a], global[b], local[s](a, b));
        }
    }
    SparseMatrix out(complex.count(p), complex.count(p));
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

SparseMatrix weighted_mass_matrix(const MassFamily& family, double eps, int p)
{
    return family.weighted(eps, p);
}

SparseMatrix coboundary_stiffness(const MassFamily& family, double eps, int p)
{
    if (p < 1 || p > family.dimension()) throw DomainError("coboundary_stiffness: degree must lie in [1, n]");
    const SparseMatrix d = coboundary(family.complex(), p - 1);
    const SparseMatrix m = family.weighted(eps, p);
    SparseMatrix a = SparseMatrix(d.transpose()) * m * d;
    // exact symmetry
    SparseMatrix at = a.transpose();
    return 0.5 * (a + at);
}

} // namespace hodge

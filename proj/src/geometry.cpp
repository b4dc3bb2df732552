#include "hodge/geometry.hpp"

#include <cmath>
#include <numbers>

namespace hodge {

std::string to_string(Manifold m)
{
    switch (m) {
    case Manifold::Euclidean: return "euclidean";
    case Manifold::Sphere: return "sphere";
    case Manifold::CliffordTorus: return "clifford_torus";
    }
    return "euclidean";
}

Manifold manifold_from_string(const std::string& s)
{
    if (s == "euclidean") return Manifold::Euclidean;
    if (s == "sphere") return Manifold::Sphere;
    if (s == "clifford_torus") return Manifold::CliffordTorus;
    throw DomainError("unknown manifold tag '" + s + "'");
}

Eigen::VectorXd project_to_manifold(Manifold m, const Eigen::VectorXd& x)
{
    switch (m) {
    case Manifold::Euclidean: return x;
    case Manifold::Sphere: return x.normalized();
    case Manifold::CliffordTorus: {
        if (x.size() != 4) throw DomainError("Clifford torus lives in ℝ⁴");
        const double radius = 1.0 / (2.0 * std::numbers::pi);
        Eigen::VectorXd y(4);
        y.head<2>() = radius * x.head<2>().normalized();
        y.tail<2>() = radius * x.tail<2>().normalized();
        return y;
    }
    }
    return x;
}

double GeometryData::simplex_volume(int s) const
{
    double volume = std::sqrt(grams[s].determinant());
    for (int i = 2; i <= dimension(); ++i) volume /= i;
    return volume;
}

double GeometryData::total_volume() const
{
    double total = 0;
    for (int s = 0; s < static_cast<int>(grams.size()); ++s) total += simplex_volume(s);
    return total;
}

Eigen::VectorXd GeometryData::position(int s, const Eigen::VectorXd& barycentric) const
{
    const Simplex& simplex = complex->simplex(dimension(), s);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(ambient_dimension());
    for (int i = 0; i < static_cast<int>(simplex.size()); ++i) {
        x += barycentric(i) * vertices.row(simplex[i]).transpose();
    }
    return x;
}

GeometryData make_geometry(std::shared_ptr<const SimplicialComplex> complex, Eigen::MatrixXd vertices,
                           Manifold manifold)
{
    if (vertices.rows() != complex->count(0)) {
        throw DomainError("make_geometry: vertex coordinate count does not match the complex");
    }
    GeometryData geom;
    geom.complex = std::move(complex);
    geom.vertices = std::move(vertices);
    geom.manifold = manifold;
    const int n = geom.dimension();
    for (const Simplex& s : geom.complex->simplices(n)) {
        Eigen::MatrixXd frame(geom.ambient_dimension(), n);
        for (int i = 1; i <= n; ++i) frame.col(i - 1) = (geom.vertices.row(s[i]) - geom.vertices.row(s[0])).transpose();
        geom.grams.push_back(frame.transpose() * frame);
        geom.frames.push_back(std::move(frame));
    }
    return geom;
}

GeometryData conformally_scaled(const GeometryData& geom, const Eigen::VectorXd& log_factors)
{
    if (log_factors.size() != static_cast<Eigen::Index>(geom.grams.size())) {
        throw DomainError("conformally_scaled: one factor per top simplex required");
    }
    GeometryData out = geom;
    for (std::size_t s = 0; s < out.grams.size(); ++s) out.grams[s] *= std::exp(log_factors(s));
    return out;
}

GeometryData uniformly_scaled(const GeometryData& geom, double c)
{
    GeometryData out = geom;
    out.vertices *= c;
    for (auto& f : out.frames) f *= c;
    for (auto& g : out.grams) g *= c * c;
    return out;
}

std::vector<std::string> validate_geometry(const GeometryData& geom)
{
    std::vector<std::string> issues;
    if (!geom.complex) return {"geometry has no complex"};
    if (geom.vertices.rows() != geom.complex->count(0)) issues.push_back("vertex count mismatch");
    if (static_cast<int>(geom.grams.size()) != geom.complex->count(geom.dimension())) {
        issues.push_back("one metric tensor per top simplex required");
        return issues;
    }
    for (std::size_t s = 0; s < geom.grams.size(); ++s) {
        const Eigen::MatrixXd& g = geom.grams[s];
        if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * g.cwiseAbs().maxCoeff()) {
            issues.push_back("metric of simplex " + std::to_string(s) + " is not symmetric");
        }
        Eigen::LLT<Eigen::MatrixXd> llt(g);
        if (llt.info() != Eigen::Success) {
            issues.push_back("metric of simplex " + std::to_string(s) + " is not positive definite");
        }
    }
    const auto rule = geom.quadrature();
    double reference = 1;
    for (int i = 2; i <= geom.dimension(); ++i) reference /= i;
    if ((rule.weights.array() <= 0).any()) issues.push_back("non-positive quadrature weight");
    if (std::abs(rule.weights.sum() - reference) > 1e-12) issues.push_back("quadrature weights do not sum to the reference volume");
    return issues;
}

Eigen::MatrixXd ActionData::fields_at(const Eigen::VectorXd& y) const
{
    Eigen::MatrixXd out(y.size(), group_dimension());
    for (int j = 0; j < group_dimension(); ++j) out.col(j) = generators[j] * y;
    return out;
}

ActionData no_action()
{
    return {};
}

ActionData rotation_action()
{
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(3, 3);
    omega(0, 1) = -1;
    omega(1, 0) = 1;
    return {{omega}, 0, "rotation"};
}

ActionData hopf_action()
{
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(4, 4);
    omega(0, 1) = -1;
    omega(1, 0) = 1;
    omega(2, 3) = -1;
    omega(3, 2) = 1;
    return {{omega}, 0, "hopf"};
}

ActionData torus_translation_action()
{
    // d/dx of (cos 2πx, sin 2πx)/(2π) is 2π times a quarter turn of the first factor.
    const double two_pi = 2.0 * std::numbers::pi;
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(4, 4);
    omega(0, 1) = -two_pi;
    omega(1, 0) = two_pi;
    return {{omega}, 0, "translation"};
}

ActionData action_from_tag(const std::string& tag)
{
    if (tag == "none") return no_action();
    if (tag == "rotation") return rotation_action();
    if (tag == "hopf") return hopf_action();
    if (tag == "translation") return torus_translation_action();
    throw DomainError("unknown action '" + tag + "'");
}

} // namespace hodge

#include "hodge/reports.hpp"

#include <iomanip>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace hodge {

using nlohmann::json;

namespace {

json spectrum_fields(const SpectrumResult& r)
{
    return {{"degree", r.degree},         {"eps", r.eps},
            {"eigenvalues", r.eigenvalues}, {"zero_modes", r.zero_modes},
            {"residuals", r.residuals},     {"iterations", r.iterations},
            {"solver", r.solver},           {"converged", r.converged},
            {"cond_estimate", r.cond_estimate}};
}

json parse(const std::string& text)
{
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw DomainError(std::string("report: malformed JSON: ") + e.what());
    }
}

std::string number(double x)
{
    std::ostringstream os;
    os << std::setprecision(std::numeric_limits<double>::max_digits10) << x;
    return os.str();
}

} // namespace

std::string to_json(const SpectrumResult& r, const std::string& mesh, const std::string& action)
{
    json j = spectrum_fields(r);
    j["mesh"] = mesh;
    j["action"] = action;
    std::vector<json> groups;
    for (const auto& g : group_multiplicities(r.eigenvalues)) {
        groups.push_back({{"value", g.value}, {"multiplicity", g.multiplicity}});
    }
    j["multiplicities"] = groups;
    return j.dump(2);
}

std::string to_json(const SweepReport& r)
{
    const json j = {{"mesh", r.mesh},
                    {"action", r.action},
                    {"quotient", r.quotient},
                    {"p", r.p},
                    {"eps", r.eps},
                    {"eigenvalues", r.eigenvalues},
                    {"zero_modes", r.zero_modes},
                    {"cond_estimates", r.cond_estimates},
                    {"solvers", r.solvers},
                    {"betti_manifold", r.betti_manifold},
                    {"betti_quotient", r.betti_quotient},
                    {"j_theorem", r.j_theorem},
                    {"j_exact", r.j_exact},
                    {"decay_factor", r.decay_factor},
                    {"stability_factor", r.stability_factor},
                    {"decay_ratio", r.decay_ratio},
                    {"stability_ratio", r.stability_ratio},
                    {"verdict", r.verdict},
                    {"notes", r.notes},
                    {"complete", r.complete}};
    return j.dump(2);
}

std::string to_json(const CompareReport& r)
{
    const json j = {{"geometry_a", r.geometry_a}, {"geometry_b", r.geometry_b}, {"p", r.p},
                    {"n", r.n},                   {"J", r.J},                   {"distortion", r.distortion},
                    {"bound", r.bound},           {"lambda_a", r.lambda_a},     {"lambda_b", r.lambda_b},
                    {"ratios", r.ratios},         {"within", r.within},         {"pass", r.pass}};
    return j.dump(2);
}

std::string to_json(const DualityReport& r)
{
    json rows = json::array();
    for (const auto& row : r.rows) {
        rows.push_back({{"p", row.p},
                        {"dual_degree", row.dual_degree},
                        {"lambda", row.lambda},
                        {"lambda_dual", row.lambda_dual},
                        {"relative_gaps", row.relative_gaps},
                        {"max_gap", row.max_gap}});
    }
    const json j = {{"mesh", r.mesh}, {"action", r.action}, {"eps", r.eps}, {"rows", rows}};
    return j.dump(2);
}

std::string betti_json(const BettiResult& r, int euler_characteristic)
{
    json j = {{"betti", r.betti}, {"euler_characteristic", euler_characteristic}};
    if (!r.warnings.empty()) j["warnings"] = r.warnings;
    return j.dump();
}

SpectrumResult parse_spectrum_result(const std::string& text)
{
    const json j = parse(text);
    SpectrumResult r;
    try {
        j.at("degree").get_to(r.degree);
        j.at("eps").get_to(r.eps);
        j.at("eigenvalues").get_to(r.eigenvalues);
        j.at("zero_modes").get_to(r.zero_modes);
        j.at("residuals").get_to(r.residuals);
        j.at("iterations").get_to(r.iterations);
        j.at("solver").get_to(r.solver);
        j.at("converged").get_to(r.converged);
        j.at("cond_estimate").get_to(r.cond_estimate);
    } catch (const json::exception& e) {
        throw DomainError(std::string("spectrum report: ") + e.what());
    }
    return r;
}

SweepReport parse_sweep_report(const std::string& text)
{
    const json j = parse(text);
    SweepReport r;
    try {
        j.at("mesh").get_to(r.mesh);
        j.at("action").get_to(r.action);
        j.at("quotient").get_to(r.quotient);
        j.at("p").get_to(r.p);
        j.at("eps").get_to(r.eps);
        j.at("eigenvalues").get_to(r.eigenvalues);
        j.at("zero_modes").get_to(r.zero_modes);
        j.at("cond_estimates").get_to(r.cond_estimates);
        j.at("solvers").get_to(r.solvers);
        j.at("betti_manifold").get_to(r.betti_manifold);
        j.at("betti_quotient").get_to(r.betti_quotient);
        j.at("j_theorem").get_to(r.j_theorem);
        j.at("j_exact").get_to(r.j_exact);
        j.at("decay_factor").get_to(r.decay_factor);
        j.at("stability_factor").get_to(r.stability_factor);
        j.at("decay_ratio").get_to(r.decay_ratio);
        j.at("stability_ratio").get_to(r.stability_ratio);
        j.at("verdict").get_to(r.verdict);
        j.at("notes").get_to(r.notes);
        j.at("complete").get_to(r.complete);
    } catch (const json::exception& e) {
        throw DomainError(std::string("sweep report: ") + e.what());
    }
    return r;
}

CompareReport parse_compare_report(const std::string& text)
{
    const json j = parse(text);
    CompareReport r;
    try {
        j.at("geometry_a").get_to(r.geometry_a);
        j.at("geometry_b").get_to(r.geometry_b);
        j.at("p").get_to(r.p);
        j.at("n").get_to(r.n);
        j.at("J").get_to(r.J);
        j.at("distortion").get_to(r.distortion);
        j.at("bound").get_to(r.bound);
        j.at("lambda_a").get_to(r.lambda_a);
        j.at("lambda_b").get_to(r.lambda_b);
        j.at("ratios").get_to(r.ratios);
        j.at("within").get_to(r.within);
        j.at("pass").get_to(r.pass);
    } catch (const json::exception& e) {
        throw DomainError(std::string("compare report: ") + e.what());
    }
    return r;
}

DualityReport parse_duality_report(const std::string& text)
{
    const json j = parse(text);
    DualityReport r;
    try {
        j.at("mesh").get_to(r.mesh);
        j.at("action").get_to(r.action);
        j.at("eps").get_to(r.eps);
        for (const auto& row : j.at("rows")) {
            DualityRow d;
            row.at("p").get_to(d.p);
            row.at("dual_degree").get_to(d.dual_degree);
            row.at("lambda").get_to(d.lambda);
            row.at("lambda_dual").get_to(d.lambda_dual);
            row.at("relative_gaps").get_to(d.relative_gaps);
            row.at("max_gap").get_to(d.max_gap);
            r.rows.push_back(std::move(d));
        }
    } catch (const json::exception& e) {
        throw DomainError(std::string("duality report: ") + e.what());
    }
    return r;
}

std::string to_csv(const SweepReport& r)
{
    std::ostringstream os;
    os << "mesh,action,p,eps,j,lambda,zero_modes,cond_estimate\n";
    for (std::size_t e = 0; e < r.eps.size(); ++e) {
        for (std::size_t j = 0; j < r.eigenvalues[e].size(); ++j) {
            os << r.mesh << ',' << r.action << ',' << r.p << ',' << number(r.eps[e]) << ',' << j + 1 << ','
               << number(r.eigenvalues[e][j]) << ',' << r.zero_modes[e] << ',' << number(r.cond_estimates[e]) << '\n';
        }
    }
    return os.str();
}

std::string to_csv(const SpectrumResult& r, const std::string& mesh, const std::string& action)
{
    std::ostringstream os;
    os << "mesh,action,p,eps,j,lambda,zero_modes,cond_estimate\n";
    for (std::size_t j = 0; j < r.eigenvalues.size(); ++j) {
        os << mesh << ',' << action << ',' << r.degree << ',' << number(r.eps) << ',' << j + 1 << ','
           << number(r.eigenvalues[j]) << ',' << r.zero_modes << ',' << number(r.cond_estimate) << '\n';
    }
    return os.str();
}

std::string to_csv(const DualityReport& r)
{
    std::ostringstream os;
    os << "p,dual_degree,j,lambda,lambda_dual,relative_gap\n";
    for (const auto& row : r.rows) {
        for (std::size_t j = 0; j < row.relative_gaps.size(); ++j) {
            os << row.p << ',' << row.dual_degree << ',' << j + 1 << ',' << number(row.lambda[j]) << ','
               << number(row.lambda_dual[j]) << ',' << number(row.relative_gaps[j]) << '\n';
        }
    }
    return os.str();
}

std::string to_csv(const CompareReport& r)
{
    std::ostringstream os;
    os << "j,lambda_a,lambda_b,ratio,bound,within\n";
    for (std::size_t j = 0; j < r.ratios.size(); ++j) {
        os << j + 1 << ',' << number(r.lambda_a[j]) << ',' << number(r.lambda_b[j]) << ',' << number(r.ratios[j])
           << ',' << number(r.bound) << ',' << (r.within[j] ? "true" : "false") << '\n';
    }
    return os.str();
}

std::string to_triplets(const Eigen::SparseMatrix<double>& m)
{
    std::ostringstream os;
    os << m.rows() << ' ' << m.cols() << ' ' << m.nonZeros() << '\n';
    os << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (int c = 0; c < m.outerSize(); ++c) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(m, c); it; ++it) {
            os << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
        }
    }
    return os.str();
}

} // namespace hodge

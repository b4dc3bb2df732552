#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "hodge/builders.hpp"
#include "hodge/catalog.hpp"
#include "hodge/cohomology.hpp"
#include "hodge/reports.hpp"

using namespace hodge;

namespace {

SweepReport sample_sweep()
{
    SweepReport r;
    r.mesh = "s3:600cell";
    r.action = "hopf";
    r.quotient = "icosahedron";
    r.p = 2;
    r.eps = {1.0, 0.1};
    r.eigenvalues = {{1.0 / 3, 2.5}, {0.0123456789012345, 2.25}};
    r.zero_modes = {120, 120};
    r.cond_estimates = {12.5, 1e5};
    r.solvers = {"lobpcg", "dense"};
    r.betti_manifold = {1, 0, 0, 1};
    r.betti_quotient = {1, 0, 1};
    r.j_theorem = 1;
    r.j_exact = true;
    r.decay_ratio = 0.037;
    r.stability_ratio = 1.1;
    r.verdict = "consistent";
    r.notes = {"note"};
    return r;
}

std::vector<std::string> lines(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);) out.push_back(line);
    return out;
}

} // namespace

TEST_CASE("sweep report JSON round-trips exactly")
{
    const SweepReport r = sample_sweep();
    const SweepReport back = parse_sweep_report(to_json(r));
    CHECK(back == r);
    CHECK(to_json(back) == to_json(r));
}

TEST_CASE("spectrum JSON carries mesh, action and multiplicities")
{
    SpectrumResult s;
    s.degree = 1;
    s.eps = 0.5;
    s.eigenvalues = {2.0, 2.0, 6.0};
    s.zero_modes = 1;
    s.residuals = {1e-12, 2e-12, 3e-12};
    s.iterations = 7;
    s.solver = "lobpcg";
    s.cond_estimate = 42;
    const auto j = nlohmann::json::parse(to_json(s, "icosphere:2", "none"));
    CHECK(j.at("mesh") == "icosphere:2");
    CHECK(j.at("action") == "none");
    CHECK(j.at("multiplicities").size() == 2);
    CHECK(j.at("multiplicities")[0].at("multiplicity") == 2);
    const SpectrumResult back = parse_spectrum_result(to_json(s, "icosphere:2", "none"));
    CHECK(back.eigenvalues == s.eigenvalues);
    CHECK(back.residuals == s.residuals);
    CHECK(back.zero_modes == 1);
    CHECK(back.solver == "lobpcg");
    CHECK(back.degree == 1);
}

TEST_CASE("compare and duality reports round-trip")
{
    CompareReport c;
    c.geometry_a = "a";
    c.geometry_b = "b";
    c.p = 1;
    c.n = 2;
    c.J = 4;
    c.distortion = 0.05;
    c.bound = std::exp(0.2);
    c.lambda_a = {1, 2};
    c.lambda_b = {0.25, 0.5};
    c.ratios = {0.25, 0.25};
    c.within = {false, false};
    c.pass = false;
    CHECK(parse_compare_report(to_json(c)) == c);

    DualityReport d;
    d.mesh = "s3:600cell";
    d.action = "none";
    d.eps = 1;
    d.rows.push_back({1, 3, {3.1, 3.2}, {3.0, 3.3}, {0.03, 0.03}, 0.03});
    CHECK(parse_duality_report(to_json(d)) == d);
}

TEST_CASE("malformed reports are rejected")
{
    CHECK_THROWS_AS(parse_sweep_report("{}"), DomainError);
    CHECK_THROWS_AS(parse_sweep_report("[1, 2"), DomainError);
    CHECK_THROWS_AS(parse_spectrum_result("{\"eigenvalues\": \"x\"}"), DomainError);
}

TEST_CASE("sweep CSV has one row per ε and eigenvalue")
{
    const auto rows = lines(to_csv(sample_sweep()));
    REQUIRE(rows.size() == 1 + 2 * 2);
    CHECK(rows[0] == "mesh,action,p,eps,j,lambda,zero_modes,cond_estimate");
    CHECK(rows[1].rfind("s3:600cell,hopf,2,1,1,", 0) == 0);
    CHECK(rows[4].rfind("s3:600cell,hopf,2,0.10000000000000001,2,2.25,120,", 0) == 0);
}

TEST_CASE("spectrum CSV shares the sweep columns")
{
    SpectrumResult s;
    s.degree = 1;
    s.eps = 1;
    s.eigenvalues = {6.25};
    s.zero_modes = 1;
    const auto rows = lines(to_csv(s, "icosphere:2", "none"));
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == "mesh,action,p,eps,j,lambda,zero_modes,cond_estimate");
    CHECK(rows[1] == "icosphere:2,none,1,1,1,6.25,1,0");
}

TEST_CASE("Betti JSON is compact")
{
    const auto k = *build_flat_torus(4, 4).complex;
    const std::string text = betti_json(compute_betti(k), 0);
    CHECK(text.find("\"betti\":[1,2,1]") != std::string::npos);
    CHECK(text.find("\"euler_characteristic\":0") != std::string::npos);
}

TEST_CASE("triplet export lists every stored entry")
{
    Eigen::SparseMatrix<double> m(2, 3);
    m.insert(0, 0) = 1.5;
    m.insert(1, 2) = -2;
    m.makeCompressed();
    const auto rows = lines(to_triplets(m));
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == "2 3 2");
    CHECK(rows[1] == "0 0 1.5");
    CHECK(rows[2] == "1 2 -2");
}

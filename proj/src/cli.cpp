#include "hodge/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hodge/catalog.hpp"
#include "hodge/cohomology.hpp"
#include "hodge/experiments.hpp"
#include "hodge/mesh_io.hpp"
#include "hodge/reports.hpp"

namespace hodge {

namespace {

struct Common {
    std::string mesh;
    std::string action;
    std::string out = "json";
    std::string output;
    std::string solver = "auto";
    double tol = 1e-10;
    std::uint64_t seed = EigensolverOptions{}.seed;
    int workers = 1;
    int k = 8;
    bool strict = false;
};

void add_mesh(CLI::App* cmd, Common& c)
{
    cmd->add_option("--mesh", c.mesh, "circle:N | path:N | torus:NxM | icosphere:L | s3:600cell[:L] | file:PATH")
        ->required();
}

void add_action(CLI::App* cmd, Common& c)
{
    cmd->add_option("--action", c.action, "none | rotation | hopf | translation");
}

void add_output(CLI::App* cmd, Common& c, bool csv = true)
{
    if (csv) cmd->add_option("--out", c.out, "report format")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--output", c.output, "write the report to this file instead of stdout");
}

void add_solver(CLI::App* cmd, Common& c)
{
    cmd->add_option("--k", c.k, "number of eigenvalues")->check(CLI::PositiveNumber);
    cmd->add_option("--tol", c.tol, "relative residual tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--solver", c.solver, "auto | iterative | dense")
        ->check(CLI::IsMember({"auto", "iterative", "dense"}));
    cmd->add_option("--seed", c.seed, "seed of the iterative solver's start block");
    cmd->add_option("--workers", c.workers, "threads for matrix assembly")->check(CLI::PositiveNumber);
}

SpectrumOptions spectrum_options(const Common& c)
{
    SpectrumOptions o;
    o.k = c.k;
    o.tol = c.tol;
    o.solver = solver_from_string(c.solver);
    o.eigensolver.seed = c.seed;
    return o;
}

// An empty default keeps the builder's own action.
Mesh load(const Common& c, const std::string& default_action = "")
{
    Mesh mesh = mesh_from_spec(c.mesh);
    const std::string& tag = c.action.empty() ? default_action : c.action;
    if (!tag.empty()) mesh = with_action(std::move(mesh), tag);
    return mesh;
}

Mesh load_with_geometry(const Common& c, const std::string& default_action = "")
{
    Mesh mesh = load(c, default_action);
    if (!mesh.has_geometry()) throw DomainError("mesh '" + mesh.name + "' has no vertex coordinates");
    return mesh;
}

void emit(const Common& c, const std::string& text, std::ostream& out)
{
    if (c.output.empty()) {
        out << text;
        if (!text.empty() && text.back() != '\n') out << '\n';
        return;
    }
    std::ofstream file(c.output);
    if (!file) throw DomainError("cannot write '" + c.output + "'");
    file << text;
    if (!text.empty() && text.back() != '\n') file << '\n';
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Hodge Laplacian spectra on simplicial manifolds and collapse experiments", "hodge"};
    app.require_subcommand(1);
    Common c;

    auto* mesh_cmd = app.add_subcommand("mesh", "build a mesh and write it in the interchange format");
    add_mesh(mesh_cmd, c);
    add_action(mesh_cmd, c);
    add_output(mesh_cmd, c, false);

    auto* betti_cmd = app.add_subcommand("betti", "Betti numbers and Euler characteristic");
    add_mesh(betti_cmd, c);
    add_output(betti_cmd, c);

    double eps = 1.0;
    int p = 1;
    bool full = false;
    std::string export_dir;
    auto* spectrum_cmd = app.add_subcommand("spectrum", "smallest eigenvalues of a discrete Laplacian");
    add_mesh(spectrum_cmd, c);
    add_action(spectrum_cmd, c);
    add_output(spectrum_cmd, c);
    add_solver(spectrum_cmd, c);
    spectrum_cmd->add_option("--p", p, "form degree");
    spectrum_cmd->add_option("--eps", eps, "collapse parameter ε")->check(CLI::PositiveNumber);
    spectrum_cmd->add_flag("--hodge", full, "full Hodge Laplacian instead of the Im(d) pencil");
    spectrum_cmd->add_option("--export-matrices", export_dir, "write the pencil matrices as triplet text here");

    std::vector<double> grid = SweepOptions{}.eps_grid;
    double decay = SweepOptions{}.decay_factor;
    auto* collapse_cmd = app.add_subcommand("collapse", "collapse sweep over an ε grid");
    add_mesh(collapse_cmd, c);
    add_action(collapse_cmd, c);
    add_output(collapse_cmd, c);
    add_solver(collapse_cmd, c);
    collapse_cmd->add_option("--p", p, "form degree");
    collapse_cmd->add_option("--eps", grid, "strictly decreasing grid in [0.05, 1]")->delimiter(',');
    collapse_cmd->add_option("--decay-factor", decay, "required decay of the forced eigenvalues")
        ->check(CLI::PositiveNumber);
    collapse_cmd->add_flag("--strict", c.strict, "exit 1 unless the verdict is consistent or no prediction");

    double scale = 0;
    double conformal = 0;
    auto* compare_cmd = app.add_subcommand("compare", "biLipschitz comparison of two geometries on one mesh");
    add_mesh(compare_cmd, c);
    add_output(compare_cmd, c);
    add_solver(compare_cmd, c);
    compare_cmd->add_option("--p", p, "form degree");
    auto* scale_opt = compare_cmd->add_option("--scale", scale, "second geometry: coordinates times c")
                          ->check(CLI::PositiveNumber);
    auto* conformal_opt =
        compare_cmd->add_option("--conformal", conformal, "second geometry: per-simplex factor e^u, |u| ≤ amplitude")
            ->check(CLI::NonNegativeNumber);
    scale_opt->excludes(conformal_opt);
    compare_cmd->add_flag("--strict", c.strict, "exit 1 when a ratio leaves the bound");

    auto* duality_cmd = app.add_subcommand("duality", "Im(d) spectra paired across complementary degrees");
    add_mesh(duality_cmd, c);
    add_action(duality_cmd, c);
    add_output(duality_cmd, c);
    add_solver(duality_cmd, c);
    duality_cmd->add_option("--eps", eps, "collapse parameter ε")->check(CLI::PositiveNumber);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "hodge: " << e.what() << "\n\n" << app.help();
        return exit_usage;
    }

    try {
        if (*mesh_cmd) {
            emit(c, write_mesh(load(c)), out);
            return exit_ok;
        }
        if (*betti_cmd) {
            const Mesh mesh = load(c);
            const BettiResult betti = compute_betti(*mesh.complex);
            if (c.out == "csv") {
                std::ostringstream os;
                os << "p,betti\n";
                for (std::size_t i = 0; i < betti.betti.size(); ++i) os << i << ',' << betti.betti[i] << '\n';
                emit(c, os.str(), out);
            } else {
                emit(c, betti_json(betti, static_cast<int>(euler_characteristic(*mesh.complex))), out);
            }
            return exit_ok;
        }
        if (*spectrum_cmd) {
            const Mesh mesh = load_with_geometry(c, "none");
            const MassFamily family(mesh.geometry, mesh.action, c.workers);
            const SpectrumOptions options = spectrum_options(c);
            if (!export_dir.empty()) {
                std::filesystem::create_directories(export_dir);
                const auto write = [&](const std::string& name, const SparseMatrix& m) {
                    std::ofstream f(std::filesystem::path(export_dir) / name);
                    if (!f) throw DomainError("cannot write into '" + export_dir + "'");
                    f << to_triplets(m);
                };
                if (full) {
                    write("mass.txt", family.weighted(eps, p));
                } else {
                    const Pencil pencil = im_d_pencil(family, eps, p);
                    write("stiffness.txt", pencil.a);
                    write("mass.txt", pencil.b);
                }
            }
            const SpectrumResult result =
                full ? hodge_spectrum(family, eps, p, options) : spectrum_im_d(family, eps, p, options);
            emit(c, c.out == "csv" ? to_csv(result, mesh.name, mesh.action.tag) : to_json(result, mesh.name, mesh.action.tag),
                 out);
            return exit_ok;
        }
        if (*collapse_cmd) {
            const Mesh mesh = load_with_geometry(c);
            SweepOptions options;
            options.eps_grid = grid;
            options.k = c.k;
            options.decay_factor = decay;
            options.workers = c.workers;
            options.spectrum = spectrum_options(c);
            const SweepReport report = collapse_sweep(mesh, builtin_quotient(mesh), p, options);
            emit(c, c.out == "csv" ? to_csv(report) : to_json(report), out);
            if (!report.complete) {
                err << "hodge: " << report.notes.back() << '\n';
                return exit_numerical;
            }
            if (c.strict && report.verdict == "inconsistent") return exit_failed_verdict;
            return exit_ok;
        }
        if (*compare_cmd) {
            Mesh mesh = load_with_geometry(c);
            GeometryData other;
            std::string other_name;
            if (*conformal_opt) {
                other = conformally_scaled(mesh.geometry,
                                           random_conformal_factors(mesh.geometry, conformal, c.seed));
                std::ostringstream os;
                os << mesh.name << " conformal |u|<=" << conformal << " seed " << c.seed;
                other_name = os.str();
            } else {
                const double factor = *scale_opt ? scale : 2.0;
                other = uniformly_scaled(mesh.geometry, factor);
                std::ostringstream os;
                os << mesh.name << " scaled by " << factor;
                other_name = os.str();
            }
            const CompareReport report = bilipschitz_compare(mesh.geometry, other, p, c.k, mesh.name, other_name,
                                                             spectrum_options(c), c.workers);
            emit(c, c.out == "csv" ? to_csv(report) : to_json(report), out);
            if (c.strict && !report.pass) return exit_failed_verdict;
            return exit_ok;
        }
        if (*duality_cmd) {
            const Mesh mesh = load_with_geometry(c, "none");
            const DualityReport report = hodge_duality_report(mesh, eps, c.k, spectrum_options(c), c.workers);
            emit(c, c.out == "csv" ? to_csv(report) : to_json(report), out);
            return exit_ok;
        }
    } catch (const DomainError& e) {
        err << "hodge: " << e.what() << "\n\n" << app.help();
        return exit_usage;
    } catch (const std::exception& e) {
        err << "hodge: " << e.what() << '\n';
        return exit_numerical;
    }
    err << app.help();
    return exit_usage;
}

} // namespace hodge

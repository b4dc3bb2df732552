#include "hodge/catalog.hpp"

#include <charconv>

#include "hodge/mesh_io.hpp"

namespace hodge {

namespace {

int parse_int(const std::string& text, const std::string& spec)
{
    int value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc() || ptr != end) throw DomainError("bad mesh descriptor '" + spec + "'");
    return value;
}

// "torus:6x8" → (6, 8)
int torus_cells(const Mesh& mesh, int axis)
{
    const std::string dims = mesh.name.substr(mesh.name.find(':') + 1);
    const auto x = dims.find('x');
    return axis == 0 ? std::stoi(dims.substr(0, x)) : std::stoi(dims.substr(x + 1));
}

} // namespace

Mesh mesh_from_spec(const std::string& spec)
{
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw DomainError("bad mesh descriptor '" + spec + "'");
    const std::string kind = spec.substr(0, colon);
    const std::string rest = spec.substr(colon + 1);
    if (kind == "file") return load_mesh_file(rest);
    if (kind == "circle") return build_circle(parse_int(rest, spec));
    if (kind == "path") return build_path(parse_int(rest, spec), 1.0);
    if (kind == "icosphere") return build_icosphere(parse_int(rest, spec));
    if (kind == "torus") {
        const auto x = rest.find('x');
        if (x == std::string::npos) throw DomainError("bad mesh descriptor '" + spec + "'");
        return build_flat_torus(parse_int(rest.substr(0, x), spec), parse_int(rest.substr(x + 1), spec));
    }
    if (kind == "s3") {
        if (rest == "600cell") return build_s3_600cell(0);
        if (rest.rfind("600cell:", 0) == 0) return build_s3_600cell(parse_int(rest.substr(8), spec));
    }
    throw DomainError("unknown mesh descriptor '" + spec + "'");
}

Mesh with_action(Mesh mesh, const std::string& action_tag)
{
    mesh.action = action_from_tag(action_tag);
    return mesh;
}

QuotientModel builtin_quotient(const Mesh& mesh)
{
    const std::string& tag = mesh.action.tag;
    const std::string family = mesh.name.substr(0, mesh.name.find(':'));
    if (tag == "hopf" && family == "s3") {
        return {icosahedron_complex(), "S² (icosahedron)", std::nullopt};
    }
    if (tag == "rotation" && family == "icosphere") {
        // suspension of a point: the closed interval of heights
        return {suspension(point_complex()), "interval [-1, 1]", std::nullopt};
    }
    if (tag == "translation" && family == "torus") {
        const int nx = torus_cells(mesh, 0);
        const int ny = torus_cells(mesh, 1);
        std::vector<int> map(static_cast<std::size_t>(nx) * ny);
        for (int j = 0; j < ny; ++j) {
            for (int i = 0; i < nx; ++i) map[i + nx * j] = j;
        }
        return {*build_circle(ny).complex, "circle C_" + std::to_string(ny), std::move(map)};
    }
    throw DomainError("no built-in quotient for mesh '" + mesh.name + "' with action '" + tag + "'");
}

} // namespace hodge

#include "hodge/mesh_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace hodge {

using nlohmann::json;

std::string write_mesh(const Mesh& mesh)
{
    json doc;
    doc["format"] = "hodge-mesh";
    doc["version"] = 1;
    doc["name"] = mesh.name;
    doc["dimension"] = mesh.complex->dimension();
    json lists = json::array();
    for (const auto& list : mesh.complex->all_simplices()) lists.push_back(list);
    doc["simplices"] = std::move(lists);
    if (mesh.has_geometry()) {
        json rows = json::array();
        for (Eigen::Index i = 0; i < mesh.geometry.vertices.rows(); ++i) {
            std::vector<double> row;
            for (Eigen::Index j = 0; j < mesh.geometry.vertices.cols(); ++j) row.push_back(mesh.geometry.vertices(i, j));
            rows.push_back(std::move(row));
        }
        doc["vertices"] = std::move(rows);
        doc["manifold"] = to_string(mesh.geometry.manifold);
    }
    doc["action"] = mesh.action.tag;
    return doc.dump(1) + "\n";
}

Mesh mesh_from_complex(SimplicialComplex complex, std::string name)
{
    Mesh mesh;
    mesh.name = std::move(name);
    mesh.complex = std::make_shared<const SimplicialComplex>(std::move(complex));
    mesh.geometry.complex = mesh.complex;
    mesh.action = no_action();
    return mesh;
}

Mesh read_mesh(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw DomainError(std::string("mesh document is not valid JSON: ") + e.what());
    }
    try {
        if (doc.value("format", "") != "hodge-mesh") throw DomainError("mesh document: missing format tag");
        const int n = doc.at("dimension").get<int>();
        auto lists = doc.at("simplices").get<std::vector<std::vector<Simplex>>>();
        if (static_cast<int>(lists.size()) != n + 1) {
            throw DomainError("mesh document: expected " + std::to_string(n + 1) + " simplex lists");
        }
        Mesh mesh = mesh_from_complex(SimplicialComplex(std::move(lists)), doc.value("name", std::string("file")));
        if (doc.contains("vertices")) {
            const auto rows = doc.at("vertices").get<std::vector<std::vector<double>>>();
            if (static_cast<int>(rows.size()) != mesh.complex->count(0)) {
                throw DomainError("mesh document: vertex coordinate count does not match the complex");
            }
            const std::size_t ambient = rows.empty() ? 0 : rows.front().size();
            Eigen::MatrixXd v(rows.size(), ambient);
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (rows[i].size() != ambient) throw DomainError("mesh document: ragged vertex coordinates");
                for (std::size_t j = 0; j < ambient; ++j) v(i, j) = rows[i][j];
            }
            const auto diagnostics = validate_complex(*mesh.complex);
            if (!diagnostics.empty()) {
                throw DomainError("mesh document: invalid complex: " + diagnostics.all().front());
            }
            mesh.geometry = make_geometry(mesh.complex, std::move(v),
                                          manifold_from_string(doc.value("manifold", std::string("euclidean"))));
        }
        mesh.action = action_from_tag(doc.value("action", std::string("none")));
        return mesh;
    } catch (const json::exception& e) {
        throw DomainError(std::string("mesh document: ") + e.what());
    }
}

void save_mesh(const Mesh& mesh, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out) throw DomainError("cannot write " + path.string());
    out << write_mesh(mesh);
}

Mesh load_mesh_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw DomainError("cannot read " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return read_mesh(buffer.str());
}

} // namespace hodge

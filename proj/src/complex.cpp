#include "hodge/complex.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace hodge {

IntegerSparseMatrix IntegerSparseMatrix::assemble(int rows, int cols, std::vector<Entry> raw)
{
    std::sort(raw.begin(), raw.end(), [](const Entry& a, const Entry& b) {
        return a.col != b.col ? a.col < b.col : a.row < b.row;
    });
    IntegerSparseMatrix m;
    m.rows = rows;
    m.cols = cols;
    for (const Entry& e : raw) {
        if (e.row < 0 || e.row >= rows || e.col < 0 || e.col >= cols) {
            throw DomainError("integer matrix entry out of range");
        }
        if (!m.entries.empty() && m.entries.back().row == e.row && m.entries.back().col == e.col) {
            m.entries.back().value += e.value;
        } else {
            m.entries.push_back(e);
        }
    }
    std::erase_if(m.entries, [](const Entry& e) { return e.value == 0; });
    return m;
}

IntegerSparseMatrix IntegerSparseMatrix::transpose() const
{
    std::vector<Entry> raw;
    raw.reserve(entries.size());
    for (const Entry& e : entries) raw.push_back({e.col, e.row, e.value});
    return assemble(cols, rows, std::move(raw));
}

Eigen::SparseMatrix<double> IntegerSparseMatrix::to_real() const
{
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(entries.size());
    for (const Entry& e : entries) trips.emplace_back(e.row, e.col, static_cast<double>(e.value));
    Eigen::SparseMatrix<double> m(rows, cols);
    m.setFromTriplets(trips.begin(), trips.end());
    return m;
}

Eigen::MatrixXd IntegerSparseMatrix::to_dense() const
{
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, cols);
    for (const Entry& e : entries) m(e.row, e.col) = static_cast<double>(e.value);
    return m;
}

IntegerSparseMatrix multiply(const IntegerSparseMatrix& a, const IntegerSparseMatrix& b)
{
    if (a.cols != b.rows) throw DomainError("integer matrix product: inner dimensions differ");
    // entries of a grouped by column
    std::vector<std::vector<std::pair<int, std::int64_t>>> a_cols(a.cols);
    for (const auto& e : a.entries) a_cols[e.col].emplace_back(e.row, e.value);
    std::vector<IntegerSparseMatrix::Entry> raw;
    for (const auto& e : b.entries) {
        for (const auto& [row, value] : a_cols[e.row]) raw.push_back({row, e.col, value * e.value});
    }
    return IntegerSparseMatrix::assemble(a.rows, b.cols, std::move(raw));
}

SimplicialComplex::SimplicialComplex(std::vector<std::vector<Simplex>> simplices)
    : simplices_(std::move(simplices))
{
    index_.resize(simplices_.size());
    for (std::size_t p = 0; p < simplices_.size(); ++p) {
        for (std::size_t i = 0; i < simplices_[p].size(); ++i) {
            index_[p].emplace(simplices_[p][i], static_cast<int>(i));
        }
    }
}

SimplicialComplex SimplicialComplex::from_top_simplices(std::vector<Simplex> top, int n_vertices)
{
    int n = 0;
    for (auto& s : top) {
        std::sort(s.begin(), s.end());
        n = std::max(n, static_cast<int>(s.size()) - 1);
    }
    std::vector<std::set<Simplex>> faces(n + 1);
    for (const auto& s : top) {
        const int k = static_cast<int>(s.size());
        for (unsigned mask = 1; mask < (1u << k); ++mask) {
            Simplex f;
            for (int i = 0; i < k; ++i) {
                if (mask & (1u << i)) f.push_back(s[i]);
            }
            faces[f.size() - 1].insert(std::move(f));
        }
    }
    std::vector<std::vector<Simplex>> lists(n + 1);
    for (int v = 0; v < n_vertices; ++v) lists[0].push_back({v});
    for (int p = 1; p <= n; ++p) lists[p].assign(faces[p].begin(), faces[p].end());
    return SimplicialComplex(std::move(lists));
}

int SimplicialComplex::count(int p) const
{
    if (p < 0 || p > dimension()) return 0;
    return static_cast<int>(simplices_[p].size());
}

std::span<const Simplex> SimplicialComplex::simplices(int p) const
{
    if (p < 0 || p > dimension()) return {};
    return simplices_[p];
}

int SimplicialComplex::find(const Simplex& s) const
{
    const int p = static_cast<int>(s.size()) - 1;
    if (p < 0 || p > dimension()) return -1;
    auto it = index_[p].find(s);
    return it == index_[p].end() ? -1 : it->second;
}

std::string to_string(const Simplex& s)
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
    os << ')';
    return os.str();
}

namespace {

// Faces of s with their incidence signs; a face missing from the complex gets index -1.
template <typename F>
void for_each_face(const SimplicialComplex& complex, const Simplex& s, F&& f)
{
    for (std::size_t omit = 0; omit < s.size(); ++omit) {
        Simplex face;
        face.reserve(s.size() - 1);
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (i != omit) face.push_back(s[i]);
        }
        const int sign = (omit % 2 == 0) ? 1 : -1;
        f(face, complex.find(face), sign);
    }
}

} // namespace

IntegerSparseMatrix boundary_matrix(const SimplicialComplex& complex, int p)
{
    if (p < 1 || p > complex.dimension()) {
        throw DomainError("boundary_matrix: degree " + std::to_string(p) + " outside [1, " +
                          std::to_string(complex.dimension()) + "]");
    }
    std::vector<IntegerSparseMatrix::Entry> raw;
    const auto simplices = complex.simplices(p);
    for (int j = 0; j < static_cast<int>(simplices.size()); ++j) {
        for_each_face(complex, simplices[j], [&](const Simplex& face, int row, int sign) {
            if (row < 0) throw DomainError("boundary_matrix: missing face " + to_string(face));
            raw.push_back({row, j, sign});
        });
    }
    return IntegerSparseMatrix::assemble(complex.count(p - 1), complex.count(p), std::move(raw));
}

IntegerSparseMatrix coboundary_matrix(const SimplicialComplex& complex, int p)
{
    if (p < 0 || p >= complex.dimension()) {
        throw DomainError("coboundary_matrix: degree " + std::to_string(p) + " outside [0, " +
                          std::to_string(complex.dimension() - 1) + "]");
    }
    return boundary_matrix(complex, p + 1).transpose();
}

Eigen::SparseMatrix<double> coboundary(const SimplicialComplex& complex, int p)
{
    if (p < 0 || p >= complex.dimension()) {
        return Eigen::SparseMatrix<double>(complex.count(p + 1), complex.count(p));
    }
    return coboundary_matrix(complex, p).to_real();
}

std::vector<std::string> ComplexDiagnostics::all() const
{
    std::vector<std::string> out;
    for (const auto* list : {&malformed, &duplicates, &missing_faces, &nonzero_boundary_products}) {
        out.insert(out.end(), list->begin(), list->end());
    }
    return out;
}

ComplexDiagnostics validate_complex(const SimplicialComplex& complex)
{
    ComplexDiagnostics report;
    const int n = complex.dimension();
    bool structurally_sound = true;
    for (int p = 0; p <= n; ++p) {
        std::set<Simplex> seen;
        for (const Simplex& s : complex.simplices(p)) {
            if (static_cast<int>(s.size()) != p + 1 || !std::is_sorted(s.begin(), s.end()) ||
                std::adjacent_find(s.begin(), s.end()) != s.end() ||
                (!s.empty() && s.front() < 0)) {
                report.malformed.push_back("degree " + std::to_string(p) + ": malformed simplex " +
                                           to_string(s));
                structurally_sound = false;
                continue;
            }
            if (!seen.insert(s).second) {
                report.duplicates.push_back("degree " + std::to_string(p) + ": duplicate simplex " +
                                            to_string(s));
            }
        }
    }
    for (int v = 0; v < complex.count(0); ++v) {
        if (complex.simplex(0, v) != Simplex{v}) {
            report.malformed.push_back("vertex list entry " + std::to_string(v) + " is " +
                                       to_string(complex.simplex(0, v)) + ", expected (" +
                                       std::to_string(v) + ")");
            structurally_sound = false;
        }
    }
    if (!structurally_sound) return report;

    for (int p = 1; p <= n; ++p) {
        std::set<Simplex> missing;
        for (const Simplex& s : complex.simplices(p)) {
            for_each_face(complex, s, [&](const Simplex& face, int row, int) {
                if (row < 0) missing.insert(face);
            });
        }
        for (const auto& face : missing) {
            report.missing_faces.push_back("degree " + std::to_string(p - 1) + ": missing face " +
                                           to_string(face));
        }
    }
    if (!report.missing_faces.empty()) return report;

    for (int p = 1; p < n; ++p) {
        const auto product = multiply(boundary_matrix(complex, p), boundary_matrix(complex, p + 1));
        for (const auto& e : product.entries) {
            report.nonzero_boundary_products.push_back(
                "boundary product " + std::to_string(p) + "∘" + std::to_string(p + 1) + " nonzero at (" +
                std::to_string(e.row) + "," + std::to_string(e.col) + ") = " + std::to_string(e.value));
        }
    }
    return report;
}

long euler_characteristic(const SimplicialComplex& complex)
{
    long chi = 0;
    for (int p = 0; p <= complex.dimension(); ++p) {
        chi += (p % 2 == 0 ? 1 : -1) * static_cast<long>(complex.count(p));
    }
    return chi;
}

Refinement refine(const SimplicialComplex& complex)
{
    const int n = complex.dimension();
    const int nv = complex.count(0);
    Refinement out;
    for (int v = 0; v < nv; ++v) out.vertex_parents.emplace_back(v, v);
    if (n == 0) {
        out.complex = complex;
        return out;
    }
    if (n > 3) throw DomainError("refine: dimension above 3 not supported");

    for (const Simplex& e : complex.simplices(1)) out.vertex_parents.emplace_back(e[0], e[1]);
    auto mid = [&](int a, int b) {
        if (a > b) std::swap(a, b);
        return nv + complex.find({a, b});
    };

    std::vector<Simplex> top;
    for (const Simplex& s : complex.simplices(n)) {
        if (n == 1) {
            const int m = mid(s[0], s[1]);
            top.push_back({s[0], m});
            top.push_back({m, s[1]});
        } else if (n == 2) {
            const int a = s[0], b = s[1], c = s[2];
            const int ab = mid(a, b), ac = mid(a, c), bc = mid(b, c);
            top.push_back({a, ab, ac});
            top.push_back({b, ab, bc});
            top.push_back({c, ac, bc});
            top.push_back({ab, bc, ac});
        } else {
            const int x0 = s[0], x1 = s[1], x2 = s[2], x3 = s[3];
            const int m01 = mid(x0, x1), m02 = mid(x0, x2), m03 = mid(x0, x3);
            const int m12 = mid(x1, x2), m13 = mid(x1, x3), m23 = mid(x2, x3);
            top.push_back({x0, m01, m02, m03});
            top.push_back({m01, x1, m12, m13});
            top.push_back({m02, m12, x2, m23});
            top.push_back({m03, m13, m23, x3});
            // interior octahedron, split along the m02–m13 diagonal
            top.push_back({m02, m13, m01, m03});
            top.push_back({m02, m13, m03, m23});
            top.push_back({m02, m13, m23, m12});
            top.push_back({m02, m13, m12, m01});
        }
    }
    out.complex = SimplicialComplex::from_top_simplices(std::move(top), nv + complex.count(1));
    return out;
}

SimplicialComplex suspension(const SimplicialComplex& complex)
{
    const int n = complex.dimension();
    const int nv = complex.count(0);
    const int north = nv, south = nv + 1;
    std::vector<std::vector<Simplex>> lists(n + 2);
    for (int p = 0; p <= n; ++p) {
        for (const Simplex& s : complex.simplices(p)) lists[p].push_back(s);
    }
    lists[0].push_back({north});
    lists[0].push_back({south});
    for (int apex : {north, south}) {
        for (int p = 0; p <= n; ++p) {
            for (Simplex s : complex.simplices(p)) {
                s.push_back(apex);
                lists[p + 1].push_back(std::move(s));
            }
        }
    }
    return SimplicialComplex(std::move(lists));
}

SimplicialComplex point_complex()
{
    return SimplicialComplex({{Simplex{0}}});
}

} // namespace hodge

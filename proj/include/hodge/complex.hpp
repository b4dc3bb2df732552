#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace hodge {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input outside an operation's domain (bad degree, bad size, bad epsilon, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Numerical failure: non-convergence, lost definiteness, conditioning abort.
class NumericalError : public Error {
public:
    using Error::Error;
};

using Simplex = std::vector<int>;

/// Sparse integer matrix kept as an assembled, (col,row)-sorted triplet list.
struct IntegerSparseMatrix {
    struct Entry {
        int row;
        int col;
        std::int64_t value;
        bool operator==(const Entry&) const = default;
    };

    int rows = 0;
    int cols = 0;
    std::vector<Entry> entries;

    /// Sums duplicates and drops zeros; sorts by (col, row).
    static IntegerSparseMatrix assemble(int rows, int cols, std::vector<Entry> raw);

    IntegerSparseMatrix transpose() const;
    bool is_zero() const { return entries.empty(); }
    Eigen::SparseMatrix<double> to_real() const;
    Eigen::MatrixXd to_dense() const;

    bool operator==(const IntegerSparseMatrix&) const = default;
};

/// Exact integer product.
IntegerSparseMatrix multiply(const IntegerSparseMatrix& a, const IntegerSparseMatrix& b);

/// Oriented simplicial complex. Simplices are strictly increasing vertex tuples,
/// listed per degree with dense 0-based indices. Orientation is induced by vertex order.
class SimplicialComplex {
public:
    SimplicialComplex() = default;

    /// Takes per-degree simplex lists as given; does not validate (see validate_complex).
    explicit SimplicialComplex(std::vector<std::vector<Simplex>> simplices);

    /// Closure of a list of top simplices, with vertices 0..n_vertices-1 and
    /// lower-degree simplices in lexicographic order.
    static SimplicialComplex from_top_simplices(std::vector<Simplex> top, int n_vertices);

    int dimension() const { return static_cast<int>(simplices_.size()) - 1; }
    int count(int p) const;
    std::span<const Simplex> simplices(int p) const;
    const Simplex& simplex(int p, int index) const { return simplices_.at(p).at(index); }

    /// Index of a sorted vertex tuple, or -1.
    int find(const Simplex& s) const;

    const std::vector<std::vector<Simplex>>& all_simplices() const { return simplices_; }

    bool operator==(const SimplicialComplex& other) const { return simplices_ == other.simplices_; }

private:
    std::vector<std::vector<Simplex>> simplices_;
    std::vector<std::map<Simplex, int>> index_;
};

/// Boundary ∂_p : C_p → C_{p-1}, 1 ≤ p ≤ n. Column j is the boundary of p-simplex j.
IntegerSparseMatrix boundary_matrix(const SimplicialComplex& complex, int p);

/// Coboundary d_p : C^p → C^{p+1}, i.e. ∂_{p+1}ᵀ; 0 ≤ p < n.
IntegerSparseMatrix coboundary_matrix(const SimplicialComplex& complex, int p);

/// Real-valued coboundary, with an empty (0 × count(p)) matrix when p = n and
/// a (count(0) × 0) one when p = -1.
Eigen::SparseMatrix<double> coboundary(const SimplicialComplex& complex, int p);

struct ComplexDiagnostics {
    std::vector<std::string> missing_faces;
    std::vector<std::string> duplicates;
    std::vector<std::string> nonzero_boundary_products;
    std::vector<std::string> malformed;

    bool empty() const
    {
        return missing_faces.empty() && duplicates.empty() && nonzero_boundary_products.empty() &&
               malformed.empty();
    }
    std::vector<std::string> all() const;
};

ComplexDiagnostics validate_complex(const SimplicialComplex& complex);

long euler_characteristic(const SimplicialComplex& complex);

/// Barycentric-style red refinement: edges split at midpoints, triangles into 4,
/// tetrahedra into 8. Returns the refined complex and, for each new vertex, the
/// pair of parent vertices it bisects (a == b for original vertices).
struct Refinement {
    SimplicialComplex complex;
    std::vector<std::pair<int, int>> vertex_parents;
};
Refinement refine(const SimplicialComplex& complex);

/// Join with two apex vertices.
SimplicialComplex suspension(const SimplicialComplex& complex);

/// The one-vertex complex.
SimplicialComplex point_complex();

std::string to_string(const Simplex& s);

} // namespace hodge

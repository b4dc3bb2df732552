#include "hodge/cohomology.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <sstream>

#include <Eigen/SVD>

namespace hodge {

namespace {

int numerical_rank(const Eigen::MatrixXd& m, const std::string& label, std::vector<std::string>* warnings)
{
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double largest = sv.size() ? sv(0) : 0.0;
    if (largest == 0.0) return 0;
    const double threshold = rank_threshold * largest;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > threshold) ++rank;
        if (warnings && sv(i) > threshold / 10 && sv(i) < threshold * 10) {
            std::ostringstream os;
            os << label << ": singular value " << sv(i) << " within a factor 10 of the rank threshold " << threshold;
            warnings->push_back(os.str());
        }
    }
    return rank;
}

// Exact column elimination on unit pivots. Rank-preserving over the rationals; the
// residual block goes to the thresholded SVD.
int integer_rank(const IntegerSparseMatrix& m, const std::string& label, std::vector<std::string>* warnings)
{
    using Column = std::vector<std::pair<int, std::int64_t>>;
    constexpr std::int64_t growth_limit = std::int64_t{1} << 31;
    std::vector<Column> cols(m.cols);
    std::vector<std::set<int>> row_cols(m.rows);
    for (const auto& e : m.entries) {
        cols[e.col].emplace_back(e.row, e.value);
        row_cols[e.row].insert(e.col);
    }
    for (auto& c : cols) std::sort(c.begin(), c.end());

    int rank = 0;
    bool progress = true;
    bool bounded = true;
    while (progress && bounded) {
        progress = false;
        for (int c = 0; c < m.cols && bounded; ++c) {
            int pivot_row = -1;
            std::int64_t pivot = 0;
            for (const auto& [r, v] : cols[c]) {
                if ((v == 1 || v == -1) && (pivot_row < 0 || row_cols[r].size() < row_cols[pivot_row].size())) {
                    pivot_row = r;
                    pivot = v;
                }
            }
            if (pivot_row < 0) continue;
            const std::vector<int> others(row_cols[pivot_row].begin(), row_cols[pivot_row].end());
            for (int other : others) {
                if (other == c) continue;
                Column& target = cols[other];
                const auto hit = std::lower_bound(target.begin(), target.end(), std::pair<int, std::int64_t>{pivot_row, 0},
                                                  [](const auto& a, const auto& b) { return a.first < b.first; });
                const std::int64_t factor = hit->second * pivot;
                Column merged;
                merged.reserve(target.size() + cols[c].size());
                auto a = target.begin();
                auto b = cols[c].begin();
                while (a != target.end() || b != cols[c].end()) {
                    if (b == cols[c].end() || (a != target.end() && a->first < b->first)) {
                        merged.push_back(*a++);
                    } else if (a == target.end() || b->first < a->first) {
                        merged.emplace_back(b->first, -factor * b->second);
                        row_cols[b->first].insert(other);
                        ++b;
                    } else {
                        const std::int64_t v = a->second - factor * b->second;
                        if (v != 0) {
                            merged.emplace_back(a->first, v);
                        } else {
                            row_cols[a->first].erase(other);
                        }
                        ++a;
                        ++b;
                    }
                }
                for (const auto& entry : merged) {
                    if (entry.second > growth_limit || entry.second < -growth_limit) bounded = false;
                }
                target = std::move(merged);
            }
            for (const auto& entry : cols[c]) row_cols[entry.first].erase(c);
            cols[c].clear();
            ++rank;
            progress = true;
        }
    }

    std::vector<int> rows_left;
    std::vector<int> cols_left;
    for (int r = 0; r < m.rows; ++r) {
        if (!row_cols[r].empty()) rows_left.push_back(r);
    }
    for (int c = 0; c < m.cols; ++c) {
        if (!cols[c].empty()) cols_left.push_back(c);
    }
    if (cols_left.empty()) return rank;
    std::vector<int> row_slot(m.rows, -1);
    for (std::size_t i = 0; i < rows_left.size(); ++i) row_slot[rows_left[i]] = static_cast<int>(i);
    Eigen::MatrixXd residual = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows_left.size()),
                                                     static_cast<Eigen::Index>(cols_left.size()));
    for (std::size_t j = 0; j < cols_left.size(); ++j) {
        for (const auto& [r, v] : cols[cols_left[j]]) residual(row_slot[r], static_cast<Eigen::Index>(j)) = static_cast<double>(v);
    }
    return rank + numerical_rank(residual, label, warnings);
}

} // namespace

int coboundary_rank(const SimplicialComplex& complex, int p, std::vector<std::string>* warnings)
{
    if (p < 0 || p >= complex.dimension()) return 0;
    return integer_rank(coboundary_matrix(complex, p), "rank d_" + std::to_string(p), warnings);
}

BettiResult compute_betti(const SimplicialComplex& complex)
{
    BettiResult out;
    const int n = complex.dimension();
    for (int p = 0; p < n; ++p) out.coboundary_ranks.push_back(coboundary_rank(complex, p, &out.warnings));
    for (int p = 0; p <= n; ++p) {
        const int up = p < n ? out.coboundary_ranks[p] : 0;
        const int down = p > 0 ? out.coboundary_ranks[p - 1] : 0;
        out.betti.push_back(complex.count(p) - up - down);
    }
    return out;
}

int kernel_dimension(const BettiResult& betti, int p)
{
    if (p < 0 || p >= static_cast<int>(betti.betti.size())) return 0;
    return betti.betti[p] + (p > 0 ? betti.coboundary_ranks[p - 1] : 0);
}

std::vector<int> betti_numbers(const SimplicialComplex& complex)
{
    return compute_betti(complex).betti;
}

std::vector<int> reduced_betti(std::vector<int> betti)
{
    if (!betti.empty()) betti[0] -= 1;
    return betti;
}

CohomologyBasis cohomology_basis(const SimplicialComplex& complex, int p)
{
    const int n = complex.dimension();
    if (p < 0 || p > n) throw DomainError("cohomology_basis: degree out of range");
    const int size = complex.count(p);
    Eigen::MatrixXd laplacian = Eigen::MatrixXd::Zero(size, size);
    if (p > 0) {
        const Eigen::MatrixXd down = coboundary_matrix(complex, p - 1).to_dense();
        laplacian += down * down.transpose();
    }
    if (p < n) {
        const Eigen::MatrixXd up = coboundary_matrix(complex, p).to_dense();
        laplacian += up.transpose() * up;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(laplacian);
    if (es.info() != Eigen::Success) throw NumericalError("cohomology_basis: eigensolver failed");
    const Eigen::VectorXd& values = es.eigenvalues();
    const double scale = std::max(values.cwiseAbs().maxCoeff(), 1.0);
    int kernel = 0;
    while (kernel < size && values(kernel) < rank_threshold * scale) ++kernel;
    if (kernel < size && values(kernel) < 1e3 * rank_threshold * scale) {
        throw NumericalError("cohomology_basis: harmonic space not separated from the rest of the spectrum");
    }
    CohomologyBasis basis;
    basis.degree = p;
    basis.cocycles = es.eigenvectors().leftCols(kernel);
    return basis;
}

std::vector<Eigen::SparseMatrix<double>> simplicial_pullback(const SimplicialComplex& source,
                                                             const SimplicialComplex& target,
                                                             const std::vector<int>& vertex_map)
{
    if (static_cast<int>(vertex_map.size()) != target.count(0)) {
        throw DomainError("simplicial_pullback: vertex map must cover every target vertex");
    }
    std::vector<Eigen::SparseMatrix<double>> maps;
    for (int q = 0; q <= target.dimension(); ++q) {
        std::vector<Eigen::Triplet<double>> trips;
        const auto simplices = target.simplices(q);
        for (int row = 0; row < static_cast<int>(simplices.size()); ++row) {
            Simplex image;
            for (int v : simplices[row]) image.push_back(vertex_map.at(v));
            // parity of the sorting permutation
            int sign = 1;
            for (std::size_t i = 0; i < image.size(); ++i) {
                for (std::size_t j = i + 1; j < image.size(); ++j) {
                    if (image[i] > image[j]) sign = -sign;
                }
            }
            std::sort(image.begin(), image.end());
            if (std::adjacent_find(image.begin(), image.end()) != image.end()) continue;
            const int col = source.find(image);
            if (col < 0) throw DomainError("simplicial_pullback: image " + to_string(image) + " is not a simplex");
            trips.emplace_back(row, col, sign);
        }
        Eigen::SparseMatrix<double> m(target.count(q), source.count(q));
        m.setFromTriplets(trips.begin(), trips.end());
        maps.push_back(std::move(m));
    }
    return maps;
}

int induced_map_kernel_dim(const std::vector<Eigen::SparseMatrix<double>>& maps, const SimplicialComplex& source,
                           const SimplicialComplex& target, int p)
{
    if (p < 0 || p >= static_cast<int>(maps.size())) throw DomainError("induced_map_kernel_dim: no map in degree p");
    for (int q = 0; q < static_cast<int>(maps.size()); ++q) {
        if (maps[q].rows() != target.count(q) || maps[q].cols() != source.count(q)) {
            throw DomainError("induced_map_kernel_dim: map in degree " + std::to_string(q) + " has the wrong shape");
        }
    }
    for (int q = 0; q + 1 < static_cast<int>(maps.size()); ++q) {
        const Eigen::MatrixXd lhs = Eigen::MatrixXd(maps[q + 1] * coboundary(source, q));
        const Eigen::MatrixXd rhs = Eigen::MatrixXd(coboundary(target, q) * maps[q]);
        if (lhs.size() && (lhs - rhs).cwiseAbs().maxCoeff() > 1e-10) {
            throw DomainError("induced_map_kernel_dim: not a cochain map in degree " + std::to_string(q));
        }
    }
    const CohomologyBasis from = cohomology_basis(source, p);
    if (from.dimension() == 0) return 0;
    const CohomologyBasis to = cohomology_basis(target, p);
    if (to.dimension() == 0) return from.dimension();
    // harmonic projection identifies a cocycle's class
    const Eigen::MatrixXd coords = to.cocycles.transpose() * (maps[p] * from.cocycles);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(coords);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double threshold = rank_threshold * std::max(1.0, sv.size() ? sv(0) : 0.0);
    const int rank = static_cast<int>((sv.array() > threshold).count());
    return from.dimension() - rank;
}

KernelBound kernel_dim_lower_bound(const std::vector<int>& betti_quotient, const std::vector<int>& betti_manifold, int p)
{
    if (p < 0) throw DomainError("kernel_dim_lower_bound: negative degree");
    const int quotient = p < static_cast<int>(betti_quotient.size()) ? betti_quotient[p] : 0;
    const int manifold = p < static_cast<int>(betti_manifold.size()) ? betti_manifold[p] : 0;
    return {std::max(0, quotient - manifold), manifold == 0};
}

} // namespace hodge

#pragma once

#include <vector>

#include <Eigen/Dense>

namespace hodge::exterior {

// Forms on an n-dimensional tangent space are coefficient vectors over the basis
// dt^I, I ranging over increasing q-subsets of {0..n-1} in lexicographic order.

using Subset = std::vector<int>;

inline std::vector<Subset> subsets(int n, int q)
{
    std::vector<Subset> out;
    if (q < 0 || q > n) return out;
    Subset s(q);
    for (int i = 0; i < q; ++i) s[i] = i;
    while (true) {
        out.push_back(s);
        int i = q - 1;
        while (i >= 0 && s[i] == n - q + i) --i;
        if (i < 0) break;
        ++s[i];
        for (int j = i + 1; j < q; ++j) s[j] = s[j - 1] + 1;
    }
    return out;
}

inline int subset_index(const std::vector<Subset>& basis, const Subset& s)
{
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (basis[i] == s) return static_cast<int>(i);
    }
    return -1;
}

/// Coefficients of the wedge of the rows of `covectors` (q × n).
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> wedge(const Eigen::MatrixBase<Derived>& covectors)
{
    using Scalar = typename Derived::Scalar;
    const int q = static_cast<int>(covectors.rows());
    const int n = static_cast<int>(covectors.cols());
    const auto basis = subsets(n, q);
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out(basis.size());
    for (std::size_t b = 0; b < basis.size(); ++b) {
        if (q == 0) {
            out(b) = Scalar(1);
            continue;
        }
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> minor(q, q);
        for (int j = 0; j < q; ++j) minor.col(j) = covectors.col(basis[b][j]);
        out(b) = minor.determinant();
    }
    return out;
}

/// Gram matrix of the q-form basis under the inverse metric: entries det(G⁻¹[I, J]).
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
form_metric(const Eigen::MatrixBase<Derived>& inverse_metric, int q)
{
    using Scalar = typename Derived::Scalar;
    const int n = static_cast<int>(inverse_metric.rows());
    const auto basis = subsets(n, q);
    const int size = static_cast<int>(basis.size());
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(size, size);
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> minor(q, q);
    for (int a = 0; a < size; ++a) {
        for (int b = 0; b < size; ++b) {
            if (q == 0) {
                out(a, b) = Scalar(1);
                continue;
            }
            for (int i = 0; i < q; ++i) {
                for (int j = 0; j < q; ++j) minor(i, j) = inverse_metric(basis[a][i], basis[b][j]);
            }
            out(a, b) = minor.determinant();
        }
    }
    return out;
}

/// Matrix of i_ξ : Λ^q → Λ^{q−1} for a tangent vector ξ given in t-coordinates.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
interior_product(const Eigen::MatrixBase<Derived>& xi, int q)
{
    using Scalar = typename Derived::Scalar;
    const int n = static_cast<int>(xi.size());
    const auto source = subsets(n, q);
    const auto target = subsets(n, q - 1);
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out =
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(target.size(), source.size());
    if (q == 0) return out;
    for (std::size_t c = 0; c < source.size(); ++c) {
        for (int m = 0; m < q; ++m) {
            Subset rest;
            for (int i = 0; i < q; ++i) {
                if (i != m) rest.push_back(source[c][i]);
            }
            const Scalar sign = (m % 2 == 0) ? Scalar(1) : Scalar(-1);
            out(subset_index(target, rest), c) += sign * xi(source[c][m]);
        }
    }
    return out;
}

/// Values at barycentric point `lambda` (n+1 coordinates) of the Whitney p-forms of
/// all p-faces of the reference n-simplex, one column per face. Faces are increasing
/// (p+1)-subsets of local vertices {0..n} in lexicographic order. Normalized so that
/// each form integrates to one over its own face.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
whitney_forms(const Eigen::MatrixBase<Derived>& lambda, int p)
{
    using Scalar = typename Derived::Scalar;
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    const int n = static_cast<int>(lambda.size()) - 1;
    // dλ_0 = −Σ dt_i, dλ_i = dt_i
    Mat dlambda = Mat::Zero(n + 1, n);
    dlambda.row(0).setConstant(Scalar(-1));
    dlambda.bottomRows(n).setIdentity();

    const auto faces = subsets(n + 1, p + 1);
    const int forms = static_cast<int>(subsets(n, p).size());
    Mat out = Mat::Zero(forms, faces.size());
    Scalar factorial = 1;
    for (int i = 2; i <= p; ++i) factorial *= Scalar(i);

    for (std::size_t f = 0; f < faces.size(); ++f) {
        const Subset& face = faces[f];
        for (int k = 0; k <= p; ++k) {
            Mat rows(p, n);
            for (int i = 0, r = 0; i <= p; ++i) {
                if (i != k) rows.row(r++) = dlambda.row(face[i]);
            }
            const Scalar sign = (k % 2 == 0) ? Scalar(1) : Scalar(-1);
            out.col(f) += sign * lambda(face[k]) * wedge(rows);
        }
        out.col(f) *= factorial;
    }
    return out;
}

} // namespace hodge::exterior

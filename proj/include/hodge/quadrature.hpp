#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "hodge/complex.hpp"

namespace hodge {

/// Quadrature on the reference n-simplex: columns of `barycentric` are nodes
/// (n+1 coordinates), weights sum to the reference volume 1/n!.
template <typename Scalar>
struct QuadratureRule {
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> barycentric;
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> weights;

    int size() const { return static_cast<int>(weights.size()); }
};

/// Gauss–Legendre nodes and weights on [0, 1] (Golub–Welsch).
template <typename Scalar>
void gauss_legendre_unit(int m, Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& nodes,
                         Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& weights)
{
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    Mat jacobi = Mat::Zero(m, m);
    for (int i = 1; i < m; ++i) {
        const Scalar b = Scalar(i) / std::sqrt(Scalar(4 * i * i - 1));
        jacobi(i, i - 1) = b;
        jacobi(i - 1, i) = b;
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(jacobi);
    nodes = (es.eigenvalues().array() + Scalar(1)) / Scalar(2);
    weights = es.eigenvectors().row(0).transpose().array().square();
}

/// Conical product (collapsed Gauss–Legendre) rule with m points per direction;
/// exact for polynomials of degree ≤ 2m − n. Interior nodes, positive weights.
template <typename Scalar>
QuadratureRule<Scalar> conical_product_rule(int n, int m)
{
    using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    QuadratureRule<Scalar> rule;
    if (n == 0) {
        rule.barycentric = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Ones(1, 1);
        rule.weights = Vec::Ones(1);
        return rule;
    }
    Vec x, w;
    gauss_legendre_unit<Scalar>(m, x, w);
    int total = 1;
    for (int i = 0; i < n; ++i) total *= m;
    rule.barycentric.resize(n + 1, total);
    rule.weights.resize(total);
    std::vector<int> digit(n, 0);
    for (int q = 0; q < total; ++q) {
        int rest = q;
        for (int i = 0; i < n; ++i) {
            digit[i] = rest % m;
            rest /= m;
        }
        // x_i = u_i Π_{l<i}(1 − u_l), Jacobian Π_i (1 − u_i)^{n−1−i}
        Scalar remaining = 1, weight = 1;
        for (int i = 0; i < n; ++i) {
            const Scalar u = x(digit[i]);
            rule.barycentric(i + 1, q) = u * remaining;
            weight *= w(digit[i]) * std::pow(Scalar(1) - u, Scalar(n - 1 - i));
            remaining *= Scalar(1) - u;
        }
        rule.barycentric(0, q) = remaining;
        rule.weights(q) = weight;
    }
    return rule;
}

/// Symmetric interior rules of the given polynomial degree of exactness.
/// Degree ≤ 2 uses the classical minimal rules (midpoint/centroid, 2-point Gauss,
/// 3-point interior triangle, 4-point tetrahedron); higher degrees fall back to
/// conical product rules.
template <typename Scalar>
QuadratureRule<Scalar> simplex_quadrature(int n, int degree)
{
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    if (n < 0 || degree < 0) throw DomainError("simplex_quadrature: negative dimension or degree");
    QuadratureRule<Scalar> rule;
    if (n == 0) return conical_product_rule<Scalar>(0, 1);
    if (degree <= 1) {
        Scalar volume = 1;
        for (int i = 2; i <= n; ++i) volume /= Scalar(i);
        rule.barycentric = Mat::Constant(n + 1, 1, Scalar(1) / Scalar(n + 1));
        rule.weights = Vec::Constant(1, volume);
        return rule;
    }
    if (degree == 2 && n <= 3) {
        if (n == 1) {
            const Scalar h = Scalar(1) / (Scalar(2) * std::sqrt(Scalar(3)));
            rule.barycentric.resize(2, 2);
            rule.barycentric << Scalar(0.5) + h, Scalar(0.5) - h, Scalar(0.5) - h, Scalar(0.5) + h;
            rule.weights = Vec::Constant(2, Scalar(0.5));
            return rule;
        }
        const Scalar a = n == 2 ? Scalar(2) / Scalar(3) : (Scalar(5) + Scalar(3) * std::sqrt(Scalar(5))) / Scalar(20);
        const Scalar b = (Scalar(1) - a) / Scalar(n);
        rule.barycentric = Mat::Constant(n + 1, n + 1, b);
        rule.barycentric.diagonal().setConstant(a);
        rule.weights = Vec::Constant(n + 1, n == 2 ? Scalar(1) / Scalar(6) : Scalar(1) / Scalar(24));
        return rule;
    }
    const int m = (degree + n + 2) / 2;
    return conical_product_rule<Scalar>(n, m);
}

} // namespace hodge

#pragma once

#include <string>

#include "hodge/cohomology.hpp"
#include "hodge/experiments.hpp"

namespace hodge {

// JSON mirrors the report fields; numbers are written in shortest round-trip form, so
// parse(to_json(r)) == r. No timestamps or timings are written.

std::string to_json(const SpectrumResult& r, const std::string& mesh, const std::string& action);
std::string to_json(const SweepReport& r);
std::string to_json(const CompareReport& r);
std::string to_json(const DualityReport& r);
std::string betti_json(const BettiResult& r, int euler_characteristic);

/// SpectrumResult without its eigenvectors.
SpectrumResult parse_spectrum_result(const std::string& json);
SweepReport parse_sweep_report(const std::string& json);
CompareReport parse_compare_report(const std::string& json);
DualityReport parse_duality_report(const std::string& json);

/// One row per (ε, j): mesh,action,p,eps,j,lambda,zero_modes,cond_estimate
std::string to_csv(const SweepReport& r);
std::string to_csv(const SpectrumResult& r, const std::string& mesh, const std::string& action);
/// p,dual_degree,j,lambda,lambda_dual,relative_gap
std::string to_csv(const DualityReport& r);
/// j,lambda_a,lambda_b,ratio,bound,within
std::string to_csv(const CompareReport& r);

/// Triplet text: a "rows cols nnz" header, then "row col value" per nonzero (0-based).
std::string to_triplets(const Eigen::SparseMatrix<double>& m);

} // namespace hodge

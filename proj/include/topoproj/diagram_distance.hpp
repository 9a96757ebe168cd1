#pragma once

#include <Eigen/Dense>

#include "topoproj/persistence.hpp"

namespace topoproj {

// L_q distance between diagram points; q may be +infinity.
double pair_distance(const PersistencePair& a, const PersistencePair& b, double q);

// L_q distance from a point to the diagonal {birth == death}: the midpoint
// projection is the closest diagonal point for every q >= 1.
double diagonal_distance(const PersistencePair& a, double q);

// Minimal-cost perfect assignment of a square cost matrix; returns the column
// matched to each row. Exact O(n^3) shortest augmenting path method.
std::vector<int> hungarian(const Eigen::MatrixXd& cost);

// p-Wasserstein distance with ground metric L_q, diagonal matching allowed.
// Infinite-death pairs must match each other (by sorted birth, cost
// |birth difference|); mismatched infinite counts give +infinity.
// p = +infinity delegates to bottleneck. Requires p, q >= 1.
double wasserstein(const PersistenceDiagram& d1, const PersistenceDiagram& d2, double p, double q);

// Bottleneck distance (the p -> infinity limit): smallest c admitting a
// perfect matching with every matched cost <= c. Exact via binary search over
// the candidate cost set with bipartite feasibility tests.
double bottleneck(const PersistenceDiagram& d1, const PersistenceDiagram& d2, double q);

}  // namespace topoproj

#pragma once

#include <Eigen/Dense>

#include "topoproj/error.hpp"

namespace topoproj {

// Ordered list of points, one per row; row indices are stable labels and every
// projection preserves them (point i of the image is the image of point i).
struct PointCloud {
    Eigen::MatrixXd pts;  // m x n

    PointCloud() = default;
    explicit PointCloud(Eigen::MatrixXd p);

    int size() const { return static_cast<int>(pts.rows()); }
    int dim() const { return static_cast<int>(pts.cols()); }
};

// Symmetric nonnegative matrix of Euclidean distances with zero diagonal.
class DistanceMatrix {
  public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(Eigen::MatrixXd d);

    int size() const { return static_cast<int>(d_.rows()); }
    double operator()(int i, int j) const { return d_(i, j); }
    const Eigen::MatrixXd& mat() const { return d_; }

  private:
    Eigen::MatrixXd d_;
};

// n x k matrix with orthonormal columns (a Stiefel frame); validated to
// 1e-10 in Frobenius norm at construction.
class ProjectionMatrix {
  public:
    static constexpr double kOrthoTol = 1e-10;

    ProjectionMatrix() = default;
    explicit ProjectionMatrix(Eigen::MatrixXd p);

    int rows() const { return static_cast<int>(p_.rows()); }
    int cols() const { return static_cast<int>(p_.cols()); }
    const Eigen::MatrixXd& mat() const { return p_; }

  private:
    Eigen::MatrixXd p_;
};

DistanceMatrix pairwise_distances(const PointCloud& x);

// Largest pairwise distance; 0 for a single point.
double diameter(const PointCloud& x);

// Y = X P, the k-dimensional image cloud. Nonexpanding on every pair.
PointCloud project(const PointCloud& x, const ProjectionMatrix& p);

struct EtaBounds {
    double eta_min = 0.0;
    double eta_max = 0.0;
};

// Range of per-pair distance shrinkage ||a-b|| - ||La-Lb|| over distinct
// index pairs. Both bounds are nonnegative (projections are nonexpanding;
// floating-point noise is clamped at zero).
EtaBounds eta_bounds(const PointCloud& x, const ProjectionMatrix& p);

}  // namespace topoproj

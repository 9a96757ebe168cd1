#include "topoproj/point_cloud.hpp"

#include <algorithm>
#include <cmath>

namespace topoproj {

PointCloud::PointCloud(Eigen::MatrixXd p) : pts(std::move(p)) {
    if (pts.rows() < 1 || pts.cols() < 1)
        throw std::invalid_argument("point cloud must have at least one point and one coordinate");
    if (!pts.allFinite()) throw std::invalid_argument("point cloud contains non-finite coordinates");
}

DistanceMatrix::DistanceMatrix(Eigen::MatrixXd d) : d_(std::move(d)) {
    if (d_.rows() != d_.cols()) throw std::invalid_argument("distance matrix must be square");
    if (!d_.allFinite()) throw std::invalid_argument("distance matrix contains non-finite entries");
    for (int i = 0; i < d_.rows(); ++i) {
        if (d_(i, i) != 0.0) throw std::invalid_argument("distance matrix diagonal must be zero");
        for (int j = i + 1; j < d_.cols(); ++j) {
            if (d_(i, j) < 0.0) throw std::invalid_argument("distance matrix entries must be nonnegative");
            if (d_(i, j) != d_(j, i)) throw std::invalid_argument("distance matrix must be symmetric");
        }
    }
}

ProjectionMatrix::ProjectionMatrix(Eigen::MatrixXd p) : p_(std::move(p)) {
    if (p_.rows() < 1 || p_.cols() < 1 || p_.cols() > p_.rows())
        throw std::invalid_argument("projection matrix must be n x k with 1 <= k <= n");
    if (!p_.allFinite()) throw std::invalid_argument("projection matrix contains non-finite entries");
    const Eigen::MatrixXd gram = p_.transpose() * p_;
    const double err = (gram - Eigen::MatrixXd::Identity(p_.cols(), p_.cols())).norm();
    if (err > kOrthoTol)
        throw std::invalid_argument("projection matrix columns are not orthonormal (error " +
                                    std::to_string(err) + ")");
}

DistanceMatrix pairwise_distances(const PointCloud& x) {
    const int m = x.size();
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            const double v = (x.pts.row(i) - x.pts.row(j)).norm();
            d(i, j) = v;
            d(j, i) = v;
        }
    }
    // Enforce exact zeros on the diagonal.
    return DistanceMatrix(std::move(d));
}

double diameter(const PointCloud& x) {
    const int m = x.size();
    double best = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            best = std::max(best, (x.pts.row(i) - x.pts.row(j)).norm());
    return best;
}

PointCloud project(const PointCloud& x, const ProjectionMatrix& p) {
    if (x.dim() != p.rows())
        throw std::invalid_argument("projection matrix rows must match point dimension");
    return PointCloud(x.pts * p.mat());
}

EtaBounds eta_bounds(const PointCloud& x, const ProjectionMatrix& p) {
    if (x.size() < 2) throw std::invalid_argument("eta bounds need at least two points");
    const PointCloud y = project(x, p);
    const int m = x.size();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            const double dx = (x.pts.row(i) - x.pts.row(j)).norm();
            const double dy = (y.pts.row(i) - y.pts.row(j)).norm();
            const double e = dx - dy;
            lo = std::min(lo, e);
            hi = std::max(hi, e);
        }
    }
    EtaBounds b;
    b.eta_min = std::max(0.0, lo);
    b.eta_max = std::max(b.eta_min, hi);
    return b;
}

}  // namespace topoproj

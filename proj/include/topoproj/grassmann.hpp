#pragma once

#include <vector>

#include "topoproj/optimizer.hpp"

namespace topoproj {

// A k-dimensional subspace of R^n, stored as an orthonormal n x k
// representative; all operations depend only on the column span.
class GrassmannPoint {
  public:
    GrassmannPoint() = default;
    explicit GrassmannPoint(Eigen::MatrixXd y);
    explicit GrassmannPoint(const ProjectionMatrix& p) : GrassmannPoint(p.mat()) {}

    int n() const { return static_cast<int>(y_.rows()); }
    int k() const { return static_cast<int>(y_.cols()); }
    const Eigen::MatrixXd& rep() const { return y_; }
    ProjectionMatrix frame() const { return ProjectionMatrix(y_); }

  private:
    Eigen::MatrixXd y_;
};

// Principal angles in ascending order, accurate for both tiny and large
// angles (cosine- and sine-based singular values combined).
std::vector<double> principal_angles(const GrassmannPoint& a, const GrassmannPoint& b);

// Geodesic distance sqrt(sum of squared principal angles).
double distance(const GrassmannPoint& a, const GrassmannPoint& b);

bool same_span(const GrassmannPoint& a, const GrassmannPoint& b, double tol = 1e-8);

// Geodesic exponential: thin SVD U S V' of the horizontal tangent delta gives
// exp = X V cos(S) V' + U sin(S) V'.
GrassmannPoint exp_map(const GrassmannPoint& base, const Eigen::MatrixXd& delta);

// Inverse of exp_map for targets off the cut locus (X'Y nonsingular):
// U S V' = (Y (X'Y)^-1 - X) thin SVD, log = U atan(S) V'.
Eigen::MatrixXd log_map(const GrassmannPoint& base, const GrassmannPoint& target);

// Span of the top-k eigenvectors of the average projector (1/m) sum P_i P_i'.
// Sets *ambiguous when eigenvalues k and k+1 coincide within 1e-12.
GrassmannPoint extrinsic_mean(const std::vector<GrassmannPoint>& points, bool* ambiguous = nullptr);

struct WeiszfeldStats {
    std::vector<double> objective;  // sum of geodesic distances per iterate
    int iterations = 0;
    bool converged = false;
};

// Geodesic median by Weiszfeld iteration started at the extrinsic mean;
// anchors closer than 1e-12 are left out of the update. Stops when successive
// iterates are within tol in geodesic distance.
GrassmannPoint weiszfeld_median(const std::vector<GrassmannPoint>& points, double tol = 1e-8,
                                int max_iter = 200, WeiszfeldStats* stats = nullptr);

// Random disjoint index cover with part sizes differing by at most one;
// indices are sorted inside each part.
std::vector<std::vector<int>> partition_indices(int m, int parts, Rng& rng);
std::vector<PointCloud> partition(const PointCloud& x, int parts, Rng& rng);

// Anneals each subset concurrently (per-subset seeds derived from cfg.seed)
// and fuses the resulting frames with the geodesic median. With one part this
// is exactly anneal(x, cfg).
ProjectionMatrix distributed_reduce(const PointCloud& x, int parts, const AnnealingConfig& cfg);

}  // namespace topoproj

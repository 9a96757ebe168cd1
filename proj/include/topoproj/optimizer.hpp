#pragma once

#include <cstdint>
#include <vector>

#include "topoproj/diagram_distance.hpp"
#include "topoproj/point_cloud.hpp"
#include "topoproj/rng.hpp"

namespace topoproj {

struct OrderWeight {
    int degree = 0;
    double weight = 1.0;
};

struct AnnealingConfig {
    int k = 2;
    double tau0 = 1.0;
    double tau_end = 1e-3;
    double gamma = 0.95;
    double sigma = 0.1;
    int steps_per_temp = 1;  // cooling every proposal is the default schedule
    std::uint64_t seed = 0;
    double p = 1.0;
    double q = 2.0;
    std::vector<OrderWeight> orders{{0, 1.0}};
    double variance_weight = 0.0;  // weight of the captured-variance bonus tr(P' Cov P)

    // Throws config_error on bad values; normalizes order weights to sum 1.
    void validate_and_normalize();
    int max_degree() const;
};

struct TraceStep {
    double temperature = 0.0;
    double proposal_cost = 0.0;
    double current_cost = 0.0;
    double best_cost = 0.0;
    bool accepted = false;
};

struct AnnealingTrace {
    std::vector<TraceStep> steps;
};

struct AnnealResult {
    ProjectionMatrix projection;
    double cost = 0.0;
    AnnealingTrace trace;
};

// Weighted sum over orders of the p-Wasserstein distance between the
// diagrams of X and of XP; the X-side diagrams are computed once.
class CostEvaluator {
  public:
    CostEvaluator(PointCloud x, AnnealingConfig cfg);

    double operator()(const ProjectionMatrix& p) const;
    double topological_cost(const ProjectionMatrix& p) const;
    const std::vector<PersistenceDiagram>& reference_diagrams() const { return dx_; }

  private:
    PointCloud x_;
    AnnealingConfig cfg_;
    std::vector<PersistenceDiagram> dx_;
    Eigen::MatrixXd cov_;
};

// One-off evaluation; builds a fresh evaluator.
double cost(const PointCloud& x, const ProjectionMatrix& p, const AnnealingConfig& cfg);

// Frame of the top-k eigenvectors of the sample covariance, eigenvalues
// descending, each column sign-fixed so its largest-magnitude entry is
// positive. If k exceeds the covariance rank the remaining columns are an
// arbitrary orthonormal complement and *rank_deficient is set.
ProjectionMatrix pca_projection(const PointCloud& x, int k, bool* rank_deficient = nullptr);

// Entrywise Gaussian nudge followed by thin QR; R's diagonal is sign-fixed
// positive so sigma -> 0 returns P itself.
ProjectionMatrix perturb(const ProjectionMatrix& p, double sigma, Rng& rng);

// Metropolis rule: always take improvements, otherwise accept when
// u < exp(-delta/tau).
bool accept_proposal(double delta, double tau, double u);

// Haar-ish random frame: entrywise standard normals followed by thin QR with
// the R diagonal sign-fixed positive.
ProjectionMatrix random_projection(int n, int k, Rng& rng);

// Simulated annealing on the Stiefel manifold, PCA start, geometric cooling;
// returns the best iterate ever visited.
AnnealResult anneal(const PointCloud& x, const AnnealingConfig& cfg);

// Independent chains with seeds derived from cfg.seed; best result wins
// (ties broken by chain index).
AnnealResult anneal_chains(const PointCloud& x, const AnnealingConfig& cfg, int chains);

}  // namespace topoproj

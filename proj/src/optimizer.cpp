#include "topoproj/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "topoproj/error.hpp"

namespace topoproj {

void AnnealingConfig::validate_and_normalize() {
    if (k < 1) throw config_error("k must be >= 1");
    if (!(tau0 > 0.0)) throw config_error("tau0 must be positive");
    if (!(tau_end > 0.0)) throw config_error("tau_end must be positive");
    if (!(gamma > 0.0 && gamma < 1.0)) throw config_error("gamma must lie in (0, 1)");
    if (!(sigma > 0.0)) throw config_error("sigma must be positive");
    if (steps_per_temp < 1) throw config_error("steps_per_temp must be >= 1");
    if (std::isnan(p) || p < 1.0) throw config_error("p must be >= 1");
    if (std::isnan(q) || q < 1.0) throw config_error("q must be >= 1");
    if (orders.empty()) throw config_error("at least one homology order is required");
    double sum = 0.0;
    for (const OrderWeight& ow : orders) {
        if (ow.degree < 0) throw config_error("homology degrees must be nonnegative");
        if (ow.weight < 0.0) throw config_error("order weights must be nonnegative");
        sum += ow.weight;
    }
    if (sum <= 0.0) throw config_error("order weights must not all be zero");
    for (OrderWeight& ow : orders) ow.weight /= sum;
    if (variance_weight < 0.0) throw config_error("variance weight must be nonnegative");
}

int AnnealingConfig::max_degree() const {
    int d = 0;
    for (const OrderWeight& ow : orders) d = std::max(d, ow.degree);
    return d;
}

CostEvaluator::CostEvaluator(PointCloud x, AnnealingConfig cfg) : x_(std::move(x)), cfg_(std::move(cfg)) {
    cfg_.validate_and_normalize();
    const int maxdeg = cfg_.max_degree();
    dx_ = compute_persistence(rips_filtration(pairwise_distances(x_), maxdeg + 1), maxdeg);
    if (cfg_.variance_weight > 0.0) {
        Eigen::MatrixXd centered = x_.pts.rowwise() - x_.pts.colwise().mean();
        cov_ = centered.transpose() * centered / std::max(1, x_.size() - 1);
    }
}

double CostEvaluator::topological_cost(const ProjectionMatrix& p) const {
    const PointCloud y = project(x_, p);
    const int maxdeg = cfg_.max_degree();
    const auto dy = compute_persistence(rips_filtration(pairwise_distances(y), maxdeg + 1), maxdeg);
    double total = 0.0;
    for (const OrderWeight& ow : cfg_.orders) {
        if (ow.weight == 0.0) continue;
        total += ow.weight * wasserstein(dx_[ow.degree], dy[ow.degree], cfg_.p, cfg_.q);
    }
    return total;
}

double CostEvaluator::operator()(const ProjectionMatrix& p) const {
    double c = topological_cost(p);
    if (cfg_.variance_weight > 0.0)
        c -= cfg_.variance_weight * (p.mat().transpose() * cov_ * p.mat()).trace();
    return c;
}

double cost(const PointCloud& x, const ProjectionMatrix& p, const AnnealingConfig& cfg) {
    return CostEvaluator(x, cfg)(p);
}

ProjectionMatrix pca_projection(const PointCloud& x, int k, bool* rank_deficient) {
    if (x.size() < 2) throw std::invalid_argument("pca needs at least two points");
    if (k < 1 || k > x.dim()) throw std::invalid_argument("pca target dimension must satisfy 1 <= k <= n");
    Eigen::MatrixXd centered = x.pts.rowwise() - x.pts.colwise().mean();
    Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(x.size() - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
    if (es.info() != Eigen::Success) throw numeric_error("covariance eigendecomposition failed");

    const int n = x.dim();
    Eigen::MatrixXd p(n, k);
    for (int j = 0; j < k; ++j) {
        Eigen::VectorXd col = es.eigenvectors().col(n - 1 - j);  // descending eigenvalues
        int arg = 0;
        for (int r = 1; r < n; ++r)
            if (std::abs(col(r)) > std::abs(col(arg))) arg = r;
        if (col(arg) < 0.0) col = -col;
        p.col(j) = col;
    }
    if (rank_deficient) {
        const double top = std::max(es.eigenvalues()(n - 1), 0.0);
        *rank_deficient = es.eigenvalues()(n - k) <= top * 1e-12;
    }
    return ProjectionMatrix(std::move(p));
}

ProjectionMatrix perturb(const ProjectionMatrix& p, double sigma, Rng& rng) {
    if (!(sigma >= 0.0)) throw std::invalid_argument("sigma must be nonnegative");
    const int n = p.rows(), k = p.cols();
    for (int attempt = 0; attempt < 10; ++attempt) {
        Eigen::MatrixXd nudged = p.mat();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < k; ++j) nudged(i, j) += sigma * rng.normal();
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(nudged);
        Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, k);
        const Eigen::MatrixXd r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
        bool degenerate = false;
        for (int j = 0; j < k; ++j) {
            if (std::abs(r(j, j)) < 1e-12) {
                degenerate = true;
                break;
            }
            if (r(j, j) < 0.0) q.col(j) = -q.col(j);
        }
        if (!degenerate) return ProjectionMatrix(std::move(q));
    }
    throw numeric_error("perturbation produced a rank-deficient frame repeatedly");
}

bool accept_proposal(double delta, double tau, double u) {
    if (std::isnan(delta)) return false;
    if (delta < 0.0) return true;
    return u < std::exp(-delta / tau);
}

ProjectionMatrix random_projection(int n, int k, Rng& rng) {
    if (n < 1 || k < 1 || k > n) throw std::invalid_argument("need 1 <= k <= n");
    Eigen::MatrixXd g(n, k);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < k; ++j) g(i, j) = rng.normal();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, k);
    const Eigen::MatrixXd r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    for (int j = 0; j < k; ++j)
        if (r(j, j) < 0.0) q.col(j) = -q.col(j);
    return ProjectionMatrix(std::move(q));
}

AnnealResult anneal(const PointCloud& x, const AnnealingConfig& raw_cfg) {
    AnnealingConfig cfg = raw_cfg;
    cfg.validate_and_normalize();
    if (cfg.k > x.dim()) throw config_error("k must not exceed the ambient dimension");

    const CostEvaluator f(x, cfg);
    Rng rng(cfg.seed);

    ProjectionMatrix cur = pca_projection(x, cfg.k);
    double cur_cost = f(cur);
    AnnealResult res;
    res.projection = cur;
    res.cost = cur_cost;

    for (double tau = cfg.tau0; tau > cfg.tau_end; tau *= cfg.gamma) {
        for (int s = 0; s < cfg.steps_per_temp; ++s) {
            ProjectionMatrix prop = perturb(cur, cfg.sigma, rng);
            const double prop_cost = f(prop);
            const double u = rng.uniform();
            const bool take = accept_proposal(prop_cost - cur_cost, tau, u);
            if (take) {
                cur = std::move(prop);
                cur_cost = prop_cost;
                if (cur_cost < res.cost) {
                    res.projection = cur;
                    res.cost = cur_cost;
                }
            }
            res.trace.steps.push_back({tau, prop_cost, cur_cost, res.cost, take});
        }
    }
    return res;
}

AnnealResult anneal_chains(const PointCloud& x, const AnnealingConfig& cfg, int chains) {
    if (chains < 1) throw config_error("chain count must be >= 1");
    if (chains == 1) return anneal(x, cfg);
    std::vector<std::future<AnnealResult>> futs;
    futs.reserve(chains);
    for (int c = 0; c < chains; ++c) {
        AnnealingConfig sub = cfg;
        sub.seed = Rng::derive(cfg.seed, static_cast<std::uint64_t>(c));
        futs.push_back(std::async(std::launch::async, [&x, sub] { return anneal(x, sub); }));
    }
    AnnealResult best;
    bool have = false;
    for (auto& fu : futs) {
        AnnealResult r = fu.get();
        if (!have || r.cost < best.cost) {
            best = std::move(r);
            have = true;
        }
    }
    return best;
}

}  // namespace topoproj

#include "topoproj/grassmann.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>

#include "topoproj/error.hpp"

namespace topoproj {

namespace {

void check_compatible(const GrassmannPoint& a, const GrassmannPoint& b) {
    if (a.n() != b.n() || a.k() != b.k())
        throw std::invalid_argument("subspaces must share ambient and intrinsic dimensions");
}

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

}  // namespace

GrassmannPoint::GrassmannPoint(Eigen::MatrixXd y) : y_(std::move(y)) {
    ProjectionMatrix check{y_};  // enforces shape and orthonormality
}

std::vector<double> principal_angles(const GrassmannPoint& a, const GrassmannPoint& b) {
    check_compatible(a, b);
    const int k = a.k();
    const Eigen::MatrixXd m = a.rep().transpose() * b.rep();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd_cos(m);
    // Residual of B against span(A); its singular values are the sines.
    const Eigen::MatrixXd res = b.rep() - a.rep() * m;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd_sin(res);

    std::vector<double> out(k);
    for (int i = 0; i < k; ++i) {
        const double c = clamp01(svd_cos.singularValues()(i));          // descending cos
        const double s = clamp01(svd_sin.singularValues()(k - 1 - i));  // ascending sin
        out[i] = (c * c > 0.5) ? std::asin(s) : std::acos(c);
    }
    std::sort(out.begin(), out.end());
    return out;
}

double distance(const GrassmannPoint& a, const GrassmannPoint& b) {
    double sum = 0.0;
    for (double t : principal_angles(a, b)) sum += t * t;
    return std::sqrt(sum);
}

bool same_span(const GrassmannPoint& a, const GrassmannPoint& b, double tol) {
    const std::vector<double> ang = principal_angles(a, b);
    return ang.empty() || ang.back() <= tol;
}

GrassmannPoint exp_map(const GrassmannPoint& base, const Eigen::MatrixXd& delta) {
    if (delta.rows() != base.n() || delta.cols() != base.k())
        throw std::invalid_argument("tangent vector shape must match the base representative");
    if ((base.rep().transpose() * delta).norm() > 1e-8)
        throw std::invalid_argument("tangent vector must be horizontal (X' delta = 0)");
    // Drop the (tiny) vertical component so the closed form stays orthonormal.
    const Eigen::MatrixXd horiz = delta - base.rep() * (base.rep().transpose() * delta);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(horiz, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd s = svd.singularValues();
    const Eigen::MatrixXd xv = base.rep() * svd.matrixV();
    Eigen::MatrixXd out = xv * s.array().cos().matrix().asDiagonal() * svd.matrixV().transpose() +
                          svd.matrixU() * s.array().sin().matrix().asDiagonal() * svd.matrixV().transpose();
    return GrassmannPoint(std::move(out));
}

Eigen::MatrixXd log_map(const GrassmannPoint& base, const GrassmannPoint& target) {
    check_compatible(base, target);
    const Eigen::MatrixXd m = base.rep().transpose() * target.rep();
    Eigen::JacobiSVD<Eigen::MatrixXd> inv_svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    // A vanishing singular value of X'Y means the target contains a direction
    // orthogonal to the base: the cut locus, where the log map is undefined.
    if (inv_svd.singularValues()(base.k() - 1) < 1e-12)
        throw numeric_error("log map undefined: subspaces contain orthogonal directions (cut locus)");
    const Eigen::MatrixXd m_inv = inv_svd.matrixV() *
                                  inv_svd.singularValues().cwiseInverse().asDiagonal() *
                                  inv_svd.matrixU().transpose();
    const Eigen::MatrixXd g = target.rep() * m_inv - base.rep();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(g, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd s = svd.singularValues();
    return svd.matrixU() * s.array().atan().matrix().asDiagonal() * svd.matrixV().transpose();
}

GrassmannPoint extrinsic_mean(const std::vector<GrassmannPoint>& points, bool* ambiguous) {
    if (points.empty()) throw std::invalid_argument("mean of an empty set of subspaces");
    const int n = points[0].n(), k = points[0].k();
    Eigen::MatrixXd avg = Eigen::MatrixXd::Zero(n, n);
    for (const GrassmannPoint& p : points) {
        check_compatible(points[0], p);
        avg += p.rep() * p.rep().transpose();
    }
    avg /= static_cast<double>(points.size());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(avg);
    if (es.info() != Eigen::Success) throw numeric_error("projector average eigendecomposition failed");
    if (ambiguous)
        *ambiguous = k < n && std::abs(es.eigenvalues()(n - k) - es.eigenvalues()(n - k - 1)) < 1e-12;
    Eigen::MatrixXd rep(n, k);
    for (int j = 0; j < k; ++j) rep.col(j) = es.eigenvectors().col(n - 1 - j);
    return GrassmannPoint(std::move(rep));
}

GrassmannPoint weiszfeld_median(const std::vector<GrassmannPoint>& points, double tol, int max_iter,
                                WeiszfeldStats* stats) {
    if (points.empty()) throw std::invalid_argument("median of an empty set of subspaces");
    GrassmannPoint cur = extrinsic_mean(points);
    if (stats) {
        stats->objective.clear();
        stats->iterations = 0;
        stats->converged = false;
    }
    auto objective = [&points](const GrassmannPoint& p) {
        double s = 0.0;
        for (const GrassmannPoint& a : points) s += distance(p, a);
        return s;
    };
    if (stats) stats->objective.push_back(objective(cur));

    for (int it = 0; it < max_iter; ++it) {
        Eigen::MatrixXd dir = Eigen::MatrixXd::Zero(cur.n(), cur.k());
        double wsum = 0.0;
        for (const GrassmannPoint& a : points) {
            const Eigen::MatrixXd lg = log_map(cur, a);
            const double d = lg.norm();
            if (d < 1e-12) continue;  // anchor: current iterate sits on this point
            dir += lg / d;
            wsum += 1.0 / d;
        }
        if (wsum == 0.0) {
            if (stats) stats->converged = true;
            return cur;  // every input coincides with the iterate
        }
        GrassmannPoint next = exp_map(cur, dir / wsum);
        const double step = distance(cur, next);
        cur = std::move(next);
        if (stats) {
            stats->objective.push_back(objective(cur));
            stats->iterations = it + 1;
        }
        if (step < tol) {
            if (stats) stats->converged = true;
            break;
        }
    }
    return cur;
}

std::vector<std::vector<int>> partition_indices(int m, int parts, Rng& rng) {
    if (parts < 1 || parts > m) throw std::invalid_argument("part count must lie in [1, m]");
    std::vector<int> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    for (int i = m - 1; i > 0; --i)
        std::swap(idx[i], idx[rng.uniform_int(static_cast<std::uint64_t>(i) + 1)]);
    std::vector<std::vector<int>> out(parts);
    const int base = m / parts, extra = m % parts;
    int at = 0;
    for (int p = 0; p < parts; ++p) {
        const int len = base + (p < extra ? 1 : 0);
        out[p].assign(idx.begin() + at, idx.begin() + at + len);
        std::sort(out[p].begin(), out[p].end());
        at += len;
    }
    return out;
}

std::vector<PointCloud> partition(const PointCloud& x, int parts, Rng& rng) {
    std::vector<PointCloud> out;
    for (const std::vector<int>& part : partition_indices(x.size(), parts, rng)) {
        Eigen::MatrixXd pts(part.size(), x.dim());
        for (std::size_t r = 0; r < part.size(); ++r) pts.row(r) = x.pts.row(part[r]);
        out.emplace_back(std::move(pts));
    }
    return out;
}

ProjectionMatrix distributed_reduce(const PointCloud& x, int parts, const AnnealingConfig& cfg) {
    if (parts == 1) return anneal(x, cfg).projection;
    Rng part_rng(Rng::derive(cfg.seed, 0x7061727469746F6EULL));  // dedicated partition stream
    const std::vector<PointCloud> subsets = partition(x, parts, part_rng);
    std::vector<std::future<ProjectionMatrix>> futs;
    futs.reserve(parts);
    for (int i = 0; i < parts; ++i) {
        AnnealingConfig sub = cfg;
        sub.seed = Rng::derive(cfg.seed, static_cast<std::uint64_t>(i));
        const PointCloud& cloud = subsets[i];
        futs.push_back(std::async(std::launch::async, [&cloud, sub] { return anneal(cloud, sub).projection; }));
    }
    std::vector<GrassmannPoint> frames;
    frames.reserve(parts);
    for (auto& fu : futs) frames.emplace_back(fu.get());
    return weiszfeld_median(frames).frame();
}

}  // namespace topoproj

#include "topoproj/diagram_distance.hpp"

#include <algorithm>
#include <cmath>

#include "topoproj/error.hpp"

namespace topoproj {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_orders(double p, double q) {
    if (std::isnan(p) || p < 1.0) throw std::invalid_argument("wasserstein order p must be >= 1");
    if (std::isnan(q) || q < 1.0) throw std::invalid_argument("ground metric order q must be >= 1");
}

std::vector<double> finite_and_infinite(const PersistenceDiagram& d, std::vector<PersistencePair>& fin) {
    std::vector<double> inf_births;
    for (const PersistencePair& pr : d.pairs) {
        if (pr.infinite())
            inf_births.push_back(pr.birth);
        else
            fin.push_back(pr);
    }
    std::sort(inf_births.begin(), inf_births.end());
    return inf_births;
}

// Costs of the augmented square problem: rows = d1 points then d2-sized block
// of diagonal slots, columns likewise for d2. Entry is the L_q ground cost.
Eigen::MatrixXd augmented_costs(const std::vector<PersistencePair>& f1,
                                const std::vector<PersistencePair>& f2, double q) {
    const int n1 = static_cast<int>(f1.size());
    const int n2 = static_cast<int>(f2.size());
    const int n = n1 + n2;
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n1; ++i) {
        for (int j = 0; j < n2; ++j) c(i, j) = pair_distance(f1[i], f2[j], q);
        for (int j = n2; j < n; ++j) c(i, j) = diagonal_distance(f1[i], q);
    }
    for (int i = n1; i < n; ++i)
        for (int j = 0; j < n2; ++j) c(i, j) = diagonal_distance(f2[j], q);
    return c;
}

// Kuhn's bipartite matching over edges with cost <= cap.
bool feasible(const Eigen::MatrixXd& cost, double cap) {
    const int n = static_cast<int>(cost.rows());
    std::vector<int> match_col(n, -1), match_row(n, -1);
    std::vector<char> seen(n);
    auto try_row = [&](auto&& self, int r) -> bool {
        for (int c = 0; c < n; ++c) {
            if (seen[c] || cost(r, c) > cap) continue;
            seen[c] = 1;
            if (match_col[c] < 0 || self(self, match_col[c])) {
                match_col[c] = r;
                match_row[r] = c;
                return true;
            }
        }
        return false;
    };
    for (int r = 0; r < n; ++r) {
        std::fill(seen.begin(), seen.end(), 0);
        if (!try_row(try_row, r)) return false;
    }
    return true;
}

}  // namespace

double pair_distance(const PersistencePair& a, const PersistencePair& b, double q) {
    const double db = std::abs(a.birth - b.birth);
    const double dd = std::abs(a.death - b.death);
    if (std::isinf(q)) return std::max(db, dd);
    if (q == 1.0) return db + dd;
    if (q == 2.0) return std::hypot(db, dd);
    return std::pow(std::pow(db, q) + std::pow(dd, q), 1.0 / q);
}

double diagonal_distance(const PersistencePair& a, double q) {
    const double half = (a.death - a.birth) / 2.0;
    if (std::isinf(q)) return half;
    return half * std::pow(2.0, 1.0 / q);
}

std::vector<int> hungarian(const Eigen::MatrixXd& cost) {
    const int n = static_cast<int>(cost.rows());
    if (cost.cols() != n) throw std::invalid_argument("hungarian needs a square cost matrix");
    // Shortest augmenting path with row/column potentials, 1-based scratch.
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::fill(minv.begin(), minv.end(), kInf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            double delta = kInf;
            int j1 = 0;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    std::vector<int> row_to_col(n, -1);
    for (int j = 1; j <= n; ++j)
        if (p[j] > 0) row_to_col[p[j] - 1] = j - 1;
    return row_to_col;
}

double wasserstein(const PersistenceDiagram& d1, const PersistenceDiagram& d2, double p, double q) {
    check_orders(p, q);
    if (d1.degree != d2.degree) throw std::invalid_argument("diagrams compare only within one degree");
    if (std::isinf(p)) return bottleneck(d1, d2, q);

    std::vector<PersistencePair> f1, f2;
    const std::vector<double> ib1 = finite_and_infinite(d1, f1);
    const std::vector<double> ib2 = finite_and_infinite(d2, f2);
    if (ib1.size() != ib2.size()) return kInf;

    double total = 0.0;
    for (std::size_t i = 0; i < ib1.size(); ++i) total += std::pow(std::abs(ib1[i] - ib2[i]), p);

    if (!f1.empty() || !f2.empty()) {
        Eigen::MatrixXd c = augmented_costs(f1, f2, q);
        Eigen::MatrixXd cp = c.unaryExpr([p](double x) { return x == 0.0 ? 0.0 : std::pow(x, p); });
        const std::vector<int> match = hungarian(cp);
        for (int r = 0; r < cp.rows(); ++r) total += cp(r, match[r]);
    }
    return std::pow(total, 1.0 / p);
}

double bottleneck(const PersistenceDiagram& d1, const PersistenceDiagram& d2, double q) {
    check_orders(1.0, q);
    if (d1.degree != d2.degree) throw std::invalid_argument("diagrams compare only within one degree");

    std::vector<PersistencePair> f1, f2;
    const std::vector<double> ib1 = finite_and_infinite(d1, f1);
    const std::vector<double> ib2 = finite_and_infinite(d2, f2);
    if (ib1.size() != ib2.size()) return kInf;

    double base = 0.0;
    for (std::size_t i = 0; i < ib1.size(); ++i) base = std::max(base, std::abs(ib1[i] - ib2[i]));
    if (f1.empty() && f2.empty()) return base;

    const Eigen::MatrixXd c = augmented_costs(f1, f2, q);
    std::vector<double> cand(c.data(), c.data() + c.size());
    cand.push_back(base);
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    cand.erase(std::remove_if(cand.begin(), cand.end(), [base](double v) { return v < base; }), cand.end());

    std::size_t lo = 0, hi = cand.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (feasible(c, cand[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    return cand[lo];
}

}  // namespace topoproj

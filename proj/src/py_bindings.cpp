#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "topoproj/datasets.hpp"
#include "topoproj/equivalence.hpp"
#include "topoproj/grassmann.hpp"
#include "topoproj/optimizer.hpp"

namespace py = pybind11;
using namespace topoproj;

namespace {

PersistenceDiagram to_diagram(const Eigen::MatrixXd& m, int degree) {
    if (m.rows() > 0 && m.cols() != 2)
        throw std::invalid_argument("a diagram array must have shape (n, 2)");
    PersistenceDiagram d;
    d.degree = degree;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        PersistencePair pr;
        pr.birth = m(i, 0);
        pr.death = m(i, 1);
        if (!(pr.death >= pr.birth)) throw std::invalid_argument("death before birth in diagram");
        d.pairs.push_back(pr);
    }
    return d;
}

Eigen::MatrixXd from_diagram(const PersistenceDiagram& d) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(d.pairs.size()), 2);
    for (std::size_t i = 0; i < d.pairs.size(); ++i) {
        m(static_cast<Eigen::Index>(i), 0) = d.pairs[i].birth;
        m(static_cast<Eigen::Index>(i), 1) = d.pairs[i].death;
    }
    return m;
}

std::vector<PersistenceDiagram> to_diagrams(const std::vector<Eigen::MatrixXd>& ms) {
    std::vector<PersistenceDiagram> out;
    for (std::size_t k = 0; k < ms.size(); ++k) out.push_back(to_diagram(ms[k], static_cast<int>(k)));
    return out;
}

std::vector<GrassmannPoint> to_grassmann(const std::vector<Eigen::MatrixXd>& frames) {
    std::vector<GrassmannPoint> pts;
    for (const auto& f : frames) pts.emplace_back(f);
    return pts;
}

const char* class_name(IntervalClass c) {
    switch (c) {
        case IntervalClass::T0: return "T0";
        case IntervalClass::T1: return "T1";
        case IntervalClass::T2: return "T2";
        default: return "maybe";
    }
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "point-cloud topology toolkit: persistence diagrams, diagram distances, "
              "shape-preserving linear reduction and projection similarity measures";
    m.attr("__version__") = "0.1.0";

    py::register_exception<io_error>(m, "IoError", PyExc_IOError);
    py::register_exception<numeric_error>(m, "NumericError", PyExc_ArithmeticError);
    py::register_exception<config_error>(m, "ConfigError", PyExc_ValueError);

    py::class_<AnnealingConfig>(m, "AnnealingSettings")
        .def(py::init<>())
        .def_readwrite("k", &AnnealingConfig::k)
        .def_readwrite("tau0", &AnnealingConfig::tau0)
        .def_readwrite("tau_end", &AnnealingConfig::tau_end)
        .def_readwrite("gamma", &AnnealingConfig::gamma)
        .def_readwrite("sigma", &AnnealingConfig::sigma)
        .def_readwrite("steps_per_temp", &AnnealingConfig::steps_per_temp)
        .def_readwrite("seed", &AnnealingConfig::seed)
        .def_readwrite("p", &AnnealingConfig::p)
        .def_readwrite("q", &AnnealingConfig::q)
        .def_readwrite("variance_weight", &AnnealingConfig::variance_weight)
        .def_property(
            "orders",
            [](const AnnealingConfig& c) {
                std::vector<std::pair<int, double>> out;
                for (const OrderWeight& ow : c.orders) out.emplace_back(ow.degree, ow.weight);
                return out;
            },
            [](AnnealingConfig& c, const std::vector<std::pair<int, double>>& v) {
                c.orders.clear();
                for (const auto& [d, w] : v) c.orders.push_back({d, w});
            });

    m.def("pairwise_distances",
          [](const Eigen::MatrixXd& x) { return pairwise_distances(PointCloud(x)).mat(); },
          py::arg("points"));
    m.def("diameter", [](const Eigen::MatrixXd& x) { return diameter(PointCloud(x)); },
          py::arg("points"));
    m.def("project",
          [](const Eigen::MatrixXd& x, const Eigen::MatrixXd& p) {
              return project(PointCloud(x), ProjectionMatrix(p)).pts;
          },
          py::arg("points"), py::arg("projection"));
    m.def("eta_bounds",
          [](const Eigen::MatrixXd& x, const Eigen::MatrixXd& p) {
              const EtaBounds b = eta_bounds(PointCloud(x), ProjectionMatrix(p));
              return std::make_pair(b.eta_min, b.eta_max);
          },
          py::arg("points"), py::arg("projection"),
          "per-pair distance shrinkage range (min, max)");

    m.def("rips_diagrams",
          [](const Eigen::MatrixXd& x, int max_degree) {
              const auto ds = compute_persistence(
                  rips_filtration(pairwise_distances(PointCloud(x)), max_degree + 1), max_degree);
              std::vector<Eigen::MatrixXd> out;
              for (const auto& d : ds) out.push_back(from_diagram(d));
              return out;
          },
          py::arg("points"), py::arg("max_degree") = 1,
          "persistence diagrams (radius scale) for degrees 0..max_degree as (n, 2) arrays");

    m.def("wasserstein",
          [](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double p, double q) {
              return wasserstein(to_diagram(a, 0), to_diagram(b, 0), p, q);
          },
          py::arg("a"), py::arg("b"), py::arg("p") = 1.0, py::arg("q") = 2.0);
    m.def("bottleneck",
          [](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double q) {
              return bottleneck(to_diagram(a, 0), to_diagram(b, 0), q);
          },
          py::arg("a"), py::arg("b"), py::arg("q") = 2.0);

    m.def("pca",
          [](const Eigen::MatrixXd& x, int k) { return pca_projection(PointCloud(x), k).mat(); },
          py::arg("points"), py::arg("k"));
    m.def("random_frame",
          [](int n, int k, std::uint64_t seed) {
              Rng rng(seed);
              return random_projection(n, k, rng).mat();
          },
          py::arg("n"), py::arg("k"), py::arg("seed") = 0);
    m.def("anneal",
          [](const Eigen::MatrixXd& x, const AnnealingConfig& cfg) {
              const AnnealResult r = anneal(PointCloud(x), cfg);
              return std::make_pair(r.projection.mat(), r.cost);
          },
          py::arg("points"), py::arg("settings"),
          "returns (projection, best cost)");
    m.def("distributed_reduce",
          [](const Eigen::MatrixXd& x, int parts, const AnnealingConfig& cfg) {
              return distributed_reduce(PointCloud(x), parts, cfg).mat();
          },
          py::arg("points"), py::arg("parts"), py::arg("settings"));

    m.def("principal_angles",
          [](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
              return principal_angles(GrassmannPoint(a), GrassmannPoint(b));
          },
          py::arg("a"), py::arg("b"));
    m.def("subspace_distance",
          [](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
              return distance(GrassmannPoint(a), GrassmannPoint(b));
          },
          py::arg("a"), py::arg("b"));
    m.def("exp_map",
          [](const Eigen::MatrixXd& base, const Eigen::MatrixXd& delta) {
              return exp_map(GrassmannPoint(base), delta).rep();
          },
          py::arg("base"), py::arg("delta"));
    m.def("log_map",
          [](const Eigen::MatrixXd& base, const Eigen::MatrixXd& target) {
              return log_map(GrassmannPoint(base), GrassmannPoint(target));
          },
          py::arg("base"), py::arg("target"));
    m.def("extrinsic_mean",
          [](const std::vector<Eigen::MatrixXd>& frames) {
              return extrinsic_mean(to_grassmann(frames)).rep();
          },
          py::arg("frames"));
    m.def("weiszfeld_median",
          [](const std::vector<Eigen::MatrixXd>& frames, double tol, int max_iter) {
              return weiszfeld_median(to_grassmann(frames), tol, max_iter).rep();
          },
          py::arg("frames"), py::arg("tol") = 1e-8, py::arg("max_iter") = 200);

    m.def("mu_quasi_iso",
          [](const std::vector<Eigen::MatrixXd>& dx, const std::vector<Eigen::MatrixXd>& dy,
             double eta, double diam_x) {
              const MuReport r = mu_quasi_iso(to_diagrams(dx), to_diagrams(dy), eta, diam_x);
              return py::make_tuple(r.mu, r.grid, r.counted);
          },
          py::arg("dx"), py::arg("dy"), py::arg("eta"), py::arg("diam_x"),
          "returns (mu, grid, counted-per-interval)");

    m.def("similarity_report",
          [](const Eigen::MatrixXd& x, const Eigen::MatrixXd& p, py::object eta, int level,
             int budget) {
              std::optional<double> e;
              if (!eta.is_none()) e = eta.cast<double>();
              const CanonicalEmbedding emb =
                  canonical_embedding(PointCloud(x), ProjectionMatrix(p), e, level);
              const SimilarityReport rep = classify_intervals(emb, budget);
              py::list intervals;
              for (const IntervalReport& iv : rep.intervals)
                  intervals.append(py::make_tuple(iv.a, iv.b, class_name(iv.cls)));
              py::dict out;
              out["eta"] = rep.eta;
              out["level"] = rep.level;
              out["a_n"] = rep.a_n;
              out["mu_quasi_iso"] = rep.mu_quasi_iso;
              out["mu_equiv"] = py::make_tuple(rep.mu_equiv_lower, rep.mu_equiv_upper);
              out["intervals"] = intervals;
              return out;
          },
          py::arg("points"), py::arg("projection"), py::arg("eta") = py::none(),
          py::arg("level") = 0, py::arg("budget") = 10000);

    m.def("iris", [] { return iris_cloud().pts; }, "the bundled 150 x 4 iris measurements");
    m.def("cylinder",
          [](int n, double noise_var, std::uint64_t seed) {
              return sample_cylinder(n, noise_var, seed).pts;
          },
          py::arg("n") = 100, py::arg("noise_var") = 0.05, py::arg("seed") = 1);
}

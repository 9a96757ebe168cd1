#include <charconv>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "topoproj/commands.hpp"
#include "topoproj/equivalence.hpp"
#include "topoproj/error.hpp"
#include "topoproj/io.hpp"

using namespace topoproj;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "topoproj_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

// Swaps std::cout's buffer for the lifetime of the capture.
class CaptureCout {
  public:
    CaptureCout() : old_(std::cout.rdbuf(buffer_.rdbuf())) {}
    ~CaptureCout() { std::cout.rdbuf(old_); }
    std::string text() const { return buffer_.str(); }

  private:
    std::ostringstream buffer_;
    std::streambuf* old_;
};

PointCloud right_triangle() {
    Eigen::MatrixXd m(3, 2);
    m << 0, 0, 4, 0, 0, 3;
    return PointCloud(m);
}

AnnealingConfig quick_config() {
    AnnealingConfig cfg;
    cfg.k = 2;
    cfg.tau0 = 0.5;
    cfg.tau_end = 0.05;
    cfg.gamma = 0.7;
    cfg.sigma = 0.1;
    cfg.steps_per_temp = 2;
    cfg.seed = 5;
    return cfg;
}

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("generate writes the requested dataset") {
        const fs::path dir = fresh_dir("generate");
        cmd::run_generate({"cylinder", 12, 0.05, 3, (dir / "cyl.csv").string()});
        const PointCloud cyl = read_points_csv((dir / "cyl.csv").string());
        CHECK(cyl.size() == 12);
        CHECK(cyl.dim() == 3);

        cmd::run_generate({"iris", 0, 0.0, 0, (dir / "iris.csv").string()});
        const PointCloud iris = read_points_csv((dir / "iris.csv").string());
        CHECK(iris.size() == 150);
        CHECK(iris.dim() == 4);

        CHECK_THROWS_AS(cmd::run_generate({"torus", 5, 0.0, 0, (dir / "x.csv").string()}),
                        config_error);
    }

    TEST_CASE("diagram files round-trip exactly") {
        const fs::path dir = fresh_dir("diagram");
        write_points_csv((dir / "tri.csv").string(), right_triangle());
        cmd::run_diagram({(dir / "tri.csv").string(), 1, (dir / "tri").string()});

        const PersistenceDiagram h0 = read_diagram_json((dir / "tri_h0.json").string());
        CHECK(h0.degree == 0);
        REQUIRE(h0.pairs.size() == 3);
        CHECK(h0.pairs[0].birth == 0.0);
        CHECK(h0.pairs[0].death == 1.5);
        CHECK(h0.pairs[1].death == 2.0);
        CHECK(std::isinf(h0.pairs[2].death));
        CHECK(read_diagram_json((dir / "tri_h1.json").string()).pairs.empty());

        // irrational coordinates survive the text round trip bit for bit
        Eigen::MatrixXd sq(4, 2);
        sq << 0, 0, 1, 0, 0, 1, 1, 1;
        const auto diagrams = compute_persistence(rips_filtration(pairwise_distances(PointCloud(sq)), 2), 1);
        write_diagram_json((dir / "sq_h1.json").string(), diagrams[1]);
        const PersistenceDiagram back = read_diagram_json((dir / "sq_h1.json").string());
        REQUIRE(back.pairs.size() == diagrams[1].pairs.size());
        for (std::size_t i = 0; i < back.pairs.size(); ++i) {
            CHECK(back.pairs[i].birth == diagrams[1].pairs[i].birth);
            CHECK(back.pairs[i].death == diagrams[1].pairs[i].death);
        }
    }

    TEST_CASE("distance prints twelve significant digits") {
        const fs::path dir = fresh_dir("distance");
        PersistenceDiagram a, b;
        a.degree = b.degree = 1;
        a.pairs = {{0.0, 2.0}};
        b.pairs = {{0.0, 2.0}, {1.0, 1.5}};
        write_diagram_json((dir / "a.json").string(), a);
        write_diagram_json((dir / "b.json").string(), b);

        CaptureCout cap;
        cmd::run_distance({(dir / "a.json").string(), (dir / "b.json").string(), "wasserstein",
                           1.0, std::numeric_limits<double>::infinity()});
        CHECK(cap.text() == "0.25\n");

        CHECK_THROWS_AS(cmd::run_distance({(dir / "a.json").string(), (dir / "b.json").string(),
                                           "euclidean", 1.0, 2.0}),
                        config_error);
    }

    TEST_CASE("reduce is deterministic and writes a frame plus trace") {
        const fs::path dir = fresh_dir("reduce");
        Rng rng(11);
        Eigen::MatrixXd pts(8, 3);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 3; ++j) pts(i, j) = rng.normal();
        write_points_csv((dir / "x.csv").string(), PointCloud(pts));

        cmd::ReduceOpts opts;
        opts.points = (dir / "x.csv").string();
        opts.cfg = quick_config();
        opts.orders = {"0:1"};
        opts.out = (dir / "p.csv").string();
        opts.trace = (dir / "trace.csv").string();
        std::string first_out;
        {
            CaptureCout cap;
            cmd::run_reduce(opts);
            first_out = cap.text();
        }
        CHECK(first_out.substr(0, 5) == "cost ");

        const ProjectionMatrix p = read_projection_csv(opts.out);
        CHECK((p.mat().transpose() * p.mat() - Eigen::MatrixXd::Identity(2, 2)).norm() < 1e-10);
        const std::string trace = read_text_file(opts.trace);
        CHECK(trace.rfind("temperature,proposal_cost,current_cost,best_cost,accepted\n", 0) == 0);

        const std::string frame_bytes = read_text_file(opts.out);
        cmd::ReduceOpts again = opts;
        again.out = (dir / "p2.csv").string();
        again.trace = (dir / "trace2.csv").string();
        {
            CaptureCout cap;
            cmd::run_reduce(again);
            CHECK(cap.text() == first_out);
        }
        CHECK(read_text_file(again.out) == frame_bytes);
        CHECK(read_text_file(again.trace) == trace);

        cmd::ReduceOpts bad = opts;
        bad.parts = 2;
        CHECK_THROWS_AS(cmd::run_reduce(bad), config_error);  // trace with partitions
        bad.trace.clear();
        bad.chains = 2;
        CHECK_THROWS_AS(cmd::run_reduce(bad), config_error);  // chains with partitions
    }

    TEST_CASE("median of identical frames returns that frame") {
        const fs::path dir = fresh_dir("median");
        Eigen::MatrixXd e1(3, 1);
        e1 << 1, 0, 0;
        write_projection_csv((dir / "f1.csv").string(), e1);
        write_projection_csv((dir / "f2.csv").string(), e1);

        cmd::MedianOpts opts;
        opts.frames = {(dir / "f1.csv").string(), (dir / "f2.csv").string()};
        opts.out = (dir / "med.csv").string();
        CaptureCout cap;
        cmd::run_median(opts);
        CHECK(cap.text().rfind("objective ", 0) == 0);
        const ProjectionMatrix med = read_projection_csv(opts.out);
        CHECK((med.mat() - e1).norm() < 1e-9);

        CHECK_THROWS_AS(cmd::run_median({{}, 1e-8, 10, (dir / "m.csv").string()}), config_error);
    }

    TEST_CASE("similarity reports the worked measure through files") {
        const fs::path dir = fresh_dir("similarity");
        write_points_csv((dir / "tri.csv").string(), right_triangle());
        Eigen::MatrixXd axis(2, 1);
        axis << 1, 0;
        write_projection_csv((dir / "axis.csv").string(), axis);

        cmd::SimilarityOpts opts;
        opts.points = (dir / "tri.csv").string();
        opts.projection = (dir / "axis.csv").string();
        opts.out = (dir / "report.json").string();
        {
            CaptureCout cap;
            cmd::run_similarity(opts);
            CHECK(cap.text() == "mu_quasi_iso 0.4 mu_equiv [0.4, 0.4]\n");
        }
        const auto doc = nlohmann::json::parse(read_text_file(opts.out));
        CHECK(doc["mu_quasi_iso"].get<double>() == 0.4);
        CHECK(doc["eta"].get<double>() == 0.0);
        REQUIRE(doc["intervals"].size() == 3);
        CHECK(doc["intervals"][0]["class"] == "T0");
        CHECK(doc["intervals"][1]["class"] == "T2");

        // stdout mode emits the same document
        cmd::SimilarityOpts to_stdout = opts;
        to_stdout.out.clear();
        CaptureCout cap;
        cmd::run_similarity(to_stdout);
        CHECK(nlohmann::json::parse(cap.text()) == doc);

        cmd::SimilarityOpts bad = opts;
        bad.eta = "fast";
        CHECK_THROWS_AS(cmd::run_similarity(bad), config_error);
    }

    TEST_CASE("plot renders stable bytes") {
        const fs::path dir = fresh_dir("plot");
        write_points_csv((dir / "tri.csv").string(), right_triangle());
        cmd::run_diagram({(dir / "tri.csv").string(), 0, (dir / "tri").string()});

        cmd::PlotOpts opts;
        opts.diagram = (dir / "tri_h0.json").string();
        opts.out = (dir / "d.svg").string();
        cmd::run_plot(opts);
        const std::string svg = read_text_file(opts.out);
        CHECK(svg.rfind("<svg", 0) == 0);
        cmd::run_plot(opts);
        CHECK(read_text_file(opts.out) == svg);

        cmd::PlotOpts scatter;
        scatter.points = (dir / "tri.csv").string();
        scatter.out = (dir / "s.svg").string();
        cmd::run_plot(scatter);
        CHECK(read_text_file(scatter.out).rfind("<svg", 0) == 0);

        cmd::PlotOpts bad;
        bad.out = (dir / "x.svg").string();
        CHECK_THROWS_AS(cmd::run_plot(bad), config_error);
        bad.diagram = opts.diagram;
        bad.points = scatter.points;
        CHECK_THROWS_AS(cmd::run_plot(bad), config_error);
    }

    TEST_CASE("experiment produces the comparison bundle") {
        const fs::path dir = fresh_dir("experiment");
        cmd::ExperimentOpts opts;
        opts.dataset = "cylinder";
        opts.n = 14;
        opts.noise_var = 0.05;
        opts.seed = 2;
        opts.k = 2;
        opts.cfg = quick_config();
        opts.out_dir = (dir / "run").string();
        {
            CaptureCout cap;
            cmd::run_experiment(opts);
            CHECK(cap.text().rfind("wrote ", 0) == 0);
        }

        const auto summary =
            nlohmann::json::parse(read_text_file((fs::path(opts.out_dir) / "summary.json").string()));
        CHECK(summary["dataset"] == "cylinder");
        CHECK(summary["config"]["n"] == 14);
        REQUIRE(summary["methods"].size() == 4);
        for (const char* name : {"pca", "random", "anneal_h0", "anneal_h1"}) {
            REQUIRE(summary["methods"].contains(name));
            const auto& m = summary["methods"][name];
            CHECK(m["f0"].is_number());
            CHECK(m["f1"].is_number());
            CHECK(m["mu_quasi_iso"].get<double>() >= 0.0);
            CHECK(m["mu_quasi_iso"].get<double>() <= 1.0);
            CHECK(fs::exists(fs::path(opts.out_dir) / m["projection"].get<std::string>()));
        }
        for (const char* f : {"points.csv", "points.svg", "diagram_original_h0.json",
                              "diagram_original_h1.svg", "diagram_pca_h1.json"})
            CHECK(fs::exists(fs::path(opts.out_dir) / f));

        cmd::ExperimentOpts bad = opts;
        bad.k = 9;
        CHECK_THROWS_AS(cmd::run_experiment(bad), config_error);
    }

    TEST_CASE("order lists parse strictly") {
        const auto ows = cmd::parse_orders({"0:1", "1:2.5"});
        REQUIRE(ows.size() == 2);
        CHECK(ows[0].degree == 0);
        CHECK(ows[0].weight == 1.0);
        CHECK(ows[1].degree == 1);
        CHECK(ows[1].weight == 2.5);
        CHECK_THROWS_AS(cmd::parse_orders({"1"}), config_error);
        CHECK_THROWS_AS(cmd::parse_orders({"1:"}), config_error);
        CHECK_THROWS_AS(cmd::parse_orders({"a:1"}), config_error);
        CHECK_THROWS_AS(cmd::parse_orders({"1:1x"}), config_error);
    }

    TEST_CASE("text round trips and reader errors") {
        for (double v : {0.1, 1.0 / 3.0, 1e300, -2.5e-17, 0.0}) {
            const std::string s = format_double(v);
            double back = 0.0;
            const auto res = std::from_chars(s.data(), s.data() + s.size(), back);
            REQUIRE(res.ec == std::errc{});
            CHECK(back == v);
        }

        const fs::path dir = fresh_dir("io_errors");
        CHECK_THROWS_AS(read_points_csv((dir / "missing.csv").string()), io_error);
        write_text_file((dir / "ragged.csv").string(), "1,2\n3\n");
        CHECK_THROWS_AS(read_points_csv((dir / "ragged.csv").string()), io_error);
        write_text_file((dir / "scale.json").string(),
                        R"({"scale":"diameter","degree":0,"pairs":[]})");
        CHECK_THROWS_AS(read_diagram_json((dir / "scale.json").string()), io_error);
    }
}

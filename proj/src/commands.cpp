#include "topoproj/commands.hpp"

#include <charconv>
#include <filesystem>
#include <iostream>
#include <map>

#include <nlohmann/json.hpp>

#include "topoproj/datasets.hpp"
#include "topoproj/equivalence.hpp"
#include "topoproj/error.hpp"
#include "topoproj/grassmann.hpp"
#include "topoproj/io.hpp"
#include "topoproj/svg.hpp"

namespace topoproj::cmd {

namespace {

using nlohmann::json;

std::string sig12(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

PointCloud load_dataset(const std::string& dataset, int n, double noise_var, std::uint64_t seed) {
    if (dataset == "cylinder") return sample_cylinder(n, noise_var, seed);
    if (dataset == "iris") return iris_cloud();
    throw config_error("unknown dataset '" + dataset + "' (expected cylinder or iris)");
}

std::vector<PersistenceDiagram> cloud_diagrams(const PointCloud& x, int max_degree) {
    if (max_degree + 1 > x.size() - 1)
        throw config_error("max degree " + std::to_string(max_degree) + " needs at least " +
                           std::to_string(max_degree + 3) + " points");
    return compute_persistence(rips_filtration(pairwise_distances(x), max_degree + 1), max_degree);
}

void write_trace_csv(const std::string& path, const AnnealingTrace& trace) {
    std::string text = "temperature,proposal_cost,current_cost,best_cost,accepted\n";
    for (const TraceStep& s : trace.steps) {
        text += format_double(s.temperature) + ',' + format_double(s.proposal_cost) + ',' +
                format_double(s.current_cost) + ',' + format_double(s.best_cost) + ',' +
                (s.accepted ? '1' : '0') + '\n';
    }
    write_text_file(path, text);
}

}  // namespace

std::vector<OrderWeight> parse_orders(const std::vector<std::string>& entries) {
    std::vector<OrderWeight> out;
    for (const std::string& e : entries) {
        const std::size_t colon = e.find(':');
        if (colon == std::string::npos)
            throw config_error("order '" + e + "' must look like degree:weight");
        OrderWeight ow;
        auto r1 = std::from_chars(e.data(), e.data() + colon, ow.degree);
        auto r2 = std::from_chars(e.data() + colon + 1, e.data() + e.size(), ow.weight);
        if (r1.ec != std::errc{} || r1.ptr != e.data() + colon || r2.ec != std::errc{} ||
            r2.ptr != e.data() + e.size())
            throw config_error("order '" + e + "' must look like degree:weight");
        out.push_back(ow);
    }
    return out;
}

void run_generate(const GenerateOpts& o) {
    write_points_csv(o.out, load_dataset(o.dataset, o.n, o.noise_var, o.seed));
}

void run_diagram(const DiagramOpts& o) {
    const PointCloud x = read_points_csv(o.points);
    if (o.max_degree < 0) throw config_error("max degree must be nonnegative");
    const auto diagrams = cloud_diagrams(x, o.max_degree);
    for (int k = 0; k <= o.max_degree; ++k)
        write_diagram_json(o.out_prefix + "_h" + std::to_string(k) + ".json", diagrams[k]);
}

void run_distance(const DistanceOpts& o) {
    const PersistenceDiagram a = read_diagram_json(o.a);
    const PersistenceDiagram b = read_diagram_json(o.b);
    double v = 0.0;
    if (o.metric == "wasserstein")
        v = wasserstein(a, b, o.p, o.q);
    else if (o.metric == "bottleneck")
        v = bottleneck(a, b, o.q);
    else
        throw config_error("unknown metric '" + o.metric + "' (expected wasserstein or bottleneck)");
    std::cout << sig12(v) << "\n";
}

void run_reduce(const ReduceOpts& o) {
    const PointCloud x = read_points_csv(o.points);
    AnnealingConfig cfg = o.cfg;
    if (!o.orders.empty()) cfg.orders = parse_orders(o.orders);
    if (o.chains < 1) throw config_error("chains must be positive");
    if (o.parts < 1) throw config_error("parts must be positive");

    if (o.parts > 1) {
        if (o.chains > 1) throw config_error("choose either chains or parts, not both");
        if (!o.trace.empty()) throw config_error("trace output is unavailable for partitioned runs");
        const ProjectionMatrix p = distributed_reduce(x, o.parts, cfg);
        write_projection_csv(o.out, p.mat());
        std::cout << "cost " << sig12(cost(x, p, cfg)) << "\n";
        return;
    }

    const AnnealResult res = o.chains > 1 ? anneal_chains(x, cfg, o.chains) : anneal(x, cfg);
    write_projection_csv(o.out, res.projection.mat());
    if (!o.trace.empty()) write_trace_csv(o.trace, res.trace);
    std::cout << "cost " << sig12(res.cost) << "\n";
}

void run_median(const MedianOpts& o) {
    if (o.frames.empty()) throw config_error("at least one frame file is required");
    std::vector<GrassmannPoint> pts;
    for (const std::string& f : o.frames) pts.emplace_back(read_projection_csv(f));
    WeiszfeldStats stats;
    const GrassmannPoint med = weiszfeld_median(pts, o.tol, o.max_iter, &stats);
    write_projection_csv(o.out, med.rep());
    std::cout << "objective " << sig12(stats.objective.back()) << " after " << stats.iterations
              << " iterations\n";
}

void run_similarity(const SimilarityOpts& o) {
    const PointCloud x = read_points_csv(o.points);
    const ProjectionMatrix p = read_projection_csv(o.projection);
    std::optional<double> eta;
    if (o.eta != "auto") {
        double v = 0.0;
        const auto res = std::from_chars(o.eta.data(), o.eta.data() + o.eta.size(), v);
        if (res.ec != std::errc{} || res.ptr != o.eta.data() + o.eta.size())
            throw config_error("eta must be 'auto' or a nonnegative number");
        eta = v;
    }
    const CanonicalEmbedding emb = canonical_embedding(x, p, eta, o.level);
    const SimilarityReport rep = classify_intervals(emb, o.budget);
    if (o.out.empty()) {
        std::cout << similarity_to_json(rep);
    } else {
        write_similarity_json(o.out, rep);
        std::cout << "mu_quasi_iso " << sig12(rep.mu_quasi_iso) << " mu_equiv ["
                  << sig12(rep.mu_equiv_lower) << ", " << sig12(rep.mu_equiv_upper) << "]\n";
    }
}

void run_plot(const PlotOpts& o) {
    if (o.diagram.empty() == o.points.empty())
        throw config_error("provide exactly one of --diagram and --points");
    const std::string svg = o.diagram.empty() ? render_scatter_svg(read_points_csv(o.points))
                                              : render_diagram_svg(read_diagram_json(o.diagram));
    write_text_file(o.out, svg);
}

void run_experiment(const ExperimentOpts& o) {
    namespace fs = std::filesystem;
    if (o.out_dir.empty()) throw config_error("an output directory is required");
    std::error_code ec;
    fs::create_directories(o.out_dir, ec);
    if (ec) throw io_error("cannot create directory " + o.out_dir + ": " + ec.message());
    const auto at = [&](const std::string& name) { return (fs::path(o.out_dir) / name).string(); };

    const PointCloud x = load_dataset(o.dataset, o.n, o.noise_var, o.seed);
    if (o.k < 1 || o.k > x.dim()) throw config_error("k must lie in [1, ambient dimension]");
    AnnealingConfig base = o.cfg;
    base.k = o.k;

    write_points_csv(at("points.csv"), x);
    const auto dx = cloud_diagrams(x, 1);
    for (int d = 0; d <= 1; ++d) {
        write_diagram_json(at("diagram_original_h" + std::to_string(d) + ".json"), dx[d]);
        write_text_file(at("diagram_original_h" + std::to_string(d) + ".svg"),
                        render_diagram_svg(dx[d]));
    }
    write_text_file(at("points.svg"), render_scatter_svg(x));

    // The four contenders: principal components, a random frame, and the
    // annealer driven by the degree-0 and by the degree-1 matching cost.
    std::vector<std::pair<std::string, ProjectionMatrix>> methods;
    methods.emplace_back("pca", pca_projection(x, o.k));
    {
        Rng rng(Rng::derive(o.seed, 1001));
        methods.emplace_back("random", random_projection(x.dim(), o.k, rng));
    }
    json method_costs = json::object();
    {
        AnnealingConfig c0 = base;
        c0.orders = {{0, 1.0}};
        c0.seed = Rng::derive(o.seed, 1002);
        methods.emplace_back("anneal_h0", anneal(x, c0).projection);
        AnnealingConfig c1 = base;
        c1.orders = {{1, 1.0}};
        c1.seed = Rng::derive(o.seed, 1003);
        methods.emplace_back("anneal_h1", anneal(x, c1).projection);
    }

    const double diam = diameter(x);
    for (const auto& [name, p] : methods) {
        write_projection_csv(at("projection_" + name + ".csv"), p.mat());
        const PointCloud y = project(x, p);
        const auto dy = cloud_diagrams(y, 1);
        for (int d = 0; d <= 1; ++d) {
            write_diagram_json(at("diagram_" + name + "_h" + std::to_string(d) + ".json"), dy[d]);
            write_text_file(at("diagram_" + name + "_h" + std::to_string(d) + ".svg"),
                            render_diagram_svg(dy[d]));
        }
        const double f0 = wasserstein(dx[0], dy[0], base.p, base.q);
        const double f1 = wasserstein(dx[1], dy[1], base.p, base.q);
        const double mu = mu_quasi_iso({dx[0]}, {dy[0]}, auto_eta(x, p), diam).mu;
        method_costs[name] = json{{"projection", "projection_" + name + ".csv"},
                                  {"f0", f0},
                                  {"f1", f1},
                                  {"mu_quasi_iso", mu}};
    }

    const json summary{
        {"dataset", o.dataset},
        {"config", json{{"n", x.size()},
                        {"noise_var", o.noise_var},
                        {"seed", o.seed},
                        {"k", o.k},
                        {"tau0", base.tau0},
                        {"tau_end", base.tau_end},
                        {"gamma", base.gamma},
                        {"sigma", base.sigma},
                        {"steps_per_temp", base.steps_per_temp},
                        {"p", base.p},
                        {"q", base.q}}},
        {"methods", method_costs}};
    write_text_file(at("summary.json"), summary.dump(2) + "\n");
    std::cout << "wrote " << at("summary.json") << "\n";
}

}  // namespace topoproj::cmd

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "topoproj/optimizer.hpp"

// Implementations of the command-line subcommands, separated from argument
// parsing so they can be driven directly from tests. All report problems by
// throwing: io_error for unreadable or malformed files, config_error /
// std::invalid_argument for bad parameters, numeric_error for computations
// that cannot proceed.

namespace topoproj::cmd {

struct GenerateOpts {
    std::string dataset;  // "cylinder" or "iris"
    int n = 100;
    double noise_var = 0.05;
    std::uint64_t seed = 1;
    std::string out;
};
void run_generate(const GenerateOpts& o);

struct DiagramOpts {
    std::string points;
    int max_degree = 1;
    std::string out_prefix;  // writes <prefix>_h<k>.json for k = 0..max_degree
};
void run_diagram(const DiagramOpts& o);

struct DistanceOpts {
    std::string a, b;
    std::string metric = "wasserstein";  // or "bottleneck"
    double p = 1.0;
    double q = 2.0;
};
void run_distance(const DistanceOpts& o);  // prints the value, 12 significant digits

struct ReduceOpts {
    std::string points;
    AnnealingConfig cfg;
    std::vector<std::string> orders;  // "degree:weight" entries; empty keeps cfg.orders
    int chains = 1;
    int parts = 1;  // > 1 partitions the cloud and fuses with the geodesic median
    std::string out;
    std::string trace;  // optional CSV of the annealing trace
};
void run_reduce(const ReduceOpts& o);

struct MedianOpts {
    std::vector<std::string> frames;
    double tol = 1e-8;
    int max_iter = 200;
    std::string out;
};
void run_median(const MedianOpts& o);

struct SimilarityOpts {
    std::string points;
    std::string projection;
    std::string eta = "auto";  // "auto" or a nonnegative number
    int level = 0;
    int budget = 10000;
    std::string out;
};
void run_similarity(const SimilarityOpts& o);

struct PlotOpts {
    std::string diagram;  // exactly one of diagram/points
    std::string points;
    std::string out;
};
void run_plot(const PlotOpts& o);

struct ExperimentOpts {
    std::string dataset;  // "cylinder" or "iris"
    int n = 100;
    double noise_var = 0.05;
    std::uint64_t seed = 1;
    int k = 2;
    AnnealingConfig cfg;  // k/seed fields are overwritten from above
    std::string out_dir;
};
// Benchmarks four projections (principal components, a random frame, and the
// annealer driven by degree-0 and by degree-0+1 costs) on one dataset:
// writes clouds, projections, diagrams, renderings and summary.json.
void run_experiment(const ExperimentOpts& o);

// "degree:weight" list -> order weights (used by the CLI and tests).
std::vector<OrderWeight> parse_orders(const std::vector<std::string>& entries);

}  // namespace topoproj::cmd

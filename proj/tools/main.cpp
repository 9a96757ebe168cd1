#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "topoproj/commands.hpp"
#include "topoproj/error.hpp"

namespace {

using namespace topoproj;

// Shared annealing flags for reduce/experiment.
void add_annealing_flags(CLI::App* app, AnnealingConfig* cfg) {
    app->add_option("--tau0", cfg->tau0, "initial temperature");
    app->add_option("--tau-end", cfg->tau_end, "final temperature");
    app->add_option("--gamma", cfg->gamma, "geometric cooling factor in (0,1)");
    app->add_option("--sigma", cfg->sigma, "perturbation scale");
    app->add_option("--steps-per-temp", cfg->steps_per_temp, "proposals per temperature");
    app->add_option("-p,--wasserstein-order", cfg->p, "matching cost exponent p >= 1");
    app->add_option("-q,--ground-order", cfg->q, "ground metric exponent q >= 1 (inf allowed)");
}

int dispatch(int argc, char** argv) {
    CLI::App app{"point-cloud topology toolkit: persistence diagrams, diagram distances, "
                 "shape-preserving linear reduction and projection similarity measures"};
    app.require_subcommand(1);

    cmd::GenerateOpts gen;
    CLI::App* c_gen = app.add_subcommand("generate", "sample a built-in dataset to CSV");
    c_gen->add_option("--dataset", gen.dataset, "cylinder or iris")->required();
    c_gen->add_option("--n", gen.n, "sample size (cylinder)");
    c_gen->add_option("--noise-var", gen.noise_var, "per-coordinate noise variance (cylinder)");
    c_gen->add_option("--seed", gen.seed, "sampler seed");
    c_gen->add_option("--out", gen.out, "output CSV")->required();

    cmd::DiagramOpts dgm;
    CLI::App* c_dgm = app.add_subcommand("diagram", "persistence diagrams of a point cloud");
    c_dgm->add_option("--points", dgm.points, "input CSV, one point per row")->required();
    c_dgm->add_option("--max-degree", dgm.max_degree, "highest homology degree");
    c_dgm->add_option("--out-prefix", dgm.out_prefix, "writes <prefix>_h<k>.json")->required();

    cmd::DistanceOpts dst;
    CLI::App* c_dst = app.add_subcommand("distance", "distance between two diagrams");
    c_dst->add_option("--a", dst.a, "first diagram JSON")->required();
    c_dst->add_option("--b", dst.b, "second diagram JSON")->required();
    c_dst->add_option("--metric", dst.metric, "wasserstein or bottleneck");
    c_dst->add_option("-p", dst.p, "matching cost exponent");
    c_dst->add_option("-q", dst.q, "ground metric exponent (inf allowed)");

    cmd::ReduceOpts red;
    CLI::App* c_red = app.add_subcommand("reduce", "anneal a projection that preserves diagrams");
    c_red->add_option("--points", red.points, "input CSV")->required();
    c_red->add_option("-k,--target-dim", red.cfg.k, "target dimension");
    c_red->add_option("--seed", red.cfg.seed, "annealing seed");
    c_red->add_option("--orders", red.orders, "degree:weight terms of the cost")->delimiter(',');
    c_red->add_option("--variance-weight", red.cfg.variance_weight,
                      "weight of the captured-variance bonus");
    c_red->add_option("--chains", red.chains, "independent chains, best result wins");
    c_red->add_option("--parts", red.parts, "partition count for distributed reduction");
    c_red->add_option("--out", red.out, "output projection CSV")->required();
    c_red->add_option("--trace", red.trace, "optional annealing trace CSV");
    add_annealing_flags(c_red, &red.cfg);

    cmd::MedianOpts med;
    CLI::App* c_med = app.add_subcommand("median", "geodesic median of subspace frames");
    c_med->add_option("--frames", med.frames, "projection CSV files")->required()->expected(-1);
    c_med->add_option("--tol", med.tol, "geodesic step tolerance");
    c_med->add_option("--max-iter", med.max_iter, "iteration cap");
    c_med->add_option("--out", med.out, "output frame CSV")->required();

    cmd::SimilarityOpts sim;
    CLI::App* c_sim = app.add_subcommand("similarity",
                                         "interval classification and similarity measures");
    c_sim->add_option("--points", sim.points, "input CSV")->required();
    c_sim->add_option("--projection", sim.projection, "projection CSV")->required();
    c_sim->add_option("--eta", sim.eta, "'auto' or a nonnegative scale slack");
    c_sim->add_option("--level", sim.level, "compare homology in degrees 0..level");
    c_sim->add_option("--budget", sim.budget, "group-triviality rewrite budget");
    c_sim->add_option("--out", sim.out, "report JSON (stdout when omitted)");

    cmd::PlotOpts plt;
    CLI::App* c_plt = app.add_subcommand("plot", "render a diagram or cloud as SVG");
    c_plt->add_option("--diagram", plt.diagram, "diagram JSON");
    c_plt->add_option("--points", plt.points, "points CSV");
    c_plt->add_option("--out", plt.out, "output SVG")->required();

    cmd::ExperimentOpts exp;
    CLI::App* c_exp = app.add_subcommand("experiment",
                                         "compare projection methods on a dataset");
    c_exp->add_option("--dataset", exp.dataset, "cylinder or iris")->required();
    c_exp->add_option("--n", exp.n, "sample size (cylinder)");
    c_exp->add_option("--noise-var", exp.noise_var, "noise variance (cylinder)");
    c_exp->add_option("--seed", exp.seed, "master seed");
    c_exp->add_option("-k,--target-dim", exp.k, "target dimension");
    c_exp->add_option("--out-dir", exp.out_dir, "output directory")->required();
    add_annealing_flags(c_exp, &exp.cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 4;
    }

    if (c_gen->parsed()) cmd::run_generate(gen);
    if (c_dgm->parsed()) cmd::run_diagram(dgm);
    if (c_dst->parsed()) cmd::run_distance(dst);
    if (c_red->parsed()) cmd::run_reduce(red);
    if (c_med->parsed()) cmd::run_median(med);
    if (c_sim->parsed()) cmd::run_similarity(sim);
    if (c_plt->parsed()) cmd::run_plot(plt);
    if (c_exp->parsed()) cmd::run_experiment(exp);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const io_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const numeric_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const config_error& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
}

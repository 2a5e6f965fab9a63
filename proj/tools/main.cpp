#include <utility>

#include "CLI11.hpp"
#include "treeharm/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"spherical analysis and summation experiments on the "
               "homogeneous tree"};
  app.require_subcommand(1);
  treeharm::ExperimentConfig cfg;
  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--q", cfg.q, "branching number, every vertex has q+1 neighbours")
        ->capture_default_str();
    sub->add_option("--depth", cfg.depth, "tree truncation radius")
        ->capture_default_str();
    sub->add_option("--nodes", cfg.nodes, "spectral quadrature grid size")
        ->capture_default_str();
    sub->add_option("--series-cutoff", cfg.series_cutoff,
                    "horocycle series terms")
        ->capture_default_str();
    sub->add_option("--shells", cfg.shells, "kernel range in shells")
        ->capture_default_str();
    sub->add_option("--z-re", cfg.z_re, "real part of the order")
        ->capture_default_str();
    sub->add_option("--z-im", cfg.z_im, "imaginary part of the order")
        ->capture_default_str();
    sub->add_option("--r-min", cfg.r_min, "smallest threshold")
        ->capture_default_str();
    sub->add_option("--r-max", cfg.r_max, "largest threshold")
        ->capture_default_str();
    sub->add_option("--r-steps", cfg.r_steps, "number of thresholds")
        ->capture_default_str();
    sub->add_option("--tolerance", cfg.tolerance,
                    "override the default tolerance of the pass/fail gates");
    sub->add_option("--seed", cfg.seed, "seed for the random inputs")
        ->capture_default_str();
    sub->add_option("--output", cfg.output, "output file prefix");
  };
  const std::pair<const char*, const char*> cmds[] = {
      {"verify", "run the invariant check suite"},
      {"kernel", "tabulate summation kernels and their decay"},
      {"converge", "deviation of S_R f from f across thresholds"},
      {"heat", "smoothing approximation and summation on smoothed inputs"},
      {"maximal", "maximal operator against the comparison convolution"},
  };
  for (const auto& [name, desc] : cmds) add_common(app.add_subcommand(name, desc));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;   // help exits clean, bad flags are config errors
  }
  cfg.command = app.get_subcommands().front()->get_name();
  return treeharm::run_command(cfg);
}

#include <cstdio>
#include <exception>
#include <iostream>

#include "CLI11.hpp"
#include "pstddm/config.hpp"
#include "pstddm/experiments.hpp"
#include "pstddm/report.hpp"

using namespace pstddm;

int main(int argc, char** argv) {
  CLI::App app{"Helmholtz PML solver with source-transfer domain decomposition"};
  app.require_subcommand(1);
  CLI::App* solve = app.add_subcommand("solve", "run one experiment from a JSON config");

  std::string config_path;
  std::optional<std::string> mode;
  std::optional<std::string> out;
  std::optional<double> k_over_2pi;
  std::optional<double> q;
  std::optional<double> gamma0;
  std::optional<int> layers;
  std::optional<int> blocks;
  solve->add_option("--config", config_path, "experiment config (JSON)")->required();
  solve->add_option("--mode", mode, "fe | pstddm-layers | pstddm-blocks | gmres-study");
  solve->add_option("--k-over-2pi", k_over_2pi);
  solve->add_option("--q", q, "mesh density (nodes per wavelength)");
  solve->add_option("--layers", layers, "N");
  solve->add_option("--blocks", blocks, "N1");
  solve->add_option("--gamma0", gamma0);
  solve->add_option("--out", out, "output CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    ExperimentConfig c = load_config(config_path);
    if (mode) c.mode = *mode;
    if (k_over_2pi) c.k_over_2pi = *k_over_2pi;
    if (q) c.q = *q;
    if (layers) c.N = *layers;
    if (blocks) c.N1 = *blocks;
    if (gamma0) c.gamma0 = *gamma0;
    if (out) c.output = *out;
    for (const auto& w : c.validate()) std::cerr << "warning: " << w << '\n';

    const ExperimentOutput res = run_experiment(c);
    write_text_file(c.output, write_csv({res.record}));
    write_text_file(c.output + ".config.json", to_json(c) + "\n");
    if (c.mode == "gmres-study") write_text_file(c.output + ".residuals.csv", residuals_csv(res));
    std::cout << csv_header() << '\n' << csv_row(res.record) << '\n';
    if (c.mode == "gmres-study" && !res.converged_precond) {
      std::cerr << "warning: preconditioned GMRES did not reach tol within maxit\n";
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}

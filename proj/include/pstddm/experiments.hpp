#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pstddm/config.hpp"
#include "pstddm/fem.hpp"

namespace pstddm {

struct ExperimentRecord {
  std::string mode;
  double k = 0.0;
  double q = 0.0;
  std::optional<int> N;
  std::optional<int> N1;
  double gamma0 = 0.0;
  std::optional<double> e_i;
  std::optional<double> e_f;
  std::optional<double> e_s;
  std::optional<int> iters_plain;
  std::optional<int> iters_precond;
  double wall_ms = 0.0;

  bool operator==(const ExperimentRecord&) const = default;
};

struct ExperimentOutput {
  ExperimentRecord record;
  int dofs = 0;
  std::vector<double> residuals_plain;
  std::vector<double> residuals_precond;
  bool converged_plain = false;
  bool converged_precond = false;
  std::vector<std::string> warnings;
};

// Global benchmark problem on B_L with every interface of the configured partitions on grid lines.
struct Problem {
  ExperimentConfig config;
  PmlProfile profile;
  StructuredGrid grid;
  Stretching stretching;
  FeSystem system;
  ComplexField load;  // -(J f, psi)

  [[nodiscard]] double k() const { return system.k; }
  [[nodiscard]] Density source() const;
  [[nodiscard]] double e_i() const;
  // Relative H1-seminorm error against the analytic solution on B_l.
  [[nodiscard]] double error(const ComplexField& u) const;
  [[nodiscard]] ComplexField solve_direct() const;
  [[nodiscard]] std::vector<ComplexField> layer_loads(int N) const;
};

Problem make_problem(const ExperimentConfig& c);

ExperimentOutput run_fe_baseline(const ExperimentConfig& c);
ExperimentOutput run_pstddm(const ExperimentConfig& c);
ExperimentOutput run_gmres_study(const ExperimentConfig& c);
// Dispatch on c.mode after validation.
ExperimentOutput run_experiment(const ExperimentConfig& c);

}  // namespace pstddm

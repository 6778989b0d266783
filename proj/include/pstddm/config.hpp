#pragma once

#include <array>
#include <string>
#include <vector>

#include "pstddm/fem.hpp"
#include "pstddm/pml.hpp"

namespace pstddm {

struct ExperimentConfig {
  std::string mode = "fe";  // fe | pstddm-layers | pstddm-blocks | gmres-study
  double k_over_2pi = 2.0;
  double q = 16.0;
  int N = 4;
  int N1 = 1;
  double gamma0 = 2.0;
  std::array<double, 2> l{1.1, 1.1};
  std::array<double, 2> l_bar{1.18, 1.18};
  std::array<double, 2> d{0.2, 0.1};
  std::string transfer = "commutator";  // commutator | quadrature
  double tol = 1e-6;
  int restart = 50;
  int maxit = 1000;
  std::string output = "results.csv";

  [[nodiscard]] double k() const;
  [[nodiscard]] PmlProfile profile() const;
  [[nodiscard]] TransferForm transfer_form() const;
  // Throws ConfigError; returns non-fatal warnings (H2 in layer modes, H1 ramp truncation).
  std::vector<std::string> validate() const;
};

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);
std::string to_json(const ExperimentConfig& c);

}  // namespace pstddm

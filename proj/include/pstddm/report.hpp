#pragma once

#include <string>
#include <vector>

#include "pstddm/experiments.hpp"

namespace pstddm {

std::string csv_header();
// One row; reals with 17 significant digits, empty fields for absent values.
std::string csv_row(const ExperimentRecord& r);
std::string write_csv(const std::vector<ExperimentRecord>& rows);
// Inverse of write_csv; throws std::invalid_argument on malformed input.
std::vector<ExperimentRecord> parse_csv(const std::string& text);

// iteration,residual,preconditioned_flag
std::string residuals_csv(const ExperimentOutput& out);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace pstddm

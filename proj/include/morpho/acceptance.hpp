#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "morpho/io.hpp"

namespace morpho {

struct CriterionResult {
  int id = 0;
  std::string suite;
  std::string name;
  bool passed = false;
  double seconds = 0;
  double budget_seconds = 0;
  std::string detail;
};

struct AcceptanceOptions {
  /// Suite name, criterion number, or empty for everything.
  std::string filter;
  std::filesystem::path data_dir;
  unsigned seed = 0;
};

/// Golden directory: MORPHO_DATA_DIR if set, else the source tree's tests/golden.
std::filesystem::path default_data_dir();

struct FigureCase {
  std::string name;
  std::string layers;
};

/// Figures whose SVG renders are kept as goldens: <name>.json scene and <name>.svg in the data dir.
const std::vector<FigureCase>& figure_cases();

/// Runs the selected criteria in order; on_result fires as each one finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

std::string format_result_line(const CriterionResult& r);
Json results_json(const std::vector<CriterionResult>& results);

}  // namespace morpho

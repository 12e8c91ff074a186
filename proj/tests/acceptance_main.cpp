// Runs every acceptance criterion and prints one PASS/FAIL line each.
// Usage: acceptance [filter] [results.json]

#include <iostream>

#include "morpho/acceptance.hpp"

int main(int argc, char** argv) {
  morpho::AcceptanceOptions opts;
  if (argc > 1) opts.filter = argv[1];
  try {
    const auto results = morpho::run_acceptance(
        opts, [](const morpho::CriterionResult& r) { std::cout << morpho::format_result_line(r) << std::endl; });
    const morpho::Json j = morpho::results_json(results);
    if (argc > 2) morpho::write_text(argv[2], morpho::dump_json(j));
    int passed = 0;
    for (const auto& r : results) passed += r.passed ? 1 : 0;
    std::cout << passed << "/" << results.size() << " criteria passed" << std::endl;
    return j["passed"].get<bool>() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "acceptance: " << e.what() << "\n";
    return 2;
  }
}

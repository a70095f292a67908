#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace modgraph::acceptance {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct Options {
  // Empty runs every criterion.
  std::vector<int> only;
  unsigned jobs = 1;
  std::uint64_t seed = 20260611;
  std::function<void(const CriterionResult&)> on_result;
};

struct Criterion {
  int id;
  std::string title;
};

const std::vector<Criterion>& criteria();

std::vector<CriterionResult> run(const Options& options);

// One "PASS|FAIL <id> <title>: <detail> (<seconds> s)" line.
std::string format_line(const CriterionResult& r);
// JSON array of {"id", "title", "passed", "detail", "seconds"}.
std::string summary_json(const std::vector<CriterionResult>& results);

}  // namespace modgraph::acceptance

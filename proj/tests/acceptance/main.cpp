#include <algorithm>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Runs the acceptance criteria and prints one PASS/FAIL line per criterion."};
  modgraph::acceptance::Options options;
  options.jobs = std::max(1U, std::thread::hardware_concurrency());
  std::string json_path;
  app.add_option("--only", options.only, "Criterion ids to run (default: all)")->delimiter(',');
  app.add_option("--jobs", options.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", options.seed, "Base seed");
  app.add_option("--json", json_path, "Also write a JSON summary to this file");
  CLI11_PARSE(app, argc, argv);

  options.on_result = [](const modgraph::acceptance::CriterionResult& r) {
    std::cout << modgraph::acceptance::format_line(r) << std::endl;
  };
  const auto results = modgraph::acceptance::run(options);
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    out << modgraph::acceptance::summary_json(results);
  }
  bool ok = !results.empty();
  for (const auto& r : results) ok = ok && r.passed;
  return ok ? 0 : 1;
}

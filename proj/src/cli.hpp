#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace equipkit::cli {

enum Exit { kPass = 0, kCheckFailed = 1, kInputError = 2, kBudgetExceeded = 3 };

struct RunConfig {
  std::optional<std::string> site;
  int dim_bound = 2;
  long budget = 10000;
  long iso_budget = 1000000;
  std::string format = "json";
  std::string out;
  unsigned seed = 0;
};

struct Outcome {
  int code = kPass;
  nlohmann::json report;
};

Outcome construct(const std::string& kind, const std::vector<std::string>& inputs, const RunConfig& cfg);
Outcome check(const std::string& kind, const std::string& input, const RunConfig& cfg);
Outcome generate_corpus(const std::string& dir, int size, const RunConfig& cfg);

/// Full command line: parses, runs, writes the report. Returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace equipkit::cli

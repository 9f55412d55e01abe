#include "sphlab/report.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace sphlab {

std::string_view to_string(Verdict verdict) { return verdict == Verdict::pass ? "pass" : "fail"; }

Verdict parse_verdict(std::string_view text) {
  if (text == "pass") return Verdict::pass;
  if (text == "fail") return Verdict::fail;
  throw std::invalid_argument("unknown verdict: " + std::string(text));
}

void ExperimentReport::finalize() {
  const bool all_hold = std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second; });
  verdict = (error.empty() && !checks.empty() && all_hold) ? Verdict::pass : Verdict::fail;
}

}  // namespace sphlab

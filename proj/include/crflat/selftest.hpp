#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace crflat {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::map<std::string, double> metrics;
  std::string note;
};

struct SelftestOptions {
  int order = 12;
  int draws = 5;
  std::uint64_t seed = 12345;  // documented default; fixed draws
};

/// Run the full verification battery: model flatness, the constructive
/// pipeline on random admissible inputs, the closed-form identity against
/// the reference germ, the Liouville and dbar re-substitution checks, the
/// Cauchy-Pompeiu quadrature, sensitivity and degeneracy probes, the
/// finite-difference oracle and the series-engine property suite.
std::vector<CheckResult> run_selftest(const SelftestOptions& opt);

}  // namespace crflat

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bochner::tool {

struct CaseResult {
  std::string suite;
  std::string name;
  int q = 0;
  int p = 0;
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct SuiteConfig {
  int q_max = 6;
  std::uint64_t seed = 42;
  double tol = 1e-10;
  int workers = 1;
};

const std::vector<std::string>& suite_names();  // without "all"
bool is_suite(const std::string& name);          // includes "all"

/// Runs one suite, or every suite in suite_names() order for "all".
std::vector<CaseResult> run_suite(const std::string& name, const SuiteConfig& cfg);

}  // namespace bochner::tool

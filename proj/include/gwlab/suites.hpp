#pragma once

#include <deque>
#include <string>
#include <vector>

#include "gwlab/expr.hpp"
#include "gwlab/presentation.hpp"

namespace gwlab {

struct SuiteOptions {
  std::string field = "Q";
  int samples = 100;
  uint64_t seed = 1;
};

struct SubCheck {
  std::string identity;
  int cases = 0;
  int failures = 0;
  std::vector<std::string> notes;

  void tally(bool pass, const std::string& note = "") {
    ++cases;
    if (!pass) {
      ++failures;
      if (notes.size() < 10) notes.push_back(note);
    }
  }
};

struct SuiteResult {
  std::string suite;
  std::deque<SubCheck> checks;  // deque: sub() hands out stable references

  int total_cases() const;
  int total_failures() const;
  bool ok() const { return total_failures() == 0; }
  SubCheck& sub(const std::string& identity);
};

const std::vector<std::string>& suite_names();
SuiteResult run_suite(const std::string& name, const SuiteOptions& opts);
std::vector<SuiteResult> run_all(const SuiteOptions& opts);

}  // namespace gwlab

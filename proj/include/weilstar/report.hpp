#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

namespace weilstar {

// Outcome of one named family of checks.
struct Check {
  std::string name;
  std::size_t checked = 0;
  std::size_t failures = 0;
  double max_deviation = 0.0;
  std::vector<std::string> witnesses;

  std::size_t witness_limit = 5;

  Check() = default;
  explicit Check(std::string n) : name(std::move(n)) {}

  // Records one instance; `witness` is only invoked on failure.
  template <class F>
  void record(double deviation, double tolerance, F&& witness) {
    ++checked;
    max_deviation = std::max(max_deviation, deviation);
    if (!(deviation <= tolerance)) {
      ++failures;
      if (witnesses.size() < witness_limit) witnesses.push_back(witness());
    }
  }
  void record_bool(bool ok, const std::string& witness) {
    record(ok ? 0.0 : 1.0, 0.5, [&] { return witness; });
  }
  bool passed() const { return failures == 0 && checked > 0; }
};

inline bool all_passed(const std::vector<Check>& checks) {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed(); });
}

}  // namespace weilstar

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace gralg {

/// A single failed check: a stable clause id plus a rendered witness.
struct Violation {
  std::string clause;
  std::string witness;
};

/// Result of a condition checker. Empty means every clause held.
struct ConditionReport {
  std::vector<Violation> violations;

  bool pass() const { return violations.empty(); }

  bool has(std::string_view clause) const {
    for (const auto& v : violations)
      if (v.clause == clause) return true;
    return false;
  }

  void add(std::string clause, std::string witness) {
    violations.push_back({std::move(clause), std::move(witness)});
  }

  void merge(const ConditionReport& other) {
    violations.insert(violations.end(), other.violations.begin(),
                      other.violations.end());
  }

  std::string to_string() const {
    if (pass()) return "PASS\n";
    std::string out;
    for (const auto& v : violations) {
      out += "VIOLATION ";
      out += v.clause;
      out += ": ";
      out += v.witness;
      out += '\n';
    }
    return out;
  }
};

}  // namespace gralg

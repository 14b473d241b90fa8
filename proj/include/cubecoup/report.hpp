// Check reports shared by the verifiers and the CLI. Failures are data, not
// exceptions; each entry carries the first violating witness when one exists.
#pragma once

#include <string>
#include <vector>

namespace cubecoup {

struct CheckResult {
  std::string check_id;
  std::string params;
  bool pass = false;
  bool applicable = true;  // not-applicable entries don't fail a report
  std::string witness;     // first violation, canonical enumeration order
};

struct Report {
  std::vector<CheckResult> checks;

  void add(std::string id, std::string params, bool pass, std::string witness = {}) {
    checks.push_back({std::move(id), std::move(params), pass, true, std::move(witness)});
  }
  void add_na(std::string id, std::string params, std::string note = {}) {
    checks.push_back({std::move(id), std::move(params), true, false, std::move(note)});
  }
  void merge(const Report& o) { checks.insert(checks.end(), o.checks.begin(), o.checks.end()); }

  bool all_pass() const {
    for (auto& c : checks)
      if (c.applicable && !c.pass) return false;
    return true;
  }
  const CheckResult* first_failure() const {
    for (auto& c : checks)
      if (c.applicable && !c.pass) return &c;
    return nullptr;
  }
};

}  // namespace cubecoup

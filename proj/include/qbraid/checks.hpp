#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "qbraid/errors.hpp"

namespace qbraid {

struct NamedCheck {
  std::string name;
  bool passed = false;
};

struct RelationReport {
  std::vector<NamedCheck> checks;

  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const NamedCheck& c) { return c.passed; });
  }

  bool passed(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return c.passed;
    throw IndexError("no check named " + name);
  }
};

}  // namespace qbraid

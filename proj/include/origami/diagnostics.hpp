#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace origami {

/// One failed check. `polytope` / `edge` are template graph ids when the
/// violation is attributable to one.
struct Violation {
  std::string code;
  std::string message;
  std::optional<std::size_t> polytope;
  std::optional<std::size_t> edge;
  std::vector<std::size_t> facets;
};

/// Result of a validation pass: violations are data, not errors.
struct Diagnostics {
  std::vector<Violation> violations;
  std::vector<std::string> notes;

  bool ok() const noexcept { return violations.empty(); }

  Violation& add(std::string code, std::string message) {
    violations.push_back(Violation{std::move(code), std::move(message), {}, {}, {}});
    return violations.back();
  }

  bool has(const std::string& code) const {
    for (const auto& v : violations) {
      if (v.code == code) return true;
    }
    return false;
  }
};

}  // namespace origami

#pragma once

// The bundled template corpus. Texts are compiled in; setting
// ORIGAMI_FIXTURE_DIR makes load_fixture read <dir>/<name>.json instead.

#include <cstdlib>
#include <string>
#include <vector>

#include "origami/errors.hpp"
#include "origami/fixture_data.hpp"
#include "origami/template_io.hpp"

namespace origami {

inline std::vector<std::string> fixture_names() {
  std::vector<std::string> out;
  for (const auto& [name, text] : embedded::fixture_texts()) out.push_back(name);
  return out;
}

inline std::string fixture_text(const std::string& name) {
  if (const char* dir = std::getenv("ORIGAMI_FIXTURE_DIR"); dir != nullptr && *dir != '\0') {
    const std::string path = std::string(dir) + "/" + name + ".json";
    std::ifstream in(path);
    if (!in) throw ParseError(path, "cannot open fixture file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  const auto& texts = embedded::fixture_texts();
  auto it = texts.find(name);
  if (it == texts.end()) throw ParseError(name, "no such fixture");
  return it->second;
}

inline OrigamiTemplate load_fixture(const std::string& name) { return parse_template(fixture_text(name)); }

}  // namespace origami

#pragma once

// JSON template files:
//   {"name": "...", "n": 2,
//    "polytopes": [{"label": "P0", "facets": [{"normal": [1, 0], "offset": "0"}, ...]}, ...],
//    "edges": [{"ends": [{"vertex": 0, "facet": 2}, {"vertex": 1, "facet": 2}]}, ...]}
// A facet {normal a, offset b} is the half-space <a, x> + b >= 0. Offsets are
// "p/q" strings or JSON integers.

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "origami/errors.hpp"
#include "origami/exact_linalg.hpp"
#include "origami/origami_template.hpp"

namespace origami {

namespace detail {

using Json = nlohmann::json;

inline std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

inline const Json& field(const Json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw ParseError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(path, std::string("missing field '") + key + "'");
  return *it;
}

inline std::size_t index_value(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw ParseError(path, "expected a non-negative integer");
  return j.get<std::size_t>();
}

inline Integer integer_value(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Integer(j.get<long long>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    try {
      return Integer(s);
    } catch (const std::exception&) {
      throw ParseError(path, "'" + s + "' is not an integer");
    }
  }
  throw ParseError(path, "expected an integer");
}

inline Rational rational_value(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (!j.is_string()) throw ParseError(path, "expected an integer or a \"p/q\" string");
  const auto s = j.get<std::string>();
  const auto slash = s.find('/');
  try {
    Integer num(s.substr(0, slash));
    if (slash == std::string::npos) return Rational(num);
    Integer den(s.substr(slash + 1));
    if (den == 0) throw ParseError(path, "zero denominator");
    return Rational(num, den);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError(path, "'" + s + "' is not a rational number");
  }
}

inline std::string rational_text(const Rational& q) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  return denominator(q) == 1 ? numerator(q).str() : numerator(q).str() + "/" + denominator(q).str();
}

}  // namespace detail

/// Parses template text. Syntax errors carry line:column, structural ones a
/// field path such as polytopes[1].facets[3].normal.
inline OrigamiTemplate parse_template(const std::string& text) {
  using detail::Json;
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    const std::size_t at = e.byte == 0 ? 0 : e.byte - 1;
    throw ParseError(detail::line_column(text, at), "malformed JSON");
  }
  if (!doc.is_object()) throw ParseError("$", "expected a JSON object");

  const auto& nj = detail::field(doc, "n", "$");
  const std::size_t n = detail::index_value(nj, "n");
  if (n == 0) throw ParseError("n", "dimension must be positive");
  std::string name;
  if (auto it = doc.find("name"); it != doc.end()) {
    if (!it->is_string()) throw ParseError("name", "expected a string");
    name = it->get<std::string>();
  }

  const auto& pj = detail::field(doc, "polytopes", "$");
  if (!pj.is_array() || pj.empty()) throw ParseError("polytopes", "expected a non-empty array");
  std::vector<DelzantPolytope> polytopes;
  for (std::size_t v = 0; v < pj.size(); ++v) {
    const std::string path = "polytopes[" + std::to_string(v) + "]";
    std::string label = "P" + std::to_string(v);
    if (pj[v].is_object()) {
      if (auto it = pj[v].find("label"); it != pj[v].end()) {
        if (!it->is_string()) throw ParseError(path + ".label", "expected a string");
        label = it->get<std::string>();
      }
    }
    const auto& fj = detail::field(pj[v], "facets", path);
    if (!fj.is_array() || fj.empty()) throw ParseError(path + ".facets", "expected a non-empty array");
    std::vector<Facet> facets;
    for (std::size_t i = 0; i < fj.size(); ++i) {
      const std::string fpath = path + ".facets[" + std::to_string(i) + "]";
      const auto& normal = detail::field(fj[i], "normal", fpath);
      if (!normal.is_array() || normal.size() != n) {
        throw ParseError(fpath + ".normal", "expected an array of " + std::to_string(n) + " integers");
      }
      Facet f;
      for (std::size_t k = 0; k < n; ++k) {
        f.normal.push_back(detail::integer_value(normal[k], fpath + ".normal[" + std::to_string(k) + "]"));
      }
      f.offset = detail::rational_value(detail::field(fj[i], "offset", fpath), fpath + ".offset");
      facets.push_back(std::move(f));
    }
    try {
      polytopes.emplace_back(n, std::move(facets), label);
    } catch (const Error& e) {
      throw ParseError(path, e.what());
    }
  }

  std::vector<TemplateEdge> edges;
  if (auto it = doc.find("edges"); it != doc.end()) {
    if (!it->is_array()) throw ParseError("edges", "expected an array");
    for (std::size_t e = 0; e < it->size(); ++e) {
      const std::string path = "edges[" + std::to_string(e) + "]";
      const auto& ends = detail::field((*it)[e], "ends", path);
      if (!ends.is_array() || ends.size() != 2) throw ParseError(path + ".ends", "expected exactly two ends");
      EdgeEnd pair[2];
      for (std::size_t s = 0; s < 2; ++s) {
        const std::string epath = path + ".ends[" + std::to_string(s) + "]";
        pair[s].vertex = detail::index_value(detail::field(ends[s], "vertex", epath), epath + ".vertex");
        pair[s].facet = detail::index_value(detail::field(ends[s], "facet", epath), epath + ".facet");
        if (pair[s].vertex >= polytopes.size()) throw ParseError(epath + ".vertex", "no such polytope");
        if (pair[s].facet >= polytopes[pair[s].vertex].facet_count()) {
          throw ParseError(epath + ".facet", "no such facet");
        }
      }
      edges.push_back(TemplateEdge{pair[0], pair[1]});
    }
  }
  return OrigamiTemplate(n, std::move(polytopes), std::move(edges), name);
}

inline OrigamiTemplate load_template(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_template(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ":" + e.where(), std::string(e.what()).substr(e.where().empty() ? 0 : e.where().size() + 2));
  }
}

inline nlohmann::ordered_json template_to_json(const OrigamiTemplate& t) {
  nlohmann::ordered_json doc;
  if (!t.name().empty()) doc["name"] = t.name();
  doc["n"] = t.n();
  doc["polytopes"] = nlohmann::ordered_json::array();
  for (const auto& p : t.polytopes()) {
    nlohmann::ordered_json pj;
    pj["label"] = p.label();
    pj["facets"] = nlohmann::ordered_json::array();
    for (const auto& f : p.facets()) {
      nlohmann::ordered_json normal = nlohmann::ordered_json::array();
      for (const auto& c : f.normal) normal.push_back(static_cast<long long>(c));
      pj["facets"].push_back({{"normal", normal}, {"offset", detail::rational_text(f.offset)}});
    }
    doc["polytopes"].push_back(std::move(pj));
  }
  doc["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : t.edges()) {
    doc["edges"].push_back({{"ends",
                             {{{"vertex", e.first.vertex}, {"facet", e.first.facet}},
                              {{"vertex", e.second.vertex}, {"facet", e.second.facet}}}}});
  }
  return doc;
}

inline std::string serialize_template(const OrigamiTemplate& t) { return template_to_json(t).dump(2) + "\n"; }

}  // namespace origami

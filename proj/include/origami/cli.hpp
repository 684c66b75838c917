#pragma once

// The `origami` command-line tool. run() is the whole program minus main(),
// so tests can drive it with captured streams.
//
// Exit codes: 0 ok, 1 domain failure (invalid template, failed check,
// refused computation), 2 parse or usage error, 3 capability (unsupported
// dimension).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "origami/errors.hpp"
#include "origami/fixtures.hpp"
#include "origami/homology.hpp"
#include "origami/invariants.hpp"
#include "origami/orbit_space.hpp"
#include "origami/origami_template.hpp"
#include "origami/ring4d.hpp"
#include "origami/template_io.hpp"

namespace origami::cli {

enum ExitCode : int { kOk = 0, kDomainFailure = 1, kParseError = 2, kCapability = 3 };

using Doc = nlohmann::ordered_json;

inline Doc num(const Integer& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max()) {
    return static_cast<long long>(x);
  }
  return x.str();
}

inline Doc nums(const std::vector<Integer>& v) {
  Doc a = Doc::array();
  for (const auto& x : v) a.push_back(num(x));
  return a;
}

template <typename T>
Doc plain(const std::vector<T>& v) {
  Doc a = Doc::array();
  for (const auto& x : v) a.push_back(x);
  return a;
}

namespace detail {

inline bool numeric_array(const Doc& a) {
  for (const auto& x : a) {
    if (!x.is_number()) return false;
  }
  return true;
}

inline std::string scalar_text(const Doc& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  if (v.is_null()) return "none";
  return v.dump();
}

inline void render(const Doc& doc, std::ostream& out, std::size_t indent) {
  const std::string pad(indent, ' ');
  for (const auto& [key, value] : doc.items()) {
    if (value.is_object()) {
      out << pad << key << ":\n";
      render(value, out, indent + 2);
    } else if (value.is_array() && (value.empty() || numeric_array(value))) {
      out << pad << key << ": (";
      bool first = true;
      for (const auto& x : value) {
        out << (first ? "" : ",") << scalar_text(x);
        first = false;
      }
      out << ")\n";
    } else if (value.is_array()) {
      out << pad << key << ":\n";
      for (const auto& x : value) {
        if (x.is_object()) {
          std::ostringstream item;
          render(x, item, 0);
          std::string text = item.str();
          std::istringstream lines(text);
          std::string line;
          bool first = true;
          while (std::getline(lines, line)) {
            out << pad << (first ? "  - " : "    ") << line << "\n";
            first = false;
          }
        } else {
          out << pad << "  - " << scalar_text(x) << "\n";
        }
      }
    } else {
      out << pad << key << ": " << scalar_text(value) << "\n";
    }
  }
}

}  // namespace detail

/// Human-readable rendering of a report document: one "key: value" line per
/// scalar, tuples for scalar arrays, indented blocks for nested objects.
inline std::string render_text(const Doc& doc) {
  std::ostringstream out;
  detail::render(doc, out, 0);
  return out.str();
}

/// Reads a template from a file, or from the bundled corpus when no such
/// file exists and the basename names a fixture.
inline OrigamiTemplate load_template_arg(const std::string& arg) {
  namespace fs = std::filesystem;
  if (fs::exists(arg)) return load_template(arg);
  const std::string stem = fs::path(arg).stem().string();
  for (const auto& name : fixture_names()) {
    if (name == stem) return load_fixture(name);
  }
  throw ParseError(arg, "no such file or bundled fixture");
}

inline std::string template_title(const OrigamiTemplate& t) { return t.name().empty() ? "(unnamed)" : t.name(); }

struct Outcome {
  Doc doc;
  int code = kOk;
};

inline Doc violation_doc(const Violation& v) {
  Doc d;
  d["code"] = v.code;
  d["message"] = v.message;
  d["polytope"] = v.polytope ? Doc(*v.polytope) : Doc(nullptr);
  d["edge"] = v.edge ? Doc(*v.edge) : Doc(nullptr);
  d["facets"] = plain(v.facets);
  return d;
}

inline Outcome cmd_validate(const OrigamiTemplate& t) {
  Outcome o;
  const auto d = validate_template(t);
  o.doc["template"] = template_title(t);
  o.doc["n"] = t.n();
  o.doc["polytopes"] = t.vertex_count();
  o.doc["edges"] = t.edge_count();
  o.doc["warnings"] = plain(t.notes());
  o.doc["violations"] = Doc::array();
  for (const auto& v : d.violations) o.doc["violations"].push_back(violation_doc(v));
  o.doc["coorientable"] = check_coorientable(t);
  o.doc["orientable (heuristic criterion)"] = check_orientable(t);
  o.doc["status"] = d.ok() ? "ok" : "invalid";
  o.code = d.ok() ? kOk : kDomainFailure;
  return o;
}

inline void require_valid(const OrigamiTemplate& t) {
  const auto d = validate_template(t);
  if (!d.ok()) throw PreconditionError("template is invalid: " + d.violations.front().message + " (run validate)");
}

inline bool all_zero(const std::vector<Integer>& v) {
  for (const auto& x : v) {
    if (x != 0) return false;
  }
  return true;
}

inline Doc relaxed_doc(const RelaxedReport& r) {
  Doc d;
  d["r_min"] = r.r_min;
  d["full Betti numbers determined"] = r.full_betti_available();
  d["non-acyclic proper classes"] = Doc::array();
  for (const auto& [id, rank] : r.non_acyclic) {
    d["non-acyclic proper classes"].push_back({{"class", id}, {"cycle rank", rank}});
  }
  d["odd vanishing range"] = "b_{2i+1} = 0 for " + std::to_string(r.vanish_lo) + " <= i <= " + std::to_string(r.vanish_hi) +
                             (r.vanish_lo > r.vanish_hi ? " (empty)" : "");
  d["cut relation range"] = std::to_string(r.cut_lo) + " <= i <= " + std::to_string(r.cut_hi) +
                            (r.cut_lo > r.cut_hi ? " (empty)" : "");
  d["constraints"] = plain(r.constraints);
  return d;
}

inline Outcome cmd_invariants(const OrigamiTemplate& t, BettiMode mode, bool relaxed) {
  require_valid(t);
  Outcome o;
  o.doc["template"] = template_title(t);
  o.doc["n"] = t.n();
  const auto rel = relaxed_report(t);
  if (rel.r_min != 1) {
    if (!relaxed) {
      throw PreconditionError("r_min = " + std::to_string(rel.r_min) +
                              ": some proper face of M/T is not acyclic, so the Betti numbers are not determined "
                              "by the template; rerun with --relaxed for the constraints that still hold");
    }
    const auto fp = build_face_classes(t);
    o.doc["b1(G)"] = num(graph_cycle_rank(t));
    o.doc["f"] = nums(f_vector(fp));
    o.doc["h"] = nums(template_h_vector(fp));
    o.doc["relaxed"] = relaxed_doc(rel);
    return o;
  }

  const auto r = invariant_report(t, mode);
  o.doc["b1(G)"] = num(r.b1);
  o.doc["coorientable"] = r.coorientable;
  o.doc["orientable (heuristic criterion)"] = r.orientable;
  o.doc["r_min"] = r.r_min;
  o.doc["f"] = nums(r.f);
  o.doc["h"] = nums(r.h);
  o.doc["dual homology"] = r.dual_homology.str();
  o.doc["h'"] = nums(r.h_prime);
  o.doc["h''"] = nums(r.h_double_prime.values);
  if (r.betti_closed) o.doc["betti (closed form)"] = nums(*r.betti_closed);
  if (r.betti_inductive) o.doc["betti (inductive)"] = nums(*r.betti_inductive);
  if (r.betti_closed && r.betti_inductive) o.doc["methods agree"] = r.methods_agree;
  const BettiVector& b = r.betti_closed ? *r.betti_closed : *r.betti_inductive;
  const auto structure = betti_structure_failures(b, r.b1, r.n);
  o.doc["betti structure failures"] = plain(structure);
  o.doc["chi(M)"] = num(r.chi_manifold);
  o.doc["chi(boundary)"] = num(r.chi_boundary);
  o.doc["dehn-sommerville residuals"] = nums(r.dehn_sommerville);
  o.doc["coker rank in degree 2"] = num(r.restriction.coker2);
  o.doc["ker rank in degree 4"] = num(r.restriction.ker4);
  o.doc["restriction map"] = r.restriction.summary;
  o.doc["h' - betti residual"] = nums(r.h_prime_residual.padded(r.n + 1));
  o.doc["h'' - betti residual"] = nums(r.h_double_prime_residual);
  o.doc["equivariant ranks (degree 0..2n)"] = nums(r.equivariant_series);
  o.doc["fold classes generating H^1"] = plain(cycle_edge_basis(t));
  const auto euler = euler_checks(t);
  Doc cuts = Doc::array();
  for (const auto& c : euler.cuts) {
    cuts.push_back({{"edge", c.edge}, {"chi(M') - chi(M) - 2 chi(B)", num(c.euler_residual)}, {"holds", c.holds()}});
  }
  o.doc["euler checks"] = {{"chi(M) = vertex classes", euler.chi_manifold == euler.vertex_classes}, {"cuts", cuts}};
  if (relaxed) o.doc["relaxed"] = relaxed_doc(rel);

  const bool ok = r.methods_agree && structure.empty() && all_zero(r.dehn_sommerville) && r.h_prime_residual.is_zero() &&
                  all_zero(r.h_double_prime_residual) && euler.holds();
  for (const auto& c : euler.cuts) {
    if (!c.holds()) o.code = kDomainFailure;
  }
  o.doc["status"] = ok && o.code == kOk ? "all checks hold" : "CHECK FAILED";
  if (!ok) o.code = kDomainFailure;
  return o;
}

inline Outcome cmd_homology(const OrigamiTemplate& t) {
  require_valid(t);
  Outcome o;
  const auto fp = build_face_classes(t);
  const auto oc = order_complex(fp);
  const auto hp = homology(chain_complex(oc, true));
  const std::size_t b1 = static_cast<std::size_t>(graph_cycle_rank(t));
  const auto expected = expected_dual_homology(t.n(), b1);
  const auto acyc = acyclicity_report(fp);
  o.doc["template"] = template_title(t);
  o.doc["n"] = t.n();
  o.doc["b1(G)"] = b1;
  std::vector<std::size_t> counts;
  for (std::size_t k = 0; k <= oc.dimension(); ++k) counts.push_back(oc.count(k));
  o.doc["order complex simplices"] = plain(counts);
  o.doc["computed"] = hp.str();
  o.doc["expected"] = expected.str();
  o.doc["torsion free"] = hp.torsion_free();
  o.doc["r_min"] = acyc.r_min;
  const bool match = hp.same_as(expected);
  o.doc["match"] = match;
  if (!match && acyc.r_min != 1) {
    o.doc["note"] = "some proper face is not acyclic, so the expected pattern is not guaranteed";
  }
  o.code = match ? kOk : kDomainFailure;
  return o;
}

inline Outcome cmd_cut(const OrigamiTemplate& t, std::size_t edge, bool allow_bridge, std::string* cut_text) {
  require_valid(t);
  if (edge >= t.edge_count()) throw PreconditionError("edge " + std::to_string(edge) + " does not exist");
  const bool bridge = is_bridge(t, edge);
  if (bridge && !allow_bridge) {
    throw PreconditionError("edge " + std::to_string(edge) +
                            " is a bridge; cutting it disconnects the template (pass --allow-bridge to force)");
  }
  const auto c = cut(t, edge, allow_bridge ? CutMode::any_edge : CutMode::cycle_only);
  Outcome o;
  o.doc["template"] = template_title(t);
  o.doc["edge"] = edge;
  o.doc["bridge"] = bridge;
  o.doc["folded facet h"] = nums(c.folded_facet_h);
  o.doc["remaining edges"] = c.cut_template.edge_count();
  if (!bridge) {
    Doc deltas;
    const std::size_t n = t.n();
    for (std::size_t i = 1; i < n; ++i) {
      const Integer d = origami::detail::at_or_zero(c.folded_facet_h, static_cast<long long>(i)) +
                        origami::detail::at_or_zero(c.folded_facet_h, static_cast<long long>(i) - 1);
      deltas["b_" + std::to_string(2 * i)] = num(d);
    }
    deltas["b_1"] = -1;
    deltas["b_" + std::to_string(2 * n - 1)] = -1;
    o.doc["predicted betti change"] = deltas;
  } else {
    o.doc["note"] = "bridge cut: the result is disconnected";
  }
  *cut_text = serialize_template(c.cut_template);
  return o;
}

inline std::string monomial_name(const std::vector<BoundaryCycle>& cycles, const Degree4Structure& d4, std::size_t col) {
  const TauIndex idx(cycles);
  if (col < d4.square_count) return "tau" + std::to_string(col + 1) + "^2";
  const std::size_t g = col - d4.square_count;
  std::size_t k = 0;
  while (k + 1 < cycles.size() && idx.offset[k + 1] <= g) ++k;
  const std::size_t i = g - idx.offset[k];
  const std::size_t next = idx.offset[k] + (i + 1) % cycles[k].size();
  return "tau" + std::to_string(g + 1) + "*tau" + std::to_string(next + 1);
}

inline std::string linear_combination(const std::vector<BoundaryCycle>& cycles, const Degree4Structure& d4,
                                      const IntVector& v) {
  std::string s;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j] == 0) continue;
    const Integer a = abs_value(v[j]);
    s += (v[j] < 0 ? "-" : (s.empty() ? "" : "+"));
    if (a != 1) s += a.str();
    s += monomial_name(cycles, d4, j);
  }
  return s.empty() ? "0" : s;
}

inline Doc ring_doc(const std::vector<BoundaryCycle>& cycles) {
  Doc d;
  const TauIndex idx(cycles);
  Doc cyc = Doc::array();
  for (std::size_t k = 0; k < cycles.size(); ++k) {
    Doc gens = Doc::array();
    for (std::size_t i = 0; i < cycles[k].size(); ++i) {
      std::string g = "tau" + std::to_string(idx.offset[k] + i + 1) + " " + format_vector(cycles[k].normals[i]);
      if (!cycles[k].facet_classes.empty()) g += " class " + std::to_string(cycles[k].facet_classes[i]);
      gens.push_back(g);
    }
    cyc.push_back({{"cycle", k + 1}, {"generators", gens}});
  }
  d["boundary cycles"] = cyc;

  const auto d2 = degree2_presentation(cycles);
  Doc rel2 = Doc::array();
  for (std::size_t r = 0; r < 2; ++r) rel2.push_back(format_relation(d2.relations.row(r)));
  const auto [u1, u2] = dual_basis(cycles[0].normals[0], cycles[0].normals[1 % cycles[0].size()]);
  const auto dual = degree2_relations_in_basis(cycles, u1, u2);
  Doc rel2d = Doc::array();
  for (std::size_t r = 0; r < 2; ++r) rel2d.push_back(format_relation(dual.row(r)));
  d["degree 2"] = {{"generators", d2.generators},
                   {"relations (e1*, e2*)", rel2},
                   {"relations (dual basis of tau1, tau2 normals)", rel2d},
                   {"relation rank", d2.relation_rank},
                   {"rank", d2.rank}};

  const auto d4 = degree4_structure(cycles);
  Doc squares = Doc::array();
  for (std::size_t tau = 0; tau < idx.count; ++tau) {
    const auto e = tau_square_expansion(cycles, tau);
    std::size_t k = 0;
    while (k + 1 < cycles.size() && idx.offset[k + 1] <= tau) ++k;
    const std::size_t m = cycles[k].size();
    const std::size_t i = tau - idx.offset[k];
    IntVector v(d4.monomial_count(), 0);
    v[d4.corner(idx.offset[k] + (i + m - 1) % m)] += e.coeff_prev;
    v[d4.corner(idx.offset[k] + i)] += e.coeff_next;
    squares.push_back("tau" + std::to_string(tau + 1) + "^2 = " + linear_combination(cycles, d4, v) + "  (u = " +
                      format_vector(e.u) + ")");
  }
  Doc mus = Doc::array();
  for (std::size_t k = 0; k < d4.mu.size(); ++k) {
    mus.push_back("mu" + std::to_string(k + 1) + " = " + linear_combination(cycles, d4, d4.mu[k]));
  }
  Doc kernel = Doc::array();
  for (std::size_t k = 0; k < d4.kernel.size(); ++k) kernel.push_back("mu1-mu" + std::to_string(k + 2));
  d["degree 4"] = {{"monomials", d4.monomial_count()},
                   {"relations", d4.relations.rows()},
                   {"relation rank", d4.relation_rank},
                   {"rank", d4.rank},
                   {"torsion", nums(d4.torsion)},
                   {"squares", squares},
                   {"mu", mus},
                   {"kernel basis", kernel},
                   {"kernel rank", d4.kernel_rank}};
  return d;
}

inline Outcome cmd_ring4d(const OrigamiTemplate& t) {
  if (t.n() != 2) throw CapabilityError("ring4d is implemented only for n = 2 (4-dimensional M); got n = " + std::to_string(t.n()));
  require_valid(t);
  const auto cycles = multifan_2d(t);
  Outcome o;
  o.doc["template"] = template_title(t);
  const auto inv = invariant_report(t, BettiMode::closed);
  const Integer b1 = inv.b1;
  o.doc["b1(G)"] = num(b1);
  o.doc.update(ring_doc(cycles));
  const auto d2 = degree2_presentation(cycles);
  const auto d4 = degree4_structure(cycles);
  const bool deg2 = Integer(d2.rank) + 2 * b1 == (*inv.betti_closed)[2];
  const bool deg4 = Integer(d4.rank) == 1 + b1 && Integer(d4.rank) == inv.h_prime[2];
  const bool ker = Integer(d4.kernel_rank) == b1;
  o.doc["checks"] = {{"degree-2 rank + n b1 = b2", deg2}, {"degree-4 rank = 1 + b1 = h'_2", deg4}, {"kernel rank = b1", ker}};
  o.code = deg2 && deg4 && ker ? kOk : kDomainFailure;
  return o;
}

inline void emit(const Outcome& o, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << o.doc.dump(2) << "\n";
  } else {
    out << render_text(o.doc);
  }
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Invariants of toric origami templates", "origami"};
  app.require_subcommand(1);
  std::string path, format = "text", mode = "both", out_path, fixture_show, fixture_export;
  bool relaxed = false, allow_bridge = false;
  std::size_t edge = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("template", path, "template file or bundled fixture name")->required();
    sub->add_option("--format", format, "report format")->check(CLI::IsMember({"text", "json"}));
  };
  auto* validate = app.add_subcommand("validate", "check the template axioms");
  add_common(validate);
  auto* invariants = app.add_subcommand("invariants", "face numbers, Betti numbers and derived checks");
  add_common(invariants);
  invariants->add_option("--mode", mode, "Betti method")->check(CLI::IsMember({"closed", "inductive", "both"}));
  invariants->add_flag("--relaxed", relaxed, "report constraints when some proper face is not acyclic");
  auto* homology_cmd = app.add_subcommand("homology", "homology of the dual poset vs the expected pattern");
  add_common(homology_cmd);
  auto* cut_cmd = app.add_subcommand("cut", "remove one fold edge");
  add_common(cut_cmd);
  cut_cmd->add_option("--edge", edge, "edge id")->required();
  cut_cmd->add_option("--out", out_path, "where to write the cut template (default: stdout)");
  cut_cmd->add_flag("--allow-bridge", allow_bridge, "permit cutting an edge that disconnects the graph");
  auto* ring = app.add_subcommand("ring4d", "degree-2/4 ring presentation for n = 2");
  add_common(ring);
  auto* fixtures = app.add_subcommand("fixtures", "list, show or export the bundled templates");
  fixtures->add_option("--show", fixture_show, "print one fixture");
  fixtures->add_option("--export", fixture_export, "write every fixture into this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseError;
  }

  try {
    if (fixtures->parsed()) {
      if (!fixture_show.empty()) {
        out << fixture_text(fixture_show);
      } else if (!fixture_export.empty()) {
        std::filesystem::create_directories(fixture_export);
        for (const auto& name : fixture_names()) {
          std::ofstream f(std::filesystem::path(fixture_export) / (name + ".json"));
          f << fixture_text(name);
          out << name << ".json\n";
        }
      } else {
        for (const auto& name : fixture_names()) out << name << "\n";
      }
      return kOk;
    }

    const auto t = load_template_arg(path);
    Outcome o;
    if (validate->parsed()) {
      o = cmd_validate(t);
    } else if (invariants->parsed()) {
      const BettiMode m = mode == "closed" ? BettiMode::closed : mode == "inductive" ? BettiMode::inductive : BettiMode::both;
      o = cmd_invariants(t, m, relaxed);
    } else if (homology_cmd->parsed()) {
      o = cmd_homology(t);
    } else if (cut_cmd->parsed()) {
      std::string text;
      o = cmd_cut(t, edge, allow_bridge, &text);
      if (out_path.empty()) {
        o.doc["cut template"] = Doc::parse(text);
      } else {
        std::ofstream f(out_path);
        if (!f) throw PreconditionError("cannot write " + out_path);
        f << text;
        o.doc["written to"] = out_path;
      }
    } else if (ring->parsed()) {
      o = cmd_ring4d(t);
    }
    emit(o, format, out);
    return o.code;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const CapabilityError& e) {
    err << "unsupported: " << e.what() << "\n";
    return kCapability;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kDomainFailure;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kDomainFailure;
  }
}

}  // namespace origami::cli

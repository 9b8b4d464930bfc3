#pragma once

// Serialization of the library's reports and tables: ordered JSON (stable
// key order, byte-identical across runs), CSV, TeX, and Graphviz DOT for
// category quivers.

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "collection.hpp"
#include "dgcat.hpp"
#include "grading.hpp"
#include "homalg.hpp"
#include "resolution.hpp"

namespace fermat {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Building blocks.

inline Json weight_json(const Weight& w) {
  return Json{{"p", {w.p0, w.p1, w.p2}}};
}

inline Json grade_json(const GradeElement& n) {
  Json j;
  j["a"] = n.a();
  j["b"] = n.b();
  j["c"] = n.c();
  j["m"] = n.m();
  j["phi"] = scalar_to_string(n.phi());
  j["str"] = n.str();
  return j;
}

inline Json int_matrix_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (const auto& row : m) rows.push_back(row);
  return rows;
}

// ---------------------------------------------------------------------------
// Resolutions.

template <class K>
Json resolution_json(const Weight& w, const GradeElement& twist,
                     std::size_t stages) {
  auto cx = build_resolution<K>(w, twist, stages);
  Json j;
  j["weight"] = weight_json(w);
  j["twist"] = grade_json(twist);
  j["field"] = field_info<K>::name();
  j["stages"] = Json::array();
  for (std::size_t s = 0; s <= stages; ++s) {
    Json stage;
    stage["stage"] = s;
    stage["rank"] = cx.module(s).rank();
    stage["shifts"] = Json::array();
    for (std::size_t g = 0; g < cx.module(s).rank(); ++g)
      stage["shifts"].push_back(grade_json(cx.module(s).shift(g)));
    if (s > 0) {
      Json entries = Json::array();
      const ModuleMap<K>& d = cx.map(s);
      for (std::size_t i = 0; i < d.target().rank(); ++i) {
        Json row = Json::array();
        for (std::size_t g = 0; g < d.source().rank(); ++g)
          row.push_back(d.at(i, g).str());
        entries.push_back(row);
      }
      stage["differential"] = entries;
    }
    j["stages"].push_back(stage);
  }
  return j;
}

// ---------------------------------------------------------------------------
// Ext tables and pattern verdicts.

inline Json ext_table_json(const ExtTable& t) {
  Json j;
  j["weight"] = weight_json(t.weight);
  j["max_degree"] = t.max_degree;
  Json entries = Json::array();
  for (const auto& [key, dims] : t.dims) {
    Json e;
    e["source"] = grade_json(key.first);
    e["target"] = grade_json(key.second);
    e["dims"] = dims;
    entries.push_back(e);
  }
  j["entries"] = entries;
  return j;
}

inline Json ext_pair_json(const Weight& w, const GradeElement& source,
                          const GradeElement& target,
                          std::size_t max_degree) {
  Json j;
  j["weight"] = weight_json(w);
  j["source"] = grade_json(source);
  j["target"] = grade_json(target);
  j["max_degree"] = max_degree;
  Json dims = Json::array();
  for (std::size_t d = 0; d <= max_degree; ++d)
    dims.push_back(ext_dim(w, source, target, d));
  j["dims"] = dims;
  return j;
}

inline Json pattern_json(const PatternVerdict& v) {
  Json j;
  j["pass"] = v.pass;
  j["mismatches"] = v.mismatches;
  return j;
}

inline std::string ext_table_csv(const ExtTable& t) {
  std::ostringstream out;
  out << "source,target";
  for (std::size_t d = 0; d <= t.max_degree; ++d) out << ",ext" << d;
  out << "\n";
  for (const auto& [key, dims] : t.dims) {
    out << key.first.str() << "," << key.second.str();
    for (std::int64_t v : dims) out << "," << v;
    out << "\n";
  }
  return out.str();
}

inline std::string ext_table_tex(const ExtTable& t) {
  std::ostringstream out;
  out << "\\begin{tabular}{ll";
  for (std::size_t d = 0; d <= t.max_degree; ++d) out << "r";
  out << "}\n\\toprule\nsource & target";
  for (std::size_t d = 0; d <= t.max_degree; ++d)
    out << " & $\\operatorname{Ext}^{" << d << "}$";
  out << " \\\\\n\\midrule\n";
  for (const auto& [key, dims] : t.dims) {
    out << "$" << key.first.str() << "$ & $" << key.second.str() << "$";
    for (std::int64_t v : dims) out << " & " << v;
    out << " \\\\\n";
  }
  out << "\\bottomrule\n\\end{tabular}\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Collection reports.

inline Json membership_json(const MembershipReport& r) {
  Json j;
  j["twist"] = grade_json(r.n);
  j["in_box"] = r.in_box;
  j["window"] = {scalar_to_string(r.window_lo),
                 scalar_to_string(r.window_hi)};
  j["cone_checked"] = r.cone_checked;
  j["complement_checked"] = r.complement_checked;
  j["simple_orthogonality"] = r.simple_orthogonality;
  j["free_orthogonality"] = r.free_orthogonality;
  if (r.simple_witness) j["simple_witness"] = grade_json(*r.simple_witness);
  if (r.free_witness) j["free_witness"] = grade_json(*r.free_witness);
  j["pass"] = r.pass();
  return j;
}

inline Json exceptional_json(const ExceptionalReport& r) {
  Json j;
  j["weight"] = weight_json(r.weight);
  j["object_count"] = r.object_count;
  j["max_degree"] = r.max_degree;
  j["endomorphisms_simple"] = r.endomorphisms_simple;
  j["no_backward_morphisms"] = r.no_backward_morphisms;
  j["mismatches"] = r.mismatches;
  j["pass"] = r.pass();
  return j;
}

template <class K>
Json comparison_json(const ComparisonReport<K>& r) {
  Json j;
  j["weight"] = weight_json(r.weight);
  j["object_count"] = r.object_count;
  j["field"] = field_info<K>::name();
  j["dimensions_match"] = r.dimensions_match;
  j["generators_matched"] = r.generators_matched;
  j["compositions_match"] = r.compositions_match;
  j["all_scalings_pm_one"] = r.all_scalings_pm_one;
  Json sc = Json::array();
  for (const auto& [key, v] : r.scalings) {
    Json e;
    e["source"] = key.first;
    e["target"] = key.second;
    e["value"] = scalar_to_string(v);
    sc.push_back(e);
  }
  j["scalings"] = sc;
  j["mismatches"] = r.mismatches;
  j["pass"] = r.pass();
  return j;
}

inline Json euler_json(const Weight& w) {
  IndexSet box = index_set(w);
  IntMatrix gram = gram_matrix(w);
  KroneckerReport rep = kronecker_check(w);
  Json j;
  j["weight"] = weight_json(w);
  Json idx = Json::array();
  for (const GradeElement& n : box.elements) idx.push_back(grade_json(n));
  j["index_set"] = idx;
  j["gram"] = int_matrix_json(gram);
  j["matches_euler"] = rep.matches_euler;
  j["matches_kronecker"] = rep.matches_kronecker;
  j["determinant"] = scalar_to_string(rep.gram_determinant);
  j["pass"] = rep.pass();
  return j;
}

inline Json reduction_json(const Weight& w, const GradeElement& m,
                           const ReduceResult& r, const PairingCheck& chk) {
  IndexSet box = index_set(w);
  Json j;
  j["weight"] = weight_json(w);
  j["twist"] = grade_json(m);
  Json coeffs = Json::array();
  for (std::size_t s = 0; s < box.size(); ++s) {
    Json e;
    e["index"] = grade_json(box.elements[s]);
    e["coefficient"] = r.vector.coeffs[s];
    coeffs.push_back(e);
  }
  j["coefficients"] = coeffs;
  Json per = Json::array();
  static const char* kVar[3] = {"x", "y", "z"};
  for (const PerfectTrace& p : r.perfects) {
    Json e;
    e["quotient_vars"] = {kVar[p.quotient_vars[0]], kVar[p.quotient_vars[1]]};
    e["twist"] = grade_json(p.twist);
    e["multiplicity"] = p.multiplicity;
    per.push_back(e);
  }
  j["perfects"] = per;
  j["steps"] = r.steps;
  j["pairing_consistent"] = chk.pass;
  return j;
}

// ---------------------------------------------------------------------------
// DG categories.

template <class K>
Json category_json(const DGCategory<K>& c) {
  Json j;
  j["field"] = field_info<K>::name();
  Json objs = Json::array();
  for (std::size_t i = 0; i < c.num_objects(); ++i)
    objs.push_back(c.object_name(i));
  j["objects"] = objs;
  Json gens = Json::array();
  for (std::size_t i = 0; i < c.num_objects(); ++i)
    for (std::size_t t = 0; t < c.num_objects(); ++t) {
      const auto& basis = c.hom_basis(i, t);
      for (std::size_t f = 0; f < basis.size(); ++f) {
        Json e;
        e["source"] = i;
        e["target"] = t;
        e["name"] = basis[f].name;
        e["degree"] = basis[f].degree;
        e["is_identity"] = (i == t && f == c.identity_index(i));
        gens.push_back(e);
      }
    }
  j["generators"] = gens;
  j["total_hom_dimension"] = c.total_hom_dim();
  return j;
}

template <class K>
std::string category_dot(const DGCategory<K>& c) {
  std::ostringstream out;
  out << "digraph category {\n  rankdir=LR;\n  node [shape=box];\n";
  for (std::size_t i = 0; i < c.num_objects(); ++i)
    out << "  n" << i << " [label=\"" << c.object_name(i) << "\"];\n";
  for (std::size_t i = 0; i < c.num_objects(); ++i)
    for (std::size_t t = 0; t < c.num_objects(); ++t) {
      const auto& basis = c.hom_basis(i, t);
      for (std::size_t f = 0; f < basis.size(); ++f) {
        if (i == t && f == c.identity_index(i)) continue;
        out << "  n" << i << " -> n" << t << " [label=\"" << basis[f].name
            << " (" << basis[f].degree << ")\"];\n";
      }
    }
  out << "}\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Matrices in CSV / TeX.

inline std::string int_matrix_csv(const IntMatrix& m) {
  std::ostringstream out;
  for (const auto& row : m) {
    for (std::size_t t = 0; t < row.size(); ++t)
      out << (t ? "," : "") << row[t];
    out << "\n";
  }
  return out.str();
}

inline std::string int_matrix_tex(const IntMatrix& m) {
  std::ostringstream out;
  out << "\\begin{pmatrix}\n";
  for (const auto& row : m) {
    for (std::size_t t = 0; t < row.size(); ++t)
      out << (t ? " & " : "") << row[t];
    out << " \\\\\n";
  }
  out << "\\end{pmatrix}\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// File output.

inline void write_text_file(const std::string& path,
                            const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace fermat

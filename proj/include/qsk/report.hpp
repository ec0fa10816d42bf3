#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "qsk/abelian_group.hpp"
#include "qsk/bigint.hpp"
#include "qsk/family.hpp"
#include "qsk/int_matrix.hpp"
#include "qsk/specseq.hpp"

namespace qsk::report {

using Json = nlohmann::ordered_json;

// Integers that fit in 64 bits are JSON numbers, larger ones decimal strings.
inline Json integer(const Integer& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

inline Json integers(const std::vector<Integer>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(integer(x));
  return a;
}

inline Json ints(const std::vector<std::int64_t>& v) {
  Json a = Json::array();
  for (auto x : v) a.push_back(x);
  return a;
}

inline Json matrix(const IntMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(integer(m(i, j)));
    a.push_back(std::move(row));
  }
  return a;
}

inline Json family(const PrimeFamily& fam) {
  return Json{{"set", ints(fam.elements())},
              {"g", fam.g()},
              {"primes", ints(fam.primes())},
              {"d", fam.d_label()}};
}

inline Json input(const std::string& command, const PrimeFamily& fam) {
  Json j{{"command", command}};
  j.update(family(fam));
  return j;
}

inline Json k_group(const KGroup& g) {
  Json j{{"free_rank", g.free_rank}};
  if (g.torsion) {
    j["torsion"] = integers(g.torsion->torsion());
  } else {
    j["torsion"] = nullptr;
    Json layers = Json::array();
    for (const auto& l : g.torsion_bound) layers.push_back(integers(l.torsion()));
    j["torsion_bound"] = std::move(layers);
  }
  return j;
}

inline Json k_theory(const KTheoryResult& r) {
  Json j{{"k0", k_group(r.k0)},
         {"k1", k_group(r.k1)},
         {"unit_class", r.unit_class},
         {"status", to_string(r.status)}};
  j["conjectured_torsion"] = r.conjectured_torsion ? integers(r.conjectured_torsion->torsion()) : Json();
  j["torsion_order_bound"] = r.torsion_order_bound ? integer(*r.torsion_order_bound) : Json();
  return j;
}

inline Json page(const SpectralPage& pg) {
  Json entries = Json::array();
  for (QParity q : {QParity::even, QParity::odd})
    for (int p = 0; p <= pg.k; ++p) {
      const FgAbGroup g = pg.at(p, q);
      entries.push_back(Json{{"p", p},
                             {"q", to_string(q)},
                             {"group", g.to_string()},
                             {"invariant_factors", integers(g.torsion())}});
    }
  return Json{{"page", pg.page_index}, {"k", pg.k}, {"entries", std::move(entries)}};
}

// ---------------------------------------------------------------------------
// Text rendering. Every value in the JSON payload appears in the text form.

namespace detail {

inline std::string scalar(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "null";
  return j.dump();
}

inline bool is_flat(const Json& j) {
  if (j.is_array()) {
    for (const auto& x : j)
      if (x.is_structured()) return false;
    return true;
  }
  return !j.is_object();
}

inline std::string inline_value(const Json& j) {
  if (!j.is_array()) return scalar(j);
  std::string out = "[";
  for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + scalar(j[i]);
  return out + "]";
}

inline bool is_flat_object(const Json& j) {
  if (!j.is_object()) return false;
  for (const auto& [k, v] : j.items())
    if (!is_flat(v)) return false;
  return true;
}

inline void render(const Json& j, const std::string& pad, std::string& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (is_flat(v)) {
        out += pad + k + ": " + inline_value(v) + "\n";
      } else {
        out += pad + k + ":\n";
        render(v, pad + "  ", out);
      }
    }
  } else if (j.is_array()) {
    for (const auto& x : j) {
      if (is_flat(x)) {
        // rows of a table or matrix
        std::string line;
        if (x.is_array())
          for (std::size_t i = 0; i < x.size(); ++i) line += (i ? " " : "") + scalar(x[i]);
        else
          line = scalar(x);
        out += pad + line + "\n";
      } else if (is_flat_object(x)) {
        std::string line;
        for (const auto& [k, v] : x.items()) line += (line.empty() ? "" : "  ") + k + "=" + inline_value(v);
        out += pad + line + "\n";
      } else {
        out += pad + "-\n";
        render(x, pad + "  ", out);
      }
    }
  } else {
    out += pad + scalar(j) + "\n";
  }
}

}  // namespace detail

inline std::string to_text(const Json& j) {
  std::string out;
  detail::render(j, "", out);
  return out;
}

inline std::string to_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace qsk::report

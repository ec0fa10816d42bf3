#pragma once

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qsk/errors.hpp"
#include "qsk/family.hpp"
#include "qsk/int_matrix.hpp"
#include "qsk/kgraph.hpp"
#include "qsk/lcmsemi.hpp"
#include "qsk/monocalc.hpp"
#include "qsk/report.hpp"
#include "qsk/selftest.hpp"
#include "qsk/smith.hpp"
#include "qsk/specseq.hpp"

namespace qsk::cli {

using report::Json;

struct Outcome {
  int exit_code = 0;
  std::string out;
  std::string err;
};

namespace detail {

inline lcmsemi::Ambient parse_ambient(const std::string& s) {
  for (auto a : {lcmsemi::Ambient::ZxH, lcmsemi::Ambient::NxH, lcmsemi::Ambient::U})
    if (s == lcmsemi::to_string(a)) return a;
  throw InputError("unknown ambient '" + s + "' (expected ZxH, NxH or U)");
}

// "m,h"
inline lcmsemi::SgElem parse_elem(const std::string& text, const PrimeFamily& fam,
                                  lcmsemi::Ambient ambient) {
  const auto comma = text.find(',');
  require(comma != std::string::npos && text.find(',', comma + 1) == std::string::npos,
          "semigroup element must be written m,h; got '" + text + "'");
  return lcmsemi::make_elem(fam, parse_integer(std::string_view(text).substr(0, comma)),
                            parse_integer(std::string_view(text).substr(comma + 1)), ambient);
}

inline Json compute(const PrimeFamily& fam) {
  return Json{{"input", report::input("compute", fam)},
              {"k_theory", report::k_theory(assemble_k_theory(fam))}};
}

inline Json e2(const PrimeFamily& fam, std::optional<std::size_t> subset) {
  const std::size_t k = subset.value_or(fam.size());
  Json in = report::input("e2-page", fam);
  in["subset"] = k;
  std::int64_t g_k = 0;
  for (std::size_t i = 0; i < k && i < fam.size(); ++i) g_k = std::gcd(g_k, fam.elements()[i] - 1);
  const SpectralPage pg = e2_page(fam, k);
  Json body = report::page(pg);
  body["g_k"] = g_k;
  body["g_k_prime"] = report::integer(n_quotient(g_k, fam.primes()));
  return Json{{"input", std::move(in)}, {"e2_page", std::move(body)}};
}

inline Json snf_report(const IntMatrix& a) {
  const SnfResult r = snf(a);
  return Json{{"input", Json{{"command", "snf"}, {"rows", a.rows()}, {"cols", a.cols()}}},
              {"snf", Json{{"rank", r.rank()},
                           {"divisors", report::integers(r.divisors)},
                           {"d", report::matrix(r.d)},
                           {"s", report::matrix(r.s)},
                           {"t", report::matrix(r.t)}}}};
}

inline constexpr std::int64_t kMaxTable = 10'000'000;

inline Json kgraph_verify(const PrimeFamily& fam, bool& ok) {
  const auto& s = fam.elements();
  Json bij = Json::array(), hex = Json::array();
  ok = true;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (i == j) continue;
      const bool b = kgraph::verify_bijection(s[i], s[j]);
      ok = ok && b;
      bij.push_back(Json{{"p", s[i]}, {"q", s[j]}, {"ok", b}});
    }
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      for (std::size_t l = j + 1; l < s.size(); ++l) {
        const Integer labels = Integer(s[i]) * s[j] * s[l];
        require(labels <= kMaxTable, "hexagon check for (" + std::to_string(s[i]) + "," +
                                         std::to_string(s[j]) + "," + std::to_string(s[l]) +
                                         ") needs too many label triples");
        checks::CheckResult r;
        checks::hexagons_for(r, s[i], s[j], s[l]);
        ok = ok && r.ok;
        hex.push_back(Json{{"p", s[i]}, {"q", s[j]}, {"r", s[l]}, {"labels_checked", r.cases}, {"ok", r.ok}});
      }
  return Json{{"input", report::input("kgraph verify", fam)},
              {"kgraph", Json{{"bijection", std::move(bij)}, {"hexagon", std::move(hex)}, {"ok", ok}}}};
}

inline Json kgraph_factorize(const PrimeFamily& fam) {
  const auto& s = fam.elements();
  Json tables = Json::array();
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      require(Integer(s[i]) * s[j] <= kMaxTable, "theta table too large");
      Json rows = Json::array();
      for (const auto& row : kgraph::theta_table(s[i], s[j]))
        rows.push_back(Json::array({row[0], row[1], row[2], row[3]}));
      tables.push_back(Json{{"p", s[i]}, {"q", s[j]}, {"columns", "m n n' m'"}, {"rows", std::move(rows)}});
    }
  return Json{{"input", report::input("kgraph factorize", fam)}, {"theta", std::move(tables)}};
}

inline Json semigroup_lcm(const PrimeFamily& fam, const std::string& ambient_name,
                          const std::vector<std::string>& elems) {
  require(elems.size() == 2, "semigroup lcm takes exactly two elements m,h");
  const auto ambient = parse_ambient(ambient_name);
  const auto x = parse_elem(elems[0], fam, ambient), y = parse_elem(elems[1], fam, ambient);
  const auto l = lcmsemi::right_lcm(x, y);
  Json in = report::input("semigroup lcm", fam);
  in["ambient"] = ambient_name;
  in["x"] = x.to_string();
  in["y"] = y.to_string();
  return Json{{"input", std::move(in)}, {"lcm", l ? l->to_string() : "empty"}};
}

inline Json relations(const PrimeFamily& fam, const std::vector<std::string>& ids, bool& ok) {
  Json rows = Json::array();
  ok = true;
  auto add = [&](const std::string& id, bool pass, std::size_t cases, const std::string& why) {
    ok = ok && pass;
    rows.push_back(Json{{"id", id},
                        {"result", pass ? "PASS" : "FAIL"},
                        {"checks", cases},
                        {"first_failure", why.empty() ? Json() : Json(why)}});
  };
  if (ids.empty()) {
    for (const auto& [rel, name] : monocalc::relation_names()) {
      const auto rep = monocalc::check_relation(rel, fam);
      add(name, rep.ok, rep.checks, rep.first_failure);
    }
  } else {
    for (const auto& id : ids) {
      if (id.rfind("cnp2(", 0) == 0) {
        add(id, monocalc::verify_relation(id, fam), 1, "");
      } else {
        const auto rep = monocalc::check_relation(monocalc::parse_relation(id), fam);
        add(id, rep.ok, rep.checks, rep.first_failure);
      }
    }
  }
  return Json{{"input", report::input("relations check", fam)},
              {"relations", std::move(rows)},
              {"ok", ok}};
}

inline Json kunneth(const PrimeFamily& fam, bool& ok) {
  require(fam.size() == 2, "oracle kunneth needs exactly two elements");
  const auto [t, tr] = kgraph::kunneth_oracle(fam.elements()[0], fam.elements()[1]);
  const auto res = assemble_k_theory(fam);
  ok = res.k0.torsion && *res.k0.torsion == t && res.k1.torsion && *res.k1.torsion == tr;
  return Json{{"input", report::input("oracle kunneth", fam)},
              {"kunneth", Json{{"tensor", report::integers(t.torsion())}, {"tor", report::integers(tr.torsion())}}},
              {"spectral", Json{{"k0_torsion", report::integers(res.k0.torsion->torsion())},
                                {"k1_torsion", report::integers(res.k1.torsion->torsion())}}},
              {"agree", ok}};
}

inline std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("QS_KTHEORY_SEED")) {
    const Integer v = parse_integer(env);
    require(v >= 0 && v <= std::numeric_limits<std::uint64_t>::max(), "QS_KTHEORY_SEED out of range");
    return static_cast<std::uint64_t>(v);
  }
  return 20260101;
}

inline Json selftest(std::uint64_t seed, bool timing, bool& ok) {
  Json rows = Json::array();
  ok = true;
  for (const auto& c : checks::run_selftest(seed)) {
    ok = ok && c.ok;
    Json row{{"name", c.name}, {"result", c.ok ? "PASS" : "FAIL"}, {"cases", c.cases}};
    row["first_failure"] = c.first_failure.empty() ? Json() : Json(c.first_failure);
    if (timing) row["seconds"] = c.seconds;
    rows.push_back(std::move(row));
  }
  return Json{{"input", Json{{"command", "selftest"}, {"seed", seed}}}, {"checks", std::move(rows)}, {"ok", ok}};
}

}  // namespace detail

// Runs one invocation; args excludes the program name. Exit codes: 0 success,
// 1 invalid input or usage, 2 internal check failure.
inline Outcome run(const std::vector<std::string>& args, std::istream& stdin_stream = std::cin) {
  CLI::App app{"K-theory and combinatorics of the ring C*-algebra of a family of coprime integers",
               "qsk"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "json";
  bool timing = false;
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--timing", timing, "add wall-clock timing to the report");

  std::string set_spec;
  auto add_set = [&](CLI::App* sub) { sub->add_option("--set", set_spec, "comma-separated family S")->required(); };

  auto* compute = app.add_subcommand("compute", "K-theory of the family");
  add_set(compute);

  std::optional<std::size_t> subset;
  auto* e2 = app.add_subcommand("e2-page", "E2 page for the action of the k smallest elements");
  add_set(e2);
  e2->add_option("--subset", subset, "use the k smallest elements");

  std::string matrix_file;
  auto* snf = app.add_subcommand("snf", "Smith normal form of a matrix (file or stdin)");
  snf->add_option("file", matrix_file, "matrix file; '-' or omitted reads stdin");

  auto* kg = app.add_subcommand("kgraph", "k-graph factorization rules");
  kg->require_subcommand(1);
  auto* kg_verify = kg->add_subcommand("verify", "bijection and hexagon checks");
  add_set(kg_verify);
  auto* kg_fact = kg->add_subcommand("factorize", "print theta tables");
  add_set(kg_fact);

  std::string ambient = "U";
  std::vector<std::string> elems;
  auto* sg = app.add_subcommand("semigroup", "right LCM semigroup arithmetic");
  sg->require_subcommand(1);
  auto* sg_lcm = sg->add_subcommand("lcm", "right lcm of two elements m,h");
  add_set(sg_lcm);
  sg_lcm->add_option("--ambient", ambient, "ZxH, NxH or U");
  sg_lcm->add_option("elements", elems, "two elements m,h")->expected(2);

  std::vector<std::string> rel_ids;
  auto* rel = app.add_subcommand("relations", "operator relations on l2(Z)");
  rel->require_subcommand(1);
  auto* rel_check = rel->add_subcommand("check", "check the defining and derived relations");
  add_set(rel_check);
  rel_check->add_option("--relation", rel_ids, "relation id (repeatable), e.g. ii or cnp2(3,5,7)");

  auto* oracle = app.add_subcommand("oracle", "independent cross-checks");
  oracle->require_subcommand(1);
  auto* kun = oracle->add_subcommand("kunneth", "Kunneth formula for |S| = 2");
  add_set(kun);

  std::optional<std::uint64_t> seed;
  auto* self = app.add_subcommand("selftest", "run the invariant suite");
  self->add_option("--seed", seed, "random seed (default: QS_KTHEORY_SEED or a fixed value)");

  Outcome o;
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    o.out = app.help();
    return o;
  } catch (const CLI::ParseError& e) {
    o.exit_code = 1;
    o.err = std::string("error: ") + e.what() + "\n\n" + app.help();
    return o;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    Json j;
    bool ok = true;
    if (compute->parsed()) {
      j = detail::compute(parse_family(set_spec));
    } else if (e2->parsed()) {
      j = detail::e2(parse_family(set_spec), subset);
    } else if (snf->parsed()) {
      IntMatrix a;
      if (matrix_file.empty() || matrix_file == "-") {
        a = parse_matrix(stdin_stream);
      } else {
        std::ifstream f(matrix_file);
        require(f.good(), "cannot open " + matrix_file);
        a = parse_matrix(f);
      }
      j = detail::snf_report(a);
    } else if (kg_verify->parsed()) {
      j = detail::kgraph_verify(parse_family(set_spec), ok);
    } else if (kg_fact->parsed()) {
      j = detail::kgraph_factorize(parse_family(set_spec));
    } else if (sg_lcm->parsed()) {
      j = detail::semigroup_lcm(parse_family(set_spec), ambient, elems);
    } else if (rel_check->parsed()) {
      j = detail::relations(parse_family(set_spec), rel_ids, ok);
    } else if (kun->parsed()) {
      j = detail::kunneth(parse_family(set_spec), ok);
    } else if (self->parsed()) {
      j = detail::selftest(detail::resolve_seed(seed), timing, ok);
    } else {
      throw InputError("no subcommand");
    }
    if (timing)
      j["timing"] = Json{{"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};
    o.out = format == "text" ? report::to_text(j) : report::to_json(j);
    if (!ok) {
      o.exit_code = 2;
      o.err = "error: verification failed\n";
    }
  } catch (const InputError& e) {
    o.exit_code = 1;
    o.err = std::string("error: ") + e.what() + "\n";
  } catch (const InternalError& e) {
    o.exit_code = 2;
    o.err = std::string("internal error: ") + e.what() + "\n";
  }
  return o;
}

}  // namespace qsk::cli

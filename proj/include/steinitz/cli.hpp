#pragma once

#include <chrono>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "steinitz/report.hpp"
#include "steinitz/steinitz.hpp"
#include "steinitz/verify.hpp"

namespace steinitz::cli {

using nlohmann::json;

enum ExitCode : int {
  ok = 0,
  check_failed = 1,
  bad_input = 2,
  forms_disagree = 3,
  declared_inconsistent = 4,
};

struct RunConfig {
  std::string group_path;
  std::string field_path;
  std::int64_t bound = kDefaultPrimeBound;
  std::string format = "json";
  std::string suite;
  std::uint64_t seed = 1;
  std::string scenario;
  std::string fixtures;
};

inline void emit(std::ostream& out, const RunConfig& cfg, const json& j) {
  if (cfg.format == "table")
    report::print_table(out, j);
  else
    out << j.dump(2) << "\n";
}

inline Fixtures fixtures_for(const RunConfig& cfg) {
  return load_fixtures(cfg.fixtures.empty() ? default_fixture_dir() : std::filesystem::path(cfg.fixtures));
}

inline json analyze_group(const FiniteGroup& g) {
  json j{{"name", g.name()},
         {"order", g.order()},
         {"exponent", g.exponent()},
         {"abelian", g.is_abelian()},
         {"center_order", center(g).size()}};
  const auto [ell, n] = nt::prime_power(g.order());
  json classes = json::array();
  for (auto& cls : conjugacy_classes(g)) {
    const auto t = cls.front();
    if (t == g.identity()) continue;
    auto [nz, cz] = normalizer_centralizer(g, t);
    json row{{"tau", g.label(t)},
             {"class_size", cls.size()},
             {"order", g.element_order(t)},
             {"nc_index", nz.size() / cz.size()},
             {"phi", phi_image(g, t).members()}};
    if (ell != 0) row["e_tau"] = e_tau_ell_group(g, t);
    classes.push_back(row);
  }
  j["conjugacy_classes"] = classes;
  const auto tree = is_aprime_group(g);
  j["aprime"] = tree ? report::aprime_json(*tree) : json(nullptr);
  if (ell > 2 && (n == 3 || n == 4)) {
    const auto cls = classify_ell4(g);
    j["classification"] = report::classification_json(g, cls);
    j["classification"]["e_tau"] = e_tau_ell_group(g, cls.tau);
  }
  return j;
}

inline json e_fields(const FieldSpec& k, const FiniteGroup& g) {
  json rows = json::array();
  for (auto [t, mult] : cyclic_subgroup_class_representatives(g)) {
    const auto e = e_field(k, g, t);
    rows.push_back({{"tau", g.label(t)},
                    {"tau_order", g.element_order(t)},
                    {"multiplicity", mult},
                    {"m", e.m},
                    {"s", e.s.members()},
                    {"t_m", k.gal_subgroup(e.m).members()},
                    {"phi", phi_image(g, t).members()}});
  }
  return {{"group", g.name()}, {"field", k.name()}, {"e_fields", rows}};
}

inline json calw(const FieldSpec& k, const FiniteGroup& g, std::int64_t bound, bool& forms_agree) {
  WCache cache(k, bound);
  auto r = cal_w(k, g, cache);
  forms_agree = r.forms_agree;
  json j{{"group", g.name()}, {"field", k.name()}, {"bound", bound}, {"calw", report::calw_json(g, r)}};
  if (g.order() % 2 == 1)
    j["certificate"] = report::certificate_json(very_good_certificate(k, g, cache));
  else
    j["certificate"] = nullptr;
  return j;
}

struct ScenarioCheck {
  std::string anchor;
  json expected;
  json actual;
};

inline json check_json(const std::vector<ScenarioCheck>& checks, bool& passed) {
  json arr = json::array();
  passed = !checks.empty();
  for (auto& c : checks) {
    const bool ok = c.expected == c.actual;
    passed = passed && ok;
    arr.push_back({{"anchor", c.anchor}, {"expected", c.expected}, {"actual", c.actual}, {"ok", ok}});
  }
  return arr;
}

/// Recomputes a bundled scenario and compares it with its expected values.
inline json reproduce(const Fixtures& fx, const std::string& name, std::int64_t bound, bool& passed) {
  auto it = fx.scenarios.find(name);
  if (it == fx.scenarios.end()) throw SpecError("no scenario named '" + name + "'");
  const auto& s = it->second;
  const auto& expect = s.at("expect");
  std::vector<ScenarioCheck> checks;

  std::vector<std::string> group_names, field_names;
  if (s.contains("group")) group_names.push_back(s.at("group").get<std::string>());
  if (s.contains("groups")) group_names = s.at("groups").get<std::vector<std::string>>();
  if (s.contains("field")) field_names.push_back(s.at("field").get<std::string>());
  if (s.contains("fields")) field_names = s.at("fields").get<std::vector<std::string>>();

  json cases = json::array();
  for (auto& fname : field_names) {
    const auto k = parse_field_spec(fx.field(fname).spec);
    WCache cache(k, bound);
    for (auto& gname : group_names) {
      const auto g = build_group(fx.group(gname).spec);
      const auto at = fname + "/" + gname;
      const auto w = cal_w(k, g, cache);
      json c{{"field", fname}, {"group", gname}, {"calw_order", w.subgroup.order()}, {"forms_agree", w.forms_agree}};
      checks.push_back({at + ": product_forms_agree", true, w.forms_agree});
      if (expect.contains("calw_order")) checks.push_back({at + ": calw_order", expect["calw_order"], w.subgroup.order()});
      if (expect.contains("cyclotomic_m")) {
        const auto m = expect["cyclotomic_m"].get<std::int64_t>();
        const auto wm = w_subgroup(k, cyclotomic_descriptor(m), bound);
        c["cyclotomic_w_order"] = wm.w.order();
        checks.push_back({at + ": cyclotomic_w_order", expect["cyclotomic_w_order"], wm.w.order()});
        checks.push_back({at + ": strict_inclusion_of_cyclotomic_w", true, w.subgroup.includes(wm.w) && !(w.subgroup == wm.w)});
      }
      if (expect.contains("route") || expect.contains("equal")) {
        const auto cert = very_good_certificate(k, g, cache);
        c["certificate"] = report::certificate_json(cert);
        if (expect.contains("route")) checks.push_back({at + ": certificate_route", expect["route"], cert.route});
        if (expect.contains("equal")) checks.push_back({at + ": certificate_bounds_equal", expect["equal"], cert.equal});
        if (expect.contains("closed_form_matches"))
          checks.push_back({at + ": closed_form", expect["closed_form_matches"],
                            cert.closed_form.has_value() && *cert.closed_form == w.subgroup});
      } else if (expect.contains("closed_form_matches")) {
        const auto cls = classify_ell4(g);
        const auto closed = exponent_l2_closed_form(k, g, cls, cache);
        c["closed_form_order"] = closed.order();
        checks.push_back({at + ": exponent_l2_closed_form", expect["closed_form_matches"], closed == w.subgroup});
      }
      cases.push_back(c);
    }
  }
  json j{{"scenario", name}, {"cases", cases}};
  j["checks"] = check_json(checks, passed);
  j["passed"] = passed;
  return j;
}

inline int run_verify(std::ostream& out, const RunConfig& cfg) {
  const auto fx = fixtures_for(cfg);
  const Corpus corpus(fx);
  std::vector<std::string> names;
  if (cfg.suite == "all")
    names = suite_names();
  else
    names.push_back(cfg.suite);
  json suites = json::array();
  bool all = true;
  for (auto& n : names) {
    auto r = run_suite(n, corpus, cfg.seed, cfg.bound);
    all = all && r.passed();
    suites.push_back(report::suite_json(r));
  }
  json j{{"seed", cfg.seed}, {"passed", all}, {"suites", suites}};
  if (cfg.format == "table") {
    report::Table t({"suite", "anchor", "checked", "failed"});
    for (auto& s : suites)
      for (auto& l : s["lemmas"])
        t.add({s["suite"].get<std::string>(), l["anchor"].get<std::string>(), l["checked"].dump(), l["failed"].dump()});
    out << "seed: " << cfg.seed << "\n";
    t.print(out);
    for (auto& s : suites)
      for (auto& l : s["lemmas"])
        for (auto& f : l["failures"]) out << "FAIL " << l["anchor"].get<std::string>() << ": " << f.get<std::string>() << "\n";
    out << (all ? "all suites passed" : "failures present") << "\n";
  } else {
    out << j.dump(2) << "\n";
  }
  return all ? ok : check_failed;
}

/// Parses argv and runs one command. Returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Steinitz class toolkit: W(k,G), E-field calculus, and small ell-group structure"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--fixtures", cfg.fixtures, "fixture directory (default: STEINITZ_FIXTURES or the bundled corpus)");
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "table"}));

  auto* analyze = app.add_subcommand("analyze-group", "group structure, conjugation characters, A' tree, classification");
  analyze->add_option("-g,--group", cfg.group_path, "group spec JSON")->required();
  auto* classify = app.add_subcommand("classify", "classification of a group of order ell^3 or ell^4");
  classify->add_option("-g,--group", cfg.group_path, "group spec JSON")->required();
  auto* efields = app.add_subcommand("e-fields", "E-field descriptors per conjugacy class of cyclic subgroups");
  efields->add_option("-g,--group", cfg.group_path, "group spec JSON")->required();
  efields->add_option("-k,--field", cfg.field_path, "field spec JSON")->required();
  auto* calw_cmd = app.add_subcommand("calw", "W(k,G) with both product forms and the certificate");
  calw_cmd->add_option("-g,--group", cfg.group_path, "group spec JSON")->required();
  calw_cmd->add_option("-k,--field", cfg.field_path, "field spec JSON")->required();
  calw_cmd->add_option("--bound", cfg.bound, "prime norm bound")->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 40));
  auto* verify = app.add_subcommand("verify", "property suites over the fixture corpus");
  std::vector<std::string> suite_choices = suite_names();
  suite_choices.push_back("all");
  verify->add_option("--suite", cfg.suite, "suite name")->required()->check(CLI::IsMember(suite_choices));
  verify->add_option("--seed", cfg.seed, "seed for randomized suites");
  verify->add_option("--bound", cfg.bound, "prime norm bound")->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 40));
  auto* repro = app.add_subcommand("reproduce", "recompute a bundled scenario");
  repro->add_option("name", cfg.scenario, "c8_example, gruppiacta, espl or qualiWkl")->required();
  repro->add_option("--bound", cfg.bound, "prime norm bound")->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 40));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return bad_input;
  }

  auto load_group = [&] { return build_group(read_json_file(cfg.group_path)); };
  auto load_field = [&] { return parse_field_spec(read_json_file(cfg.field_path)); };
  try {
    if (*analyze) {
      emit(out, cfg, analyze_group(load_group()));
    } else if (*classify) {
      const auto g = load_group();
      const auto cls = classify_ell4(g);
      emit(out, cfg, {{"group", g.name()}, {"classification", report::classification_json(g, cls)}});
    } else if (*efields) {
      emit(out, cfg, e_fields(load_field(), load_group()));
    } else if (*calw_cmd) {
      bool agree = false;
      emit(out, cfg, calw(load_field(), load_group(), cfg.bound, agree));
      if (!agree) {
        err << "error: the two product forms differ\n";
        return forms_disagree;
      }
    } else if (*verify) {
      return run_verify(out, cfg);
    } else if (*repro) {
      const auto fx = fixtures_for(cfg);
      bool passed = false;
      const auto t0 = std::chrono::steady_clock::now();
      auto j = reproduce(fx, cfg.scenario, cfg.bound, passed);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      emit(out, cfg, j);
      err << cfg.scenario << ": " << (passed ? "PASS" : "FAIL") << " in " << secs << " s\n";
      return passed ? ok : check_failed;
    }
  } catch (const DeclaredDataError& e) {
    err << "error: declared data: " << e.what() << "\n";
    return declared_inconsistent;
  } catch (const SpecError& e) {
    err << "error: " << e.what() << "\n";
    return bad_input;
  } catch (const UnsupportedBranch& e) {
    err << "error: unsupported: " << e.what() << "\n";
    return bad_input;
  } catch (const EngineAssertion& e) {
    err << "engine assertion: " << e.what() << "\n";
    return check_failed;
  }
  return ok;
}

} // namespace steinitz::cli

#pragma once

#include <algorithm>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "steinitz/certificate.hpp"
#include "steinitz/verify.hpp"

namespace steinitz::report {

using nlohmann::json;

inline json subgroup_json(const ClassSubgroup& s) {
  return {{"order", s.order()}, {"ambient", s.ambient().divisors()}, {"generators", s.generators()}};
}

inline std::vector<std::string> labels(const FiniteGroup& g, const std::vector<Element>& xs) {
  std::vector<std::string> out;
  for (auto x : xs) out.push_back(g.label(x));
  return out;
}

inline json group_subgroup_json(const FiniteGroup& g, const Subgroup& h) {
  return {{"order", h.size()}, {"generators", labels(g, generating_set(g, h))}};
}

inline json calw_json(const FiniteGroup& g, const CalWReport& r) {
  json per = json::array();
  for (auto& t : r.per_tau)
    per.push_back({{"tau", g.label(t.tau)},
                   {"tau_order", t.order},
                   {"multiplicity", t.multiplicity},
                   {"m", t.e.m},
                   {"s", t.e.s.members()},
                   {"w_order", t.w.order()},
                   {"exponent", t.exponent.to_string()},
                   {"w_heuristic", t.w_heuristic}});
  return {{"order", r.subgroup.order()},
          {"subgroup", subgroup_json(r.subgroup)},
          {"forms_agree", r.forms_agree},
          {"ell_part_order", r.ell_part_form.order()},
          {"heuristic", r.heuristic},
          {"per_tau", per}};
}

inline json certificate_json(const CertificateReport& c) {
  json j{{"route", c.route}, {"equal", c.equal}, {"upper_order", c.upper.subgroup.order()}, {"notes", c.notes}};
  j["lower_order"] = c.lower ? json(c.lower->order()) : json(nullptr);
  j["closed_form_order"] = c.closed_form ? json(c.closed_form->order()) : json(nullptr);
  return j;
}

inline json aprime_json(const AprimeTree& t) {
  json parts = json::array(), children = json::array();
  for (auto& p : t.parts) parts.push_back(p.size());
  for (auto& c : t.children) children.push_back(aprime_json(c));
  return {{"kind", to_string(t.kind)}, {"order", t.order}, {"part_orders", parts}, {"children", children}};
}

inline json classification_json(const FiniteGroup& g, const Ell4Classification& c) {
  json j{{"kind", c.kind},
         {"ell", c.ell},
         {"n", c.n},
         {"tau", g.label(c.tau)},
         {"tau_order", g.element_order(c.tau)},
         {"tau_nc_index", c.tau_nc_index},
         {"alternates", c.alternates}};
  j["h"] = c.h ? group_subgroup_json(g, *c.h) : json(nullptr);
  j["complement"] = c.complement ? group_subgroup_json(g, *c.complement) : json(nullptr);
  auto opt = [&](const std::optional<Element>& x) { return x ? json(g.label(*x)) : json(nullptr); };
  j["rho"] = opt(c.rho);
  j["sigma"] = opt(c.sigma);
  j["sigma1"] = opt(c.sigma1);
  if (c.kind == "type3") {
    j["a"] = c.a;
    j["b"] = c.b;
    j["c"] = c.c;
  }
  const auto bad = verify_ell4_witnesses(g, c);
  j["witnesses_verified"] = !bad;
  if (bad) j["witness_failure"] = *bad;
  return j;
}

inline json suite_json(const SuiteReport& r) {
  json lemmas = json::array();
  for (auto& [anchor, t] : r.lemmas)
    lemmas.push_back({{"anchor", anchor}, {"checked", t.checked}, {"failed", t.failed}, {"failures", t.failures}});
  return {{"suite", r.suite}, {"seed", r.seed}, {"passed", r.passed()}, {"lemmas", lemmas}, {"notes", r.notes}};
}

/// Left-aligned text table; numbers are right-aligned.
class Table {
public:
  explicit Table(std::vector<std::string> headers) : headers_(std::move(headers)) {}

  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void print(std::ostream& os) const {
    std::vector<std::size_t> w(headers_.size(), 0);
    auto widen = [&](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size() && i < w.size(); ++i) w[i] = std::max(w[i], r[i].size());
    };
    widen(headers_);
    for (auto& r : rows_) widen(r);
    auto line = [&](const std::vector<std::string>& r) {
      std::string s;
      for (std::size_t i = 0; i < w.size(); ++i) {
        const std::string cell = i < r.size() ? r[i] : "";
        const bool numeric = !cell.empty() && cell.find_first_not_of("0123456789/-") == std::string::npos;
        const std::string pad(w[i] - cell.size(), ' ');
        s += numeric ? pad + cell : cell + pad;
        if (i + 1 < w.size()) s += "  ";
      }
      while (!s.empty() && s.back() == ' ') s.pop_back();
      os << s << "\n";
    };
    line(headers_);
    std::vector<std::string> rule;
    for (auto x : w) rule.push_back(std::string(x, '-'));
    line(rule);
    for (auto& r : rows_) line(r);
  }

private:
  std::vector<std::string> headers_;
  std::vector<std::vector<std::string>> rows_;
};

inline std::string cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

/// Scalars of an object as "key: value" lines, then every array of objects as a table.
inline void print_table(std::ostream& os, const json& j, const std::string& title = "") {
  if (!title.empty()) os << "[" << title << "]\n";
  std::vector<std::pair<std::string, const json*>> nested, arrays;
  for (auto& [k, v] : j.items()) {
    if (v.is_object())
      nested.emplace_back(k, &v);
    else if (v.is_array() && !v.empty() && v.front().is_object())
      arrays.emplace_back(k, &v);
    else
      os << k << ": " << cell(v) << "\n";
  }
  for (auto& [k, v] : arrays) {
    std::vector<std::string> cols;
    for (auto& row : *v)
      for (auto& [c, _] : row.items())
        if (std::find(cols.begin(), cols.end(), c) == cols.end()) cols.push_back(c);
    os << "\n" << k << ":\n";
    Table t(cols);
    for (auto& row : *v) {
      std::vector<std::string> r;
      for (auto& c : cols) r.push_back(row.contains(c) ? cell(row[c]) : "");
      t.add(std::move(r));
    }
    t.print(os);
  }
  for (auto& [k, v] : nested) {
    os << "\n";
    print_table(os, *v, title.empty() ? k : title + "." + k);
  }
}

} // namespace steinitz::report

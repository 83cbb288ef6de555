// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fksm/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "fksm/error.hpp"

namespace fksm {
namespace {

Json solution_json(std::span<const int> ids) { return Json(std::vector<int>(ids.begin(), ids.end())); }

Json vector_json(const Vector& v) {
  return Json(std::vector<double>(v.data(), v.data() + v.size()));
}

Json estimate_json(const MeanEstimate& m) {
  return Json{{"mean", m.mean}, {"stderr", m.std_error}};
}

template <typename T>
T field(const Json& doc, const char* key, const std::string& where) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw InvalidInput(where + ": missing field '" + key + "'");
  }
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InvalidInput(where + ": field '" + key + "' has the wrong type");
  }
}

Objective objective_from_json(const Json& doc) {
  const auto type = field<std::string>(doc, "type", "objective");
  if (type == "coverage") {
    Coverage c;
    c.item_values = field<std::vector<double>>(doc, "items", "objective");
    c.covers = field<std::vector<std::vector<int>>>(doc, "covers", "objective");
    return Objective(std::move(c));
  }
  if (type == "modular") {
    return Objective(Modular{field<std::vector<double>>(doc, "values", "objective")});
  }
  if (type == "saturating") {
    return Objective(Saturating{field<std::vector<double>>(doc, "values", "objective"),
                                field<double>(doc, "cap", "objective")});
  }
  throw InvalidInput("unknown objective type '" + type + "'");
}

Json objective_json(const Objective& f) {
  return std::visit(
      [](const auto& p) -> Json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Coverage>) {
          return Json{{"type", "coverage"}, {"items", p.item_values}, {"covers", p.covers}};
        } else if constexpr (std::is_same_v<T, Modular>) {
          return Json{{"type", "modular"}, {"values", p.values}};
        } else {
          return Json{{"type", "saturating"}, {"values", p.values}, {"cap", p.cap}};
        }
      },
      f.payload());
}

std::string join(const std::vector<int>& values, char sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(values[i]);
  }
  return out;
}

}  // namespace

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

Json to_json(const Problem& problem) {
  const Instance& inst = problem.instance;
  Json elements = Json::array();
  for (const Element& e : inst.elements) {
    elements.push_back({{"id", e.id}, {"weight", e.weight}, {"color", e.group + 1}});
  }
  Json groups = Json::array();
  for (int g = 0; g < inst.num_groups(); ++g) {
    const GroupBound& b = inst.groups[g];
    groups.push_back({{"color", g + 1},
                      {"lower", b.lower ? Json(*b.lower) : Json(nullptr)},
                      {"upper", b.upper}});
  }
  return Json{{"elements", elements},
              {"groups", groups},
              {"budget", inst.budget},
              {"objective", objective_json(problem.objective)}};
}

Problem problem_from_json(const Json& doc) {
  if (!doc.is_object()) throw InvalidInput("instance document must be an object");
  Problem p;
  const auto elements = field<Json>(doc, "elements", "instance");
  const auto groups = field<Json>(doc, "groups", "instance");
  if (!elements.is_array() || !groups.is_array()) {
    throw InvalidInput("instance: 'elements' and 'groups' must be arrays");
  }
  for (const Json& e : elements) {
    p.instance.elements.push_back(Element{field<int>(e, "id", "element"),
                                          field<double>(e, "weight", "element"),
                                          field<int>(e, "color", "element") - 1});
  }
  p.instance.groups.resize(groups.size());
  std::vector<char> seen(groups.size(), 0);
  for (const Json& g : groups) {
    const int color = field<int>(g, "color", "group");
    if (color < 1 || color > static_cast<int>(groups.size()) || seen[color - 1]) {
      throw InvalidInput("group colors must be 1..k, each listed once");
    }
    seen[color - 1] = 1;
    GroupBound& b = p.instance.groups[color - 1];
    if (g.contains("lower") && !g.at("lower").is_null()) {
      b.lower = field<int>(g, "lower", "group");
    }
    b.upper = field<int>(g, "upper", "group");
  }
  p.instance.budget = field<double>(doc, "budget", "instance");
  p.objective = objective_from_json(field<Json>(doc, "objective", "instance"));
  if (p.objective.size() != p.instance.size()) {
    throw InvalidInput("objective covers " + std::to_string(p.objective.size()) +
                       " elements, instance has " +
                       std::to_string(p.instance.size()));
  }
  return p;
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(path + ": " + e.what());
  }
  return problem_from_json(doc);
}

void write_json(const Json& doc, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path);
  out << doc.dump(2) << '\n';
}

void save_problem(const Problem& problem, const std::string& path) {
  write_json(to_json(problem), path);
}

Vector load_vector(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  std::vector<double> values;
  try {
    Json doc = Json::parse(in);
    if (doc.is_object()) doc = doc.at("x");
    values = doc.get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(path + ": expected an array of numbers (" + e.what() + ")");
  }
  return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

Json to_json(const ValidationReport& report) {
  return Json{{"structurally_valid", report.structurally_valid},
              {"feasible", report.feasible},
              {"min_fill_weight",
               report.min_fill_weight ? Json(*report.min_fill_weight) : Json(nullptr)},
              {"errors", report.errors}};
}

Json to_json(const TruncationParams& params) {
  return Json{{"gamma", params.gamma}, {"beta", params.beta}};
}

Json to_json(const OracleResult& result) {
  return Json{{"best_set", solution_json(result.best_set)},
              {"best_value", result.best_value},
              {"params", to_json(result.params)},
              {"enumerated", result.enumerated}};
}

Json to_json(const SolveReport& report) {
  Json per_param = Json::array();
  for (const ParamDiagnostics& d : report.per_param) {
    per_param.push_back({{"params", to_json(d.params)},
                         {"reduced_budget", d.reduced_budget},
                         {"bfsm_value", d.bfsm_value},
                         {"bfsm_attempts", d.bfsm_attempts},
                         {"bfsm_fallback", d.bfsm_fallback},
                         {"extended", solution_json(d.extended)},
                         {"extended_value", d.extended_value}});
  }
  return Json{{"method", report.method},
              {"solution", solution_json(report.solution)},
              {"objective", report.objective},
              {"params", to_json(report.params)},
              {"seed", report.seed},
              {"epsilon", report.epsilon},
              {"weight", report.weight},
              {"group_counts", report.group_counts},
              {"feasible", report.feasible},
              {"wall_time_ms", report.wall_time_ms},
              {"per_param", per_param}};
}

Json to_json(const RelaxedReport& report) {
  const RelaxedDiagnostics& d = report.diagnostics;
  return Json{{"method", report.mode == ConstraintMode::kExpectedFairness
                             ? "relaxed-fairness"
                             : "relaxed-knapsack"},
              {"constraint_mode", to_string(report.mode)},
              {"solution", solution_json(report.solution)},
              {"objective", report.objective},
              {"seed", d.seed},
              {"wall_time_ms", report.wall_time_ms},
              {"diagnostics",
               {{"group_counts", d.group_counts},
                {"total_weight", d.total_weight},
                {"seed_set", solution_json(d.seed_set)},
                {"fractional_value", d.fractional_value},
                {"fractional_group_sums", vector_json(d.fractional_group_sums)},
                {"rounded_group_sums", vector_json(d.rounded_group_sums)},
                {"floor_dropped", d.floor_dropped},
                {"knapsack_ok", d.knapsack_ok},
                {"fairness_ok", d.fairness_ok}}},
              {"x", vector_json(report.x)}};
}

Json to_json(const RoundingTrace& trace) {
  Json steps = Json::array();
  for (const RoundingStep& s : trace.iterations) {
    const char* branch = s.branch == PipageBranch::kDecreaseP   ? "decrease_p"
                         : s.branch == PipageBranch::kIncreaseP ? "increase_p"
                                                                : "independent";
    steps.push_back({{"p", s.p},
                     {"q", s.q},
                     {"delta1", s.delta1},
                     {"delta2", s.delta2},
                     {"branch", branch},
                     {"before", {s.yp_before, s.yq_before}},
                     {"after", {s.yp_after, s.yq_after}}});
  }
  return Json{{"iterations", steps}, {"final", vector_json(trace.final)}};
}

Json to_json(const RoundingStats& stats) {
  Json marginals = Json::array();
  for (Eigen::Index e = 0; e < stats.x.size(); ++e) {
    marginals.push_back({{"element", e},
                         {"x", stats.x[e]},
                         {"mean", stats.marginal_mean[e]},
                         {"stderr", stats.marginal_std_error[e]}});
  }
  Json groups = Json::array();
  for (std::size_t g = 0; g < stats.group_sum.size(); ++g) {
    groups.push_back({{"color", g + 1},
                      {"sum", estimate_json(stats.group_sum[g])},
                      {"counts", stats.fairness_counts[g]},
                      {"violations", stats.fairness_violations[g]}});
  }
  return Json{{"trials", stats.trials},
              {"rounder", to_string(stats.rounder)},
              {"seed", stats.seed},
              {"objective", estimate_json(stats.objective)},
              {"extension", estimate_json(stats.extension)},
              {"weight", estimate_json(stats.weight)},
              {"rounded_weight", estimate_json(stats.rounded_weight)},
              {"knapsack_violations", stats.knapsack_violations},
              {"max_weight_drift", stats.max_weight_drift},
              {"max_iterations", stats.max_iterations},
              {"max_fractional", stats.max_fractional},
              {"marginals", marginals},
              {"groups", groups}};
}

void write_marginals_csv(std::ostream& out, const RoundingStats& stats) {
  out << "element,x_e,mean_y,stderr\n";
  for (Eigen::Index e = 0; e < stats.x.size(); ++e) {
    out << e << ',' << format_number(stats.x[e]) << ','
        << format_number(stats.marginal_mean[e]) << ','
        << format_number(stats.marginal_std_error[e]) << '\n';
  }
}

void write_pairs_csv(std::ostream& out, const RoundingStats& stats) {
  out << "pair,mean_product,product_of_means,stderr\n";
  const Eigen::Index n = stats.x.size();
  for (Eigen::Index p = 0; p < n; ++p) {
    for (Eigen::Index q = p + 1; q < n; ++q) {
      out << p << '-' << q << ',' << format_number(stats.pair_mean(p, q)) << ','
          << format_number(stats.marginal_mean[p] * stats.marginal_mean[q]) << ','
          << format_number(stats.pair_std_error(p, q)) << '\n';
    }
  }
}

void write_groups_csv(std::ostream& out, const RoundingStats& stats) {
  out << "group,mean_sum,stderr,fairness_violations\n";
  for (std::size_t g = 0; g < stats.group_sum.size(); ++g) {
    out << g + 1 << ',' << format_number(stats.group_sum[g].mean) << ','
        << format_number(stats.group_sum[g].std_error) << ','
        << stats.fairness_violations[g] << '\n';
  }
}

void write_params_csv(std::ostream& out, const SolveReport& report) {
  out << "gamma,beta,reduced_budget,bfsm_value,bfsm_attempts,bfsm_fallback,"
         "extended_value\n";
  for (const ParamDiagnostics& d : report.per_param) {
    out << join(d.params.gamma, ';') << ',' << join(d.params.beta, ';') << ','
        << format_number(d.reduced_budget) << ',' << format_number(d.bfsm_value)
        << ',' << d.bfsm_attempts << ',' << (d.bfsm_fallback ? 1 : 0) << ','
        << format_number(d.extended_value) << '\n';
  }
}

void write_runs_csv(std::ostream& out, const Instance& instance,
                    const std::vector<RelaxedReport>& runs) {
  out << "run,seed,objective,weight,knapsack_ok,fairness_ok,floor_dropped";
  for (int g = 1; g <= instance.num_groups(); ++g) out << ",count_" << g;
  for (int g = 1; g <= instance.num_groups(); ++g) out << ",fractional_sum_" << g;
  out << '\n';
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const RelaxedDiagnostics& d = runs[r].diagnostics;
    out << r << ',' << d.seed << ',' << format_number(runs[r].objective) << ','
        << format_number(d.total_weight) << ',' << (d.knapsack_ok ? 1 : 0) << ','
        << (d.fairness_ok ? 1 : 0) << ',' << d.floor_dropped;
    for (int c : d.group_counts) out << ',' << c;
    for (Eigen::Index g = 0; g < d.fractional_group_sums.size(); ++g) {
      out << ',' << format_number(d.fractional_group_sums[g]);
    }
    out << '\n';
  }
}

void write_bench_header(std::ostream& out) {
  out << "instance,method,objective,opt,ratio,weight,group_counts,wall_ms\n";
}

void write_bench_row(std::ostream& out, const BenchRow& row) {
  out << row.instance << ',' << row.method << ',' << format_number(row.objective)
      << ',';
  if (row.opt) {
    const double ratio = *row.opt > 0 ? row.objective / *row.opt : 1.0;
    out << format_number(*row.opt) << ',' << format_number(ratio);
  } else {
    out << ',';
  }
  out << ',' << format_number(row.weight) << ',' << join(row.group_counts, ';')
      << ',' << format_number(row.wall_ms) << '\n';
}

}  // namespace fksm

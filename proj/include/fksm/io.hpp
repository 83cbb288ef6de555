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

#ifndef FKSM_IO_HPP_
#define FKSM_IO_HPP_

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "fksm/model.hpp"
#include "fksm/oracle.hpp"
#include "fksm/problem.hpp"
#include "fksm/relaxed.hpp"
#include "fksm/rounding.hpp"
#include "fksm/truncation.hpp"

namespace fksm {

using Json = nlohmann::ordered_json;

// Instance files: {"elements": [{id, weight, color}], "groups": [{color,
// lower, upper}], "budget": B, "objective": {"type": ...}}. Colors are
// 1-based; a null lower bound means none. Throws InvalidInput on schema
// errors; semantic checks are left to validate().
Json to_json(const Problem& problem);
Problem problem_from_json(const Json& doc);
Problem load_problem(const std::string& path);
void save_problem(const Problem& problem, const std::string& path);

// A fractional point: a JSON array or an object with an "x" array.
Vector load_vector(const std::string& path);

Json to_json(const ValidationReport& report);
Json to_json(const TruncationParams& params);
Json to_json(const OracleResult& result);
Json to_json(const SolveReport& report);
Json to_json(const RelaxedReport& report);
Json to_json(const RoundingTrace& trace);
Json to_json(const RoundingStats& stats);

void write_json(const Json& doc, const std::string& path);
std::string format_number(double value);

// element,x_e,mean_y,stderr
void write_marginals_csv(std::ostream& out, const RoundingStats& stats);
// pair,mean_product,product_of_means,stderr
void write_pairs_csv(std::ostream& out, const RoundingStats& stats);
// group,mean_sum,stderr,fairness_violations
void write_groups_csv(std::ostream& out, const RoundingStats& stats);
// One row per (gamma, beta) pair of a truncating solve.
void write_params_csv(std::ostream& out, const SolveReport& report);
// One row per relaxed run.
void write_runs_csv(std::ostream& out, const Instance& instance,
                    const std::vector<RelaxedReport>& runs);

struct BenchRow {
  std::string instance;
  std::string method;
  double objective = 0;
  std::optional<double> opt;
  double weight = 0;
  std::vector<int> group_counts;
  double wall_ms = 0;
};

// instance,method,objective,opt,ratio,weight,group_counts,wall_ms
void write_bench_header(std::ostream& out);
void write_bench_row(std::ostream& out, const BenchRow& row);

}  // namespace fksm

#endif  // FKSM_IO_HPP_

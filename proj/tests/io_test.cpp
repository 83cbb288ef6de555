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

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>

#include "gtest/gtest.h"

#include "fixtures.hpp"
#include "fksm/error.hpp"
#include "fksm/random.hpp"

namespace fksm {
namespace {

using testing::t1;

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("fksm_io_" + name)).string();
}

void expect_same(const Problem& a, const Problem& b) {
  ASSERT_EQ(a.instance.size(), b.instance.size());
  for (int e = 0; e < a.instance.size(); ++e) {
    EXPECT_EQ(a.instance.elements[e].id, b.instance.elements[e].id);
    EXPECT_EQ(a.instance.elements[e].weight, b.instance.elements[e].weight);
    EXPECT_EQ(a.instance.elements[e].group, b.instance.elements[e].group);
  }
  ASSERT_EQ(a.instance.num_groups(), b.instance.num_groups());
  for (int g = 0; g < a.instance.num_groups(); ++g) {
    EXPECT_EQ(a.instance.groups[g].lower, b.instance.groups[g].lower);
    EXPECT_EQ(a.instance.groups[g].upper, b.instance.groups[g].upper);
  }
  EXPECT_EQ(a.instance.budget, b.instance.budget);
  EXPECT_EQ(to_json(a), to_json(b));
}

TEST(InstanceFileTest, RoundTripsExactly) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Problem p = testing::random_problem(9, 3, seed,
                                        static_cast<ObjectiveKind>(seed % 3));
    Rng rng(seed);
    for (Element& e : p.instance.elements) e.weight = rng.uniform(0, 1) / 3;
    p.instance.budget = rng.uniform(10, 20) / 7;
    const std::string path = temp_path("roundtrip.json");
    save_problem(p, path);
    expect_same(p, load_problem(path));
    std::remove(path.c_str());
  }
}

TEST(InstanceFileTest, NullLowerMeansNone) {
  const Json doc = Json::parse(R"({
    "elements": [{"id": 0, "weight": 1, "color": 1}],
    "groups": [{"color": 1, "lower": null, "upper": 1}],
    "budget": 2,
    "objective": {"type": "saturating", "values": [3], "cap": 2}})");
  const Problem p = problem_from_json(doc);
  EXPECT_FALSE(p.instance.groups[0].lower.has_value());
  EXPECT_EQ(p.objective.kind(), ObjectiveKind::kSaturating);
  EXPECT_TRUE(validate(p.instance).ok());
}

TEST(InstanceFileTest, SchemaErrors) {
  Json doc = to_json(t1());
  doc.erase("budget");
  EXPECT_THROW(problem_from_json(doc), InvalidInput);
  doc = to_json(t1());
  doc["objective"]["type"] = "quadratic";
  EXPECT_THROW(problem_from_json(doc), InvalidInput);
  doc = to_json(t1());
  doc["groups"][1]["color"] = 1;
  EXPECT_THROW(problem_from_json(doc), InvalidInput);
  doc = to_json(t1());
  doc["objective"]["covers"].erase(3);
  EXPECT_THROW(problem_from_json(doc), InvalidInput);
  EXPECT_THROW(load_problem(temp_path("does_not_exist.json")), InvalidInput);
}

TEST(InstanceFileTest, UnknownColorSurfacesInValidation) {
  Json doc = to_json(t1());
  doc["elements"][3]["color"] = 3;
  const Problem p = problem_from_json(doc);
  EXPECT_FALSE(validate(p.instance).structurally_valid);
}

TEST(ReportJsonTest, Validation) {
  Problem p = t1();
  p.instance.budget = 1;
  const Json doc = to_json(validate(p.instance));
  EXPECT_EQ(doc["feasible"], false);
  EXPECT_EQ(doc["min_fill_weight"], 2.0);
}

TEST(ReportJsonTest, Oracle) {
  const Json doc = to_json(brute_force_opt(t1().instance, t1().objective));
  EXPECT_EQ(doc["best_set"], Json::parse("[1, 3]"));
  EXPECT_EQ(doc["params"]["gamma"], Json::parse("[1, 1]"));
  EXPECT_EQ(doc["params"]["beta"], Json::parse("[0, 1]"));
}

TEST(CsvTest, Headers) {
  const Problem p = t1();
  const RoundingStats s = monte_carlo_stats(p.instance, p.objective,
                                            Vector{{0.5, 0.5, 0, 1}}, Rounder::kGroup,
                                            10, 1);
  std::ostringstream m, pairs, groups;
  write_marginals_csv(m, s);
  write_pairs_csv(pairs, s);
  write_groups_csv(groups, s);
  EXPECT_EQ(m.str().substr(0, m.str().find('\n')), "element,x_e,mean_y,stderr");
  EXPECT_EQ(pairs.str().substr(0, pairs.str().find('\n')),
            "pair,mean_product,product_of_means,stderr");
  EXPECT_EQ(groups.str(),
            "group,mean_sum,stderr,fairness_violations\n1,1,0,0\n2,1,0,0\n");
}

TEST(CsvTest, BenchRatio) {
  std::ostringstream out;
  write_bench_row(out, {"a.json", "bruteforce", 2.5, 2.5, 3, {1, 2}, 0.5});
  EXPECT_EQ(out.str(), "a.json,bruteforce,2.5,2.5,1,3,1;2,0.5\n");
}

TEST(FormatTest, ShortestRoundTrip) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(3), "3");
  EXPECT_EQ(std::stod(format_number(1.0 / 3)), 1.0 / 3);
}

}  // namespace
}  // namespace fksm

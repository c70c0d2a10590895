#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "corgi/bench/datasets.hpp"
#include "corgi/bench/model_fit.hpp"
#include "corgi/bench/trial.hpp"
#include "corgi/bench/valentine.hpp"
#include "corgi/oracle.hpp"

using namespace corgi;
using namespace corgi::bench;

namespace {

std::size_t unary_betas(const Conjunction& c) {
  std::size_t n = 0;
  for (const auto& b : c.beta_literals()) n += b.unary();
  return n;
}

}  // namespace

TEST(ValentinePattern, LiteralCounts) {
  WorkingMemory wm = valentine_memory();
  for (int v = 1; v <= 8; ++v) {
    for (bool link : {false, true}) {
      auto c = valentine_pattern(wm.registry(), v, link);
      EXPECT_EQ(c.vars().size(), 3u + v);
      EXPECT_EQ(c.alpha_literals().size(), 1u);
      std::size_t base = link ? 3 : 2;
      EXPECT_EQ(c.beta_literals().size(), base + 2u * v + v * (v - 1) / 2u) << v;
      EXPECT_EQ(unary_betas(c), 0u);
    }
  }
  // Three valentines with the department link: 3 base + 6 valentine + 3 uniqueness.
  auto three = valentine_pattern(wm.registry(), 3, true);
  EXPECT_EQ(three.beta_literals().size(), 12u);
  auto v1 = valentine_pattern(wm.registry(), 1);
  EXPECT_EQ(v1.beta_literals().size(), 4u);
}

TEST(ValentinePattern, RejectsOutOfRange) {
  WorkingMemory wm = valentine_memory();
  EXPECT_THROW(valentine_pattern(wm.registry(), 0), Error);
  EXPECT_THROW(valentine_pattern(wm.registry(), 9), Error);
}

TEST(Dataset, SingleCopyIsIdentity) {
  WorkingMemory base = valentine_memory();
  WorkingMemory one = duplicate_dataset(base, 1);
  ASSERT_EQ(one.size(), 50u);
  for (FactId id : base.live_ids()) EXPECT_EQ(one.get(id), base.get(id));
}

TEST(Dataset, CopiesAreUniqueAndStructured) {
  WorkingMemory wm = duplicate_dataset(valentine_memory(), 4);
  EXPECT_EQ(wm.size(), 200u);
  std::set<std::int64_t> emp, proj_pairs, dept;
  std::set<std::pair<std::int64_t, std::int64_t>> projects;
  for (FactId id : wm.facts_of("Employee")) emp.insert(std::get<std::int64_t>(wm.get(id).values[0]));
  for (FactId id : wm.facts_of("Department")) dept.insert(std::get<std::int64_t>(wm.get(id).values[1]));
  for (FactId id : wm.facts_of("Project")) {
    const auto& v = wm.get(id).values;
    projects.insert({std::get<std::int64_t>(v[0]), std::get<std::int64_t>(v[1])});
  }
  EXPECT_EQ(emp.size(), 104u);
  EXPECT_EQ(dept.size(), 48u);
  EXPECT_EQ(projects.size(), 48u);
  // Every project still points at an employee, and every employee at a department.
  for (const auto& [p, e] : projects) EXPECT_TRUE(emp.contains(e)) << p;
  for (FactId id : wm.facts_of("Employee"))
    EXPECT_TRUE(dept.contains(std::get<std::int64_t>(wm.get(id).values[2])));
}

TEST(Dataset, MatchCountsScaleConsistently) {
  WorkingMemory wm = duplicate_dataset(valentine_memory(), 2);
  auto conj = valentine_pattern(wm.registry(), 1);
  EXPECT_TRUE(equivalent(conj, wm));
}

TEST(ModelFit, RecoversQuadratic) {
  std::vector<std::pair<double, double>> pts;
  for (int n = 50; n <= 500; n += 50) pts.emplace_back(n, 1e-3 + 2e-6 * n + 3e-8 * n * n);
  auto r = fit_models(pts);
  EXPECT_EQ(r.selected, Model::Quadratic);
  const auto& q = r.fit(Model::Quadratic);
  EXPECT_NEAR(q.params[2], 3e-8, 1e-12);
  EXPECT_EQ(r.fits.size(), 4u);
}

TEST(ModelFit, RecoversExponential) {
  std::vector<std::pair<double, double>> pts;
  for (int n = 10; n <= 100; n += 10) pts.emplace_back(n, std::exp(0.05 * n));
  auto r = fit_models(pts);
  EXPECT_EQ(r.selected, Model::Exponential);
  EXPECT_NEAR(r.fit(Model::Exponential).params[1], 0.05, 1e-9);
}

TEST(ModelFit, RecoversLinear) {
  std::vector<std::pair<double, double>> pts;
  for (int n = 50; n <= 500; n += 50) pts.emplace_back(n, 0.5 + 0.01 * n);
  EXPECT_EQ(fit_models(pts).selected, Model::Linear);
}

TEST(ModelFit, AicFormula) {
  std::vector<std::pair<double, double>> pts{{1, 1.0}, {2, 2.5}, {3, 2.9}, {4, 4.4}, {5, 4.8}, {6, 6.3}};
  auto r = fit_models(pts);
  for (const auto& f : r.fits) {
    double n = static_cast<double>(pts.size());
    EXPECT_NEAR(f.aic, n * std::log(f.rss / n) + 2.0 * f.params.size(), 1e-9) << to_string(f.model);
    EXPECT_TRUE(std::isfinite(f.aic));
  }
}

TEST(ModelFit, Errors) {
  std::vector<std::pair<double, double>> few{{1, 1}, {2, 2}, {3, 3}, {4, 4}};
  EXPECT_THROW(fit_models(few), Error);
  std::vector<std::pair<double, double>> nonpositive{{1, 1}, {2, 2}, {3, 0}, {4, 4}, {5, 5}};
  EXPECT_THROW(fit_models(nonpositive), Error);
  std::vector<std::pair<double, double>> same_n{{5, 1}, {5, 2}, {5, 3}, {5, 4}, {5, 5}};
  try {
    fit_models(same_n);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DegenerateFit);
  }
}

TEST(Trial, EnginesAgreeOnCounts) {
  TrialConfig cfg;
  cfg.mode = Mode::All;
  cfg.repetitions = 1;
  for (int v = 1; v <= 2; ++v) {
    cfg.valentines = v;
    std::optional<std::uint64_t> counts[3];
    int i = 0;
    for (auto e : {Engine::Corgi, Engine::Baseline, Engine::Oracle}) {
      cfg.engine = e;
      auto rec = run_trial(cfg);
      ASSERT_EQ(rec.outcome, Outcome::Ok);
      EXPECT_EQ(rec.n, 50u);
      EXPECT_GE(rec.wall_time_s, 0.0);
      counts[i++] = rec.matches_found;
    }
    ASSERT_TRUE(counts[0]);
    EXPECT_EQ(counts[0], counts[1]);
    EXPECT_EQ(counts[0], counts[2]);
  }
}

TEST(Trial, FrozenMatchCounts) {
  // Established by brute-force enumeration on the 50-fact dataset.
  WorkingMemory wm = valentine_memory();
  EXPECT_EQ(enumerate_all(valentine_pattern(wm.registry(), 1), wm).size(), 597u);
}

TEST(Trial, FirstAndCountModes) {
  auto first = run_trial(Engine::Corgi, 5, 50, Mode::First, 60, baseline::kDefaultMemoryCap);
  EXPECT_EQ(first.outcome, Outcome::Ok);
  EXPECT_EQ(first.matches_found, 1u);
  auto count = run_trial(Engine::Corgi, 1, 100, Mode::Count, 60, baseline::kDefaultMemoryCap);
  EXPECT_EQ(count.n, 100u);
  EXPECT_FALSE(count.matches_found);  // at least one match, total unknown
  EXPECT_THROW(run_trial(Engine::Corgi, 1, 75, Mode::First, 60, 1), Error);
}

TEST(Trial, BaselineOverflowAndTimeout) {
  auto small = run_trial(Engine::Baseline, 2, 50, Mode::All, 60, 4096);
  EXPECT_EQ(small.outcome, Outcome::Overflow);
  EXPECT_FALSE(small.matches_found);
  TrialConfig cfg;
  cfg.engine = Engine::Oracle;
  cfg.valentines = 3;
  cfg.copies = 2;
  cfg.mode = Mode::All;
  cfg.timeout_s = 0.01;
  cfg.repetitions = 1;
  EXPECT_EQ(run_trial(cfg).outcome, Outcome::Timeout);
}

TEST(Trial, SeedShufflesInsertionOnly) {
  WorkingMemory a = trial_memory(2, 0), b = trial_memory(2, 17);
  EXPECT_EQ(a.size(), b.size());
  EXPECT_NE(a.get(1), b.get(1));
  auto count = [](const WorkingMemory& wm) {
    return enumerate_all(valentine_pattern(wm.registry(), 1), wm).size();
  };
  EXPECT_EQ(count(a), count(b));
}

TEST(Csv, RoundTrip) {
  TimingRecord r{Engine::Baseline, 4, 200, Mode::All, 0.125, Outcome::Overflow, std::nullopt};
  auto line = to_csv(r);
  EXPECT_EQ(line, "baseline,4,200,all,0.125,overflow,unknown");
  auto back = parse_csv_row(line);
  EXPECT_EQ(back.engine, r.engine);
  EXPECT_EQ(back.n, 200u);
  EXPECT_FALSE(back.matches_found);
  std::istringstream in(std::string(kCsvHeader) + "\ncorgi,1,50,first,0.001,ok,1\n");
  auto rows = read_csv(in);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].matches_found, 1u);
  EXPECT_THROW(parse_csv_row("corgi,1,50"), Error);
  EXPECT_THROW(parse_csv_row("robot,1,50,first,0.1,ok,1"), Error);
  EXPECT_THROW(parse_csv_row("corgi,x,50,first,0.1,ok,1"), Error);
}

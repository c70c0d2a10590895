// Acceptance suite: one PASS/FAIL line per criterion. Exit status is nonzero
// if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "corgi/bench/datasets.hpp"
#include "corgi/bench/model_fit.hpp"
#include "corgi/bench/trial.hpp"
#include "corgi/bench/valentine.hpp"
#include "corgi/corgi.hpp"
#include "support.hpp"

using namespace corgi;
using Clock = std::chrono::steady_clock;

namespace {

// Tolerances.
constexpr int kOracleInstances = 1000;
constexpr double kOracleBudgetS = 120.0;
constexpr std::size_t kMaxFacts = 30;
constexpr std::size_t kMaxVars = 4;
constexpr std::size_t kMaxLiterals = 6;
constexpr std::size_t kLazyMaterialized = 1;
constexpr std::size_t kLazyMemoryBytes = std::size_t{100} << 20;
constexpr double kLazyBudgetS = 1.0;
constexpr double kFirstMatchBudgetS = 0.020;
constexpr std::size_t kBaselineCap = std::size_t{1} << 30;
constexpr double kBaselineTimeoutS = 60.0;
constexpr int kSchedules = 200;

struct Result {
  bool pass;
  std::string detail;
};

int failures = 0;
std::size_t audit_checks = 0, audit_violations = 0;

void report(const char* id, const char* name, const Result& r) {
  std::printf("%s %s: %s (%s)\n", r.pass ? "PASS" : "FAIL", id, name, r.detail.c_str());
  std::fflush(stdout);
  if (!r.pass) ++failures;
}

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

void audit(const RelationGraph& g) {
  ++audit_checks;
  if (!g.audit().ok()) ++audit_violations;
}

Result oracle_equivalence() {
  auto start = Clock::now();
  std::size_t checks = 0, discrepancies = 0;
  for (int seed = 0; seed < kOracleInstances; ++seed) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
    WorkingMemory wm;
    gen::define_random_schemas(wm);
    std::size_t initial = rng() % (kMaxFacts / 2 + 1);
    gen::fill_random(wm, rng, initial);
    Conjunction c = gen::random_conjunction(rng, wm.registry(), kMaxVars, kMaxLiterals);
    auto g = RelationGraph::compile(c, wm);
    for (int round = 0; round < 5; ++round) {
      g.update();
      audit(g);
      ++checks;
      if (!equivalent(g)) ++discrepancies;
      // Interleave retractions and insertions, never exceeding the fact cap.
      int retracts = static_cast<int>(rng() % 3);
      for (int i = 0; i < retracts; ++i) gen::retract_random(wm, rng);
      std::size_t room = kMaxFacts - wm.size();
      gen::fill_random(wm, rng, std::min<std::size_t>(room, rng() % 4));
    }
  }
  double t = seconds_since(start);
  return {discrepancies == 0 && t < kOracleBudgetS,
          std::to_string(kOracleInstances) + " instances, " + std::to_string(checks) + " checks, " +
              std::to_string(discrepancies) + " discrepancies, " + std::to_string(t) + " s"};
}

Result bottom_truth_table() {
  WorkingMemory wm = bench::office_memory();
  auto conj = bench::valentine_pattern(wm.registry(), 1);
  auto g = RelationGraph::compile(conj, wm);
  g.update();
  std::size_t e = g.var_index("E"), v1 = g.var_index("V1");
  for (std::size_t i = 0; i < g.beta_nodes().size(); ++i) {
    const auto& n = g.beta_nodes()[i];
    if (n.earlier != e || n.later != v1 || n.cmp != Comparator::LT) continue;
    auto t = g.live_table(i);
    bool ok = t.cols == std::vector<FactId>{6, 7, 8} && t.rows == std::vector<FactId>{5, 7} &&
              t.bits == std::vector<std::vector<bool>>{{true, true, true}, {false, false, true}};
    std::string rows;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      rows += " E=" + std::to_string(t.rows[r]) + ":";
      for (bool b : t.bits[r]) rows += b ? '1' : '0';
    }
    return {ok, "V1 inputs " + std::to_string(t.cols.size()) + ", rows" + rows};
  }
  return {false, "no E.num < V1.num node"};
}

Result valentine_v1() {
  WorkingMemory wm = bench::office_memory();
  auto conj = bench::valentine_pattern(wm.registry(), 1);
  auto g = RelationGraph::compile(conj, wm);
  g.update();
  MatchIterator it(g);
  auto got = collect(it);
  std::vector<Match> want;
  for (FactId d : {15, 16}) {
    for (FactId v : {6, 7, 8}) want.push_back(Match{{d, 5, 11, v}});
    want.push_back(Match{{d, 7, 12, 8}});
  }
  bool ok = got == MatchSet::from(want) && got == enumerate_all(conj, wm);
  return {ok, std::to_string(got.size()) + " matches"};
}

Result laziness() {
  WorkingMemory wm;
  wm.define_schema("T", {{"n", Kind::Integer}});
  for (int i = 0; i < 100; ++i) wm.insert("T", {{"n", i}});
  Conjunction c;
  for (int v = 0; v < 5; ++v) c.make_var(wm.registry(), "T", "v" + std::to_string(v));
  auto start = Clock::now();
  auto g = RelationGraph::compile(c, wm);
  g.update();
  MatchIterator it(g);
  bool found = it.next().has_value();
  double t = seconds_since(start);
  std::size_t mem = g.memory_bytes() + it.memory_bytes();
  bool ok = found && it.materialized() <= kLazyMaterialized && mem < kLazyMemoryBytes && t < kLazyBudgetS;
  return {ok, "found=" + std::to_string(found) + " materialized=" + std::to_string(it.materialized()) +
                  " memory=" + std::to_string(mem) + " B time=" + std::to_string(t) + " s"};
}

Result first_match_latency() {
  std::string detail;
  bool ok = true;
  for (int v = 1; v <= 5; ++v) {
    auto r = bench::run_trial(bench::Engine::Corgi, v, 50, bench::Mode::First, kBaselineTimeoutS, kBaselineCap);
    bool pass = r.outcome == bench::Outcome::Ok && r.matches_found == 1u && r.wall_time_s <= kFirstMatchBudgetS;
    ok = ok && pass;
    char buf[64];
    std::snprintf(buf, sizeof buf, "V=%d %.2f ms; ", v, r.wall_time_s * 1e3);
    detail += buf;
  }
  return {ok, detail + "budget 20 ms"};
}

Result baseline_blowup() {
  std::string detail;
  bool ok = true;
  for (int v = 4; v <= 5; ++v) {
    bench::TrialConfig cfg;
    cfg.engine = bench::Engine::Baseline;
    cfg.valentines = v;
    cfg.mode = bench::Mode::All;
    cfg.timeout_s = kBaselineTimeoutS;
    cfg.memory_cap = kBaselineCap;
    cfg.repetitions = 1;
    auto r = bench::run_trial(cfg);
    bool pass = r.outcome != bench::Outcome::Ok;
    ok = ok && pass;
    WorkingMemory wm = bench::valentine_memory();
    auto out = baseline::build_and_match(bench::valentine_pattern(wm.registry(), v), wm, kBaselineCap);
    char buf[128];
    std::snprintf(buf, sizeof buf, "V=%d %s, %.1f MiB accounted; ", v,
                  std::string(bench::to_string(r.outcome)).c_str(),
                  static_cast<double>(out.bytes_accounted) / (1 << 20));
    detail += buf;
  }
  return {ok, detail + "cap 1 GiB"};
}

Result asymptotic_fit() {
  std::string detail;
  bool ok = true;
  std::vector<bench::Model> picks;
  for (int run = 0; run < 2; ++run) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t n = 50; n <= 500; n += 50) {
      auto r = bench::run_trial(bench::Engine::Corgi, 2, n, bench::Mode::First, kBaselineTimeoutS, kBaselineCap);
      pts.emplace_back(static_cast<double>(n), r.wall_time_s);
    }
    auto fit = bench::fit_models(pts);
    picks.push_back(fit.selected);
    ok = ok && (fit.selected == bench::Model::Linear || fit.selected == bench::Model::Quadratic);
    detail += "run " + std::to_string(run + 1) + ": " + std::string(bench::to_string(fit.selected)) + "; ";
  }
  ok = ok && picks[0] == picks[1];
  return {ok, detail + (picks[0] == picks[1] ? "runs agree" : "runs disagree")};
}

Result incremental_equals_batch() {
  std::size_t diffs = 0, comparisons = 0;
  for (int seed = 0; seed < kSchedules; ++seed) {
    std::mt19937_64 rng(1'000'000 + static_cast<std::uint64_t>(seed));
    WorkingMemory wm;
    gen::define_random_schemas(wm);
    Conjunction c = gen::random_conjunction(rng, wm.registry(), kMaxVars, kMaxLiterals);
    CompileOptions opts{rng() % 2 ? OrderStrategy::Declaration : OrderStrategy::DegreeDescending, rng() % 2 == 0};
    auto g = RelationGraph::compile(c, wm, opts);
    int steps = 20 + static_cast<int>(rng() % 40);
    for (int s = 0; s < steps; ++s) {
      if (rng() % 3 == 0)
        gen::retract_random(wm, rng);
      else
        gen::fill_random(wm, rng, 1 + rng() % 3);
      if (rng() % 4 == 0) {
        g.update();
        audit(g);
      }
    }
    g.update();
    audit(g);
    // The fresh graph sees only the surviving facts: inserts of retracted
    // facts are skipped when it drains the log.
    auto fresh = RelationGraph::compile(c, wm, opts);
    fresh.update();
    audit(fresh);
    ++comparisons;
    if (fresh.dump() != g.dump()) ++diffs;
  }
  return {diffs == 0, std::to_string(comparisons) + " schedules, " + std::to_string(diffs) + " diffs"};
}

}  // namespace

int main() {
  report("C1", "oracle equivalence", oracle_equivalence());
  report("C2", "E.num < V1.num truth table", bottom_truth_table());
  report("C3", "Valentine V=1 golden", valentine_v1());
  report("C4", "laziness", laziness());
  report("C5a", "first-match latency V=1..5, N=50", first_match_latency());
  report("C5b", "baseline overflow or timeout at V>=4", baseline_blowup());
  report("C6", "asymptotic model selection", asymptotic_fit());
  report("C7", "incremental equals batch", incremental_equals_batch());
  report("C8", "quadratic-space audit",
         {audit_violations == 0 && audit_checks > 0,
          std::to_string(audit_checks) + " audits, " + std::to_string(audit_violations) + " violations"});
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}

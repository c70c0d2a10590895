#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "corgi/baseline.hpp"
#include "corgi/bench/datasets.hpp"
#include "corgi/bench/valentine.hpp"
#include "corgi/deadline.hpp"
#include "corgi/error.hpp"
#include "corgi/matchiter.hpp"
#include "corgi/oracle.hpp"
#include "corgi/relgraph.hpp"

namespace corgi::bench {

enum class Engine { Corgi, Baseline, Oracle };
enum class Mode { First, All, Count };
enum class Outcome { Ok, Overflow, Timeout };

inline constexpr std::string_view to_string(Engine e) {
  switch (e) {
    case Engine::Corgi: return "corgi";
    case Engine::Baseline: return "baseline";
    case Engine::Oracle: return "oracle";
  }
  return "?";
}
inline constexpr std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::First: return "first";
    case Mode::All: return "all";
    case Mode::Count: return "count";
  }
  return "?";
}
inline constexpr std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Ok: return "ok";
    case Outcome::Overflow: return "overflow";
    case Outcome::Timeout: return "timeout";
  }
  return "?";
}

template <typename E>
E parse_enum(std::string_view text, std::initializer_list<E> values) {
  for (E v : values)
    if (to_string(v) == text) return v;
  throw Error(Errc::InvalidArgument, "unrecognized value '" + std::string(text) + "'");
}
inline Engine parse_engine(std::string_view s) {
  return parse_enum(s, {Engine::Corgi, Engine::Baseline, Engine::Oracle});
}
inline Mode parse_mode(std::string_view s) { return parse_enum(s, {Mode::First, Mode::All, Mode::Count}); }
inline Outcome parse_outcome(std::string_view s) {
  return parse_enum(s, {Outcome::Ok, Outcome::Overflow, Outcome::Timeout});
}

inline constexpr std::size_t kFactsPerCopy = 50;

struct TimingRecord {
  Engine engine;
  int valentines;
  std::size_t n;
  Mode mode;
  double wall_time_s;
  Outcome outcome;
  std::optional<std::uint64_t> matches_found;  // nullopt: unknown
};

struct TrialConfig {
  Engine engine = Engine::Corgi;
  int valentines = 1;
  std::size_t copies = 1;
  Mode mode = Mode::First;
  bool link_dept = false;
  double timeout_s = 60;
  std::size_t memory_cap = baseline::kDefaultMemoryCap;
  std::uint64_t seed = 0;  // 0 keeps file order; otherwise facts are inserted shuffled
  int repetitions = 5;
};

/// Benchmark working memory: the 50-fact dataset duplicated `copies` times.
inline WorkingMemory trial_memory(std::size_t copies, std::uint64_t seed) {
  WorkingMemory scaled = duplicate_dataset(valentine_memory(), copies);
  if (seed == 0) return scaled;
  std::vector<FactId> ids = scaled.live_ids();
  std::mt19937_64 rng(seed);
  std::shuffle(ids.begin(), ids.end(), rng);
  WorkingMemory out;
  define_valentine_schemas(out);
  for (FactId id : ids) out.insert(scaled.get(id));
  return out;
}

namespace detail {

struct Rep {
  double seconds;
  Outcome outcome;
  std::optional<std::uint64_t> found;
};

inline Rep run_once(const TrialConfig& cfg, const Conjunction& conj, const WorkingMemory& wm) {
  using Clock = std::chrono::steady_clock;
  Deadline deadline = Deadline::after(std::chrono::duration<double>(cfg.timeout_s));
  auto start = Clock::now();
  Rep rep{0, Outcome::Ok, std::nullopt};
  switch (cfg.engine) {
    case Engine::Corgi: {
      auto graph = RelationGraph::compile(conj, wm);
      graph.update();
      if (cfg.mode == Mode::First) {
        MatchIterator it(graph);
        rep.found = it.next() ? 1 : 0;
      } else if (cfg.mode == Mode::Count) {
        if (!has_match(graph)) rep.found = 0;
      } else {
        MatchIterator it(graph);
        std::uint64_t n = 0;
        while (it.next()) {
          ++n;
          if (deadline.poll()) {
            rep.outcome = Outcome::Timeout;
            break;
          }
        }
        if (rep.outcome == Outcome::Ok) rep.found = n;
      }
      break;
    }
    case Engine::Baseline: {
      auto out = baseline::build_and_match(conj, wm, cfg.memory_cap, deadline);
      if (out.overflowed())
        rep.outcome = Outcome::Overflow;
      else if (out.timed_out())
        rep.outcome = Outcome::Timeout;
      else
        rep.found = out.matches().size();
      break;
    }
    case Engine::Oracle: {
      try {
        rep.found = enumerate_all(conj, wm, UINT64_MAX, deadline).size();
      } catch (const Error& e) {
        if (e.code() != Errc::Timeout) throw;
        rep.outcome = Outcome::Timeout;
      }
      break;
    }
  }
  rep.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return rep;
}

}  // namespace detail

/// Time one (engine, V, N, mode) configuration: median of `repetitions` cold
/// runs (fresh graph each time; working-memory construction is untimed). A
/// run that overflows or times out ends the trial with that outcome.
inline TimingRecord run_trial(const TrialConfig& cfg) {
  if (cfg.repetitions < 1) throw Error(Errc::InvalidArgument, "repetitions must be positive");
  WorkingMemory wm = trial_memory(cfg.copies, cfg.seed);
  Conjunction conj = valentine_pattern(wm.registry(), cfg.valentines, cfg.link_dept);
  TimingRecord rec{cfg.engine, cfg.valentines, wm.size(), cfg.mode, 0, Outcome::Ok, std::nullopt};
  std::vector<double> times;
  for (int r = 0; r < cfg.repetitions; ++r) {
    auto rep = detail::run_once(cfg, conj, wm);
    if (rep.outcome != Outcome::Ok) {
      rec.outcome = rep.outcome;
      rec.wall_time_s = rep.seconds;
      rec.matches_found = std::nullopt;
      return rec;
    }
    times.push_back(rep.seconds);
    rec.matches_found = rep.found;
  }
  std::sort(times.begin(), times.end());
  rec.wall_time_s = times[times.size() / 2];
  return rec;
}

inline TimingRecord run_trial(Engine engine, int valentines, std::size_t n, Mode mode,
                              double timeout_s, std::size_t memory_cap) {
  if (n == 0 || n % kFactsPerCopy != 0)
    throw Error(Errc::InvalidArgument, "N must be a positive multiple of 50");
  TrialConfig cfg;
  cfg.engine = engine;
  cfg.valentines = valentines;
  cfg.copies = n / kFactsPerCopy;
  cfg.mode = mode;
  cfg.timeout_s = timeout_s;
  cfg.memory_cap = memory_cap;
  return run_trial(cfg);
}

inline constexpr std::string_view kCsvHeader = "engine,V,N,mode,wall_time_s,outcome,matches_found";

inline std::string to_csv(const TimingRecord& r) {
  char time[32];
  std::snprintf(time, sizeof time, "%.9g", r.wall_time_s);
  std::string out;
  out += to_string(r.engine);
  out += "," + std::to_string(r.valentines) + "," + std::to_string(r.n) + ",";
  out += to_string(r.mode);
  out += ",";
  out += time;
  out += ",";
  out += to_string(r.outcome);
  out += "," + (r.matches_found ? std::to_string(*r.matches_found) : std::string("unknown"));
  return out;
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto end = s.find(sep, start);
    out.emplace_back(s.substr(start, end - start));
    if (end == std::string_view::npos) return out;
    start = end + 1;
  }
}

inline TimingRecord parse_csv_row(std::string_view line) {
  auto f = split(line, ',');
  if (f.size() != 7) throw Error(Errc::ParseError, "expected 7 CSV fields: " + std::string(line));
  try {
    TimingRecord r{parse_engine(f[0]),
                   std::stoi(f[1]),
                   static_cast<std::size_t>(std::stoull(f[2])),
                   parse_mode(f[3]),
                   std::stod(f[4]),
                   parse_outcome(f[5]),
                   std::nullopt};
    if (f[6] != "unknown") r.matches_found = std::stoull(f[6]);
    return r;
  } catch (const std::logic_error&) {
    throw Error(Errc::ParseError, "malformed CSV row: " + std::string(line));
  }
}

inline std::vector<TimingRecord> read_csv(std::istream& in) {
  std::vector<TimingRecord> out;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      header = false;
      if (line == kCsvHeader) continue;
    }
    out.push_back(parse_csv_row(line));
  }
  return out;
}

}  // namespace corgi::bench

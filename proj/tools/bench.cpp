// bench: timing harness for the Valentine workload.
//
//   bench run --engine corgi --valentines 1,2,3 --copies 1-10 --mode first --out results.csv
//   bench fit --in results.csv --filter engine=corgi,V=2 --out fits.csv
//   bench dataset --copies 4 --out facts.txt

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "corgi/bench/datasets.hpp"
#include "corgi/bench/model_fit.hpp"
#include "corgi/bench/trial.hpp"
#include "corgi/bench/valentine.hpp"

using namespace corgi;
using namespace corgi::bench;

namespace {

// "1,2,5-8" -> {1,2,5,6,7,8}
std::vector<long> parse_ranges(const std::string& text) {
  std::vector<long> out;
  for (const auto& part : split(text, ',')) {
    auto dash = part.find('-');
    if (dash == std::string::npos) {
      out.push_back(std::stol(part));
      continue;
    }
    long lo = std::stol(part.substr(0, dash)), hi = std::stol(part.substr(dash + 1));
    for (long v = lo; v <= hi; ++v) out.push_back(v);
  }
  return out;
}

std::string run_to_row(const TrialConfig& cfg) {
  return to_csv(run_trial(cfg));
}

// Runs each trial in its own child process, at most `jobs` at a time. Rows
// come back over a pipe and are emitted in submission order.
std::vector<std::string> run_parallel(const std::vector<TrialConfig>& trials, int jobs) {
  std::vector<std::string> rows(trials.size());
  struct Child {
    pid_t pid;
    int fd;
    std::size_t index;
  };
  std::vector<Child> running;
  std::size_t next = 0;
  auto reap = [&](Child c) {
    std::string data;
    char buf[512];
    ssize_t n;
    while ((n = read(c.fd, buf, sizeof buf)) > 0) data.append(buf, static_cast<std::size_t>(n));
    close(c.fd);
    int status = 0;
    waitpid(c.pid, &status, 0);
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0 || data.empty())
      throw std::runtime_error("worker for trial " + std::to_string(c.index) + " failed");
    rows[c.index] = data;
  };
  while (next < trials.size() || !running.empty()) {
    while (next < trials.size() && static_cast<int>(running.size()) < jobs) {
      int fds[2];
      if (pipe(fds) != 0) throw std::runtime_error("pipe failed");
      pid_t pid = fork();
      if (pid < 0) throw std::runtime_error("fork failed");
      if (pid == 0) {
        close(fds[0]);
        int code = 0;
        try {
          std::string row = run_to_row(trials[next]);
          if (write(fds[1], row.data(), row.size()) != static_cast<ssize_t>(row.size())) code = 1;
        } catch (const std::exception& e) {
          std::fprintf(stderr, "bench: %s\n", e.what());
          code = 1;
        }
        close(fds[1]);
        _exit(code);
      }
      close(fds[1]);
      running.push_back({pid, fds[0], next++});
    }
    // Children finish in any order but pipes are small; draining the oldest
    // first is enough since each worker writes a single short row at the end.
    reap(running.front());
    running.erase(running.begin());
  }
  return rows;
}

std::map<std::string, std::string> parse_filter(const std::string& text) {
  std::map<std::string, std::string> out;
  if (text.empty()) return out;
  for (const auto& kv : split(text, ',')) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw Error(Errc::InvalidArgument, "bad filter term '" + kv + "'");
    out[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  return out;
}

bool matches_filter(const TimingRecord& r, const std::map<std::string, std::string>& f) {
  for (const auto& [key, value] : f) {
    if (key == "engine" && to_string(r.engine) != value) return false;
    if (key == "V" && std::to_string(r.valentines) != value) return false;
    if (key == "mode" && to_string(r.mode) != value) return false;
    if (key == "outcome" && to_string(r.outcome) != value) return false;
    if (key != "engine" && key != "V" && key != "mode" && key != "outcome")
      throw Error(Errc::InvalidArgument, "unknown filter key '" + key + "'");
  }
  return true;
}

// "-" means stdout; anything else is truncated and opened for writing.
std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path == "-") return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot open " + path);
  return file;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Valentine benchmark harness"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "time trials and write CSV rows");
  std::string engine = "corgi", mode = "first", valentines = "1", copies = "1", out_path;
  TrialConfig base;
  int jobs = 1;
  run->add_option("--engine", engine, "corgi | baseline | oracle")
      ->check(CLI::IsMember({"corgi", "baseline", "oracle"}));
  run->add_option("--valentines", valentines, "valentine counts, e.g. 1-5 or 1,3");
  run->add_option("--copies", copies, "dataset copies (N = 50 * copies), e.g. 1-10");
  run->add_option("--mode", mode, "first | all | count")
      ->check(CLI::IsMember({"first", "all", "count"}));
  run->add_flag("--link-dept", base.link_dept, "also require E.dept_num == D.num");
  run->add_option("--timeout", base.timeout_s, "per-run timeout in seconds")->capture_default_str();
  run->add_option("--memory-cap", base.memory_cap, "baseline memory cap in bytes")
      ->capture_default_str();
  run->add_option("--seed", base.seed, "shuffle fact insertion order (0 keeps file order)");
  run->add_option("--reps", base.repetitions, "repetitions per trial (median reported)")
      ->capture_default_str();
  run->add_option("--jobs", jobs, "run trials in this many worker processes")
      ->check(CLI::PositiveNumber);
  run->add_option("--out", out_path, "output CSV (appended rows; '-' for stdout)")->required();

  auto* fit = app.add_subcommand("fit", "fit growth models to timing rows");
  std::string in_path, filter, fit_out;
  fit->add_option("--in", in_path, "input CSV")->required()->check(CLI::ExistingFile);
  fit->add_option("--filter", filter, "key=value terms over engine, V, mode, outcome");
  fit->add_option("--out", fit_out, "output CSV")->required();

  auto* dataset = app.add_subcommand("dataset", "write the scaled fact file");
  std::size_t ds_copies = 1;
  std::string ds_out;
  dataset->add_option("--copies", ds_copies, "dataset copies")->check(CLI::PositiveNumber);
  dataset->add_option("--out", ds_out, "output fact file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      std::vector<TrialConfig> trials;
      for (long v : parse_ranges(valentines))
        for (long c : parse_ranges(copies)) {
          if (c < 1) throw Error(Errc::InvalidArgument, "copies must be at least 1");
          TrialConfig cfg = base;
          cfg.engine = parse_engine(engine);
          cfg.mode = parse_mode(mode);
          cfg.valentines = static_cast<int>(v);
          cfg.copies = static_cast<std::size_t>(c);
          valentine_pattern(valentine_memory().registry(), cfg.valentines);  // validate V early
          trials.push_back(cfg);
        }

      std::ofstream file;
      std::ostream* out = &std::cout;
      if (out_path != "-") {
        bool fresh = !std::ifstream(out_path).good() || std::ifstream(out_path).peek() == EOF;
        file.open(out_path, std::ios::app);
        if (!file) throw std::runtime_error("cannot open " + out_path);
        out = &file;
        if (fresh) *out << kCsvHeader << '\n';
      } else {
        *out << kCsvHeader << '\n';
      }
      if (jobs > 1) {
        for (const auto& row : run_parallel(trials, jobs)) *out << row << '\n';
      } else {
        for (const auto& t : trials) {
          *out << run_to_row(t) << '\n';
          out->flush();
        }
      }
    } else if (*fit) {
      std::ifstream in(in_path);
      auto rows = read_csv(in);
      auto terms = parse_filter(filter);
      std::vector<std::pair<double, double>> points;
      for (const auto& r : rows)
        if (r.outcome == Outcome::Ok && matches_filter(r, terms))
          points.emplace_back(static_cast<double>(r.n), r.wall_time_s);
      auto report = fit_models(points);
      std::ofstream file;
      std::ostream& out = open_output(fit_out, file);
      out << "model,params,rss,aic,selected\n";
      for (const auto& f : report.fits) {
        out << to_string(f.model) << ',';
        for (std::size_t i = 0; i < f.params.size(); ++i) {
          char buf[32];
          std::snprintf(buf, sizeof buf, "%.9g", f.params[i]);
          out << (i ? ";" : "") << buf;
        }
        char num[64];
        std::snprintf(num, sizeof num, ",%.9g,%.9g,", f.rss, f.aic);
        out << num << (f.model == report.selected ? "true" : "false") << '\n';
      }
      std::cerr << "selected " << to_string(report.selected) << " over " << points.size()
                << " points\n";
    } else if (*dataset) {
      auto wm = duplicate_dataset(valentine_memory(), ds_copies);
      std::ofstream file;
      std::ostream& out = open_output(ds_out, file);
      for (FactId id : wm.live_ids()) {
        const Fact& f = wm.get(id);
        out << format_fact(wm.registry().at(f.type_name), f) << '\n';
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "bench: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

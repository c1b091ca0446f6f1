#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <climits>
#include <cstdio>
#include <optional>
#include <ostream>
#include <random>
#include <stdexcept>
#include <system_error>

#include "cotrack/csv.hpp"
#include "cotrack/errors.hpp"
#include "cotrack/scenario_io.hpp"

namespace cotrack::cli {

namespace fs = std::filesystem;

namespace {

struct Overrides {
  std::optional<std::int32_t> lower;
  std::optional<std::int32_t> upper;
  std::optional<double> cutoff;
  std::optional<std::uint64_t> seed;

  void apply(Scenario& sc) const {
    if (lower) sc.collab.lower = *lower;
    if (upper) sc.collab.upper = *upper;
    if (cutoff) sc.proximity_cutoff = *cutoff;
    if (seed) sc.seed = *seed;
  }
};

void add_overrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--lower", o.lower, "Lower error threshold (collaboration starts above it)");
  cmd->add_option("--upper", o.upper, "Upper error threshold (peers at or above it are ignored)");
  cmd->add_option("--cutoff", o.cutoff, "Proximity cutoff in meters");
  cmd->add_option("--seed", o.seed, "Seed for the radio channel noise");
}

std::string percent(double ratio) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f%%", ratio * 100.0);
  return buf;
}

std::string id_from_track_file(const std::string& name) {
  constexpr std::string_view prefix = "track_";
  constexpr std::string_view suffix = ".csv";
  if (name.size() <= prefix.size() + suffix.size() || !name.starts_with(prefix) || !name.ends_with(suffix)) return {};
  return name.substr(prefix.size(), name.size() - prefix.size() - suffix.size());
}

RunRecord load_run(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw std::runtime_error(dir.string() + ": not a directory");
  std::vector<std::pair<std::string, fs::path>> tracks;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string id = id_from_track_file(entry.path().filename().string());
    if (!id.empty()) tracks.emplace_back(id, entry.path());
  }
  if (tracks.empty()) throw std::runtime_error(dir.string() + ": no track_<id>.csv files");
  std::sort(tracks.begin(), tracks.end());

  RunRecord run;
  for (const auto& [id, path] : tracks) {
    run.devices.push_back(parse_track_csv(csv::read_file(path), id, path.string()));
  }
  const fs::path events = dir / "collaborations.csv";
  if (fs::exists(events)) {
    run.events = parse_events_csv(csv::read_file(events), events.string());
    for (auto& d : run.devices) {
      for (const auto& e : run.events) {
        if (e.id_a != d.id) continue;
        ++d.collaborations;
        if (e.updated_a) ++d.location_updates;
      }
    }
  }
  for (auto& d : run.devices) {
    if (!d.track.empty()) d.final_errors = d.track.back().errors;
  }
  return run;
}

int simulate_cmd(const fs::path& scenario_path, const fs::path& out_dir, const Overrides& o, std::ostream& out) {
  Scenario sc = load_scenario(scenario_path);
  o.apply(sc);
  sc.validate();
  const RunRecord record = run(sc);
  const MetricsReport report = improvement_summary(record);
  publish(out_dir, simulate_outputs(record, report));
  out << summary_line(report) << '\n';
  return 0;
}

int sweep_cmd(const fs::path& scenario_path, const fs::path& out_dir, const Overrides& o,
              std::vector<std::int32_t> lowers, std::vector<std::int32_t> uppers, std::size_t jobs,
              std::ostream& out) {
  Scenario sc = load_scenario(scenario_path);
  o.apply(sc);
  if (lowers.empty()) lowers = default_lowers();
  if (uppers.empty()) uppers = default_uppers();
  // The scenario's own thresholds are replaced cell by cell; validate the
  // rest with a pair that is known to be ordered.
  Scenario probe = sc;
  probe.collab = {0, 1};
  probe.validate();
  for (auto l : lowers) {
    if (l < 0) throw ScenarioError("lowers", "thresholds must be >= 0 (got " + std::to_string(l) + ")");
  }
  const bool any = std::any_of(lowers.begin(), lowers.end(), [&](std::int32_t l) {
    return std::any_of(uppers.begin(), uppers.end(), [&](std::int32_t u) { return l < u; });
  });
  if (!any) throw ScenarioError("lowers", "no (lower, upper) pair satisfies lower < upper");

  const auto cells = sweep(sc, lowers, uppers, jobs);
  publish(out_dir, {{"sweep.csv", sweep_csv(cells)}});

  const auto best = std::min_element(cells.begin(), cells.end(), [](const SweepCell& a, const SweepCell& b) {
    return a.report.mean_q3_aoe < b.report.mean_q3_aoe;
  });
  char line[160];
  std::snprintf(line, sizeof line, "%zu cells; best mean q3 %.3f m at lower=%d upper=%d (pdr baseline %.3f m)",
                cells.size(), best->report.mean_q3_aoe, best->lower, best->upper, best->report.mean_q3_pdr);
  out << line << '\n';
  return 0;
}

int metrics_cmd(const fs::path& run_dir, const fs::path& out_dir, std::ostream& out) {
  const RunRecord record = load_run(run_dir);
  const MetricsReport report = improvement_summary(record);
  publish(out_dir.empty() ? run_dir : out_dir, metrics_outputs(report));
  out << summary_line(report) << '\n';
  return 0;
}

}  // namespace

std::vector<std::int32_t> default_lowers() { return {0, 20, 40, 60, 80, 100, 120, 140, INT32_MAX - 1}; }
std::vector<std::int32_t> default_uppers() { return {40, 60, 80, 100, 120, 140, 160, INT32_MAX}; }

void publish(const fs::path& dir, const FileSet& files) {
  fs::create_directories(dir);
  std::mt19937_64 rng(static_cast<std::uint64_t>(std::chrono::steady_clock::now().time_since_epoch().count()));
  const fs::path staging = dir / (".staging-" + std::to_string(rng() % 1'000'000'000));
  fs::create_directory(staging);
  try {
    for (const auto& [name, text] : files) csv::write_file_atomic(staging / name, text);
    for (const auto& [name, text] : files) fs::rename(staging / name, dir / name);
  } catch (...) {
    std::error_code ec;
    fs::remove_all(staging, ec);
    throw;
  }
  fs::remove_all(staging);
}

FileSet metrics_outputs(const MetricsReport& report) {
  FileSet files;
  files["metrics.csv"] = format_metrics_csv(report);
  files["dfd.csv"] = format_dfd_csv(report);
  for (const auto& d : report.devices) {
    files["cdf_" + d.id + "_pdr.csv"] = format_cdf_csv(cdf(d.pdr.errors_sorted));
    files["cdf_" + d.id + "_aoe.csv"] = format_cdf_csv(cdf(d.aoe.errors_sorted));
  }
  return files;
}

FileSet simulate_outputs(const RunRecord& record, const MetricsReport& report) {
  FileSet files = metrics_outputs(report);
  for (const auto& d : record.devices) files[track_file_name(d.id)] = format_track_csv(d);
  files["collaborations.csv"] = format_events_csv(record.events);
  return files;
}

std::string sweep_csv(const std::vector<SweepCell>& cells) {
  std::string s =
      "lower,upper,mean_q3_pdr_m,mean_q3_aoe_m,mean_dfd_pdr_m,mean_dfd_aoe_m,mean_q3_improvement,"
      "improved_q3,improved_dfd,collaborations,location_updates\n";
  for (const auto& c : cells) {
    const auto& r = c.report;
    s += std::to_string(c.lower) + ',' + std::to_string(c.upper) + ',' + csv::format_double(r.mean_q3_pdr) + ',' +
         csv::format_double(r.mean_q3_aoe) + ',' + csv::format_double(r.mean_dfd_pdr) + ',' +
         csv::format_double(r.mean_dfd_aoe) + ',' + csv::format_double(r.mean_q3_improvement) + ',' +
         std::to_string(r.improved_q3) + ',' + std::to_string(r.improved_dfd) + ',' +
         std::to_string(r.total_collaborations) + ',' + std::to_string(r.total_location_updates) + '\n';
  }
  return s;
}

std::string summary_line(const MetricsReport& r) {
  const std::size_t n = r.devices.size();
  return "q3 improved on " + std::to_string(r.improved_q3) + "/" + std::to_string(n) + " devices, dfd on " +
         std::to_string(r.improved_dfd) + "/" + std::to_string(n) + "; mean q3 improvement " +
         percent(r.mean_q3_improvement) + ", aggregate " + percent(r.aggregate_q3_improvement) + "; " +
         std::to_string(r.total_collaborations) + " collaborations, " + std::to_string(r.total_location_updates) +
         " location updates";
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Collaborative indoor tracking replay"};
  app.name("cotrack");
  app.require_subcommand(1);

  fs::path scenario_path;
  fs::path out_path;
  Overrides o;

  auto* sim = app.add_subcommand("simulate", "Replay a scenario and write tracks, events and metrics");
  sim->add_option("--scenario", scenario_path, "Scenario JSON")->required();
  sim->add_option("--out", out_path, "Output directory")->required();
  add_overrides(sim, o);

  std::vector<std::int32_t> lowers;
  std::vector<std::int32_t> uppers;
  std::size_t jobs = 1;
  auto* swp = app.add_subcommand("sweep", "Run one replay per (lower, upper) pair and write sweep.csv");
  swp->add_option("--scenario", scenario_path, "Scenario JSON")->required();
  swp->add_option("--out", out_path, "Output directory")->required();
  swp->add_option("--lowers", lowers, "Lower thresholds, comma separated")->delimiter(',');
  swp->add_option("--uppers", uppers, "Upper thresholds, comma separated")->delimiter(',');
  swp->add_option("--jobs", jobs, "Concurrent runs")->check(CLI::PositiveNumber);
  swp->add_option("--cutoff", o.cutoff, "Proximity cutoff in meters");
  swp->add_option("--seed", o.seed, "Seed for the radio channel noise");

  SyntheticParams gen_params;
  auto* gen = app.add_subcommand("gen", "Write a synthetic dense scenario");
  gen->add_option("--out", out_path, "Scenario JSON to write")->required();
  gen->add_option("--devices", gen_params.device_count, "Number of devices");
  gen->add_option("--noise-gyro", gen_params.gyro_bias, "Gyro bias magnitude in rad/s");
  gen->add_option("--seed", gen_params.seed, "Generator seed (also the replay seed)");
  gen->add_option("--legs", gen_params.legs, "Corridor legs per walk");
  gen->add_option("--stagger-ms", gen_params.stagger_ms, "Start offset between consecutive devices");
  gen->add_option("--lower", gen_params.collab.lower, "Lower threshold stored in the scenario");
  gen->add_option("--upper", gen_params.collab.upper, "Upper threshold stored in the scenario");
  gen->add_option("--cutoff", gen_params.proximity_cutoff, "Proximity cutoff stored in the scenario");

  fs::path run_dir;
  auto* met = app.add_subcommand("metrics", "Recompute metrics from a simulate output directory");
  met->add_option("--run", run_dir, "Directory written by simulate")->required();
  met->add_option("--out", out_path, "Output directory (default: the run directory)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    // --help and --version are "errors" with code 0; everything else is usage
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (*sim) return simulate_cmd(scenario_path, out_path, o, out);
    if (*swp) return sweep_cmd(scenario_path, out_path, o, lowers, uppers, jobs, out);
    if (*met) return metrics_cmd(run_dir, out_path, out);
    if (*gen) {
      Scenario sc = generate_synthetic(gen_params);
      sc.validate();
      publish(out_path.has_parent_path() ? out_path.parent_path() : fs::path("."),
              {{out_path.filename().string(), dump_scenario(sc)}});
      out << "wrote " << out_path.string() << " with " << sc.devices.size() << " devices\n";
      return 0;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const ScenarioError& e) {
    err << "error: invalid scenario: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace cotrack::cli

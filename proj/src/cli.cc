#include "tufsim/cli.h"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "tufsim/algorithm_catalog.h"
#include "tufsim/errors.h"
#include "tufsim/runner.h"
#include "tufsim/schedule.h"

namespace tufsim {

namespace {

struct CliConfig {
  std::string algorithms_path;
  std::string events_path;
  std::string actions_path;
  std::string architecture_path;
  std::string assignment_path;
  std::string output_path;
  std::string start;
  std::string end;
  std::string cadence = "daily";
  std::optional<double> poisson_rate;
  std::optional<std::uint64_t> seed;
  std::string default_target = "Target 1";
  std::string device_name = "Device_A";
  bool verbose = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw ConfigError("error while reading '" + path + "'");
  return buf.str();
}

// Prefixes errors raised while handling `path` with the path itself.
template <typename F>
auto with_path(const std::string& path, F&& load) {
  try {
    return load(read_file(path));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

Date require_date(const std::string& text, std::string_view flag) {
  auto date = parse_date(text);
  if (!date) {
    throw ConfigError(std::string(flag) + ": invalid date '" + text + "', expected YYYY-MM-DD");
  }
  return *date;
}

int execute(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  const Date start = require_date(cfg.start, "--start");
  const Date end = require_date(cfg.end, "--end");
  if (end < start) throw ConfigError("--start " + cfg.start + " is after --end " + cfg.end);
  const auto cadence = parse_cadence(cfg.cadence);
  if (!cadence) throw ConfigError("--cadence: unknown cadence '" + cfg.cadence + "'");

  const AlgorithmCatalog catalog =
      with_path(cfg.algorithms_path, [](const std::string& t) { return parse_algorithm_catalog(t); });

  Architecture arch = default_architecture(cfg.device_name);
  if (!cfg.architecture_path.empty()) {
    arch = with_path(cfg.architecture_path, [&](const std::string& t) {
      return load_architecture(t, cfg.device_name);
    });
  }
  validate_architecture(arch);

  EventCalendar calendar;
  if (!cfg.events_path.empty()) {
    calendar = with_path(cfg.events_path, [&](const std::string& t) {
      return load_event_dates(t, cfg.default_target);
    });
  } else if (cfg.poisson_rate) {
    calendar = generate_poisson_events(*cfg.poisson_rate, start, end, cfg.seed.value_or(0),
                                       cfg.default_target);
  }
  if (!cfg.actions_path.empty()) {
    calendar = merge_calendars(
        calendar, with_path(cfg.actions_path, [](const std::string& t) { return load_role_actions(t); }));
  }
  calendar = clip_calendar(calendar, start, end);

  std::vector<AlgorithmAssignment> assignments;
  if (!cfg.assignment_path.empty()) {
    const std::string label = std::filesystem::path(cfg.assignment_path).stem().string();
    assignments.emplace_back(with_path(cfg.assignment_path, [&](const std::string& t) {
      return load_assignment_map(t, label);
    }));
  } else {
    for (const auto& alg : catalog) assignments.emplace_back(UniformAssignment{alg.name});
  }
  if (assignments.empty()) throw ConfigError(cfg.algorithms_path + ": catalog has no algorithms");

  const std::vector<Tick> ticks = generate_ticks(start, end, *cadence);

  if (cfg.verbose) {
    auto ev = calendar.update_events.begin();
    for (std::int64_t d = 0; d <= days_between(start, end); ++d) {
      const Date date = add_days(start, d);
      while (ev != calendar.update_events.end() && ev->first < date) ++ev;
      if (ev != calendar.update_events.end() && ev->first == date) {
        err << " - match " << format_date(date) << '\n';
      }
    }
  }

  const std::vector<RunResult> results = run_sweep(arch, assignments, calendar, ticks, catalog);
  for (const auto& r : results) {
    for (const auto& w : r.warnings) err << "warning: [" << r.assignment << "] " << w << '\n';
  }

  const std::string report = emit_report_csv(results);
  if (!cfg.output_path.empty()) {
    std::ofstream file(cfg.output_path, std::ios::binary | std::ios::trunc);
    if (!file) throw ConfigError("cannot open output file '" + cfg.output_path + "'");
    file << report;
    file.flush();
    if (!file) throw ConfigError("failed writing output file '" + cfg.output_path + "'");
  } else {
    out << report;
    out.flush();
    if (!out) throw ConfigError("failed writing report to standard output");
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CliConfig cfg;
  CLI::App app{"Bandwidth and verification-cost simulator for TUF repositories", "tufsim"};
  app.add_option("--algorithms", cfg.algorithms_path, "Signature algorithm catalog (CSV)")
      ->required();
  auto* events = app.add_option("--events", cfg.events_path, "Update event dates (CSV: Date[,Target])");
  app.add_option("--actions", cfg.actions_path, "Scripted role changes (CSV)");
  app.add_option("--arch", cfg.architecture_path, "Repository architecture (CSV)");
  app.add_option("--start", cfg.start, "First date, YYYY-MM-DD")->required();
  app.add_option("--end", cfg.end, "Last date (inclusive), YYYY-MM-DD")->required();
  app.add_option("--cadence", cfg.cadence, "Timestamp cadence: weekly, daily, hourly, minute")
      ->capture_default_str();
  auto* rate = app.add_option("--poisson-rate", cfg.poisson_rate,
                              "Generate update events as a Poisson process (events per day)");
  auto* seed = app.add_option("--seed", cfg.seed, "Seed for --poisson-rate");
  app.add_option("--target", cfg.default_target, "Target name for events without one")
      ->capture_default_str();
  app.add_option("--assignment", cfg.assignment_path,
                 "Per-role algorithm map (CSV: Role Name,Algorithm) instead of a catalog sweep");
  app.add_option("--output", cfg.output_path, "Write the report here instead of stdout");
  app.add_flag("--verbose", cfg.verbose, "Log event-date matches to stderr");
  events->excludes(rate);
  seed->needs(rate);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "tufsim: error: " << e.what() << '\n';
    return 2;
  }

  try {
    return execute(cfg, out, err);
  } catch (const std::exception& e) {
    err << "tufsim: error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace tufsim

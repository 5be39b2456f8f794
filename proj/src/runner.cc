#include "tufsim/runner.h"

#include <charconv>
#include <cstdio>
#include <exception>
#include <sstream>

#include "tufsim/csv.h"
#include "tufsim/errors.h"

namespace tufsim {

namespace {

std::string where(std::size_t line) { return " (row " + std::to_string(line) + ")"; }

const SignatureAlgorithm& resolve(std::string_view role_name, std::string_view own_algorithm,
                                  const AlgorithmAssignment& assignment,
                                  std::span<const SignatureAlgorithm> catalog) {
  std::string_view chosen = own_algorithm;
  if (const auto* per_role = std::get_if<PerRoleAssignment>(&assignment)) {
    if (auto it = per_role->by_role.find(role_name); it != per_role->by_role.end()) {
      chosen = it->second;
    }
  } else if (chosen.empty()) {
    chosen = std::get<UniformAssignment>(assignment).algorithm_name;
  }
  if (chosen.empty()) {
    throw ConfigError("no algorithm assigned to role '" + std::string(role_name) + "'");
  }
  try {
    return find_algorithm(chosen, catalog);
  } catch (const LookupError& e) {
    throw ConfigError(std::string(e.what()) + " ('" + std::string(chosen) + "' for role '" +
                      std::string(role_name) + "')");
  }
}

// Algorithms resolved before the first tick so that configuration errors
// surface without a partial run.
struct ResolvedRun {
  std::vector<SignatureAlgorithm> spec_algorithms;
  std::vector<SignatureAlgorithm> action_algorithms;  // parallel to role_actions
};

ResolvedRun resolve_run(const Architecture& arch, const AlgorithmAssignment& assignment,
                        const EventCalendar& calendar,
                        std::span<const SignatureAlgorithm> catalog) {
  validate_architecture(arch);
  ResolvedRun resolved;
  for (const auto& spec : arch.role_specs) {
    resolved.spec_algorithms.push_back(resolve(spec.name, spec.algorithm_name, assignment, catalog));
  }
  resolved.action_algorithms.resize(calendar.role_actions.size());
  for (std::size_t i = 0; i < calendar.role_actions.size(); ++i) {
    if (const auto* add = std::get_if<AddRoleAction>(&calendar.role_actions[i].action)) {
      resolved.action_algorithms[i] = resolve(add->name, add->algorithm_name, assignment, catalog);
    }
  }
  return resolved;
}

void apply_action(Repository& repo, const DatedAction& dated, const SignatureAlgorithm& alg,
                  std::vector<std::string>& warnings) {
  const std::string date = format_date(dated.date);
  if (const auto* add = std::get_if<AddRoleAction>(&dated.action)) {
    repo.add_role(add->name, add->role_type, alg);
  } else if (const auto* remove = std::get_if<RemoveRoleAction>(&dated.action)) {
    if (repo.remove_role(remove->name) == 0) {
      warnings.push_back(date + ": remove '" + remove->name + "' matched no role");
    }
  } else if (const auto* reserve = std::get_if<SetReserveAction>(&dated.action)) {
    if (repo.set_reserve(reserve->name, reserve->flag) == 0) {
      warnings.push_back(date + ": reserve '" + reserve->name + "' matched no role");
    }
  }
}

RunResult to_result(const Repository& repo, const AlgorithmAssignment& assignment,
                    std::vector<std::string> warnings) {
  const LedgerTotals totals = repo.ledger_totals();
  return RunResult{.device_name = totals.name,
                   .assignment = assignment_label(assignment),
                   .sig_bytes = totals.sig_bytes,
                   .pk_bytes = totals.pk_bytes,
                   .total_bytes = totals.total_bytes,
                   .cost = totals.cost,
                   .total_signatures = totals.signatures,
                   .rollover_events = totals.rollover_events,
                   .root_publications = totals.root_publications,
                   .warnings = std::move(warnings)};
}

std::uint64_t parse_u64(std::string_view text, std::size_t line) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || p != text.data() + text.size()) {
    throw ParseError("invalid integer '" + std::string(text) + "'" + where(line));
  }
  return v;
}

void check_assignments(std::span<const AlgorithmAssignment> assignments) {
  if (assignments.empty()) throw ConfigError("sweep needs at least one algorithm assignment");
}

}  // namespace

Architecture default_architecture(std::string device_name) {
  return Architecture{std::move(device_name),
                      {{"Root 1", RoleType::kRoot, "", false},
                       {"Timestamp 1", RoleType::kTimestamp, "", false},
                       {"Snapshot 1", RoleType::kSnapshot, "", false},
                       {"Target 1", RoleType::kTarget, "", false}}};
}

Architecture load_architecture(std::string_view csv_text, std::string device_name) {
  const csv::Table table = csv::parse(csv_text);
  const auto c_name = table.column("Role Name");
  const auto c_type = table.column("Role Type");
  if (!c_name) throw ParseError("missing required column 'Role Name'");
  if (!c_type) throw ParseError("missing required column 'Role Type'");
  const auto c_alg = table.column("Algorithm");
  const auto c_reserve = table.column("Reserve");

  auto cell = [](const csv::Row& row, std::optional<std::size_t> col) -> std::string_view {
    if (!col || *col >= row.size()) return {};
    return csv::trim(row[*col]);
  };

  Architecture arch{std::move(device_name), {}};
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::size_t line = table.line[r];
    RoleSpec spec{std::string(cell(row, c_name)), RoleType::kRoot,
                  std::string(cell(row, c_alg)), false};
    if (spec.name.empty()) throw ParseError("empty role name" + where(line));
    auto type = parse_role_type(cell(row, c_type));
    if (!type) {
      throw ParseError("invalid role type '" + std::string(cell(row, c_type)) + "'" +
                       where(line));
    }
    spec.role_type = *type;
    std::string_view reserve = cell(row, c_reserve);
    if (reserve == "true") {
      spec.reserve = true;
    } else if (!reserve.empty() && reserve != "false") {
      throw ParseError("invalid Reserve value '" + std::string(reserve) + "'" + where(line));
    }
    arch.role_specs.push_back(std::move(spec));
  }
  return arch;
}

void validate_architecture(const Architecture& arch) {
  for (RoleType type : kAllRoleTypes) {
    bool present = false;
    for (const auto& spec : arch.role_specs) present = present || spec.role_type == type;
    if (!present) {
      throw ConfigError("architecture has no " + std::string(to_string(type)) + " role");
    }
  }
}

std::string assignment_label(const AlgorithmAssignment& assignment) {
  if (const auto* uniform = std::get_if<UniformAssignment>(&assignment)) {
    return uniform->algorithm_name;
  }
  return std::get<PerRoleAssignment>(assignment).label;
}

PerRoleAssignment load_assignment_map(std::string_view csv_text, std::string label) {
  const csv::Table table = csv::parse(csv_text);
  const auto c_name = table.column("Role Name");
  const auto c_alg = table.column("Algorithm");
  if (!c_name) throw ParseError("missing required column 'Role Name'");
  if (!c_alg) throw ParseError("missing required column 'Algorithm'");

  PerRoleAssignment assignment{std::move(label), {}};
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::size_t line = table.line[r];
    if (*c_name >= row.size() || *c_alg >= row.size()) {
      throw ParseError("incomplete row" + where(line));
    }
    std::string name(csv::trim(row[*c_name]));
    std::string alg(csv::trim(row[*c_alg]));
    if (name.empty() || alg.empty()) throw ParseError("empty field" + where(line));
    if (!assignment.by_role.emplace(name, alg).second) {
      throw ParseError("role '" + name + "' assigned twice" + where(line));
    }
  }
  return assignment;
}

RunResult run_scenario(const Architecture& arch, const AlgorithmAssignment& assignment,
                       const EventCalendar& calendar, std::span<const Tick> ticks,
                       std::span<const SignatureAlgorithm> catalog,
                       const TickObserver& observer) {
  const ResolvedRun resolved = resolve_run(arch, assignment, calendar, catalog);
  std::vector<std::string> warnings;

  Repository repo(arch.device_name);
  for (std::size_t i = 0; i < arch.role_specs.size(); ++i) {
    const auto& spec = arch.role_specs[i];
    repo.add_role(spec.name, spec.role_type, resolved.spec_algorithms[i]);
    if (spec.reserve) repo.set_reserve(spec.name, true);
  }

  const auto& actions = calendar.role_actions;
  std::size_t next_action = 0;
  auto next_event = calendar.update_events.begin();
  const auto events_end = calendar.update_events.end();

  const Tick* previous = nullptr;
  for (const Tick& tick : ticks) {
    if (previous != nullptr && tick.date < previous->date) {
      throw RangeError("ticks are not in date order");
    }
    const bool first_of_date = previous == nullptr || previous->date != tick.date;
    previous = &tick;
    if (first_of_date) {
      const std::string date = format_date(tick.date);
      while (next_action < actions.size() && actions[next_action].date < tick.date) {
        warnings.push_back(format_date(actions[next_action].date) +
                           ": role action skipped, no tick on that date");
        ++next_action;
      }
      bool acted = false;
      for (; next_action < actions.size() && actions[next_action].date == tick.date;
           ++next_action) {
        apply_action(repo, actions[next_action], resolved.action_algorithms[next_action],
                     warnings);
        acted = true;
      }
      if (acted) {
        for (RoleType type : kAllRoleTypes) {
          if (repo.count_roles(type) == 0) {
            warnings.push_back(date + ": no " + std::string(to_string(type)) + " role remains");
          }
        }
      }

      while (next_event != events_end && next_event->first < tick.date) ++next_event;
      for (; next_event != events_end && next_event->first == tick.date; ++next_event) {
        if (repo.stage_update(next_event->second) == 0) {
          warnings.push_back(date + ": update for '" + next_event->second +
                             "' matched no Target role");
        }
      }
    }

    const TickReport report = repo.publish_timestamp();
    if (observer) observer(tick, report, repo);
  }
  for (; next_action < actions.size(); ++next_action) {
    warnings.push_back(format_date(actions[next_action].date) +
                       ": role action skipped, no tick on that date");
  }
  return to_result(repo, assignment, std::move(warnings));
}

std::vector<RunResult> run_sweep_serial(const Architecture& arch,
                                        std::span<const AlgorithmAssignment> assignments,
                                        const EventCalendar& calendar,
                                        std::span<const Tick> ticks,
                                        std::span<const SignatureAlgorithm> catalog) {
  check_assignments(assignments);
  for (const auto& a : assignments) resolve_run(arch, a, calendar, catalog);
  std::vector<RunResult> results;
  results.reserve(assignments.size());
  for (const auto& a : assignments) {
    results.push_back(run_scenario(arch, a, calendar, ticks, catalog));
  }
  return results;
}

std::vector<RunResult> run_sweep(const Architecture& arch,
                                 std::span<const AlgorithmAssignment> assignments,
                                 const EventCalendar& calendar, std::span<const Tick> ticks,
                                 std::span<const SignatureAlgorithm> catalog) {
  check_assignments(assignments);
  // Every assignment is resolved up front; nothing inside the parallel
  // region is expected to throw.
  for (const auto& a : assignments) resolve_run(arch, a, calendar, catalog);

  std::vector<RunResult> results(assignments.size());
  std::exception_ptr failure;
  const auto n = static_cast<std::int64_t>(assignments.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      results[i] = run_scenario(arch, assignments[i], calendar, ticks, catalog);
    } catch (...) {
#pragma omp critical(tufsim_sweep_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

std::string emit_report_csv(std::span<const RunResult> results) {
  std::ostringstream out;
  out << kReportHeader << '\n';
  for (const auto& r : results) {
    char cost[64];
    std::snprintf(cost, sizeof cost, "%.6f", r.cost);
    out << csv::escape(r.device_name) << ',' << csv::escape(r.assignment) << ',' << r.sig_bytes
        << ',' << r.pk_bytes << ',' << r.total_bytes << ',' << cost << ',' << r.total_signatures
        << ',' << r.rollover_events << ',' << r.root_publications << '\n';
  }
  return out.str();
}

std::vector<RunResult> parse_report_csv(std::string_view csv_text) {
  const csv::Table table = csv::parse(csv_text);
  std::vector<std::size_t> cols;
  std::string_view header = kReportHeader;
  while (!header.empty()) {
    auto comma = header.find(',');
    std::string_view name = header.substr(0, comma);
    auto idx = table.column(name);
    if (!idx) throw ParseError("missing required column '" + std::string(name) + "'");
    cols.push_back(*idx);
    header = comma == std::string_view::npos ? std::string_view{} : header.substr(comma + 1);
  }

  std::vector<RunResult> results;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::size_t line = table.line[r];
    auto field = [&](std::size_t k) -> std::string_view {
      if (cols[k] >= row.size()) throw ParseError("incomplete row" + where(line));
      return csv::trim(row[cols[k]]);
    };
    RunResult result;
    result.device_name = std::string(field(0));
    result.assignment = std::string(field(1));
    result.sig_bytes = parse_u64(field(2), line);
    result.pk_bytes = parse_u64(field(3), line);
    result.total_bytes = parse_u64(field(4), line);
    std::string_view cost = field(5);
    auto [p, ec] = std::from_chars(cost.data(), cost.data() + cost.size(), result.cost);
    if (cost.empty() || ec != std::errc{} || p != cost.data() + cost.size()) {
      throw ParseError("invalid cost '" + std::string(cost) + "'" + where(line));
    }
    result.total_signatures = parse_u64(field(6), line);
    result.rollover_events = parse_u64(field(7), line);
    result.root_publications = parse_u64(field(8), line);
    results.push_back(std::move(result));
  }
  return results;
}

}  // namespace tufsim

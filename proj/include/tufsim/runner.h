#ifndef TUFSIM_RUNNER_H_
#define TUFSIM_RUNNER_H_

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tufsim/algorithm_catalog.h"
#include "tufsim/repository.h"
#include "tufsim/schedule.h"

namespace tufsim {

struct RoleSpec {
  std::string name;
  RoleType role_type;
  std::string algorithm_name;  // empty: taken from the run's assignment
  bool reserve = false;
};

struct Architecture {
  std::string device_name;
  std::vector<RoleSpec> role_specs;
};

/// One instance of each role: "Root 1", "Timestamp 1", "Snapshot 1",
/// "Target 1", all taking their algorithm from the assignment.
Architecture default_architecture(std::string device_name = "Device_A");

/// Reads a `Role Name,Role Type,Algorithm,Reserve` CSV. Algorithm and
/// Reserve may be empty (Reserve defaults to false).
Architecture load_architecture(std::string_view csv_text, std::string device_name);

/// Throws ConfigError unless every role type has at least one instance.
void validate_architecture(const Architecture& arch);

struct UniformAssignment {
  std::string algorithm_name;
};

struct PerRoleAssignment {
  std::string label;
  std::map<std::string, std::string, std::less<>> by_role;  // role name -> algorithm
};

/// Which algorithm each role signs with. For a given role the lookup order
/// is: per-role map entry, then the role spec's own algorithm, then the
/// uniform algorithm.
using AlgorithmAssignment = std::variant<UniformAssignment, PerRoleAssignment>;

std::string assignment_label(const AlgorithmAssignment& assignment);

/// Reads a `Role Name,Algorithm` CSV into a per-role assignment.
PerRoleAssignment load_assignment_map(std::string_view csv_text, std::string label);

struct RunResult {
  std::string device_name;
  std::string assignment;
  std::uint64_t sig_bytes = 0;
  std::uint64_t pk_bytes = 0;
  std::uint64_t total_bytes = 0;
  double cost = 0.0;
  std::uint64_t total_signatures = 0;
  std::uint64_t rollover_events = 0;
  std::uint64_t root_publications = 0;
  std::vector<std::string> warnings;
};

/// Called after every `publish_timestamp` of a run.
using TickObserver = std::function<void(const Tick&, const TickReport&, const Repository&)>;

/// Builds a fresh repository and drives it through `ticks`, which must be
/// in non-decreasing date order. On the first tick of each date the date's
/// role actions run, then its update events are staged; every tick then
/// publishes a timestamp.
///
/// Throws ConfigError before any tick if an algorithm name cannot be
/// resolved or the architecture lacks a role type.
RunResult run_scenario(const Architecture& arch, const AlgorithmAssignment& assignment,
                       const EventCalendar& calendar, std::span<const Tick> ticks,
                       std::span<const SignatureAlgorithm> catalog,
                       const TickObserver& observer = {});

/// One independent run per assignment, results in input order. Runs execute
/// in parallel with OpenMP; `run_sweep_serial` is the sequential reference.
/// Throws ConfigError for an empty assignment list.
std::vector<RunResult> run_sweep(const Architecture& arch,
                                 std::span<const AlgorithmAssignment> assignments,
                                 const EventCalendar& calendar, std::span<const Tick> ticks,
                                 std::span<const SignatureAlgorithm> catalog);
std::vector<RunResult> run_sweep_serial(const Architecture& arch,
                                        std::span<const AlgorithmAssignment> assignments,
                                        const EventCalendar& calendar,
                                        std::span<const Tick> ticks,
                                        std::span<const SignatureAlgorithm> catalog);

inline constexpr std::string_view kReportHeader =
    "Device,Assignment,Signature Bytes,Public Key Bytes,Total Bytes,Verification Cost,"
    "Total Signatures,Rollover Events,Root Publications";

std::string emit_report_csv(std::span<const RunResult> results);

/// Inverse of `emit_report_csv` (warnings are not part of the report).
std::vector<RunResult> parse_report_csv(std::string_view csv_text);

}  // namespace tufsim

#endif  // TUFSIM_RUNNER_H_

#ifndef TUFSIM_REPOSITORY_H_
#define TUFSIM_REPOSITORY_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tufsim/algorithm_catalog.h"

namespace tufsim {

enum class RoleType { kRoot, kTimestamp, kSnapshot, kTarget };

inline constexpr std::array<RoleType, 4> kAllRoleTypes = {
    RoleType::kRoot, RoleType::kTimestamp, RoleType::kSnapshot, RoleType::kTarget};

std::string_view to_string(RoleType type);

/// Accepts exactly "Root", "Timestamp", "Snapshot" or "Target".
std::optional<RoleType> parse_role_type(std::string_view text);

/// One signing role instance and its current key.
struct RoleState {
  std::string name;
  RoleType role_type;
  SignatureAlgorithm algorithm;
  std::uint64_t num_sigs = 0;       // signatures by the current key
  std::uint64_t lifetime_sigs = 0;  // signatures across all keys
  bool reserve = false;
  bool pending = true;
  bool rollover = true;
};

/// Deltas produced by one `publish_timestamp` call.
struct TickReport {
  std::array<std::uint64_t, 4> signatures_by_type{};  // indexed by RoleType
  std::uint64_t sig_bytes = 0;
  std::uint64_t pk_bytes = 0;
  double cost = 0.0;
  std::uint64_t rolled_roles = 0;
  bool root_published = false;

  std::uint64_t signatures() const;
};

struct LedgerTotals {
  std::string name;
  std::uint64_t sig_bytes = 0;
  std::uint64_t pk_bytes = 0;
  std::uint64_t total_bytes = 0;
  double cost = 0.0;
  std::uint64_t signatures = 0;
  std::uint64_t rollover_events = 0;
  std::uint64_t root_publications = 0;

  friend bool operator==(const LedgerTotals&, const LedgerTotals&) = default;
};

/// State machine of a single TUF repository together with the cumulative
/// ledger of what a worst-case client downloads and verifies: every
/// signature that is produced, plus every public key in every root file.
///
/// Role iteration follows insertion order; the order of cost additions is
/// therefore fixed and results are reproducible bit for bit.
///
/// Not thread-safe. Distinct repositories are independent.
class Repository {
 public:
  explicit Repository(std::string name);

  const std::string& name() const { return name_; }
  std::span<const RoleState> roles() const { return roles_; }
  bool update_root() const { return update_root_; }
  std::uint64_t retired_signatures() const { return retired_sigs_; }
  std::size_t count_roles(RoleType type) const;

  /// Appends a role and requests a new root file. Existing roles with the
  /// same name and type are flagged pending and for rollover as well.
  void add_role(std::string name, RoleType type, SignatureAlgorithm algorithm);

  /// Removes every role named `name`; returns how many were removed.
  std::size_t remove_role(std::string_view name);

  std::size_t set_reserve(std::string_view name, bool flag);

  /// Marks matching Target roles pending. If any matched, every Snapshot
  /// role is marked pending too. Returns the number of matching targets.
  std::size_t stage_update(std::string_view target_name);

  /// Flags for rollover every role that already has its rollover flag set
  /// or whose current key is exhausted while a signature is pending, and
  /// gives each of them a fresh key. Returns the number of such roles.
  std::size_t rollover_check();

  /// Publishes one timestamp: root file (if any key changed or a root
  /// update was requested), then pending targets, then snapshots if any
  /// target signed, then timestamps.
  TickReport publish_timestamp();

  LedgerTotals ledger_totals() const;

 private:
  void sign(RoleState& role, TickReport& report);

  std::string name_;
  std::vector<RoleState> roles_;
  std::uint64_t accum_sig_size_ = 0;
  std::uint64_t accum_pk_size_ = 0;
  double accum_cost_ = 0.0;
  std::uint64_t accum_signatures_ = 0;
  std::uint64_t rollover_events_ = 0;
  std::uint64_t root_publications_ = 0;
  std::uint64_t retired_sigs_ = 0;
  bool update_root_ = true;
};

}  // namespace tufsim

#endif  // TUFSIM_REPOSITORY_H_

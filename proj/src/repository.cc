#include "tufsim/repository.h"

#include <algorithm>
#include <numeric>

namespace tufsim {

std::string_view to_string(RoleType type) {
  switch (type) {
    case RoleType::kRoot:
      return "Root";
    case RoleType::kTimestamp:
      return "Timestamp";
    case RoleType::kSnapshot:
      return "Snapshot";
    case RoleType::kTarget:
      return "Target";
  }
  return "?";
}

std::optional<RoleType> parse_role_type(std::string_view text) {
  for (RoleType t : kAllRoleTypes) {
    if (to_string(t) == text) return t;
  }
  return std::nullopt;
}

std::uint64_t TickReport::signatures() const {
  return std::accumulate(signatures_by_type.begin(), signatures_by_type.end(),
                         std::uint64_t{0});
}

Repository::Repository(std::string name) : name_(std::move(name)) {}

std::size_t Repository::count_roles(RoleType type) const {
  return static_cast<std::size_t>(std::count_if(
      roles_.begin(), roles_.end(), [type](const RoleState& r) { return r.role_type == type; }));
}

void Repository::add_role(std::string name, RoleType type, SignatureAlgorithm algorithm) {
  roles_.push_back(RoleState{.name = std::move(name), .role_type = type,
                             .algorithm = std::move(algorithm)});
  update_root_ = true;
  const RoleState& added = roles_.back();
  for (auto& r : roles_) {
    if (r.name == added.name && r.role_type == type) {
      r.rollover = true;
      r.pending = true;
    }
  }
}

std::size_t Repository::remove_role(std::string_view name) {
  std::size_t removed = 0;
  std::erase_if(roles_, [&](const RoleState& r) {
    if (r.name != name) return false;
    retired_sigs_ += r.lifetime_sigs;
    ++removed;
    return true;
  });
  if (removed > 0) update_root_ = true;
  return removed;
}

std::size_t Repository::set_reserve(std::string_view name, bool flag) {
  std::size_t matched = 0;
  for (auto& r : roles_) {
    if (r.name == name) {
      r.reserve = flag;
      ++matched;
    }
  }
  return matched;
}

std::size_t Repository::stage_update(std::string_view target_name) {
  std::size_t matched = 0;
  for (auto& r : roles_) {
    if (r.role_type == RoleType::kTarget && r.name == target_name) {
      r.pending = true;
      ++matched;
    }
  }
  if (matched > 0) {
    for (auto& r : roles_) {
      if (r.role_type == RoleType::kSnapshot) r.pending = true;
    }
  }
  return matched;
}

std::size_t Repository::rollover_check() {
  std::size_t rolled = 0;
  for (auto& r : roles_) {
    if (r.rollover || (r.num_sigs == r.algorithm.max_sigs && r.pending)) {
      r.rollover = true;
      r.num_sigs = 0;
      ++rolled;
    }
  }
  rollover_events_ += rolled;
  return rolled;
}

void Repository::sign(RoleState& role, TickReport& report) {
  accum_sig_size_ += role.algorithm.sig_size;
  accum_cost_ += role.algorithm.cost;
  ++accum_signatures_;
  ++role.num_sigs;
  ++role.lifetime_sigs;

  report.signatures_by_type[static_cast<std::size_t>(role.role_type)] += 1;
  report.sig_bytes += role.algorithm.sig_size;
  report.cost += role.algorithm.cost;
}

TickReport Repository::publish_timestamp() {
  TickReport report;

  // Root file: endorses every key, signed by every Root instance. Reserve
  // roots sign as well; only the later phases consult the reserve flag.
  report.rolled_roles = rollover_check();
  if (report.rolled_roles > 0 || update_root_) {
    for (auto& r : roles_) {
      accum_pk_size_ += r.algorithm.pk_size;
      report.pk_bytes += r.algorithm.pk_size;
      if (r.role_type == RoleType::kRoot) sign(r, report);
      r.rollover = false;
    }
    update_root_ = false;
    ++root_publications_;
    report.root_published = true;
  }

  std::size_t updated_targets = 0;
  for (auto& r : roles_) {
    if (r.role_type == RoleType::kTarget && r.pending && !r.reserve) {
      sign(r, report);
      r.pending = false;
      ++updated_targets;
    }
  }

  // Snapshot pending flags are left set once raised.
  if (updated_targets > 0) {
    for (auto& r : roles_) {
      if (r.role_type == RoleType::kSnapshot && !r.reserve) sign(r, report);
    }
  }

  for (auto& r : roles_) {
    if (r.role_type == RoleType::kTimestamp && !r.reserve) sign(r, report);
  }
  return report;
}

LedgerTotals Repository::ledger_totals() const {
  return LedgerTotals{.name = name_,
                      .sig_bytes = accum_sig_size_,
                      .pk_bytes = accum_pk_size_,
                      .total_bytes = accum_sig_size_ + accum_pk_size_,
                      .cost = accum_cost_,
                      .signatures = accum_signatures_,
                      .rollover_events = rollover_events_,
                      .root_publications = root_publications_};
}

}  // namespace tufsim

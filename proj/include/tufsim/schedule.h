#ifndef TUFSIM_SCHEDULE_H_
#define TUFSIM_SCHEDULE_H_

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "tufsim/date.h"
#include "tufsim/repository.h"

namespace tufsim {

enum class Cadence { kWeekly, kDaily, kHourly, kMinute };

std::optional<Cadence> parse_cadence(std::string_view text);
std::string_view to_string(Cadence cadence);

/// Sub-daily ticks per date; weekly cadence reports 1 (one tick on each
/// seventh date).
int ticks_per_day(Cadence cadence);

struct Tick {
  Date date;
  int sub_index = 0;

  friend bool operator==(const Tick&, const Tick&) = default;
};

/// Inclusive of both endpoints. Weekly cadence ticks on `start` and every
/// seventh date after it that does not pass `end`.
/// Throws RangeError if start > end.
std::vector<Tick> generate_ticks(const Date& start, const Date& end, Cadence cadence);

/// Closed-form length of `generate_ticks(start, end, cadence)`.
std::uint64_t tick_count(const Date& start, const Date& end, Cadence cadence);

struct AddRoleAction {
  std::string name;
  RoleType role_type;
  std::string algorithm_name;  // empty: resolved by the run's assignment

  friend bool operator==(const AddRoleAction&, const AddRoleAction&) = default;
};

struct RemoveRoleAction {
  std::string name;
  friend bool operator==(const RemoveRoleAction&, const RemoveRoleAction&) = default;
};

struct SetReserveAction {
  std::string name;
  bool flag = false;
  friend bool operator==(const SetReserveAction&, const SetReserveAction&) = default;
};

using RoleAction = std::variant<AddRoleAction, RemoveRoleAction, SetReserveAction>;

struct DatedAction {
  Date date;
  RoleAction action;

  friend bool operator==(const DatedAction&, const DatedAction&) = default;
};

/// Update events keyed by (date, target name), plus scripted role changes
/// kept in date order (ties keep insertion order).
struct EventCalendar {
  std::set<std::pair<Date, std::string>> update_events;
  std::vector<DatedAction> role_actions;

  bool empty() const { return update_events.empty() && role_actions.empty(); }
  friend bool operator==(const EventCalendar&, const EventCalendar&) = default;
};

/// Reads a `Date[,Target]` CSV. Rows without a target bind to
/// `default_target`; repeated (date, target) pairs collapse.
EventCalendar load_event_dates(std::string_view csv_text, std::string_view default_target);

/// Reads a `Date,Action,Name,RoleType,Algorithm,Flag` CSV where Action is
/// one of add, remove, reserve.
EventCalendar load_role_actions(std::string_view csv_text);

/// Poisson arrivals, date-granular: date i of the inclusive range carries an
/// event iff a Poisson(rate_per_day) draw for that date is at least one.
/// Throws ConfigError for a negative or non-finite rate and RangeError if
/// start > end.
EventCalendar generate_poisson_events(double rate_per_day, const Date& start, const Date& end,
                                      std::uint64_t seed, std::string_view target);

/// Per-date Poisson draws backing `generate_poisson_events`. Each draw uses
/// its own generator stream, so entries are independent of evaluation order.
/// The OpenMP version must agree exactly with the serial one.
std::vector<std::uint32_t> poisson_draws(double rate, std::uint64_t days, std::uint64_t seed);
std::vector<std::uint32_t> poisson_draws_serial(double rate, std::uint64_t days,
                                                std::uint64_t seed);

/// Single inverse-transform Poisson draw using the generator stream of
/// (seed, index).
std::uint32_t poisson_draw(double rate, std::uint64_t seed, std::uint64_t index);

/// Union of update events; role actions merged by date with `a` first on ties.
EventCalendar merge_calendars(const EventCalendar& a, const EventCalendar& b);

/// Drops events and actions dated outside [start, end].
EventCalendar clip_calendar(const EventCalendar& calendar, const Date& start, const Date& end);

}  // namespace tufsim

#endif  // TUFSIM_SCHEDULE_H_

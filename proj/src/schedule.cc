#include "tufsim/schedule.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <iterator>
#include <limits>

#include "tufsim/csv.h"
#include "tufsim/errors.h"

namespace tufsim {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// SplitMix64 (Steele, Lea, Flood 2014).
struct SplitMix64 {
  std::uint64_t state;

  std::uint64_t next() {
    std::uint64_t z = (state += kGolden);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

std::uint64_t mix(std::uint64_t x) { return SplitMix64{x}.next(); }

// Chunk size that keeps exp(-rate) well away from underflow.
constexpr double kMaxChunkRate = 64.0;

std::uint32_t draw_chunk(double rate, SplitMix64& rng) {
  const double u = rng.uniform();
  double p = std::exp(-rate);
  double cdf = p;
  std::uint32_t k = 0;
  while (u >= cdf) {
    ++k;
    p *= rate / k;
    if (p == 0.0) break;  // numerically exhausted tail
    cdf += p;
  }
  return k;
}

void check_rate(double rate) {
  if (!std::isfinite(rate) || rate < 0.0) {
    throw ConfigError("Poisson rate must be a finite non-negative number");
  }
}

std::string where(std::size_t line) { return " (row " + std::to_string(line) + ")"; }

std::string_view cell(const csv::Row& row, std::optional<std::size_t> col) {
  if (!col || *col >= row.size()) return {};
  return csv::trim(row[*col]);
}

Date require_date(std::string_view text, std::size_t line) {
  auto date = parse_date(text);
  if (!date) throw ParseError("invalid date '" + std::string(text) + "'" + where(line));
  return *date;
}

std::optional<bool> parse_flag(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "true" || lower == "1" || lower == "yes") return true;
  if (lower == "false" || lower == "0" || lower == "no") return false;
  return std::nullopt;
}

}  // namespace

std::optional<Cadence> parse_cadence(std::string_view text) {
  if (text == "weekly") return Cadence::kWeekly;
  if (text == "daily") return Cadence::kDaily;
  if (text == "hourly") return Cadence::kHourly;
  if (text == "minute" || text == "per-minute") return Cadence::kMinute;
  return std::nullopt;
}

std::string_view to_string(Cadence cadence) {
  switch (cadence) {
    case Cadence::kWeekly:
      return "weekly";
    case Cadence::kDaily:
      return "daily";
    case Cadence::kHourly:
      return "hourly";
    case Cadence::kMinute:
      return "minute";
  }
  return "?";
}

int ticks_per_day(Cadence cadence) {
  switch (cadence) {
    case Cadence::kHourly:
      return 24;
    case Cadence::kMinute:
      return 1440;
    default:
      return 1;
  }
}

std::uint64_t tick_count(const Date& start, const Date& end, Cadence cadence) {
  const auto span = days_between(start, end);
  if (span < 0) throw RangeError("start date is after end date");
  const auto dates = static_cast<std::uint64_t>(span) + 1;
  if (cadence == Cadence::kWeekly) return (dates + 6) / 7;
  return dates * static_cast<std::uint64_t>(ticks_per_day(cadence));
}

std::vector<Tick> generate_ticks(const Date& start, const Date& end, Cadence cadence) {
  const std::uint64_t n = tick_count(start, end, cadence);
  std::vector<Tick> ticks;
  ticks.reserve(n);
  const std::int64_t span = days_between(start, end);
  const std::int64_t step = cadence == Cadence::kWeekly ? 7 : 1;
  const int per_day = ticks_per_day(cadence);
  for (std::int64_t offset = 0; offset <= span; offset += step) {
    const Date date = add_days(start, offset);
    for (int sub = 0; sub < per_day; ++sub) ticks.push_back(Tick{date, sub});
  }
  return ticks;
}

EventCalendar load_event_dates(std::string_view csv_text, std::string_view default_target) {
  const csv::Table table = csv::parse(csv_text);
  const auto c_date = table.column("Date");
  if (!c_date) throw ParseError("missing required column 'Date'");
  const auto c_target = table.column("Target");

  EventCalendar calendar;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const Date date = require_date(cell(row, c_date), table.line[r]);
    std::string_view target = cell(row, c_target);
    if (target.empty()) target = default_target;
    calendar.update_events.emplace(date, std::string(target));
  }
  return calendar;
}

EventCalendar load_role_actions(std::string_view csv_text) {
  const csv::Table table = csv::parse(csv_text);
  const auto c_date = table.column("Date");
  const auto c_action = table.column("Action");
  const auto c_name = table.column("Name");
  if (!c_date) throw ParseError("missing required column 'Date'");
  if (!c_action) throw ParseError("missing required column 'Action'");
  if (!c_name) throw ParseError("missing required column 'Name'");
  const auto c_type = table.column("RoleType");
  const auto c_alg = table.column("Algorithm");
  const auto c_flag = table.column("Flag");

  EventCalendar calendar;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::size_t line = table.line[r];
    const Date date = require_date(cell(row, c_date), line);
    const std::string_view action = cell(row, c_action);
    const std::string name(cell(row, c_name));
    if (name.empty()) throw ParseError("empty role name" + where(line));

    if (action == "add") {
      auto type = parse_role_type(cell(row, c_type));
      if (!type) {
        throw ParseError("invalid role type '" + std::string(cell(row, c_type)) + "'" +
                         where(line));
      }
      calendar.role_actions.push_back(
          {date, AddRoleAction{name, *type, std::string(cell(row, c_alg))}});
    } else if (action == "remove") {
      calendar.role_actions.push_back({date, RemoveRoleAction{name}});
    } else if (action == "reserve") {
      auto flag = parse_flag(cell(row, c_flag));
      if (!flag) {
        throw ParseError("invalid reserve flag '" + std::string(cell(row, c_flag)) + "'" +
                         where(line));
      }
      calendar.role_actions.push_back({date, SetReserveAction{name, *flag}});
    } else {
      throw ParseError("unknown action '" + std::string(action) + "'" + where(line));
    }
  }
  std::stable_sort(calendar.role_actions.begin(), calendar.role_actions.end(),
                   [](const DatedAction& x, const DatedAction& y) { return x.date < y.date; });
  return calendar;
}

std::uint32_t poisson_draw(double rate, std::uint64_t seed, std::uint64_t index) {
  if (rate == 0.0) return 0;
  SplitMix64 rng{mix(seed) ^ mix(index + kGolden)};
  std::uint32_t total = 0;
  // Poisson(a + b) = Poisson(a) + Poisson(b).
  while (rate > kMaxChunkRate) {
    total += draw_chunk(kMaxChunkRate, rng);
    rate -= kMaxChunkRate;
  }
  return total + draw_chunk(rate, rng);
}

std::vector<std::uint32_t> poisson_draws_serial(double rate, std::uint64_t days,
                                                std::uint64_t seed) {
  check_rate(rate);
  std::vector<std::uint32_t> draws(days);
  for (std::uint64_t i = 0; i < days; ++i) draws[i] = poisson_draw(rate, seed, i);
  return draws;
}

std::vector<std::uint32_t> poisson_draws(double rate, std::uint64_t days, std::uint64_t seed) {
  check_rate(rate);
  std::vector<std::uint32_t> draws(days);
  const auto n = static_cast<std::int64_t>(days);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    draws[i] = poisson_draw(rate, seed, static_cast<std::uint64_t>(i));
  }
  return draws;
}

EventCalendar generate_poisson_events(double rate_per_day, const Date& start, const Date& end,
                                      std::uint64_t seed, std::string_view target) {
  check_rate(rate_per_day);
  const auto span = days_between(start, end);
  if (span < 0) throw RangeError("start date is after end date");
  const auto draws = poisson_draws(rate_per_day, static_cast<std::uint64_t>(span) + 1, seed);
  EventCalendar calendar;
  for (std::size_t i = 0; i < draws.size(); ++i) {
    if (draws[i] >= 1) {
      calendar.update_events.emplace(add_days(start, static_cast<std::int64_t>(i)),
                                     std::string(target));
    }
  }
  return calendar;
}

EventCalendar merge_calendars(const EventCalendar& a, const EventCalendar& b) {
  EventCalendar merged;
  merged.update_events = a.update_events;
  merged.update_events.insert(b.update_events.begin(), b.update_events.end());
  merged.role_actions.reserve(a.role_actions.size() + b.role_actions.size());
  std::merge(a.role_actions.begin(), a.role_actions.end(), b.role_actions.begin(),
             b.role_actions.end(), std::back_inserter(merged.role_actions),
             [](const DatedAction& x, const DatedAction& y) { return x.date < y.date; });
  return merged;
}

EventCalendar clip_calendar(const EventCalendar& calendar, const Date& start, const Date& end) {
  EventCalendar clipped;
  for (const auto& ev : calendar.update_events) {
    if (start <= ev.first && ev.first <= end) clipped.update_events.insert(ev);
  }
  for (const auto& act : calendar.role_actions) {
    if (start <= act.date && act.date <= end) clipped.role_actions.push_back(act);
  }
  return clipped;
}

}  // namespace tufsim

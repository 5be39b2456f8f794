#ifndef TUFSIM_DATE_H_
#define TUFSIM_DATE_H_

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace tufsim {

/// Naive calendar date; no timezone.
using Date = std::chrono::year_month_day;

/// Strict ISO-8601 `YYYY-MM-DD`. Returns nullopt for malformed text or an
/// impossible calendar date such as 2020-02-30.
std::optional<Date> parse_date(std::string_view text);

std::string format_date(const Date& date);

Date add_days(const Date& date, std::int64_t days);

/// Signed day count `to - from`.
std::int64_t days_between(const Date& from, const Date& to);

}  // namespace tufsim

#endif  // TUFSIM_DATE_H_

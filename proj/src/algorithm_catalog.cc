#include "tufsim/algorithm_catalog.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <set>
#include <sstream>

#include "tufsim/csv.h"
#include "tufsim/errors.h"

namespace tufsim {

namespace {

constexpr std::uint64_t kMaxCounter = std::numeric_limits<std::int64_t>::max();

enum class NumberStatus { kOk, kMalformed, kNegative, kTooLarge };

NumberStatus parse_unsigned(std::string_view text, std::uint64_t& out) {
  if (text.empty()) return NumberStatus::kMalformed;
  if (text.front() == '-') {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec == std::errc{} && p == text.data() + text.size()) {
      return v < 0 ? NumberStatus::kNegative : (out = 0, NumberStatus::kOk);
    }
    return ec == std::errc::result_out_of_range ? NumberStatus::kNegative
                                                : NumberStatus::kMalformed;
  }
  if (text.front() == '+') text.remove_prefix(1);
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec == std::errc::result_out_of_range) return NumberStatus::kTooLarge;
  if (ec != std::errc{} || p != text.data() + text.size()) return NumberStatus::kMalformed;
  return out > kMaxCounter ? NumberStatus::kTooLarge : NumberStatus::kOk;
}

// Exact decimal parse of [sign] digits [. digits] [(e|E) [sign] digits],
// truncated toward zero. Values above 2^63-1 report kTooLarge.
NumberStatus parse_decimal_count(std::string_view text, std::uint64_t& out) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  std::string digits;
  std::size_t int_digits = 0;
  bool any_digit = false;
  for (; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i, ++int_digits) {
    digits.push_back(text[i]);
    any_digit = true;
  }
  if (i < text.size() && text[i] == '.') {
    for (++i; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i) {
      digits.push_back(text[i]);
      any_digit = true;
    }
  }
  if (!any_digit) return NumberStatus::kMalformed;
  std::int64_t exponent = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    std::string_view rest = text.substr(i);
    if (!rest.empty() && rest.front() == '+') rest.remove_prefix(1);
    auto [p, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), exponent);
    if (ec != std::errc{} || p != rest.data() + rest.size() || rest.empty()) {
      return NumberStatus::kMalformed;
    }
    i = text.size();
  }
  if (i != text.size()) return NumberStatus::kMalformed;

  // Position of the decimal point within `digits` after applying the exponent.
  std::int64_t point = static_cast<std::int64_t>(int_digits) + exponent;
  auto first_nonzero = digits.find_first_not_of('0');
  if (first_nonzero == std::string::npos) {
    out = 0;
    return NumberStatus::kOk;
  }
  if (point - static_cast<std::int64_t>(first_nonzero) > 19) {
    return negative ? NumberStatus::kNegative : NumberStatus::kTooLarge;
  }
  std::uint64_t value = 0;
  for (std::int64_t k = 0; k < point; ++k) {
    const std::uint64_t d =
        k < static_cast<std::int64_t>(digits.size()) ? static_cast<std::uint64_t>(digits[k] - '0') : 0;
    if (value > (kMaxCounter - d) / 10) {
      return negative ? NumberStatus::kNegative : NumberStatus::kTooLarge;
    }
    value = value * 10 + d;
  }
  if (negative && value > 0) return NumberStatus::kNegative;
  out = value;
  return NumberStatus::kOk;
}

std::string where(std::size_t line) { return " (row " + std::to_string(line) + ")"; }

void check_status(NumberStatus status, std::string_view column, std::string_view value,
                  std::size_t line) {
  switch (status) {
    case NumberStatus::kOk:
      return;
    case NumberStatus::kMalformed:
      throw ParseError("non-numeric value '" + std::string(value) + "' in column '" +
                       std::string(column) + "'" + where(line));
    case NumberStatus::kNegative:
      throw ValidationError("negative value '" + std::string(value) + "' in column '" +
                            std::string(column) + "'" + where(line));
    case NumberStatus::kTooLarge:
      throw ValidationError("value '" + std::string(value) + "' in column '" +
                            std::string(column) + "' exceeds 2^63-1" + where(line));
  }
}

}  // namespace

void validate(const SignatureAlgorithm& alg) {
  if (csv::trim(alg.name).empty()) throw ValidationError("algorithm name is empty");
  if (alg.max_sigs < 1) {
    throw ValidationError("algorithm '" + alg.name + "': max signatures must be at least 1");
  }
  if (alg.max_sigs > kMaxCounter || alg.sig_size > kMaxCounter || alg.pk_size > kMaxCounter) {
    throw ValidationError("algorithm '" + alg.name + "': value exceeds 2^63-1");
  }
  if (!std::isfinite(alg.cost) || alg.cost < 0.0) {
    throw ValidationError("algorithm '" + alg.name +
                          "': computational cost must be a finite non-negative number");
  }
}

AlgorithmCatalog parse_algorithm_catalog(std::string_view csv_text) {
  const csv::Table table = csv::parse(csv_text);

  auto require = [&](std::string_view name) {
    auto idx = table.column(name);
    if (!idx) throw ParseError("missing required column '" + std::string(name) + "'");
    return *idx;
  };
  const std::size_t c_name = require(kColName);
  const std::size_t c_sig = require(kColSignatureSize);
  const std::size_t c_pk = require(kColPublicKeySize);
  const std::size_t c_max = require(kColMaxSignatures);
  const std::size_t c_cost = require(kColComputationalCost);

  AlgorithmCatalog catalog;
  std::set<std::string, std::less<>> seen;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::size_t line = table.line[r];
    auto field = [&](std::size_t col, std::string_view column) -> std::string_view {
      if (col >= row.size()) {
        throw ParseError("missing value for column '" + std::string(column) + "'" + where(line));
      }
      return csv::trim(row[col]);
    };

    SignatureAlgorithm alg;
    alg.name = std::string(field(c_name, kColName));

    auto sig = field(c_sig, kColSignatureSize);
    check_status(parse_unsigned(sig, alg.sig_size), kColSignatureSize, sig, line);
    auto pk = field(c_pk, kColPublicKeySize);
    check_status(parse_unsigned(pk, alg.pk_size), kColPublicKeySize, pk, line);
    auto max = field(c_max, kColMaxSignatures);
    check_status(parse_decimal_count(max, alg.max_sigs), kColMaxSignatures, max, line);

    auto cost = field(c_cost, kColComputationalCost);
    std::string_view cost_text = cost;
    if (!cost_text.empty() && cost_text.front() == '+') cost_text.remove_prefix(1);
    auto [p, ec] = std::from_chars(cost_text.data(), cost_text.data() + cost_text.size(),
                                   alg.cost);
    if (cost_text.empty() || ec != std::errc{} || p != cost_text.data() + cost_text.size()) {
      throw ParseError("non-numeric value '" + std::string(cost) + "' in column '" +
                       std::string(kColComputationalCost) + "'" + where(line));
    }

    try {
      validate(alg);
    } catch (const ValidationError& e) {
      throw ValidationError(e.what() + where(line));
    }
    if (!seen.insert(alg.name).second) {
      throw ParseError("duplicate algorithm name '" + alg.name + "'" + where(line));
    }
    catalog.push_back(std::move(alg));
  }
  return catalog;
}

std::string serialize_algorithm_catalog(std::span<const SignatureAlgorithm> catalog) {
  std::ostringstream out;
  out << kColName << ',' << kColSignatureSize << ',' << kColPublicKeySize << ','
      << kColMaxSignatures << ',' << kColComputationalCost << '\n';
  for (const auto& alg : catalog) {
    char cost[32];
    std::snprintf(cost, sizeof cost, "%.17g", alg.cost);
    out << csv::escape(alg.name) << ',' << alg.sig_size << ',' << alg.pk_size << ','
        << alg.max_sigs << ',' << cost << '\n';
  }
  return out.str();
}

const SignatureAlgorithm& find_algorithm(std::string_view name,
                                         std::span<const SignatureAlgorithm> catalog) {
  for (const auto& alg : catalog) {
    if (alg.name == name) return alg;
  }
  throw LookupError("Requested algorithm type not found.");
}

}  // namespace tufsim

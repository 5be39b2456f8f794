// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "test_support.h"
#include "tufsim/algorithm_catalog.h"
#include "tufsim/cli.h"
#include "tufsim/runner.h"
#include "tufsim/schedule.h"

namespace tufsim {
namespace {

using testing::make_alg;
using testing::ymd;

constexpr double kCostTolerance = 1e-6;
const Date kStart = ymd(2020, 1, 1);

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

RunResult golden(std::uint64_t max_sigs) {
  const auto catalog = testing::one_alg_catalog(100, 50, max_sigs, 1.0);
  return run_scenario(default_architecture(), UniformAssignment{"AlgA"},
                      testing::events_on(kStart, {2, 6}),
                      generate_ticks(kStart, ymd(2020, 1, 10), Cadence::kDaily), catalog);
}

Outcome golden_trace_a() {
  Outcome o;
  const RunResult r = golden(1'000'000);
  o.require(r.total_signatures == 17, "signatures " + std::to_string(r.total_signatures));
  o.require(r.sig_bytes == 1700, "sig bytes " + std::to_string(r.sig_bytes));
  o.require(r.pk_bytes == 200, "pk bytes " + std::to_string(r.pk_bytes));
  o.require(std::abs(r.cost - 17.0) <= kCostTolerance, "cost " + std::to_string(r.cost));
  o.require(r.rollover_events == 4, "rollovers " + std::to_string(r.rollover_events));
  o.require(r.root_publications == 1, "root files " + std::to_string(r.root_publications));
  const auto cf = testing::closed_form(10, 2, false, 50);
  o.require(cf.signatures == r.total_signatures && cf.pk_bytes == r.pk_bytes,
            "closed form disagrees");
  return o;
}

Outcome golden_trace_b() {
  Outcome o;
  const RunResult r = golden(4);
  o.require(r.total_signatures == 19, "signatures " + std::to_string(r.total_signatures));
  o.require(r.sig_bytes == 1900, "sig bytes " + std::to_string(r.sig_bytes));
  o.require(r.pk_bytes == 600, "pk bytes " + std::to_string(r.pk_bytes));
  o.require(std::abs(r.cost - 19.0) <= kCostTolerance, "cost " + std::to_string(r.cost));
  o.require(r.rollover_events == 6, "rollovers " + std::to_string(r.rollover_events));
  o.require(r.root_publications == 3, "root files " + std::to_string(r.root_publications));
  const SignatureAlgorithm a = make_alg("AlgA", 100, 50, 4, 1.0);
  const SignatureAlgorithm algs[4] = {a, a, a, a};
  const auto b = testing::brute_force_default(10, {2, 6}, algs);
  o.require(b.signatures == r.total_signatures && b.pk_bytes == r.pk_bytes &&
                b.rollovers == r.rollover_events && b.roots == r.root_publications,
            "brute-force model disagrees");
  return o;
}

Outcome closed_form_equivalence() {
  Outcome o;
  std::mt19937_64 rng(20200101);
  const auto t0 = std::chrono::steady_clock::now();
  const Architecture arch = default_architecture();
  for (int iter = 0; iter < 200 && o.pass; ++iter) {
    const std::uint64_t days = 1 + rng() % 400;
    const std::uint64_t pk = rng() % 5000;
    const auto catalog = testing::one_alg_catalog(1 + rng() % 5000, pk, 1'000'000, 1.5);
    std::set<std::uint64_t> offsets;
    std::uniform_int_distribution<std::uint64_t> day(0, days - 1);
    for (std::uint64_t i = 0, n = rng() % (days + 1); i < n; ++i) offsets.insert(day(rng));
    const RunResult r =
        run_scenario(arch, UniformAssignment{"AlgA"}, testing::events_on(kStart, offsets),
                     generate_ticks(kStart, add_days(kStart, days - 1), Cadence::kDaily), catalog);
    const std::uint64_t e = offsets.size();
    const std::uint64_t e1 = offsets.count(0);
    o.require(r.total_signatures == days + 3 + 2 * (e - e1),
              "scenario " + std::to_string(iter) + " signatures");
    o.require(r.pk_bytes == 4 * pk, "scenario " + std::to_string(iter) + " pk bytes");
  }
  const double elapsed = seconds_since(t0);
  o.require(elapsed < 5.0, "runtime " + std::to_string(elapsed) + " s");
  if (o.pass) o.detail = std::to_string(elapsed) + " s";
  return o;
}

// Random architecture with 1-2 instances per role plus random scripted
// changes; per-role limits drawn from {1, 2, 3, 5}.
struct FuzzCase {
  Architecture arch;
  AlgorithmCatalog catalog;
  PerRoleAssignment assignment{"fuzz", {}};
  EventCalendar calendar;
  std::vector<Tick> ticks;
};

FuzzCase make_fuzz_case(std::mt19937_64& rng, std::uint64_t size_scale = 1) {
  static constexpr std::uint64_t kLimits[] = {1, 2, 3, 5};
  FuzzCase c;
  c.arch.device_name = "fuzz";
  std::vector<std::string> names;
  auto new_alg = [&](const std::string& role) {
    c.catalog.push_back(make_alg("alg" + std::to_string(c.catalog.size()),
                                 size_scale * (1 + rng() % 200), size_scale * (rng() % 100),
                                 kLimits[rng() % 4], static_cast<double>(rng() % 40) / 8.0));
    c.assignment.by_role[role] = c.catalog.back().name;
  };
  for (RoleType type : kAllRoleTypes) {
    for (int i = 1, n = 1 + static_cast<int>(rng() % 2); i <= n; ++i) {
      std::string name = std::string(to_string(type)) + " " + std::to_string(i);
      c.arch.role_specs.push_back({name, type, "", rng() % 5 == 0});
      names.push_back(name);
      new_alg(name);
    }
  }
  const std::uint64_t days = 1 + rng() % 90;
  const Cadence cadence = rng() % 4 == 0 ? Cadence::kHourly : Cadence::kDaily;
  c.ticks = generate_ticks(kStart, add_days(kStart, static_cast<std::int64_t>(days) - 1), cadence);
  for (std::uint64_t i = 0, n = rng() % (days + 1); i < n; ++i) {
    c.calendar.update_events.emplace(add_days(kStart, rng() % days),
                                     "Target " + std::to_string(1 + rng() % 3));
  }
  for (std::uint64_t i = 0, n = rng() % 8; i < n; ++i) {
    const Date date = add_days(kStart, rng() % days);
    switch (rng() % 3) {
      case 0: {
        const RoleType type = kAllRoleTypes[rng() % 4];
        std::string name = std::string(to_string(type)) + " " + std::to_string(1 + rng() % 3);
        if (!c.assignment.by_role.count(name)) new_alg(name);
        c.calendar.role_actions.push_back({date, AddRoleAction{name, type, ""}});
        break;
      }
      case 1:
        c.calendar.role_actions.push_back({date, RemoveRoleAction{names[rng() % names.size()]}});
        break;
      default:
        c.calendar.role_actions.push_back(
            {date, SetReserveAction{names[rng() % names.size()], rng() % 2 == 0}});
    }
  }
  std::stable_sort(c.calendar.role_actions.begin(), c.calendar.role_actions.end(),
                   [](const DatedAction& a, const DatedAction& b) { return a.date < b.date; });
  return c;
}

Outcome invariant_fuzz() {
  Outcome o;
  std::mt19937_64 rng(500);
  std::uint64_t violations = 0, ticks_checked = 0;
  for (int iter = 0; iter < 500; ++iter) {
    const FuzzCase c = make_fuzz_case(rng);
    LedgerTotals prev{};
    auto observer = [&](const Tick&, const TickReport&, const Repository& repo) {
      ++ticks_checked;
      const LedgerTotals now = repo.ledger_totals();
      std::uint64_t lifetime = repo.retired_signatures();
      for (const auto& r : repo.roles()) {
        if (r.num_sigs > r.algorithm.max_sigs) ++violations;
        if (r.lifetime_sigs < r.num_sigs) ++violations;
        lifetime += r.lifetime_sigs;
      }
      if (lifetime != now.signatures) ++violations;
      if (now.sig_bytes < prev.sig_bytes || now.pk_bytes < prev.pk_bytes ||
          now.cost < prev.cost || now.signatures < prev.signatures ||
          now.rollover_events < prev.rollover_events ||
          now.root_publications < prev.root_publications) {
        ++violations;
      }
      prev = now;
    };
    run_scenario(c.arch, c.assignment, c.calendar, c.ticks, c.catalog, observer);
  }
  o.require(violations == 0, std::to_string(violations) + " violations");
  if (o.pass) o.detail = std::to_string(ticks_checked) + " ticks checked";
  return o;
}

Outcome linearity() {
  Outcome o;
  std::mt19937_64 rng(50);
  for (int iter = 0; iter < 50 && o.pass; ++iter) {
    // Same generator state for every scale so only the sizes differ.
    const std::uint64_t case_seed = rng();
    std::mt19937_64 base_rng(case_seed);
    const FuzzCase base = make_fuzz_case(base_rng);
    const RunResult r1 = run_scenario(base.arch, base.assignment, base.calendar, base.ticks,
                                      base.catalog);
    for (std::uint64_t k : {2, 10}) {
      std::mt19937_64 scaled_rng(case_seed);
      const FuzzCase scaled = make_fuzz_case(scaled_rng, k);
      const RunResult rk = run_scenario(scaled.arch, scaled.assignment, scaled.calendar,
                                        scaled.ticks, scaled.catalog);
      const std::string tag = "scenario " + std::to_string(iter) + " k=" + std::to_string(k);
      o.require(rk.sig_bytes == k * r1.sig_bytes, tag + " sig bytes");
      o.require(rk.pk_bytes == k * r1.pk_bytes, tag + " pk bytes");
      o.require(rk.total_signatures == r1.total_signatures, tag + " signatures");
      o.require(rk.rollover_events == r1.rollover_events, tag + " rollovers");
    }
  }
  return o;
}

Outcome poisson() {
  Outcome o;
  const Date end = add_days(kStart, 999);
  for (std::uint64_t seed : {0ull, 7ull, 123456789ull}) {
    const auto a = generate_poisson_events(0.1, kStart, end, seed, "Target 1");
    const auto b = generate_poisson_events(0.1, kStart, end, seed, "Target 1");
    o.require(a == b, "calendar differs for seed " + std::to_string(seed));
    std::string ta, tb;
    for (const auto& e : a.update_events) ta += format_date(e.first) + "," + e.second + "\n";
    for (const auto& e : b.update_events) tb += format_date(e.first) + "," + e.second + "\n";
    o.require(ta == tb, "serialized calendar differs");
  }
  int inside = 0;
  std::uint64_t lo = ~0ull, hi = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto n = generate_poisson_events(0.1, kStart, end, seed, "Target 1").update_events.size();
    lo = std::min<std::uint64_t>(lo, n);
    hi = std::max<std::uint64_t>(hi, n);
    if (n >= 61 && n <= 139) ++inside;
  }
  o.require(inside >= 99, std::to_string(inside) + "/100 seeds in [61, 139]");
  if (o.pass) {
    o.detail = std::to_string(inside) + "/100 seeds in range, counts " + std::to_string(lo) +
               ".." + std::to_string(hi);
  }
  return o;
}

Outcome throughput() {
  Outcome o;
  const Architecture arch = default_architecture();
  const auto events = generate_poisson_events(0.1, kStart, ymd(2029, 12, 31), 1, "Target 1");
  char buf[160];

  auto t0 = std::chrono::steady_clock::now();
  const auto catalog = testing::one_alg_catalog(1456, 56, 1024, 0.8);
  const auto year = generate_ticks(kStart, ymd(2020, 12, 31), Cadence::kDaily);
  run_scenario(arch, UniformAssignment{"AlgA"}, events, year, catalog);
  const double one_year = seconds_since(t0);
  o.require(year.size() == 366, "year tick count");
  o.require(one_year < 0.1, "one-year run " + std::to_string(one_year) + " s");

  AlgorithmCatalog many;
  std::vector<AlgorithmAssignment> assignments;
  for (int i = 0; i < 100; ++i) {
    many.push_back(make_alg("A" + std::to_string(i), 64 + i, 32 + i, 1 + i * 37, 0.1 * i));
    assignments.emplace_back(UniformAssignment{many.back().name});
  }
  t0 = std::chrono::steady_clock::now();
  const auto ticks = generate_ticks(kStart, ymd(2020, 12, 31), Cadence::kDaily);
  run_sweep(arch, assignments, events, ticks, many);
  const double sweep = seconds_since(t0);
  o.require(sweep < 1.0, "100-algorithm sweep " + std::to_string(sweep) + " s");

  t0 = std::chrono::steady_clock::now();
  const auto hourly = generate_ticks(kStart, ymd(2029, 12, 31), Cadence::kHourly);
  run_scenario(arch, UniformAssignment{"AlgA"}, events, hourly, catalog);
  const double decade = seconds_since(t0);
  o.require(hourly.size() < 88000, "hourly tick count " + std::to_string(hourly.size()));
  o.require(decade < 10.0, "10-year hourly run " + std::to_string(decade) + " s");

  std::snprintf(buf, sizeof buf, "1y daily %.4f s, 100-alg sweep %.4f s, 10y hourly (%zu ticks) %.4f s",
                one_year, sweep, hourly.size(), decade);
  if (o.pass) o.detail = buf;
  return o;
}

Outcome csv_contracts() {
  namespace fs = std::filesystem;
  Outcome o;
  const std::string catalog_text =
      "  Name ,Signature Size ,  Public Key Size,Max Signatures  , Computational Cost\n"
      "LMS_H20, 2644, 56, 1E6, 0.85\n"
      "Ed25519, 64, 32, 1E18, 0.2\n"
      "XMSS_H10, 2500, 64, 1024, 1.1\n";
  const auto catalog = parse_algorithm_catalog(catalog_text);
  o.require(catalog.size() == 3, "catalog size");
  if (!o.pass) return o;
  o.require(catalog[0].name == "LMS_H20" && catalog[0].sig_size == 2644 &&
                catalog[0].pk_size == 56 && catalog[0].max_sigs == 1'000'000 &&
                catalog[0].cost == 0.85,
            "LMS_H20 fields");
  o.require(catalog[1].max_sigs == 1'000'000'000'000'000'000ull, "1E18 max signatures");

  std::vector<AlgorithmAssignment> assignments;
  for (const auto& a : catalog) assignments.emplace_back(UniformAssignment{a.name});
  const auto results =
      run_sweep(default_architecture(), assignments, testing::events_on(kStart, {2, 6}),
                generate_ticks(kStart, ymd(2020, 12, 31), Cadence::kDaily), catalog);
  const std::string report = emit_report_csv(results);
  const auto back = parse_report_csv(report);
  o.require(emit_report_csv(back) == report, "report round trip");
  for (std::size_t i = 0; i < back.size() && i < results.size(); ++i) {
    o.require(back[i].sig_bytes == results[i].sig_bytes &&
                  back[i].pk_bytes == results[i].pk_bytes &&
                  back[i].total_signatures == results[i].total_signatures &&
                  std::abs(back[i].cost - results[i].cost) <= kCostTolerance,
              "report row " + std::to_string(i));
  }

  const fs::path dir = fs::temp_directory_path() / "tufsim_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::ofstream(dir / "algorithms.csv") << catalog_text;
  std::ofstream(dir / "device_A.csv") << "Date\n2020-01-03\n2020-01-07\n";
  std::ostringstream out, err;
  const int status = run_cli({"--algorithms", (dir / "algorithms.csv").string(), "--events",
                              (dir / "device_A.csv").string(), "--start", "2020-01-01", "--end",
                              "2021-01-01"},
                             out, err);
  o.require(status == 0, "cli exit " + std::to_string(status) + ": " + err.str());
  const auto rows = parse_report_csv(out.str());
  o.require(rows.size() == catalog.size(), "cli rows " + std::to_string(rows.size()));
  for (std::size_t i = 0; i < rows.size() && i < catalog.size(); ++i) {
    o.require(rows[i].assignment == catalog[i].name && rows[i].device_name == "Device_A",
              "cli row " + std::to_string(i));
  }
  std::ostringstream out2, err2;
  run_cli({"--algorithms", (dir / "algorithms.csv").string(), "--events",
           (dir / "device_A.csv").string(), "--start", "2020-01-01", "--end", "2021-01-01"},
          out2, err2);
  o.require(out2.str() == out.str(), "repeated invocation differs");
  fs::remove_all(dir);
  return o;
}

}  // namespace
}  // namespace tufsim

int main() {
  using tufsim::Outcome;
  struct Criterion {
    const char* name;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria = {
      {"1. golden trace A (no rollover)", tufsim::golden_trace_a},
      {"2. golden trace B (max_sigs = 4)", tufsim::golden_trace_b},
      {"3. closed-form oracle, 200 random scenarios, < 5 s", tufsim::closed_form_equivalence},
      {"4. invariant fuzz, 500 scenarios", tufsim::invariant_fuzz},
      {"5. ledger linearity, k in {2, 10}, 50 scenarios", tufsim::linearity},
      {"6. Poisson determinism and calibration", tufsim::poisson},
      {"7. throughput", tufsim::throughput},
      {"8. CSV contracts and CLI sweep", tufsim::csv_contracts},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] %s%s%s\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.empty() ? "" : " -- ",
                o.detail.c_str());
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}

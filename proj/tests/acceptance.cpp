// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure. Runtime budgets are wall-clock and measured in-process.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cli.hpp"
#include "oracle.hpp"
#include "zaremba/engines.hpp"
#include "zaremba/json_io.hpp"

namespace {

using namespace zaremba;
using Clock = std::chrono::steady_clock;

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

struct CliResult {
  int code;
  std::string out;
};

CliResult cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::main_entry(args, out, err);
  return {code, out.str()};
}

// Plain repeated multiplication; deliberately not the library's power().
Integer naive_power(unsigned base, std::uint64_t k) {
  Integer r = 1;
  for (std::uint64_t i = 0; i < k; ++i) r *= base;
  return r;
}

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "zaremba_acceptance";
  std::filesystem::create_directories(dir);
  return dir;
}

Check counterexamples() {
  Check c;
  for (const char* d : {"6", "54", "150"}) {
    const auto four = cli({"check", d, "4"});
    c.require(four.code == 1 && four.out == "none\n", std::string("check ") + d + " 4");
    const auto five = cli({"check", d, "5"});
    c.require(five.code == 0 && five.out != "none\n", std::string("check ") + d + " 5");
  }
  return c;
}

Check strong_conjecture_scan() {
  Check c;
  const unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  const auto r = cli({"scan", "2", "10000", "5", "--jobs", std::to_string(jobs)});
  const auto report = json::scan_report_from_json(nlohmann::json::parse(r.out));
  c.require(r.code == 0 && report.exceptions.empty() && report.lo == 2 && report.hi == 10000,
            "exception set not empty: " + r.out);
  return c;
}

Check corollary_12_18() {
  Check c;
  const auto dir = scratch_dir();
  for (unsigned base : {12u, 18u}) {
    const auto r = cli({"--format", "json", "corollary", std::to_string(base), "--kmax", "64"});
    c.require(r.code == 0, "corollary " + std::to_string(base) + " exit code");
    const auto doc = nlohmann::json::parse(r.out);
    c.require(doc["rows"].size() == 64, "row count");
    for (const auto& row : doc["rows"]) {
      const std::uint64_t k = row["k"].get<std::uint64_t>();
      const Certificate cert = json::certificate_from_json(row["certificate"]);
      const std::string tag = std::to_string(base) + "^" + std::to_string(k);
      c.require(cert.denominator == naive_power(base, k), tag + " denominator");
      c.require(cert.cf.max_quotient() <= 5, tag + " quotient bound");
      c.require(satisfies_end_condition(cert.cf, 5), tag + " end condition");
      const auto file = (dir / ("cert_" + std::to_string(base) + "_" + std::to_string(k) + ".json")).string();
      std::ofstream(file) << row["certificate"].dump();
      const auto v = cli({"verify", file});
      c.require(v.code == 0 && v.out == "ok\n", tag + " verify");
    }
  }
  return c;
}

Check seed_fractions() {
  Check c;
  const auto a = check_seed(2, 3);
  const auto b = check_seed(3, 2);
  c.require(a && b, "seed pair missing");
  if (!a || !b) return c;
  const auto q = [](std::initializer_list<int> v) { return ContinuedFraction(oracle::ints(v)); };
  c.require(a->witness_d.cf == q({2, 2, 2}), "12 seed");
  c.require(a->witness_xd.cf == q({4, 1, 4}), "24 seed");
  c.require(b->witness_d.cf == q({3, 1, 1, 2}), "18 seed");
  c.require(b->witness_xd.cf == q({3, 5, 1, 2}), "54 seed");
  return c;
}

Check folding_properties() {
  Check c;
  std::mt19937_64 rng(20240501);
  std::uniform_int_distribution<int> zdist(1, 9);
  int cases = 0, multiset_cases = 0;
  while (cases < 10000) {
    const ContinuedFraction cf(oracle::random_quotients(rng, 12, 9, 2));
    const FoldStep step(zdist(rng));
    if (cf.size() == 1 && step.z() == 1 && cf.front() < 3) continue;
    ++cases;
    const ProperFraction f = evaluate(cf);
    const ContinuedFraction folded = z_fold(cf, step);
    const auto nested = oracle::nested_value({folded.quotients().begin(), folded.quotients().end()});
    const Integer& b = f.numerator();
    const Integer& d = f.denominator();
    const Integer num = step.z() * b * d + (cf.size() % 2 == 0 ? 1 : -1);
    const Integer den = step.z() * d * d;
    c.require(gcd(num, den) == 1, "reducedness " + cf.str());
    c.require(nested.num == num && nested.den == den, "value identity " + cf.str());
    c.require(folded_value(f, parity_of(cf), step) == ProperFraction(num, den), "closed form");
    if (cf.size() >= 2) {
      ++multiset_cases;
      c.require(fold_multiset_check(cf, step), "multiset " + cf.str());
    }
  }
  c.require(multiset_cases > 5000, "too few multiset cases");
  return c;
}

Check matrix_representation() {
  Check c;
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 1000; ++trial) {
    const ContinuedFraction cf(oracle::random_quotients(rng, 12, 9));
    const auto conv = convergents(cf);
    Matrix2 m = Matrix2::flip();
    for (std::size_t i = 0; i < cf.size(); ++i) {
      m = m * Matrix2::quotient(cf[i]);
      const auto& p = conv[i];
      c.require(m == Matrix2{p.p_curr, p.p_prev, p.q_curr, p.q_prev}, "prefix " + cf.str());
      const Integer det = p.p_curr * p.q_prev - p.p_prev * p.q_curr;
      c.require(det == ((p.index + 1) % 2 == 0 ? 1 : -1), "determinant " + cf.str());
    }
    c.require(quotient_product(reverse_quotients(cf)) == quotient_product(cf.quotients()).transpose(),
              "transpose " + cf.str());
  }
  return c;
}

bool among_exhaustive(const Certificate& cert) {
  const auto all = all_witnesses(cert.denominator, cert.bound);
  return std::any_of(all.begin(), all.end(), [&](const ZarembaWitness& w) {
    return w.b == cert.numerator && w.cf == cert.cf;
  });
}

Check old_algorithm() {
  Check c;
  const auto five = check_seed(1, 5);
  c.require(five.has_value(), "seed for 5");
  if (!five) return c;
  for (std::uint64_t k = 1; k <= 32; ++k) {
    const auto cert = certify_alg2(*five, k);
    c.require(cert.bound == 4 && verify_certificate(cert), "5^" + std::to_string(k));
    c.require(cert.denominator == naive_power(5, k), "5^" + std::to_string(k) + " denominator");
    if (k <= 3) c.require(among_exhaustive(cert), "5^" + std::to_string(k) + " exhaustive");
  }
  // 6 = 6^1 has only [0;6] and [0;1,5]: it is 5-Zaremba, but no expansion
  // meets the end condition, so k = 1 is settled by the exhaustive oracle.
  c.require(is_zaremba(6, 5).has_value(), "6 is 5-Zaremba");
  try {
    certify_alg1(6, 1, 3);
    c.require(false, "6^1 unexpectedly certified");
  } catch (const NoBaseWitness&) {
  }
  for (std::uint64_t k = 2; k <= 32; ++k) {
    const auto cert = certify_alg1(6, k, 3);
    c.require(cert.bound == 5 && verify_certificate(cert), "6^" + std::to_string(k));
    c.require(cert.denominator == naive_power(6, k), "6^" + std::to_string(k) + " denominator");
    if (k <= 3) c.require(among_exhaustive(cert), "6^" + std::to_string(k) + " exhaustive");
  }
  return c;
}

Check doubly_exponential_chain() {
  Check c;
  const ZarembaWitness seed{12, 5, 5, ContinuedFraction(oracle::ints({2, 2, 2}))};
  for (unsigned t = 0; t <= 5; ++t) {
    const auto cert = one_fold_chain(seed, t);
    c.require(cert.denominator == naive_power(12, std::uint64_t{1} << t), "t=" + std::to_string(t));
    c.require(cert.cf.max_quotient() <= 5, "bound at t=" + std::to_string(t));
  }
  return c;
}

struct Criterion {
  const char* id;
  const char* name;
  double budget_seconds;  // 0 = no runtime requirement
  std::function<Check()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"AC1", "counterexamples 6, 54, 150 for A=4; witnesses for A=5", 1.0, counterexamples},
      {"AC2", "scan 2..10000 with A=5 has no exceptions", 60.0, strong_conjecture_scan},
      {"AC3", "powers of 12 and 18 up to k=64 certified and verified", 10.0, corollary_12_18},
      {"AC4", "seed expansions [2,2,2] [4,1,4] [3,1,1,2] [3,5,1,2]", 0.0, seed_fractions},
      {"AC5", "folding lemma on 10^4 random cases", 10.0, folding_properties},
      {"AC6", "matrix representation on 10^3 random expansions", 0.0, matrix_representation},
      {"AC7", "powers of 5 (x=1,y=5) and 6 (d-1 algorithm) up to k=32", 10.0, old_algorithm},
      {"AC8", "1-fold chain from 5/12 reaches 12^(2^t), t<=5", 0.0, doubly_exponential_chain},
  };

  int failures = 0;
  for (const auto& crit : criteria) {
    const auto start = Clock::now();
    Check result;
    try {
      result = crit.run();
    } catch (const std::exception& e) {
      result = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (crit.budget_seconds > 0 && secs >= crit.budget_seconds)
      result.require(false, "runtime budget exceeded");
    std::printf("[%s] %s %s (%.3f s%s)%s%s\n", result.ok ? "PASS" : "FAIL", crit.id, crit.name,
                secs,
                crit.budget_seconds > 0 ? (", budget " + std::to_string(int(crit.budget_seconds)) + " s").c_str()
                                        : "",
                result.ok ? "" : ": ", result.detail.c_str());
    if (!result.ok) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
  std::filesystem::remove_all(scratch_dir());
  return failures == 0 ? 0 : 1;
}

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zaremba/core_cf.hpp"
#include "zaremba/folding.hpp"
#include "zaremba/zaremba.hpp"

namespace zaremba {

// Condition (1) on a certificate expansion: 2 <= a_1, a_n <= A - 1.
inline bool satisfies_end_condition(const ContinuedFraction& cf, const Integer& bound) {
  const Integer hi = bound - 1;
  return cf.front() >= 2 && cf.front() <= hi && cf.back() >= 2 && cf.back() <= hi;
}

enum class SeedSelector { D, XD };

inline std::string_view seed_name(SeedSelector s) { return s == SeedSelector::D ? "d" : "xd"; }

/// One fold of a schedule: the resolved multiplier plus a display tag
/// ("1", "x", "y", "xy", "d").
struct ScheduledFold {
  Integer multiplier;
  std::string tag;

  friend bool operator==(const ScheduledFold& l, const ScheduledFold& r) {
    return l.multiplier == r.multiplier;
  }
};

/// Seed selector plus the ordered folds that take the seed denominator to d^k.
///
/// `seed_exponent` is the power of d carried by a SeedD seed. Schedules for the
/// (x, y) algorithm always start from d or x*d, so it stays 1 there; the d - 1
/// algorithm may start from a searched witness for d^e with e > 1.
struct FoldSchedule {
  SeedSelector seed = SeedSelector::D;
  std::uint64_t seed_exponent = 1;
  std::vector<ScheduledFold> steps;
  std::uint64_t k = 1;

  friend bool operator==(const FoldSchedule&, const FoldSchedule&) = default;
};

struct SeedPair {
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  ZarembaWitness witness_d;
  ZarembaWitness witness_xd;

  Integer d() const { return Integer(x) * x * y; }
  Integer bound() const { return Integer(x) * y - 1; }
};

/// Self-verifiable proof that (x^2 y)^k is A-Zaremba.
struct Certificate {
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  std::uint64_t k = 0;
  Integer bound;
  ContinuedFraction cf;
  Integer numerator;
  Integer denominator;
  FoldSchedule schedule;
};

struct TrailingForm {
  unsigned j = 0;
  std::uint64_t m = 0;

  friend bool operator==(const TrailingForm&, const TrailingForm&) = default;
};

/// For odd k: the unique j with k = 2^j - 1 (mod 2^{j+1}), i.e. the number of
/// trailing one bits, and m = (k - (2^j - 1)) / 2^{j+1}.
inline TrailingForm trailing_form(std::uint64_t k) {
  if (k % 2 == 0) throw EvenInput("trailing_form needs odd k, got " + std::to_string(k));
  const auto j = static_cast<unsigned>(std::countr_one(k));
  const std::uint64_t m = j >= 63 ? 0 : k >> (j + 1);
  return {j, m};
}

namespace detail {

inline Integer seed_denominator(const FoldSchedule& s, std::uint64_t x, std::uint64_t y) {
  const Integer d = Integer(x) * x * y;
  return s.seed == SeedSelector::D ? power(d, s.seed_exponent) : Integer(x) * d;
}

inline void check_xy(std::uint64_t x, std::uint64_t y) {
  if (x < 1 || y < 1) throw BadParameters("x and y must be positive");
  if (Integer(x) * y < 4) throw BadParameters("x*y must be at least 4");
}

inline std::string tag_for(const Integer& z, std::uint64_t x, std::uint64_t y) {
  if (z == 1) return "1";
  if (z == x) return "x";
  if (z == y) return "y";
  if (z == Integer(x) * y) return "xy";
  return to_decimal(z);
}

// Applies the folds one at a time. Each step is checked three ways: the
// expansion's value against the closed form, the denominator against the
// z*D^2 chain predicted from the schedule alone, and the quotients against
// the bound and the end condition.
inline std::pair<ContinuedFraction, ProperFraction> apply_folds(
    ContinuedFraction cf, ProperFraction value, std::span<const ScheduledFold> steps,
    const Integer& bound) {
  if (cf.max_quotient() > bound || !satisfies_end_condition(cf, bound))
    throw ConditionViolated("seed " + cf.str() + " violates the end condition");
  Integer predicted = value.denominator();
  for (const ScheduledFold& s : steps) {
    if (cf.size() < 2)
      throw FoldPreconditionViolated("bound preservation needs at least two quotients");
    const FoldStep step(s.multiplier);
    predicted = step.z() * predicted * predicted;
    ProperFraction next = folded_value(value, parity_of(cf), step);
    cf = z_fold(cf, step);
    if (next.denominator() != predicted)
      throw ScheduleMismatch("denominator " + to_decimal(next.denominator()) +
                             " deviates from the predicted chain");
    if (evaluate(cf) != next)
      throw ScheduleMismatch("folded expansion does not evaluate to " + next.str());
    if (cf.max_quotient() > bound || !satisfies_end_condition(cf, bound))
      throw ConditionViolated("fold by " + s.tag + " produced " + cf.str());
    value = std::move(next);
  }
  return {std::move(cf), std::move(value)};
}

inline void build_alg2(std::uint64_t x, std::uint64_t y, std::uint64_t k, FoldSchedule& s) {
  const auto push = [&](const Integer& z, const char* tag) { s.steps.push_back({z, tag}); };
  const Integer zx = x, zy = y, zxy = Integer(x) * y;
  if (k == 1) {
    s.seed = SeedSelector::D;
    return;
  }
  if (k % 2 == 0) {
    build_alg2(x, y, k / 2, s);
    push(1, "1");
    return;
  }
  const auto [j, m] = trailing_form(k);
  if (m == 0) {
    // k = 2^j - 1 with j >= 2: start from x*d.
    s.seed = SeedSelector::XD;
    for (unsigned i = 0; i + 2 < j; ++i) push(zxy, "xy");
    push(zy, "y");
    return;
  }
  build_alg2(x, y, m, s);
  push(zx, "x");
  for (unsigned i = 0; i + 1 < j; ++i) push(zxy, "xy");
  push(zy, "y");
}

}  // namespace detail

/// Replays the schedule symbolically: D -> z * D^2 from the seed denominator.
inline Integer replay_schedule(const FoldSchedule& s, std::uint64_t x, std::uint64_t y) {
  Integer den = detail::seed_denominator(s, x, y);
  for (const ScheduledFold& step : s.steps) den = step.multiplier * den * den;
  return den;
}

/// Smallest-numerator seeds for d = x^2 y and x d with quotients <= xy - 1
/// and condition (1). For x = 1 both seeds are the same witness.
inline std::optional<SeedPair> check_seed(std::uint64_t x, std::uint64_t y) {
  detail::check_xy(x, y);
  const Integer d = Integer(x) * x * y;
  const Integer bound = Integer(x) * y - 1;
  const auto conditioned = [&](const ContinuedFraction& cf) {
    return satisfies_end_condition(cf, bound);
  };
  auto wd = find_witness(d, bound, conditioned);
  if (!wd) return std::nullopt;
  if (x == 1) return SeedPair{x, y, *wd, *wd};
  auto wxd = find_witness(Integer(x) * d, bound, conditioned);
  if (!wxd) return std::nullopt;
  return SeedPair{x, y, std::move(*wd), std::move(*wxd)};
}

inline FoldSchedule schedule_alg2(std::uint64_t x, std::uint64_t y, std::uint64_t k) {
  detail::check_xy(x, y);
  if (k < 1) throw BadParameters("exponent k must be >= 1");
  FoldSchedule s;
  s.k = k;
  detail::build_alg2(x, y, k, s);
  const Integer d = Integer(x) * x * y;
  if (replay_schedule(s, x, y) != power(d, k))
    throw ScheduleMismatch("schedule for k=" + std::to_string(k) + " misses d^k");
  return s;
}

inline Certificate certify_alg2(const SeedPair& seed, std::uint64_t k) {
  FoldSchedule schedule = schedule_alg2(seed.x, seed.y, k);
  const Integer bound = seed.bound();
  const ZarembaWitness& start =
      schedule.seed == SeedSelector::D ? seed.witness_d : seed.witness_xd;
  if (start.d != detail::seed_denominator(schedule, seed.x, seed.y) || start.bound != bound)
    throw BadParameters("seed witness does not match x=" + std::to_string(seed.x) +
                        ", y=" + std::to_string(seed.y));
  auto [cf, value] = detail::apply_folds(start.cf, start.fraction(), schedule.steps, bound);
  return Certificate{seed.x, seed.y, k, bound, std::move(cf),
                     value.numerator(), value.denominator(), std::move(schedule)};
}

/// Powers of d with quotients bounded by A (default d - 1): k <= base_depth
/// comes from an exhaustive search, larger k from a 1-fold (k even) or a
/// d-fold (k odd) of the certificate for floor(k/2).
///
/// A base witness that still has folds applied to it must have at least two
/// quotients; the end condition is not preserved by folds of [0;a].
inline Certificate certify_alg1(std::uint64_t d, std::uint64_t k, std::uint64_t base_depth = 3,
                                std::optional<Integer> bound_override = std::nullopt) {
  if (d < 2) throw BadParameters("d must be >= 2");
  const Integer bound = bound_override.value_or(Integer(d) - 1);
  if (bound < 2) throw BadParameters("quotient bound must be >= 2");
  if (Integer(d) > bound + 1) throw BadParameters("a d-fold needs d <= A + 1");
  if (k < 1) throw BadParameters("exponent k must be >= 1");
  if (base_depth < 1) throw BadParameters("base depth must be >= 1");

  FoldSchedule schedule;
  schedule.k = k;
  std::uint64_t e = k;
  while (e > base_depth) {
    if (e % 2 == 0)
      schedule.steps.push_back({1, "1"});
    else
      schedule.steps.push_back({d, "d"});
    e /= 2;
  }
  std::reverse(schedule.steps.begin(), schedule.steps.end());
  schedule.seed = SeedSelector::D;
  schedule.seed_exponent = e;

  const bool folded = !schedule.steps.empty();
  auto base = find_witness(power(Integer(d), e), bound, [&](const ContinuedFraction& cf) {
    return satisfies_end_condition(cf, bound) && (!folded || cf.size() >= 2);
  });
  if (!base)
    throw NoBaseWitness("no conditioned witness for " + std::to_string(d) + "^" +
                        std::to_string(e) + " with bound " + to_decimal(bound));

  if (replay_schedule(schedule, 1, d) != power(Integer(d), k))
    throw ScheduleMismatch("schedule for k=" + std::to_string(k) + " misses d^k");
  auto [cf, value] = detail::apply_folds(base->cf, base->fraction(), schedule.steps, bound);
  return Certificate{1, d, k, bound, std::move(cf),
                     value.numerator(), value.denominator(), std::move(schedule)};
}

/// t successive 1-folds of a conditioned seed: denominator d^(2^t).
inline Certificate one_fold_chain(const ZarembaWitness& seed, unsigned t) {
  if (t > 62) throw BadParameters("chain length must be <= 62");
  if (seed.cf.max_quotient() > seed.bound || !satisfies_end_condition(seed.cf, seed.bound))
    throw BadParameters("seed " + seed.cf.str() + " needs 2 <= a_1, a_n <= A - 1");
  const std::uint64_t d = to_u64(seed.d);
  FoldSchedule schedule;
  schedule.k = std::uint64_t{1} << t;
  schedule.steps.assign(t, ScheduledFold{1, "1"});
  auto [cf, value] = detail::apply_folds(seed.cf, seed.fraction(), schedule.steps, seed.bound);
  return Certificate{1, d, schedule.k, seed.bound, std::move(cf),
                     value.numerator(), value.denominator(), std::move(schedule)};
}

enum class VerifyReason {
  Ok,
  NotReduced,
  DenominatorMismatch,
  BoundExceeded,
  ConditionViolated,
  ValueMismatch,
  ScheduleMismatch,
};

inline std::string_view reason_name(VerifyReason r) {
  switch (r) {
    case VerifyReason::Ok: return "Ok";
    case VerifyReason::NotReduced: return "NotReduced";
    case VerifyReason::DenominatorMismatch: return "DenominatorMismatch";
    case VerifyReason::BoundExceeded: return "BoundExceeded";
    case VerifyReason::ConditionViolated: return "ConditionViolated";
    case VerifyReason::ValueMismatch: return "ValueMismatch";
    case VerifyReason::ScheduleMismatch: return "ScheduleMismatch";
  }
  return "Unknown";
}

struct VerifyResult {
  VerifyReason reason = VerifyReason::Ok;

  bool ok() const noexcept { return reason == VerifyReason::Ok; }
  explicit operator bool() const noexcept { return ok(); }
};

/// Re-checks a certificate from its stored fields only; no folding is done.
inline VerifyResult verify_certificate(const Certificate& c) {
  if (!(c.numerator > 0 && c.numerator < c.denominator) ||
      gcd(c.numerator, c.denominator) != 1)
    return {VerifyReason::NotReduced};
  const Integer d = Integer(c.x) * c.x * c.y;
  if (c.k < 1 || c.denominator != power(d, c.k)) return {VerifyReason::DenominatorMismatch};
  if (c.cf.max_quotient() > c.bound) return {VerifyReason::BoundExceeded};
  if (!satisfies_end_condition(c.cf, c.bound)) return {VerifyReason::ConditionViolated};
  const ProperFraction value = evaluate(c.cf);
  if (value.numerator() != c.numerator || value.denominator() != c.denominator)
    return {VerifyReason::ValueMismatch};
  if (c.schedule.k != c.k || (c.schedule.seed == SeedSelector::XD && c.schedule.seed_exponent != 1) ||
      replay_schedule(c.schedule, c.x, c.y) != c.denominator)
    return {VerifyReason::ScheduleMismatch};
  return {};
}

}  // namespace zaremba

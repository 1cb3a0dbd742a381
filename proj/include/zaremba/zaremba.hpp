#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <optional>
#include <set>
#include <thread>
#include <utility>
#include <vector>

#include "zaremba/core_cf.hpp"

namespace zaremba {

/// Proof that d is A-Zaremba: a reduced b/d whose quotients are all <= A.
struct ZarembaWitness {
  Integer d;
  Integer bound;
  Integer b;
  ContinuedFraction cf;

  ProperFraction fraction() const { return ProperFraction(b, d); }
};

/// Exceptions found by scan_range: every d in [lo, hi] that is not A-Zaremba.
struct ScanReport {
  Integer bound;
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::vector<std::uint64_t> exceptions;

  friend bool operator==(const ScanReport&, const ScanReport&) = default;
};

/// Expansion of b/d if gcd(b, d) = 1 and every quotient is <= bound;
/// gives up at the first oversized quotient.
inline std::optional<ContinuedFraction> expand_within(const Integer& b, const Integer& d,
                                                      const Integer& bound) {
  std::vector<Integer> quotients;
  Integer num = b;
  Integer den = d;
  Integer q, r;
  while (num != 0) {
    boost::multiprecision::divide_qr(den, num, q, r);
    if (q > bound) return std::nullopt;
    quotients.push_back(q);
    den = std::move(num);
    num = std::move(r);
  }
  // den now holds gcd(b, d).
  if (den != 1) return std::nullopt;
  return ContinuedFraction(std::move(quotients));
}

namespace detail {

inline void check_search_parameters(const Integer& d, const Integer& bound) {
  if (d < 2) throw BadParameters("denominator must be >= 2");
  if (bound < 1) throw BadParameters("quotient bound must be >= 1");
}

// Numerators b <= d/(A+1) have a_1 = floor(d/b) > A, so the search starts above.
inline Integer first_candidate(const Integer& d, const Integer& bound) {
  return d / (bound + 1) + 1;
}

}  // namespace detail

/// Smallest-numerator witness for d whose expansion also satisfies `accept`.
template <typename Predicate>
std::optional<ZarembaWitness> find_witness(const Integer& d, const Integer& bound,
                                           Predicate&& accept) {
  detail::check_search_parameters(d, bound);
  for (Integer b = detail::first_candidate(d, bound); b < d; ++b) {
    auto cf = expand_within(b, d, bound);
    if (cf && accept(*cf)) return ZarembaWitness{d, bound, b, std::move(*cf)};
  }
  return std::nullopt;
}

inline std::optional<ZarembaWitness> is_zaremba(const Integer& d, const Integer& bound) {
  return find_witness(d, bound, [](const ContinuedFraction&) { return true; });
}

/// Every witness for d in increasing order of numerator.
inline std::vector<ZarembaWitness> all_witnesses(const Integer& d, const Integer& bound) {
  detail::check_search_parameters(d, bound);
  std::vector<ZarembaWitness> out;
  for (Integer b = detail::first_candidate(d, bound); b < d; ++b) {
    if (auto cf = expand_within(b, d, bound)) out.push_back({d, bound, b, std::move(*cf)});
  }
  return out;
}

/// Checks every d in [lo, hi] on `jobs` worker threads. Output depends only on
/// (lo, hi, bound).
inline ScanReport scan_range(std::uint64_t lo, std::uint64_t hi, const Integer& bound,
                             unsigned jobs = 1) {
  if (lo < 2 || lo > hi) throw BadParameters("scan range needs 2 <= lo <= hi");
  if (bound < 1) throw BadParameters("quotient bound must be >= 1");
  if (jobs == 0) jobs = 1;

  const std::uint64_t count = hi - lo + 1;
  std::vector<char> missing(count, 0);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
      missing[i] = is_zaremba(Integer(lo + i), bound) ? 0 : 1;
    }
  };

  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }

  ScanReport report{bound, lo, hi, {}};
  for (std::uint64_t i = 0; i < count; ++i) {
    if (missing[i]) report.exceptions.push_back(lo + i);
  }
  return report;
}

/// All q <= limit that occur as the denominator of some [0; a_1..a_n] with
/// 1 <= a_j <= bound and a_n >= 2. Depth-first over continuant pairs
/// (q_n, q_{n-1}); appending a quotient never shrinks q, so pruning at
/// q > limit is exact.
inline std::set<Integer> enumerate_bounded_denominators(const Integer& bound,
                                                        const Integer& limit) {
  if (bound < 1) throw BadParameters("quotient bound must be >= 1");
  if (limit < 2) throw BadParameters("denominator limit must be >= 2");

  std::set<Integer> found;
  struct State {
    Integer q_curr;
    Integer q_prev;
  };
  std::vector<State> stack{{1, 0}};
  while (!stack.empty()) {
    State s = std::move(stack.back());
    stack.pop_back();
    for (Integer a = 1; a <= bound; ++a) {
      Integer q_next = a * s.q_curr + s.q_prev;
      if (q_next > limit) break;
      if (a >= 2) found.insert(q_next);
      stack.push_back({std::move(q_next), s.q_curr});
    }
  }
  return found;
}

}  // namespace zaremba

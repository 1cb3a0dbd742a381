#pragma once

#include <algorithm>
#include <vector>

#include "zaremba/core_cf.hpp"

namespace zaremba {

enum class Parity { Even, Odd };

inline Parity parity_of(const ContinuedFraction& cf) {
  return cf.size() % 2 == 0 ? Parity::Even : Parity::Odd;
}

/// Fold multiplier z >= 1.
class FoldStep {
 public:
  explicit FoldStep(Integer z) : z_(std::move(z)) {
    if (z_ < 1) throw FoldPreconditionViolated("fold multiplier must be >= 1");
  }
  const Integer& z() const noexcept { return z_; }

  friend bool operator==(const FoldStep&, const FoldStep&) = default;

 private:
  Integer z_;
};

namespace detail {

inline void check_fold_preconditions(const ContinuedFraction& cf, const FoldStep& step) {
  if (cf.front() < 2)
    throw FoldPreconditionViolated("first partial quotient must be at least 2, got " +
                                   to_decimal(cf.front()));
  if (cf.size() == 1 && step.z() == 1 && cf.front() < 3)
    throw FoldPreconditionViolated("a 1-fold of [0;a] needs a >= 3");
}

}  // namespace detail

/// Folding lemma: the expansion of b/d + (-1)^n / (z d^2) is
/// [a_1..a_n, z-1, 1, a_n-1, a_{n-1}..a_1] under the zero-merge convention.
inline ContinuedFraction z_fold(const ContinuedFraction& cf, const FoldStep& step) {
  detail::check_fold_preconditions(cf, step);
  const auto a = cf.quotients();
  std::vector<Integer> raw;
  raw.reserve(2 * a.size() + 2);
  raw.insert(raw.end(), a.begin(), a.end());
  raw.push_back(step.z() - 1);
  raw.push_back(1);
  raw.push_back(a.back() - 1);
  raw.insert(raw.end(), a.rbegin() + 1, a.rend());
  return canonicalize(raw);
}

/// (z b d + (-1)^n) / (z d^2). The sign comes from the length of the expansion
/// that is being folded, which is why the parity is passed in rather than
/// derived from the value.
inline ProperFraction folded_value(const ProperFraction& f, Parity n_parity,
                                   const FoldStep& step) {
  const Integer& b = f.numerator();
  const Integer& d = f.denominator();
  Integer num = step.z() * b * d;
  if (n_parity == Parity::Even)
    num += 1;
  else
    num -= 1;
  Integer den = step.z() * d * d;
  if (gcd(num, den) != 1)
    throw NotReduced(to_decimal(num) + "/" + to_decimal(den));
  return ProperFraction(std::move(num), std::move(den));
}

/// Compares the quotients of z_fold(cf, z), minus the mirrored copy of
/// a_1..a_{n-1}, with {a_1..a_n, z-1, 1, a_n-1} (z > 1) or
/// {a_1..a_{n-1}, a_n+1, a_n-1} (z = 1).
inline bool fold_multiset_check(const ContinuedFraction& cf, const FoldStep& step) {
  if (cf.size() < 2)
    throw FoldPreconditionViolated("multiset claim needs at least two quotients");
  const auto a = cf.quotients();
  const auto folded = z_fold(cf, step);

  std::vector<Integer> remaining(folded.quotients().begin(), folded.quotients().end());
  std::sort(remaining.begin(), remaining.end());
  for (auto it = a.begin(); it + 1 != a.end(); ++it) {
    auto pos = std::lower_bound(remaining.begin(), remaining.end(), *it);
    if (pos == remaining.end() || *pos != *it) return false;
    remaining.erase(pos);
  }

  std::vector<Integer> expected(a.begin(), a.end() - 1);
  if (step.z() > 1) {
    expected.push_back(a.back());
    expected.push_back(step.z() - 1);
    expected.push_back(1);
  } else {
    expected.push_back(a.back() + 1);
  }
  expected.push_back(a.back() - 1);
  std::sort(expected.begin(), expected.end());
  return remaining == expected;
}

}  // namespace zaremba

#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "zaremba/bigint.hpp"
#include "zaremba/errors.hpp"

namespace zaremba {

/// A reduced rational b/d with 0 < b < d.
///
/// Construction validates both invariants; every fraction handled by the
/// library lives in the open unit interval, so the integer part of
/// [0; a_1, ..., a_n] is never stored.
class ProperFraction {
 public:
  ProperFraction(Integer numerator, Integer denominator)
      : num_(std::move(numerator)), den_(std::move(denominator)) {
    if (!(num_ > 0 && num_ < den_))
      throw InvalidFraction(to_decimal(num_) + "/" + to_decimal(den_) +
                            " is not in (0,1)");
    if (gcd(num_, den_) != 1)
      throw InvalidFraction(to_decimal(num_) + "/" + to_decimal(den_) +
                            " is not reduced");
  }

  // Divides out the common factor first; still rejects values outside (0,1).
  static ProperFraction reduced(const Integer& numerator, const Integer& denominator) {
    if (numerator <= 0 || denominator <= 0)
      throw InvalidFraction("non-positive component");
    const Integer g = gcd(numerator, denominator);
    return ProperFraction(numerator / g, denominator / g);
  }

  const Integer& numerator() const noexcept { return num_; }
  const Integer& denominator() const noexcept { return den_; }

  std::string str() const { return to_decimal(num_) + "/" + to_decimal(den_); }

  friend bool operator==(const ProperFraction&, const ProperFraction&) = default;

 private:
  Integer num_;
  Integer den_;
};

/// Canonical partial quotients a_1..a_n of [0; a_1, ..., a_n].
///
/// Invariants: n >= 1, every a_j >= 1, a_n >= 2. The trailing-quotient rule
/// makes the expansion of a rational unique, so equality of two
/// ContinuedFraction values is equality of the numbers they denote.
class ContinuedFraction {
 public:
  explicit ContinuedFraction(std::vector<Integer> quotients)
      : quotients_(std::move(quotients)) {
    if (quotients_.empty())
      throw MalformedSequence("empty quotient list denotes 0");
    for (const Integer& a : quotients_) {
      if (a < 1) throw MalformedSequence("partial quotient " + to_decimal(a) + " < 1");
    }
    if (quotients_.back() < 2)
      throw MalformedSequence("final partial quotient must be at least 2");
  }

  std::span<const Integer> quotients() const noexcept { return quotients_; }
  std::size_t size() const noexcept { return quotients_.size(); }
  const Integer& front() const noexcept { return quotients_.front(); }
  const Integer& back() const noexcept { return quotients_.back(); }
  const Integer& operator[](std::size_t i) const { return quotients_[i]; }

  const Integer& max_quotient() const {
    return *std::max_element(quotients_.begin(), quotients_.end());
  }

  // "[0;a1,a2,...]"
  std::string str() const {
    std::string out = "[0;";
    for (std::size_t i = 0; i < quotients_.size(); ++i) {
      if (i != 0) out += ',';
      out += to_decimal(quotients_[i]);
    }
    out += ']';
    return out;
  }

  friend bool operator==(const ContinuedFraction&, const ContinuedFraction&) = default;

 private:
  std::vector<Integer> quotients_;
};

/// The m-th convergent p_m/q_m together with its predecessor.
struct ConvergentPair {
  Integer p_curr;
  Integer p_prev;
  Integer q_curr;
  Integer q_prev;
  std::size_t index = 0;

  friend bool operator==(const ConvergentPair&, const ConvergentPair&) = default;
};

/// 2x2 integer matrix [[a, b], [c, d]].
struct Matrix2 {
  Integer a, b, c, d;

  Matrix2 transpose() const { return {a, c, b, d}; }

  friend Matrix2 operator*(const Matrix2& l, const Matrix2& r) {
    return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d,
            l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
  }

  friend bool operator==(const Matrix2&, const Matrix2&) = default;

  static Matrix2 identity() { return {1, 0, 0, 1}; }
  // [[0,1],[1,0]], which supplies the implicit leading 0 of [0; a_1, ...].
  static Matrix2 flip() { return {0, 1, 1, 0}; }
  static Matrix2 quotient(const Integer& q) { return {q, 1, 1, 0}; }
};

// Product of [[a_j,1],[1,0]] over the list, left to right.
inline Matrix2 quotient_product(std::span<const Integer> quotients) {
  Matrix2 m = Matrix2::identity();
  for (const Integer& q : quotients) m = m * Matrix2::quotient(q);
  return m;
}

/// Euclidean algorithm on (d, b). The last quotient is always >= 2 because
/// the final division has remainder 0 and a divisor smaller than the dividend.
inline ContinuedFraction expand(const ProperFraction& f) {
  std::vector<Integer> quotients;
  Integer num = f.numerator();
  Integer den = f.denominator();
  Integer q, r;
  while (num != 0) {
    boost::multiprecision::divide_qr(den, num, q, r);
    quotients.push_back(q);
    den = std::move(num);
    num = std::move(r);
  }
  return ContinuedFraction(std::move(quotients));
}

/// Convergents p_m/q_m for m = 1..n via p_m = a_m p_{m-1} + p_{m-2}
/// (likewise q), seeded with p_0 = 0, p_{-1} = 1, q_0 = 1, q_{-1} = 0.
inline std::vector<ConvergentPair> convergents(const ContinuedFraction& cf) {
  std::vector<ConvergentPair> out;
  out.reserve(cf.size());
  Integer p_prev = 1, p_curr = 0;
  Integer q_prev = 0, q_curr = 1;
  std::size_t m = 0;
  for (const Integer& a : cf.quotients()) {
    Integer p_next = a * p_curr + p_prev;
    Integer q_next = a * q_curr + q_prev;
    p_prev = std::exchange(p_curr, std::move(p_next));
    q_prev = std::exchange(q_curr, std::move(q_next));
    out.push_back({p_curr, p_prev, q_curr, q_prev, ++m});
  }
  return out;
}

inline ProperFraction evaluate(const ContinuedFraction& cf) {
  Integer p_prev = 1, p_curr = 0;
  Integer q_prev = 0, q_curr = 1;
  for (const Integer& a : cf.quotients()) {
    Integer p_next = a * p_curr + p_prev;
    Integer q_next = a * q_curr + q_prev;
    p_prev = std::exchange(p_curr, std::move(p_next));
    q_prev = std::exchange(q_curr, std::move(q_next));
  }
  return ProperFraction(std::move(p_curr), std::move(q_curr));
}

/// Applies [..., a, 0, a', ...] = [..., a + a', ...] left to right (re-scanning
/// after every merge), then folds a trailing 1 into its predecessor.
inline ContinuedFraction canonicalize(std::span<const Integer> raw) {
  if (raw.empty()) throw MalformedSequence("empty quotient list");
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] < 0) throw MalformedSequence("negative partial quotient");
    if (raw[i] != 0) continue;
    if (i == 0 || i + 1 == raw.size())
      throw MalformedSequence("zero quotient at the end of the list");
    if (raw[i + 1] == 0) throw MalformedSequence("adjacent zero quotients");
  }

  std::vector<Integer> out(raw.begin(), raw.end());
  for (std::size_t i = 1; i + 1 < out.size();) {
    if (out[i] == 0) {
      out[i - 1] += out[i + 1];
      out.erase(out.begin() + static_cast<std::ptrdiff_t>(i),
                out.begin() + static_cast<std::ptrdiff_t>(i + 2));
      i = 1;
    } else {
      ++i;
    }
  }

  if (out.size() >= 2 && out.back() == 1) {
    out.pop_back();
    out.back() += 1;
  }
  if (out.size() == 1 && out.front() == 1)
    throw MalformedSequence("[0;1] denotes 1, not a proper fraction");
  return ContinuedFraction(std::move(out));
}

/// Reversed quotient list; the result may end in 1 and is returned raw.
inline std::vector<Integer> reverse_quotients(const ContinuedFraction& cf) {
  auto q = cf.quotients();
  return {q.rbegin(), q.rend()};
}

}  // namespace zaremba

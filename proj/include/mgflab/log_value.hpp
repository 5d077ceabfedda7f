#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>

namespace mgflab {

/// A nonnegative quantity carried as its natural logarithm.
///
/// MGF values near the strip boundary reach e^{1000} and beyond, so every
/// value produced by the engine lives here. `Divergent` stands for +infinity
/// and never exposes a magnitude; `Zero` is the exact zero.
class LogValue {
 public:
  enum class Tag { Finite, Divergent, Zero };

  constexpr LogValue() = default;

  static LogValue from_log(double log_magnitude) {
    if (std::isnan(log_magnitude)) throw std::domain_error("LogValue: NaN log magnitude");
    if (log_magnitude == -std::numeric_limits<double>::infinity()) return zero();
    if (log_magnitude == std::numeric_limits<double>::infinity()) return divergent();
    LogValue v;
    v.tag_ = Tag::Finite;
    v.log_ = log_magnitude;
    return v;
  }
  static LogValue from_linear(double x) {
    if (!(x >= 0.0)) throw std::domain_error("LogValue: negative or NaN quantity");
    if (x == 0.0) return zero();
    if (std::isinf(x)) return divergent();
    return from_log(std::log(x));
  }
  static constexpr LogValue zero() {
    LogValue v;
    v.tag_ = Tag::Zero;
    return v;
  }
  static constexpr LogValue divergent() {
    LogValue v;
    v.tag_ = Tag::Divergent;
    return v;
  }

  constexpr Tag tag() const { return tag_; }
  constexpr bool is_finite() const { return tag_ != Tag::Divergent; }
  constexpr bool is_divergent() const { return tag_ == Tag::Divergent; }
  constexpr bool is_zero() const { return tag_ == Tag::Zero; }

  /// Natural log of the quantity. Zero reads as -inf; Divergent throws.
  double log() const {
    if (tag_ == Tag::Divergent) throw std::domain_error("LogValue: divergent value has no magnitude");
    if (tag_ == Tag::Zero) return -std::numeric_limits<double>::infinity();
    return log_;
  }

  /// Linear value; refuses anything above `cap` in log scale.
  double linear(double cap = 700.0) const {
    if (tag_ == Tag::Zero) return 0.0;
    if (tag_ == Tag::Divergent || log_ > cap) throw std::overflow_error("LogValue: value exceeds linear cap");
    return std::exp(log_);
  }

  friend LogValue operator*(LogValue a, LogValue b) {
    if (a.is_zero() || b.is_zero()) {
      if (a.is_divergent() || b.is_divergent()) throw std::domain_error("LogValue: 0 * divergent");
      return zero();
    }
    if (a.is_divergent() || b.is_divergent()) return divergent();
    return from_log(a.log_ + b.log_);
  }
  friend LogValue operator/(LogValue a, LogValue b) {
    if (b.is_zero() || b.is_divergent()) throw std::domain_error("LogValue: division by 0 or divergent");
    if (a.is_zero()) return zero();
    if (a.is_divergent()) return divergent();
    return from_log(a.log_ - b.log_);
  }
  friend LogValue operator+(LogValue a, LogValue b) {
    if (a.is_divergent() || b.is_divergent()) return divergent();
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const double hi = std::max(a.log_, b.log_);
    const double lo = std::min(a.log_, b.log_);
    return from_log(hi + std::log1p(std::exp(lo - hi)));
  }
  LogValue& operator+=(LogValue b) { return *this = *this + b; }
  LogValue& operator*=(LogValue b) { return *this = *this * b; }

  friend bool operator==(const LogValue& a, const LogValue& b) {
    if (a.tag_ != b.tag_) return false;
    return a.tag_ != Tag::Finite || a.log_ == b.log_;
  }

 private:
  Tag tag_ = Tag::Zero;
  double log_ = 0.0;
};

inline std::string to_string(LogValue::Tag tag) {
  switch (tag) {
    case LogValue::Tag::Finite: return "finite";
    case LogValue::Tag::Divergent: return "divergent";
    case LogValue::Tag::Zero: return "zero";
  }
  return "?";
}

/// log(exp(a) + exp(b)) for raw log-scale doubles, -inf allowed.
inline double log_add(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

/// Fixed-order log-sum-exp; the result depends only on the order of `terms`.
inline double log_sum(std::span<const double> terms) {
  double hi = -std::numeric_limits<double>::infinity();
  for (double t : terms) hi = std::max(hi, t);
  if (hi == -std::numeric_limits<double>::infinity() || std::isinf(hi)) return hi;
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - hi);
  return hi + std::log(acc);
}

}  // namespace mgflab

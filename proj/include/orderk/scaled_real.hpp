#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

namespace orderk {

// Floating value with an explicit power-of-two scale, value = mantissa * 2^exponent.
// The mantissa is kept in [0.5, 1) (or exactly 0, canonical form (0, 0)), so the
// representable range is limited only by the 64-bit exponent.  Probability masses
// like e^{-1000} live far below the double denormal range; this type carries them
// without underflow and without switching to log-space arithmetic.
class ScaledReal {
 public:
  constexpr ScaledReal() = default;

  explicit ScaledReal(double v) { assign(v, 0); }

  static ScaledReal from_parts(double mantissa, std::int64_t exponent) {
    ScaledReal r;
    r.assign(mantissa, exponent);
    return r;
  }

  double mantissa() const { return mant_; }
  std::int64_t exponent() const { return exp_; }
  bool is_zero() const { return mant_ == 0.0; }
  bool negative() const { return mant_ < 0.0; }

  // Nearest double, 0 or +-inf when the exponent leaves the double range.
  double to_double() const {
    if (mant_ == 0.0) return 0.0;
    if (exp_ > 1100) return mant_ > 0 ? std::numeric_limits<double>::infinity()
                                      : -std::numeric_limits<double>::infinity();
    if (exp_ < -1120) return mant_ > 0 ? 0.0 : -0.0;
    return std::ldexp(mant_, static_cast<int>(exp_));
  }

  // Natural log of |value|; -inf for zero.
  double log() const {
    if (mant_ == 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(std::fabs(mant_)) + static_cast<double>(exp_) * 6.93147180559945309417e-1;
  }

  double log10() const { return log() * 4.34294481903251827651e-1; }

  ScaledReal& operator+=(const ScaledReal& o) {
    if (o.mant_ == 0.0) return *this;
    if (mant_ == 0.0) { *this = o; return *this; }
    const ScaledReal *big = this, *small = &o;
    if (o.exp_ > exp_) { big = &o; small = this; }
    std::int64_t d = small->exp_ - big->exp_;
    if (d < -1200) { *this = *big; return *this; }
    assign(big->mant_ + std::ldexp(small->mant_, static_cast<int>(d)), big->exp_);
    return *this;
  }

  ScaledReal& operator-=(const ScaledReal& o) { return *this += -o; }

  ScaledReal& operator*=(const ScaledReal& o) {
    if (mant_ == 0.0 || o.mant_ == 0.0) { mant_ = 0.0; exp_ = 0; return *this; }
    assign(mant_ * o.mant_, exp_ + o.exp_);
    return *this;
  }

  ScaledReal& operator*=(double s) {
    assign(mant_ * s, exp_);
    return *this;
  }

  ScaledReal& operator/=(const ScaledReal& o) {
    assign(mant_ / o.mant_, exp_ - o.exp_);
    return *this;
  }

  ScaledReal& operator/=(double s) {
    assign(mant_ / s, exp_);
    return *this;
  }

  ScaledReal operator-() const {
    ScaledReal r = *this;
    r.mant_ = -r.mant_;
    return r;
  }

  friend ScaledReal operator+(ScaledReal a, const ScaledReal& b) { return a += b; }
  friend ScaledReal operator-(ScaledReal a, const ScaledReal& b) { return a -= b; }
  friend ScaledReal operator*(ScaledReal a, const ScaledReal& b) { return a *= b; }
  friend ScaledReal operator*(ScaledReal a, double s) { return a *= s; }
  friend ScaledReal operator*(double s, ScaledReal a) { return a *= s; }
  friend ScaledReal operator/(ScaledReal a, const ScaledReal& b) { return a /= b; }
  friend ScaledReal operator/(ScaledReal a, double s) { return a /= s; }

  friend bool operator==(const ScaledReal& a, const ScaledReal& b) {
    return a.mant_ == b.mant_ && a.exp_ == b.exp_;
  }

  friend bool operator<(const ScaledReal& a, const ScaledReal& b) {
    if (a.mant_ == 0.0) return b.mant_ > 0.0;
    if (b.mant_ == 0.0) return a.mant_ < 0.0;
    if ((a.mant_ < 0.0) != (b.mant_ < 0.0)) return a.mant_ < b.mant_;
    bool neg = a.mant_ < 0.0;
    if (a.exp_ != b.exp_) return neg ? (a.exp_ > b.exp_) : (a.exp_ < b.exp_);
    return a.mant_ < b.mant_;
  }
  friend bool operator>(const ScaledReal& a, const ScaledReal& b) { return b < a; }
  friend bool operator<=(const ScaledReal& a, const ScaledReal& b) { return !(b < a); }
  friend bool operator>=(const ScaledReal& a, const ScaledReal& b) { return !(a < b); }

 private:
  void assign(double m, std::int64_t e) {
    if (m == 0.0 || !std::isfinite(m)) {
      mant_ = m == 0.0 ? 0.0 : m;  // propagate nan/inf mantissas verbatim
      exp_ = 0;
      return;
    }
    int sh = 0;
    mant_ = std::frexp(m, &sh);
    exp_ = e + sh;
  }

  double mant_ = 0.0;
  std::int64_t exp_ = 0;
};

// |a/b| as a double, saturating when the exponent gap exceeds the double range.
inline double ratio(const ScaledReal& a, const ScaledReal& b) {
  if (b.is_zero()) return a.is_zero() ? 1.0 : std::numeric_limits<double>::infinity();
  if (a.is_zero()) return 0.0;
  std::int64_t d = a.exponent() - b.exponent();
  if (d > 1200) return std::numeric_limits<double>::infinity();
  if (d < -1200) return 0.0;
  return std::ldexp(a.mantissa() / b.mantissa(), static_cast<int>(d));
}

// |a - b| / max(|a|, |b|); 0 when both are zero.  Exponents are compared first,
// so values hundreds of binades apart never round through a subtraction.
inline double rel_diff(const ScaledReal& a, const ScaledReal& b) {
  if (a.is_zero() && b.is_zero()) return 0.0;
  if (a.negative() != b.negative() && !a.is_zero() && !b.is_zero()) return 2.0;
  double r = a.negative() || b.negative() ? ratio(-a, -b) : ratio(a, b);
  if (r > 1.0) r = 1.0 / r;
  return 1.0 - r;
}

// Signed relative difference (a - b) / max(|a|, |b|), used for tie location.
inline double signed_rel_diff(const ScaledReal& a, const ScaledReal& b) {
  double d = rel_diff(a, b);
  return a < b ? -d : d;
}

// e^{-t} for t >= 0 as a ScaledReal, full double precision far beyond the point
// where exp() underflows.  Argument reduction t = e*ln2 + r uses a split constant
// so that e*ln2_hi is exact for e < 2^21; larger arguments fall back to long
// double reduction (relative error ~t*1e-19).
inline ScaledReal scaled_exp_neg(double t) {
  if (t == 0.0) return ScaledReal(1.0);
  static constexpr double kInvLn2 = 1.44269504088896338700;
  static constexpr double kLn2Hi = 6.93147180369123816490e-01;
  static constexpr double kLn2Lo = 1.90821492927058770002e-10;
  double efl = std::floor(t * kInvLn2);
  double r;
  if (efl < 2097152.0) {
    r = (t - efl * kLn2Hi) - efl * kLn2Lo;
  } else {
    long double rl = static_cast<long double>(t) - static_cast<long double>(efl) * 0.693147180559945309417232121458L;
    r = static_cast<double>(rl);
  }
  // r in [0, ln2) up to rounding; exp(-r) in (0.5, 1].
  return ScaledReal::from_parts(std::exp(-r), -static_cast<std::int64_t>(efl));
}

// Accumulates ScaledReal terms.  Keeps a Neumaier-compensated double sum against a
// movable binary reference exponent, so a table sum over values spanning thousands
// of binades costs one ldexp per term.  Terms more than ~1200 binades below the
// running reference are dropped; intended for sums of one sign.
class ScaledAccumulator {
 public:
  void add(const ScaledReal& x) {
    if (x.is_zero()) return;
    if (empty_) {
      ref_ = x.exponent();
      sum_ = x.mantissa();
      comp_ = 0.0;
      empty_ = false;
      return;
    }
    std::int64_t d = x.exponent() - ref_;
    if (d > 256) {
      rebase(x.exponent());
      d = 0;
    } else if (d < -1200) {
      return;
    }
    add_compensated(std::ldexp(x.mantissa(), static_cast<int>(d)));
    if (std::fabs(sum_) >= 0x1p+512) rebase(ref_ + 512);
  }

  ScaledReal total() const {
    if (empty_) return ScaledReal();
    return ScaledReal::from_parts(sum_ + comp_, ref_);
  }

 private:
  void add_compensated(double x) {
    double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }

  void rebase(std::int64_t nref) {
    int sh = static_cast<int>(ref_ - nref);
    sum_ = std::ldexp(sum_, sh);
    comp_ = std::ldexp(comp_, sh);
    ref_ = nref;
  }

  double sum_ = 0.0;
  double comp_ = 0.0;
  std::int64_t ref_ = 0;
  bool empty_ = true;
};

}  // namespace orderk

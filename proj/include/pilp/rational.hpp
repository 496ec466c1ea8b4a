#pragma once

#include <gmpxx.h>

#include <climits>
#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>

#include <Eigen/Core>

namespace pilp {

class Rational;

/// Arbitrary-precision integer with plain value semantics (no expression
/// templates leak out of the class, which keeps it usable as an Eigen scalar).
class Integer {
 public:
  Integer() = default;
  Integer(long value) : v_(value) {}  // NOLINT(google-explicit-constructor)
  Integer(int value) : v_(value) {}   // NOLINT(google-explicit-constructor)
  explicit Integer(const mpz_class& value) : v_(value) {}
  /// Requires an integral rational; throws std::domain_error otherwise.
  explicit Integer(const Rational& value);

  static Integer parse(std::string_view text);

  const mpz_class& mpz() const { return v_; }
  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool fits_long() const { return v_.fits_slong_p(); }
  long to_long() const { return v_.get_si(); }
  std::string str() const { return v_.get_str(); }

  Integer& operator+=(const Integer& o) { v_ += o.v_; return *this; }
  Integer& operator-=(const Integer& o) { v_ -= o.v_; return *this; }
  Integer& operator*=(const Integer& o) { v_ *= o.v_; return *this; }

  friend Integer operator+(Integer a, const Integer& b) { return a += b; }
  friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
  friend Integer operator*(Integer a, const Integer& b) { return a *= b; }
  friend Integer operator-(const Integer& a) { return Integer(mpz_class(-a.v_)); }

  friend bool operator==(const Integer& a, const Integer& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const Integer& a, const Integer& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpz_class v_;
};

Integer abs(const Integer& a);
Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);
/// Floor division (rounds toward negative infinity); b != 0.
Integer floor_div(const Integer& a, const Integer& b);
/// Exact division; b must divide a.
Integer exact_div(const Integer& a, const Integer& b);
/// Number of bits of |a|; 0 for a == 0.
long bit_length(const Integer& a);

namespace detail {
/// Binary gcd; avoids hardware division.
inline std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) {
  if (a == 0) return b;
  if (b == 0) return a;
  const int shift = __builtin_ctzll(a | b);
  a >>= __builtin_ctzll(a);
  do {
    b >>= __builtin_ctzll(b);
    if (a > b) std::swap(a, b);
    b -= a;
  } while (b != 0);
  return a << shift;
}
}  // namespace detail

/// Exact rational in lowest terms with positive denominator. Values whose
/// numerator and denominator fit in 64 bits are kept inline and combined with
/// 128-bit intermediates; anything larger lives in a GMP rational.
class Rational {
 public:
  Rational() noexcept = default;
  Rational(long value) { set_long(value); }  // NOLINT(google-explicit-constructor)
  Rational(int value) : n_(value) {}          // NOLINT(google-explicit-constructor)
  Rational(const Integer& value);             // NOLINT(google-explicit-constructor)
  Rational(const Integer& num, const Integer& den);
  Rational(long num, long den);
  explicit Rational(const mpq_class& value) { assign(value); }

  Rational(const Rational& o) : n_(o.n_), d_(o.d_), big_(o.big_ ? new mpq_class(*o.big_) : nullptr) {}
  Rational(Rational&& o) noexcept : n_(o.n_), d_(o.d_), big_(o.big_) { o.big_ = nullptr; }
  Rational& operator=(const Rational& o) {
    if (this != &o) {
      if (o.big_) {
        if (big_) *big_ = *o.big_; else big_ = new mpq_class(*o.big_);
      } else {
        release();
      }
      n_ = o.n_;
      d_ = o.d_;
    }
    return *this;
  }
  Rational& operator=(Rational&& o) noexcept {
    if (this != &o) {
      release();
      n_ = o.n_;
      d_ = o.d_;
      big_ = o.big_;
      o.big_ = nullptr;
    }
    return *this;
  }
  ~Rational() { delete big_; }

  /// Parses "p", "-p", "p/q"; throws std::invalid_argument on malformed text
  /// or a zero denominator.
  static Rational parse(std::string_view text);

  Integer num() const;
  Integer den() const;
  mpq_class mpq() const;

  int sign() const { return big_ ? sgn(*big_) : (n_ > 0) - (n_ < 0); }
  bool is_zero() const { return !big_ && n_ == 0; }
  bool is_integer() const { return big_ ? big_->get_den() == 1 : d_ == 1; }

  Integer floor() const;
  Integer ceil() const;
  /// Fractional part, always in [0, 1).
  Rational frac() const;
  /// Bit size 1 + ceil(log2(|p|+1)) + ceil(log2(q+1)).
  long size() const;

  /// "p" when the denominator is one, else "p/q".
  std::string str() const;
  double to_double() const;

  Rational& operator+=(const Rational& o) {
    if (!big_ && !o.big_ && add_small(o.n_, o.d_)) return *this;
    return add_slow(o);
  }
  Rational& operator-=(const Rational& o) {
    if (!big_ && !o.big_ && add_small(-o.n_, o.d_)) return *this;
    return add_slow(-o);
  }
  Rational& operator*=(const Rational& o) {
    if (!big_ && !o.big_ && mul_small(o.n_, o.d_)) return *this;
    return mul_slow(o);
  }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) {
    if (a.big_) return Rational(mpq_class(-*a.big_));
    Rational r;
    r.n_ = -a.n_;
    r.d_ = a.d_;
    return r;
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.n_ == b.n_ && a.d_ == b.d_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c;
    if (!a.big_ && !b.big_) {
      if (a.d_ == b.d_) {
        c = (a.n_ > b.n_) - (a.n_ < b.n_);
      } else {
        const __int128 l = static_cast<__int128>(a.n_) * b.d_;
        const __int128 r = static_cast<__int128>(b.n_) * a.d_;
        c = (l > r) - (l < r);
      }
    } else {
      c = cmp(a.mpq(), b.mpq());
    }
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend struct RationalHash;

 private:
  void release() {
    delete big_;
    big_ = nullptr;
  }
  // Both helpers leave *this untouched and return false when the result
  // needs more than 64 bits.
  bool store(__int128 num, std::int64_t den) {
    if (num > INT64_MAX || num < -static_cast<__int128>(INT64_MAX)) return false;
    n_ = static_cast<std::int64_t>(num);
    d_ = num == 0 ? 1 : den;
    return true;
  }
  bool add_small(std::int64_t on, std::int64_t od) {
    if (d_ == 1 && od == 1) return store(static_cast<__int128>(n_) + on, 1);
    if (d_ == od) {
      const __int128 t = static_cast<__int128>(n_) + on;
      const std::uint64_t g = detail::gcd64(static_cast<std::uint64_t>(t < 0 ? -t : t) % static_cast<std::uint64_t>(od),
                                    static_cast<std::uint64_t>(od));
      return store(t / static_cast<std::int64_t>(g), od / static_cast<std::int64_t>(g));
    }
    const auto g = static_cast<std::int64_t>(detail::gcd64(static_cast<std::uint64_t>(d_), static_cast<std::uint64_t>(od)));
    const std::int64_t da = d_ / g;
    const std::int64_t db = od / g;
    const __int128 t = static_cast<__int128>(n_) * db + static_cast<__int128>(on) * da;
    const __int128 den = static_cast<__int128>(da) * od;
    if (g == 1) {
      if (den > INT64_MAX) return false;
      return store(t, static_cast<std::int64_t>(den));
    }
    const std::uint64_t tm = static_cast<std::uint64_t>((t < 0 ? -t : t) % g);
    const auto g2 = static_cast<std::int64_t>(detail::gcd64(tm, static_cast<std::uint64_t>(g)));
    const __int128 rden = den / g2;
    if (rden > INT64_MAX) return false;
    return store(t / g2, static_cast<std::int64_t>(rden));
  }
  bool mul_small(std::int64_t on, std::int64_t od) {
    if (n_ == 0) return true;
    if (on == 0) {
      n_ = 0;
      d_ = 1;
      return true;
    }
    if (d_ == 1 && od == 1) return store(static_cast<__int128>(n_) * on, 1);
    const auto g1 = static_cast<std::int64_t>(detail::gcd64(static_cast<std::uint64_t>(n_ < 0 ? -n_ : n_), static_cast<std::uint64_t>(od)));
    const auto g2 = static_cast<std::int64_t>(detail::gcd64(static_cast<std::uint64_t>(on < 0 ? -on : on), static_cast<std::uint64_t>(d_)));
    const __int128 den = static_cast<__int128>(d_ / g2) * (od / g1);
    if (den > INT64_MAX) return false;
    return store(static_cast<__int128>(n_ / g1) * (on / g2), static_cast<std::int64_t>(den));
  }
  Rational& add_slow(const Rational& o);
  Rational& mul_slow(const Rational& o);
  void set_long(long value);
  // Stores an already reduced fraction with positive denominator.
  void set_reduced(__int128 num, __int128 den);
  void assign(const mpq_class& value);

  std::int64_t n_ = 0;
  std::int64_t d_ = 1;
  mpq_class* big_ = nullptr;
};

Rational abs(const Rational& a);
/// Componentwise helpers Eigen looks up by ADL.
inline const Rational& conj(const Rational& a) { return a; }
inline const Rational& real(const Rational& a) { return a; }
inline Rational imag(const Rational&) { return Rational(0); }
inline Rational abs2(const Rational& a) { return a * a; }
inline const Integer& conj(const Integer& a) { return a; }
inline const Integer& real(const Integer& a) { return a; }
inline Integer imag(const Integer&) { return Integer(0); }
inline Integer abs2(const Integer& a) { return a * a; }

std::ostream& operator<<(std::ostream& os, const Integer& a);
std::ostream& operator<<(std::ostream& os, const Rational& a);

struct RationalHash {
  std::size_t operator()(const Rational& r) const;
};

}  // namespace pilp

namespace Eigen {

template <>
struct NumTraits<pilp::Rational> : GenericNumTraits<pilp::Rational> {
  using Real = pilp::Rational;
  using NonInteger = pilp::Rational;
  using Nested = pilp::Rational;
  using Literal = pilp::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 8,
    MulCost = 16
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static int digits10() { return 0; }
};

template <>
struct NumTraits<pilp::Integer> : GenericNumTraits<pilp::Integer> {
  using Real = pilp::Integer;
  using NonInteger = pilp::Rational;
  using Nested = pilp::Integer;
  using Literal = pilp::Integer;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 8
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static int digits10() { return 0; }
};

}  // namespace Eigen

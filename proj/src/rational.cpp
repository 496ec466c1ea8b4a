#include "pilp/rational.hpp"

#include <cctype>
#include <climits>
#include <cstdint>
#include <ostream>
#include <stdexcept>

namespace pilp {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

mpz_class parse_mpz(std::string_view s) {
  if (!is_integer_literal(s)) {
    throw std::invalid_argument("not an integer literal: '" + std::string(s) + "'");
  }
  if (s[0] == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

}  // namespace

Integer::Integer(const Rational& value) {
  if (!value.is_integer()) {
    throw std::domain_error("rational " + value.str() + " is not integral");
  }
  v_ = value.num().mpz();
}

Integer Integer::parse(std::string_view text) { return Integer(parse_mpz(text)); }

Integer abs(const Integer& a) { return Integer(mpz_class(::abs(a.mpz()))); }

Integer gcd(const Integer& a, const Integer& b) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.mpz().get_mpz_t(), b.mpz().get_mpz_t());
  return Integer(g);
}

Integer lcm(const Integer& a, const Integer& b) {
  mpz_class l;
  mpz_lcm(l.get_mpz_t(), a.mpz().get_mpz_t(), b.mpz().get_mpz_t());
  return Integer(l);
}

Integer floor_div(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.mpz().get_mpz_t(), b.mpz().get_mpz_t());
  return Integer(q);
}

Integer exact_div(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  mpz_class q;
  mpz_divexact(q.get_mpz_t(), a.mpz().get_mpz_t(), b.mpz().get_mpz_t());
  return Integer(q);
}

long bit_length(const Integer& a) {
  if (a.is_zero()) return 0;
  return static_cast<long>(mpz_sizeinbase(a.mpz().get_mpz_t(), 2));
}

namespace {

constexpr __int128 kMin = -static_cast<__int128>(INT64_MAX);
constexpr __int128 kMax = INT64_MAX;

unsigned __int128 uabs(__int128 x) { return x < 0 ? static_cast<unsigned __int128>(-x) : static_cast<unsigned __int128>(x); }

unsigned __int128 gcd128(unsigned __int128 a, unsigned __int128 b) {
  while (b != 0) {
    if ((a >> 64) == 0 && (b >> 64) == 0) return detail::gcd64(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
    const unsigned __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

mpz_class mpz_from(__int128 x) {
  const unsigned __int128 u = uabs(x);
  mpz_class hi(static_cast<unsigned long>(u >> 64));
  mpz_class r = (hi << 64) + mpz_class(static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFull));
  return x < 0 ? mpz_class(-r) : r;
}

}  // namespace

void Rational::set_long(long value) {
  release();
  if (value == INT64_MIN) {
    big_ = new mpq_class(value);
    return;
  }
  n_ = value;
  d_ = 1;
}

void Rational::set_reduced(__int128 num, __int128 den) {
  if (num == 0) den = 1;
  if (num >= kMin && num <= kMax && den <= kMax) {
    if (big_) release();
    n_ = static_cast<std::int64_t>(num);
    d_ = static_cast<std::int64_t>(den);
    return;
  }
  mpq_class q;
  q.get_num() = mpz_from(num);
  q.get_den() = mpz_from(den);
  if (big_) *big_ = std::move(q); else big_ = new mpq_class(std::move(q));
}

void Rational::assign(const mpq_class& value) {
  mpq_class q = value;
  q.canonicalize();
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  if (num.fits_slong_p() && den.fits_slong_p() && num.get_si() != INT64_MIN) {
    release();
    n_ = num.get_si();
    d_ = den.get_si();
    return;
  }
  if (big_) *big_ = std::move(q); else big_ = new mpq_class(std::move(q));
}

Rational::Rational(const Integer& value) {
  if (value.fits_long()) {
    set_long(value.to_long());
  } else {
    big_ = new mpq_class(value.mpz());
  }
}

Rational::Rational(const Integer& num, const Integer& den) {
  if (den.is_zero()) throw std::domain_error("zero denominator");
  assign(mpq_class(num.mpz(), den.mpz()));
}

Rational::Rational(long num, long den) {
  if (den == 0) throw std::domain_error("zero denominator");
  __int128 n = num;
  __int128 d = den;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const unsigned __int128 g = gcd128(uabs(n), static_cast<unsigned __int128>(d));
  set_reduced(n / static_cast<__int128>(g), d / static_cast<__int128>(g));
}

Integer Rational::num() const { return big_ ? Integer(mpz_class(big_->get_num())) : Integer(static_cast<long>(n_)); }
Integer Rational::den() const { return big_ ? Integer(mpz_class(big_->get_den())) : Integer(static_cast<long>(d_)); }

mpq_class Rational::mpq() const {
  if (big_) return *big_;
  mpq_class q;
  q.get_num() = static_cast<long>(n_);
  q.get_den() = static_cast<long>(d_);
  return q;
}

Rational& Rational::add_slow(const Rational& o) {
  assign(mpq() + o.mpq());
  return *this;
}

Rational& Rational::mul_slow(const Rational& o) {
  assign(mpq() * o.mpq());
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  if (!o.big_) {
    Rational inv;
    inv.n_ = o.n_ < 0 ? -o.d_ : o.d_;
    inv.d_ = o.n_ < 0 ? -o.n_ : o.n_;
    return *this *= inv;
  }
  assign(mpq() / o.mpq());
  return *this;
}

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(Integer(parse_mpz(text)));
  const mpz_class num = parse_mpz(text.substr(0, slash));
  const auto den_text = text.substr(slash + 1);
  if (den_text.empty() || den_text[0] == '-' || den_text[0] == '+') {
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  }
  const mpz_class den = parse_mpz(den_text);
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(Integer(num), Integer(den));
}

Integer Rational::floor() const {
  if (!big_) {
    std::int64_t q = n_ / d_;
    if (n_ % d_ != 0 && n_ < 0) --q;
    return Integer(static_cast<long>(q));
  }
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), big_->get_num_mpz_t(), big_->get_den_mpz_t());
  return Integer(q);
}

Integer Rational::ceil() const {
  if (!big_) {
    std::int64_t q = n_ / d_;
    if (n_ % d_ != 0 && n_ > 0) ++q;
    return Integer(static_cast<long>(q));
  }
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), big_->get_num_mpz_t(), big_->get_den_mpz_t());
  return Integer(q);
}

Rational Rational::frac() const { return *this - Rational(floor()); }

long Rational::size() const {
  return 1 + bit_length(abs(num())) + bit_length(den());
}

std::string Rational::str() const {
  if (big_) return big_->get_str();
  return d_ == 1 ? std::to_string(n_) : std::to_string(n_) + "/" + std::to_string(d_);
}

double Rational::to_double() const {
  return big_ ? big_->get_d() : static_cast<double>(n_) / static_cast<double>(d_);
}

Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }

std::ostream& operator<<(std::ostream& os, const Integer& a) { return os << a.str(); }
std::ostream& operator<<(std::ostream& os, const Rational& a) { return os << a.str(); }

std::size_t RationalHash::operator()(const Rational& r) const {
  if (!r.big_) return std::hash<std::int64_t>()(r.n_) * 1000003u ^ std::hash<std::int64_t>()(r.d_);
  const std::size_t h1 = mpz_get_ui(r.big_->get_num_mpz_t());
  const std::size_t h2 = mpz_get_ui(r.big_->get_den_mpz_t());
  return h1 * 1000003u ^ h2 ^ static_cast<std::size_t>(r.sign() + 1);
}

}  // namespace pilp

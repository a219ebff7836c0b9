#pragma once

// Exact scalar domains. Every algorithm in the library is templated on a
// scalar type satisfying the `Field` concept below; two models are provided:
//
//   Rational  arbitrary-precision rationals (GMP), always in lowest terms
//   ModP      residues modulo a session-wide prime p
//
// Nothing in the library touches floating point.

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace adhm {

class Rational {
public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(int v) : q_(v) {}   // NOLINT(google-explicit-constructor)
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
  Rational(const mpz_class& num, const mpz_class& den) : q_(num, den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    q_.canonicalize();
  }

  /// Accepts "a", "-a", "a/b" (any sign placement GMP accepts) and plain
  /// decimals such as "1.25".
  static Rational parse(std::string_view text);

  const mpq_class& value() const { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }

  Rational inverse() const {
    if (is_zero()) throw std::domain_error("Rational: inverse of zero");
    return Rational(mpq_class(1) / q_);
  }

  /// "a" for integers, otherwise "a/b" with b > 0 and gcd(a, b) = 1.
  std::string to_string() const { return q_.get_str(); }

  static std::string field_name() { return "rational"; }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    q_ /= o.q_;
    return *this;
  }
  Rational operator-() const { return Rational(mpq_class(-q_)); }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::ostream& operator<<(std::ostream& os, const Rational& a) { return os << a.q_; }

private:
  mpq_class q_{0};
};

inline Rational Rational::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("Rational: empty string");
  const auto dot = s.find('.');
  if (dot != std::string::npos) {
    if (s.find('/') != std::string::npos)
      throw std::invalid_argument("Rational: cannot mix '.' and '/' in \"" + s + "\"");
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    const std::size_t frac_len = s.size() - dot - 1;
    mpz_class num;
    if (digits.empty() || digits == "-" || digits == "+" || num.set_str(digits, 10) != 0)
      throw std::invalid_argument("Rational: malformed decimal \"" + s + "\"");
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
    return Rational(num, den);
  }
  mpq_class q;
  if (s.front() == '+') s.erase(0, 1);
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("Rational: malformed \"" + std::string(text) + "\"");
  if (q.get_den() == 0) throw std::domain_error("Rational: zero denominator in \"" + s + "\"");
  return Rational(q);
}

/// Residue class modulo a prime that is fixed for the whole session
/// (set once with `ModP::set_modulus` before any computation).
class ModP {
public:
  static constexpr std::uint64_t kDefaultPrime = 1048583;  // smallest prime > 2^20

  ModP() = default;
  ModP(long v) : v_(reduce(v)) {}  // NOLINT(google-explicit-constructor)
  ModP(int v) : v_(reduce(v)) {}   // NOLINT(google-explicit-constructor)

  static void set_modulus(std::uint64_t p) {
    if (p < 2 || p >= (std::uint64_t{1} << 62))
      throw std::invalid_argument("ModP: modulus out of range");
    if (mpz_probab_prime_p(mpz_class(std::to_string(p)).get_mpz_t(), 40) == 0)
      throw std::invalid_argument("ModP: modulus " + std::to_string(p) + " is not prime");
    p_ = p;
  }
  static std::uint64_t modulus() { return p_; }

  /// Reduces an integer or a fraction "a/b" modulo p.
  static ModP parse(std::string_view text) {
    const Rational q = Rational::parse(text);
    return from_rational(q);
  }
  static ModP from_rational(const Rational& q) {
    const mpz_class p(std::to_string(p_));
    mpz_class n = q.numerator() % p, d = q.denominator() % p;
    if (n < 0) n += p;
    if (d == 0) throw std::domain_error("ModP: denominator divisible by p");
    ModP out;
    out.v_ = n.get_ui();
    ModP den;
    den.v_ = d.get_ui();
    return out / den;
  }

  std::uint64_t residue() const { return v_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  ModP inverse() const {
    if (v_ == 0) throw std::domain_error("ModP: inverse of zero");
    return pow(p_ - 2);
  }
  ModP pow(std::uint64_t e) const {
    ModP base = *this, acc(1);
    while (e) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }

  std::string to_string() const { return std::to_string(v_); }
  static std::string field_name() { return "Fp:" + std::to_string(p_); }

  ModP& operator+=(const ModP& o) {
    v_ += o.v_;
    if (v_ >= p_) v_ -= p_;
    return *this;
  }
  ModP& operator-=(const ModP& o) {
    v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_;
    return *this;
  }
  ModP& operator*=(const ModP& o) {
    v_ = static_cast<std::uint64_t>((static_cast<unsigned __int128>(v_) * o.v_) % p_);
    return *this;
  }
  ModP& operator/=(const ModP& o) { return *this *= o.inverse(); }
  ModP operator-() const {
    ModP r;
    r.v_ = v_ == 0 ? 0 : p_ - v_;
    return r;
  }

  friend ModP operator+(ModP a, const ModP& b) { return a += b; }
  friend ModP operator-(ModP a, const ModP& b) { return a -= b; }
  friend ModP operator*(ModP a, const ModP& b) { return a *= b; }
  friend ModP operator/(ModP a, const ModP& b) { return a /= b; }
  friend bool operator==(const ModP& a, const ModP& b) { return a.v_ == b.v_; }
  friend std::ostream& operator<<(std::ostream& os, const ModP& a) { return os << a.v_; }

private:
  static std::uint64_t reduce(long v) {
    const auto p = static_cast<long long>(p_);
    long long r = static_cast<long long>(v) % p;
    if (r < 0) r += p;
    return static_cast<std::uint64_t>(r);
  }

  inline static std::uint64_t p_ = kDefaultPrime;
  std::uint64_t v_ = 0;
};

template <class K>
concept Field = std::regular<K> && requires(K a, const K& b, long n, std::string_view s) {
  K(n);
  { a + b } -> std::same_as<K>;
  { a - b } -> std::same_as<K>;
  { a * b } -> std::same_as<K>;
  { a / b } -> std::same_as<K>;
  { -a } -> std::same_as<K>;
  { a.is_zero() } -> std::convertible_to<bool>;
  { a.inverse() } -> std::same_as<K>;
  { a.to_string() } -> std::convertible_to<std::string>;
  { K::parse(s) } -> std::same_as<K>;
  { K::field_name() } -> std::convertible_to<std::string>;
};

static_assert(Field<Rational>);
static_assert(Field<ModP>);

/// True for the modular field; reports label such results "modular".
template <class K>
inline constexpr bool is_modular_v = std::same_as<K, ModP>;

}  // namespace adhm

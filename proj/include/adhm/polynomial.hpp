#pragma once

#include "adhm/field.hpp"
#include "adhm/matrix.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace adhm {

using Exponent = std::vector<int>;

/// All exponent vectors of total degree `degree` in `num_vars` variables,
/// in descending lexicographic order (z0^degree first). Empty for degree < 0.
inline std::vector<Exponent> monomials(std::size_t num_vars, int degree) {
  std::vector<Exponent> out;
  if (degree < 0 || num_vars == 0) return out;
  Exponent e(num_vars, 0);
  auto rec = [&](auto&& self, std::size_t var, int remaining) -> void {
    if (var + 1 == num_vars) {
      e[var] = remaining;
      out.push_back(e);
      return;
    }
    for (int k = remaining; k >= 0; --k) {
      e[var] = k;
      self(self, var + 1, remaining - k);
    }
  };
  rec(rec, 0, degree);
  return out;
}

/// Lookup table from exponent vector to its position in `monomials(...)`.
inline std::map<Exponent, std::size_t> monomial_index(const std::vector<Exponent>& basis) {
  std::map<Exponent, std::size_t> idx;
  for (std::size_t i = 0; i < basis.size(); ++i) idx.emplace(basis[i], i);
  return idx;
}

/// Homogeneous polynomial; only nonzero terms are stored and every stored
/// monomial has total degree `degree()`.
template <Field K>
class HomogPoly {
public:
  HomogPoly(std::size_t num_vars, int degree) : num_vars_(num_vars), degree_(degree) {}

  static HomogPoly variable(std::size_t num_vars, std::size_t i) {
    HomogPoly p(num_vars, 1);
    Exponent e(num_vars, 0);
    e.at(i) = 1;
    p.terms_.emplace(std::move(e), K(1));
    return p;
  }
  static HomogPoly constant(std::size_t num_vars, const K& c) {
    HomogPoly p(num_vars, 0);
    if (!c.is_zero()) p.terms_.emplace(Exponent(num_vars, 0), c);
    return p;
  }
  /// Linear form sum_i coeffs[i] * z_i.
  static HomogPoly linear(std::span<const K> coeffs) {
    HomogPoly p(coeffs.size(), 1);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      Exponent e(coeffs.size(), 0);
      e[i] = 1;
      p.add_term(e, coeffs[i]);
    }
    return p;
  }

  std::size_t num_vars() const { return num_vars_; }
  int degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponent, K>& terms() const { return terms_; }

  K coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? K(0) : it->second;
  }

  void add_term(const Exponent& e, const K& c) {
    if (e.size() != num_vars_) throw DimensionError("HomogPoly: exponent length mismatch");
    int total = 0;
    for (int x : e) total += x;
    if (total != degree_) throw DimensionError("HomogPoly: monomial degree != polynomial degree");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  K evaluate(std::span<const K> point) const {
    if (point.size() != num_vars_) throw DimensionError("HomogPoly::evaluate: point length mismatch");
    K acc(0);
    for (const auto& [e, c] : terms_) {
      K t = c;
      for (std::size_t i = 0; i < num_vars_; ++i)
        for (int k = 0; k < e[i]; ++k) t *= point[i];
      acc += t;
    }
    return acc;
  }

  HomogPoly& operator+=(const HomogPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  HomogPoly& operator-=(const HomogPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  HomogPoly& operator*=(const K& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }
  friend HomogPoly operator+(HomogPoly a, const HomogPoly& b) { return a += b; }
  friend HomogPoly operator-(HomogPoly a, const HomogPoly& b) { return a -= b; }
  friend HomogPoly operator*(HomogPoly a, const K& s) { return a *= s; }
  friend HomogPoly operator*(const HomogPoly& a, const HomogPoly& b) {
    if (a.num_vars_ != b.num_vars_) throw DimensionError("HomogPoly product: variable count mismatch");
    HomogPoly out(a.num_vars_, a.degree_ + b.degree_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponent e(ea);
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
        out.add_term(e, ca * cb);
      }
    return out;
  }
  friend bool operator==(const HomogPoly& a, const HomogPoly& b) {
    if (a.is_zero() && b.is_zero()) return a.num_vars_ == b.num_vars_;
    return a.num_vars_ == b.num_vars_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      os << (first ? "" : " + ") << '(' << c.to_string() << ')';
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        os << "*z" << i;
        if (e[i] > 1) os << '^' << e[i];
      }
      first = false;
    }
    return os.str();
  }

private:
  void check_compatible(const HomogPoly& o) {
    if (o.is_zero()) return;
    if (num_vars_ != o.num_vars_ || (degree_ != o.degree_ && !is_zero()))
      throw DimensionError("HomogPoly: incompatible operands");
    degree_ = o.degree_;
  }

  std::size_t num_vars_;
  int degree_;
  std::map<Exponent, K> terms_;
};

// ---------------------------------------------------------------------------
// Dense univariate polynomials (coefficients low to high, no trailing zeros).

template <Field K>
class UPoly {
public:
  UPoly() = default;
  explicit UPoly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<K>& coeffs() const { return c_; }
  K coeff(std::size_t i) const { return i < c_.size() ? c_[i] : K(0); }
  K leading() const { return c_.empty() ? K(0) : c_.back(); }

  K operator()(const K& x) const {
    K acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  UPoly monic() const {
    if (is_zero()) return *this;
    const K inv = leading().inverse();
    std::vector<K> out(c_);
    for (auto& x : out) x *= inv;
    return UPoly(std::move(out));
  }

  /// Quotient and remainder of *this by d.
  std::pair<UPoly, UPoly> divmod(const UPoly& d) const {
    if (d.is_zero()) throw std::domain_error("UPoly: division by zero polynomial");
    std::vector<K> rem(c_);
    if (degree() < d.degree()) return {UPoly(), *this};
    std::vector<K> quot(static_cast<std::size_t>(degree() - d.degree() + 1), K(0));
    const K inv = d.leading().inverse();
    for (int i = degree(); i >= d.degree(); --i) {
      const K f = rem[static_cast<std::size_t>(i)] * inv;
      if (f.is_zero()) continue;
      const auto shift = static_cast<std::size_t>(i - d.degree());
      quot[shift] = f;
      for (std::size_t j = 0; j < d.c_.size(); ++j) rem[shift + j] -= f * d.c_[j];
    }
    return {UPoly(std::move(quot)), UPoly(std::move(rem))};
  }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<K> out(std::max(a.c_.size(), b.c_.size()), K(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] += b.c_[i];
    return UPoly(std::move(out));
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) {
    std::vector<K> out(std::max(a.c_.size(), b.c_.size()), K(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] -= b.c_[i];
    return UPoly(std::move(out));
  }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly();
    std::vector<K> out(a.c_.size() + b.c_.size() - 1, K(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(out));
  }
  friend UPoly operator%(const UPoly& a, const UPoly& b) { return a.divmod(b).second; }
  friend bool operator==(const UPoly&, const UPoly&) = default;

private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<K> c_;
};

template <Field K>
UPoly<K> gcd(UPoly<K> a, UPoly<K> b) {
  while (!b.is_zero()) {
    UPoly<K> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Polynomial of degree < xs.size() through the points (xs[i], ys[i]);
/// Newton divided differences, xs pairwise distinct.
template <Field K>
UPoly<K> interpolate(const std::vector<K>& xs, const std::vector<K>& ys) {
  if (xs.size() != ys.size()) throw DimensionError("interpolate: length mismatch");
  const std::size_t n = xs.size();
  std::vector<K> dd(ys);
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = n - 1; i >= level; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
      if (i == level) break;
    }
  UPoly<K> acc;
  for (std::size_t i = n; i-- > 0;) {
    acc = acc * UPoly<K>({-xs[i], K(1)}) + UPoly<K>({dd[i]});
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Binary forms f(z0, z1). Dense coefficient a_j multiplies z0^(D-j) z1^j.

template <Field K>
std::vector<K> binary_coefficients(const HomogPoly<K>& f) {
  if (f.num_vars() != 2) throw DimensionError("binary form expected (2 variables)");
  std::vector<K> a(static_cast<std::size_t>(std::max(f.degree(), 0) + 1), K(0));
  for (const auto& [e, c] : f.terms()) a[static_cast<std::size_t>(e[1])] = c;
  return a;
}

template <Field K>
HomogPoly<K> binary_form(const std::vector<K>& a) {
  const int deg = static_cast<int>(a.size()) - 1;
  HomogPoly<K> f(2, std::max(deg, 0));
  for (int j = 0; j <= deg; ++j) f.add_term({deg - j, j}, a[static_cast<std::size_t>(j)]);
  return f;
}

/// Dehomogenization f(1, t) together with the power of z0 dividing f.
template <Field K>
struct Dehomogenized {
  UPoly<K> affine;  // f(1, t)
  int z0_power;     // largest m with z0^m | f
};

template <Field K>
Dehomogenized<K> dehomogenize(const HomogPoly<K>& f) {
  UPoly<K> u(binary_coefficients(f));
  return {u, f.degree() - u.degree()};
}

template <Field K>
HomogPoly<K> homogenize(const UPoly<K>& u, int z0_power) {
  std::vector<K> a(u.coeffs());
  if (a.empty()) a.push_back(K(0));
  std::vector<K> shifted(a.size() + static_cast<std::size_t>(z0_power), K(0));
  // z0^m * z0^deg(u) u(z1/z0): coefficients keep their z1-exponent
  for (std::size_t j = 0; j < a.size(); ++j) shifted[j] = a[j];
  return binary_form(shifted);
}

/// Scales a nonzero binary form so that its coefficient with the largest
/// z0-exponent equals 1.
template <Field K>
HomogPoly<K> normalize_binary(const HomogPoly<K>& f) {
  if (f.is_zero()) return f;
  auto a = binary_coefficients(f);
  std::size_t first = 0;
  while (a[first].is_zero()) ++first;
  const K inv = a[first].inverse();
  for (auto& x : a) x *= inv;
  return binary_form(a);
}

/// Greatest common divisor of two binary forms, normalized by
/// `normalize_binary`. Degree 0 means coprime.
template <Field K>
HomogPoly<K> binary_gcd(const HomogPoly<K>& f, const HomogPoly<K>& g) {
  if (f.num_vars() != 2 || g.num_vars() != 2) throw DimensionError("binary_gcd: binary forms expected");
  if (f.is_zero() && g.is_zero()) throw std::domain_error("binary_gcd: both inputs are zero");
  if (f.is_zero()) return normalize_binary(g);
  if (g.is_zero()) return normalize_binary(f);
  const auto df = dehomogenize(f), dg = dehomogenize(g);
  const UPoly<K> h = gcd(df.affine, dg.affine);
  return normalize_binary(homogenize(h, std::min(df.z0_power, dg.z0_power)));
}

/// True when d divides f exactly (d nonzero).
template <Field K>
bool binary_divides(const HomogPoly<K>& d, const HomogPoly<K>& f) {
  if (d.is_zero()) throw std::domain_error("binary_divides: zero divisor");
  if (f.is_zero()) return true;
  const auto dd = dehomogenize(d), df = dehomogenize(f);
  if (dd.z0_power > df.z0_power) return false;
  return (df.affine % dd.affine).is_zero();
}

// ---------------------------------------------------------------------------
// Roots of binary forms over the ground field.

template <Field K>
struct BinaryRoots {
  std::vector<std::pair<K, K>> points;  // [a : b], canonical (first nonzero = 1)
  bool complete = true;                 // false when the search could not be exhaustive
};

namespace detail {

inline std::vector<mpz_class> divisors(mpz_class n, bool& complete) {
  n = abs(n);
  std::vector<std::pair<mpz_class, unsigned>> factors;
  for (mpz_class p = 2; p * p <= n && p < 1000000; ++p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) factors.emplace_back(p, e);
  }
  if (n > 1) {
    if (mpz_probab_prime_p(n.get_mpz_t(), 30) == 0) complete = false;
    factors.emplace_back(n, 1);
  }
  std::vector<mpz_class> divs{1};
  for (const auto& [p, e] : factors) {
    const std::size_t base = divs.size();
    mpz_class pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  return divs;
}

inline std::vector<Rational> rational_roots(const UPoly<Rational>& u, bool& complete) {
  std::vector<Rational> roots;
  if (u.degree() <= 0) return roots;
  // Clear denominators.
  mpz_class lcm = 1;
  for (const auto& c : u.coeffs()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.denominator().get_mpz_t());
  std::vector<mpz_class> ints;
  for (const auto& c : u.coeffs()) ints.push_back(mpq_class(c.value() * lcm).get_num());
  std::size_t low = 0;
  while (ints[low] == 0) ++low;
  if (low > 0) roots.emplace_back(0);
  if (static_cast<int>(low) == u.degree()) return roots;
  const auto num = divisors(ints[low], complete);
  const auto den = divisors(ints.back(), complete);
  std::vector<Rational> seen;
  for (const auto& p : num)
    for (const auto& q : den)
      for (int sign : {1, -1}) {
        Rational cand(mpz_class(p * sign), q);
        if (std::find(seen.begin(), seen.end(), cand) != seen.end()) continue;
        seen.push_back(cand);
        if (u(cand).is_zero()) roots.push_back(cand);
      }
  return roots;
}

inline UPoly<ModP> powmod_x(std::uint64_t e, const UPoly<ModP>& shift, const UPoly<ModP>& mod) {
  UPoly<ModP> base = shift % mod, acc({ModP(1)});
  while (e) {
    if (e & 1) acc = (acc * base) % mod;
    base = (base * base) % mod;
    e >>= 1;
  }
  return acc;
}

/// Splits a squarefree product of distinct linear factors (Cantor-Zassenhaus
/// with a fixed-seed generator).
inline void split_linear(const UPoly<ModP>& f, std::vector<ModP>& roots, std::mt19937_64& rng) {
  if (f.degree() <= 0) return;
  if (f.degree() == 1) {
    const auto m = f.monic();
    roots.push_back(-m.coeff(0));
    return;
  }
  const std::uint64_t p = ModP::modulus();
  for (int attempt = 0; attempt < 200; ++attempt) {
    const ModP a(static_cast<long>(rng() % p));
    const auto h = powmod_x((p - 1) / 2, UPoly<ModP>({a, ModP(1)}), f) - UPoly<ModP>({ModP(1)});
    const auto g = gcd(f, h);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      split_linear(g, roots, rng);
      split_linear(f.divmod(g).first, roots, rng);
      return;
    }
  }
}

inline std::vector<ModP> modular_roots(const UPoly<ModP>& u) {
  std::vector<ModP> roots;
  if (u.degree() <= 0) return roots;
  const std::uint64_t p = ModP::modulus();
  if (p < 5000) {
    for (std::uint64_t x = 0; x < p; ++x)
      if (u(ModP(static_cast<long>(x))).is_zero()) roots.emplace_back(static_cast<long>(x));
    return roots;
  }
  const auto f = u.monic();
  // gcd(f, x^p - x) is the product of the distinct linear factors of f.
  const auto xp = powmod_x(p, UPoly<ModP>({ModP(0), ModP(1)}), f);
  auto lin = gcd(f, xp - UPoly<ModP>({ModP(0), ModP(1)}));
  std::mt19937_64 rng(0x5eedULL);
  split_linear(lin, roots, rng);
  std::sort(roots.begin(), roots.end(), [](const ModP& a, const ModP& b) { return a.residue() < b.residue(); });
  return roots;
}

}  // namespace detail

/// Zeros in P^1 over the ground field of a nonzero binary form.
template <Field K>
BinaryRoots<K> binary_roots(const HomogPoly<K>& f) {
  if (f.is_zero()) throw std::domain_error("binary_roots: zero form vanishes everywhere");
  BinaryRoots<K> out;
  const auto dh = dehomogenize(f);
  if (dh.z0_power > 0) out.points.emplace_back(K(0), K(1));
  if constexpr (std::same_as<K, Rational>) {
    for (const auto& t : detail::rational_roots(dh.affine, out.complete)) out.points.emplace_back(K(1), t);
  } else {
    for (const auto& t : detail::modular_roots(dh.affine)) out.points.emplace_back(K(1), t);
  }
  return out;
}

}  // namespace adhm

#pragma once

#include "adhm/datum.hpp"
#include "adhm/polynomial.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace adhm {

/// [A(z), B(z)] + I(z) J(z) as a matrix of quadratic forms; the datum solves
/// the ADHM equation iff every coefficient vanishes.
template <Field K>
QuadraticPencil<K> adhm_residual(const ADHMDatum<K>& x) {
  return x.A() * x.B() - x.B() * x.A() + x.I() * x.J();
}

template <Field K>
bool solves_adhm(const ADHMDatum<K>& x) {
  return adhm_residual(x).is_zero();
}

// ---------------------------------------------------------------------------
// Pointwise stability / costability.

template <Field K>
struct SubspaceCheck {
  bool holds = false;
  /// Stability: smallest (A,B)-invariant subspace containing Im I.
  /// Costability: largest (A,B)-invariant subspace inside ker J.
  /// Columns form a basis; this is the failure witness when !holds.
  Matrix<K> subspace;
  std::size_t iterations = 0;
};

template <Field K>
SubspaceCheck<K> is_stable(const Datum0<K>& x) {
  x.validate_shapes();
  const std::size_t c = x.c();
  SubspaceCheck<K> out;
  Matrix<K> s = column_space(x.I);
  while (true) {
    if (s.cols() == c || s.cols() == 0) break;
    Matrix<K> next = column_space(hstack<K>({s, x.A * s, x.B * s}));
    if (next.cols() == s.cols()) break;
    s = std::move(next);
    ++out.iterations;
  }
  out.holds = s.cols() == c;
  out.subspace = std::move(s);
  return out;
}

template <Field K>
SubspaceCheck<K> is_costable(const Datum0<K>& x) {
  x.validate_shapes();
  const std::size_t c = x.c();
  SubspaceCheck<K> out;
  Matrix<K> s = kernel_matrix(x.J);
  while (s.cols() > 0) {
    const Matrix<K> p = annihilator(s, c);
    // {v in S : A v in S, B v in S}
    Matrix<K> next = kernel_matrix(vstack<K>({p, p * x.A, p * x.B}));
    if (next.cols() == s.cols()) break;
    s = std::move(next);
    ++out.iterations;
  }
  out.holds = s.cols() == 0;
  out.subspace = std::move(s);
  return out;
}

template <Field K>
struct RegularityVerdict {
  bool stable = false;
  bool costable = false;
  std::optional<Matrix<K>> stability_witness;    // proper invariant subspace containing Im I
  std::optional<Matrix<K>> costability_witness;  // nonzero invariant subspace inside ker J
  bool regular() const { return stable && costable; }
};

template <Field K>
RegularityVerdict<K> is_regular(const Datum0<K>& x) {
  RegularityVerdict<K> v;
  auto st = is_stable(x);
  auto co = is_costable(x);
  v.stable = st.holds;
  v.costable = co.holds;
  if (!st.holds) v.stability_witness = std::move(st.subspace);
  if (!co.holds) v.costability_witness = std::move(co.subspace);
  return v;
}

/// Independent check that `s` certifies instability: a proper subspace,
/// invariant under A and B, containing Im I.
template <Field K>
bool verifies_instability(const Datum0<K>& x, const Matrix<K>& s) {
  const std::size_t c = x.c();
  if (s.rows() != c || rank(s) >= c) return false;
  if (rank(hstack<K>({s, x.I})) != rank(s)) return false;
  return is_invariant(s, x.A) && is_invariant(s, x.B);
}

/// Independent check that `s` certifies non-costability: a nonzero subspace,
/// invariant under A and B, annihilated by J.
template <Field K>
bool verifies_noncostability(const Datum0<K>& x, const Matrix<K>& s) {
  if (s.rows() != x.c() || rank(s) == 0) return false;
  if (!(x.J * s).is_zero()) return false;
  return is_invariant(s, x.A) && is_invariant(s, x.B);
}

// ---------------------------------------------------------------------------
// Global regularity over P^d.

enum class RegularityMethodKind { symbolic, randomized };

struct RegularityMethod {
  RegularityMethodKind kind = RegularityMethodKind::symbolic;
  std::size_t samples = 50;
  std::uint64_t seed = 0;

  static RegularityMethod symbolic() { return {}; }
  static RegularityMethod randomized(std::size_t n, std::uint64_t seed) {
    return {RegularityMethodKind::randomized, n, seed};
  }
};

/// Half-width of the integer grid randomized checks sample from.
inline constexpr long kSampleGridRadius = 1000;

template <Field K>
struct GlobalRegularity {
  bool globally_regular = false;
  bool probabilistic = false;
  // Symbolic certificate (d = 1). A missing gcd means every maximal minor
  // vanishes identically, i.e. the condition fails at every point.
  std::optional<HomogPoly<K>> stability_gcd;
  std::optional<HomogPoly<K>> costability_gcd;
  bool fails_everywhere = false;
  bool failure_points_complete = true;
  std::vector<ProjPoint<K>> failure_points;
  std::vector<ProjPoint<K>> samples;  // randomized method only
};

namespace detail {

/// Krylov matrix columns of a d=1 datum: every word in (A, B) of length
/// < c applied to the columns of I. Returned as the degree of each column and
/// a function evaluating the whole matrix at [1 : t].
template <Field K>
struct KrylovPencil {
  const ADHMDatum<K>* x;
  std::vector<std::vector<int>> words;  // 0 = A, 1 = B, applied right to left
  std::vector<int> column_degree;

  explicit KrylovPencil(const ADHMDatum<K>& datum) : x(&datum) {
    const std::size_t c = datum.c(), r = datum.r();
    std::vector<std::vector<int>> layer{{}};
    for (std::size_t len = 0; len < c; ++len) {
      std::vector<std::vector<int>> next;
      for (const auto& w : layer) {
        words.push_back(w);
        for (int letter : {0, 1}) {
          auto longer = w;
          longer.push_back(letter);
          next.push_back(std::move(longer));
        }
      }
      layer = std::move(next);
    }
    for (const auto& w : words)
      for (std::size_t j = 0; j < r; ++j) column_degree.push_back(static_cast<int>(w.size()) + 1);
  }

  Matrix<K> at(const K& t) const {
    const ProjPoint<K> p(std::vector<K>{K(1), t});
    const Datum0<K> x0 = evaluate(*x, p);
    const std::size_t c = x0.c(), r = x0.r();
    Matrix<K> out(c, column_degree.size());
    std::size_t col = 0;
    for (const auto& w : words) {
      Matrix<K> m = x0.I;
      for (int letter : w) m = (letter == 0 ? x0.A : x0.B) * m;
      out.set_block(0, col, m);
      col += r;
    }
    return out;
  }
};

/// gcd of all maximal (c x c) minors of the Krylov pencil, as binary forms.
/// nullopt when every minor is identically zero.
template <Field K>
std::optional<HomogPoly<K>> krylov_minor_gcd(const ADHMDatum<K>& x) {
  const KrylovPencil<K> kp(x);
  const std::size_t c = x.c(), ncols = kp.column_degree.size();
  if (ncols < c) return std::nullopt;
  const int max_degree = static_cast<int>(c * c);
  std::vector<K> ts;
  std::vector<Matrix<K>> values;
  for (int t = 0; t <= max_degree; ++t) {
    ts.emplace_back(t);
    values.push_back(kp.at(ts.back()));
  }

  std::optional<HomogPoly<K>> g;
  std::vector<std::size_t> pick(c);
  for (std::size_t i = 0; i < c; ++i) pick[i] = i;
  while (true) {
    int deg = 0;
    for (auto j : pick) deg += kp.column_degree[j];
    std::vector<K> xs, ys;
    for (int t = 0; t <= deg; ++t) {
      Matrix<K> sub(c, c);
      for (std::size_t a = 0; a < c; ++a)
        for (std::size_t i = 0; i < c; ++i) sub(i, a) = values[static_cast<std::size_t>(t)](i, pick[a]);
      xs.push_back(ts[static_cast<std::size_t>(t)]);
      ys.push_back(determinant(std::move(sub)));
    }
    const UPoly<K> u = interpolate(xs, ys);
    if (!u.is_zero()) {
      std::vector<K> coeffs(static_cast<std::size_t>(deg) + 1, K(0));
      for (std::size_t j = 0; j < u.coeffs().size(); ++j) coeffs[j] = u.coeffs()[j];
      const HomogPoly<K> minor = binary_form(coeffs);
      g = g ? binary_gcd(*g, minor) : normalize_binary(minor);
      if (g->degree() == 0) return g;
    }
    // next combination
    std::size_t i = c;
    while (i > 0 && pick[i - 1] == ncols - c + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < c; ++j) pick[j] = pick[j - 1] + 1;
  }
  return g;
}

template <Field K>
K sample_coordinate(std::mt19937_64& rng, long radius) {
  const auto span = static_cast<std::uint64_t>(2 * radius + 1);
  return K(static_cast<long>(rng() % span) - radius);
}

template <Field K>
void add_point_unique(std::vector<ProjPoint<K>>& pts, const ProjPoint<K>& p) {
  for (const auto& q : pts)
    if (q.same_point(p)) return;
  pts.push_back(p.canonical());
}

}  // namespace detail

/// Deterministic sample of `n` points of P^(num_vars-1) with integer
/// coordinates in [-radius, radius].
template <Field K>
std::vector<ProjPoint<K>> sample_points(std::size_t num_vars, std::size_t n, std::uint64_t seed,
                                        long radius = kSampleGridRadius) {
  std::mt19937_64 rng(seed);
  std::vector<ProjPoint<K>> pts;
  while (pts.size() < n) {
    std::vector<K> x(num_vars);
    for (auto& v : x) v = detail::sample_coordinate<K>(rng, radius);
    if (is_zero_vector(x)) continue;
    pts.emplace_back(std::move(x));
  }
  return pts;
}

template <Field K>
GlobalRegularity<K> is_globally_regular(const ADHMDatum<K>& x,
                                        RegularityMethod method = RegularityMethod::symbolic()) {
  GlobalRegularity<K> out;
  if (x.d() == 0) {
    const ProjPoint<K> p{1};
    out.globally_regular = is_regular(evaluate(x, p)).regular();
    if (!out.globally_regular) {
      out.failure_points.push_back(p);
      out.fails_everywhere = true;
    }
    return out;
  }

  if (method.kind == RegularityMethodKind::randomized) {
    out.probabilistic = true;
    out.samples = sample_points<K>(x.num_vars(), method.samples, method.seed);
    out.globally_regular = true;
    for (const auto& p : out.samples)
      if (!is_regular(evaluate(x, p)).regular()) {
        out.globally_regular = false;
        detail::add_point_unique(out.failure_points, p);
      }
    return out;
  }

  if (x.d() >= 2)
    throw PreconditionError("is_globally_regular: symbolic method is only available for d <= 1 (got d = " +
                            std::to_string(x.d()) + ")");

  out.stability_gcd = detail::krylov_minor_gcd(x);
  out.costability_gcd = detail::krylov_minor_gcd(x.transposed());
  const bool st_ok = out.stability_gcd && out.stability_gcd->degree() == 0;
  const bool co_ok = out.costability_gcd && out.costability_gcd->degree() == 0;
  out.globally_regular = st_ok && co_ok;
  if (out.globally_regular) return out;

  out.fails_everywhere = !out.stability_gcd || !out.costability_gcd;
  if (out.fails_everywhere) {
    // Any point witnesses the failure; report the first coordinate point.
    out.failure_points.push_back(ProjPoint<K>{1, 0});
    return out;
  }
  for (const auto* g : {&*out.stability_gcd, &*out.costability_gcd}) {
    if (g->degree() == 0) continue;
    const auto roots = binary_roots(*g);
    out.failure_points_complete = out.failure_points_complete && roots.complete;
    for (const auto& [a, b] : roots.points) detail::add_point_unique(out.failure_points, ProjPoint<K>({a, b}));
  }
  return out;
}

}  // namespace adhm

#pragma once

// Linear monads O(-1)^c --alpha--> O^(2c+r) --beta--> O(1)^c on P^n, n = d+2,
// in homogeneous coordinates [z_0 : ... : z_d : x : y]:
//
//   alpha = ( A~ - x ; B~ - y ; J~ ),   beta = ( -(B~ - y) | A~ - x | I~ )
//
// so that beta.alpha = [A~, B~] + I~ J~. The bundle E is ker(beta)/im(alpha).

#include "adhm/deformation.hpp"
#include "adhm/regularity.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace adhm {

template <Field K>
struct MonadRep {
  std::size_t n = 0;  // ambient projective dimension
  std::size_t r = 0;  // rank of E
  std::size_t c = 0;  // charge
  PencilMatrix<K> alpha;  // (2c+r) x c
  PencilMatrix<K> beta;   // c x (2c+r)
  std::optional<ADHMDatum<K>> source;

  std::size_t num_vars() const { return n + 1; }
  std::size_t middle() const { return 2 * c + r; }
};

/// The residual of X as quadratic forms in the n+1 monad variables.
template <Field K>
QuadraticPencil<K> embedded_residual(const ADHMDatum<K>& x) {
  const auto res = adhm_residual(x);
  const std::size_t nv = x.num_vars() + 2;
  QuadraticPencil<K> out(x.c(), x.c(), nv);
  for (std::size_t a = 0; a < x.num_vars(); ++a)
    for (std::size_t b = a; b < x.num_vars(); ++b) out.coeff(a, b) = res.coeff(a, b);
  return out;
}

template <Field K>
QuadraticPencil<K> composition(const MonadRep<K>& m) {
  return m.beta * m.alpha;
}

template <Field K>
MonadRep<K> build_monad(const ADHMDatum<K>& x) {
  const std::size_t c = x.c(), r = x.r(), d = x.d(), nv = d + 3;
  MonadRep<K> m;
  m.n = d + 2;
  m.r = r;
  m.c = c;
  m.alpha = PencilMatrix<K>(2 * c + r, c, nv);
  m.beta = PencilMatrix<K>(c, 2 * c + r, nv);
  for (std::size_t k = 0; k <= d; ++k) {
    m.alpha.coeff(k) = vstack<K>({x.A().coeff(k), x.B().coeff(k), x.J().coeff(k)});
    m.beta.coeff(k) = hstack<K>({-x.B().coeff(k), x.A().coeff(k), x.I().coeff(k)});
  }
  const Matrix<K> one = Matrix<K>::identity(c);
  m.alpha.coeff(d + 1).set_block(0, 0, -one);  // -x
  m.alpha.coeff(d + 2).set_block(c, 0, -one);  // -y
  m.beta.coeff(d + 1).set_block(0, c, -one);   // -x in the A-block
  m.beta.coeff(d + 2).set_block(0, 0, one);    // +y in the -(B - y) block
  m.source = x;
  if (!(composition(m) == embedded_residual(x)))
    throw AssertionFailure("build_monad: beta.alpha differs from the ADHM residual");
  return m;
}

// ---------------------------------------------------------------------------
// Fiberwise nondegeneracy.

template <Field K>
struct MonadVerdict {
  bool nondegenerate = false;
  bool probabilistic = false;
  std::vector<ProjPoint<K>> failure_points;       // points of P^n with a verified rank drop
  std::vector<ProjPoint<K>> base_failure_points;  // points of P^d over which the monad degenerates
};

template <Field K>
bool fiber_nondegenerate(const MonadRep<K>& m, const ProjPoint<K>& p) {
  return rank(m.alpha.evaluate(p.coords())) == m.c && rank(m.beta.evaluate(p.coords())) == m.c;
}

namespace detail {

/// M with a S = S M, for S with independent columns spanning an a-invariant subspace.
template <Field K>
std::optional<Matrix<K>> restrict_to(const Matrix<K>& a, const Matrix<K>& s) {
  const Matrix<K> as = a * s;
  Matrix<K> out(s.cols(), s.cols());
  for (std::size_t j = 0; j < s.cols(); ++j) {
    auto col = solve_linear(s, as.col(j));
    if (!col) return std::nullopt;
    for (std::size_t i = 0; i < s.cols(); ++i) out(i, j) = (*col)[i];
  }
  return out;
}

template <Field K>
std::vector<K> eigenvalues_in_field(const Matrix<K>& a) {
  const std::size_t s = a.rows();
  std::vector<K> xs, ys;
  for (std::size_t t = 0; t <= s; ++t) {
    xs.emplace_back(static_cast<long>(t));
    ys.push_back(determinant(a - Matrix<K>::scalar(s, xs.back())));
  }
  const UPoly<K> chi = interpolate(xs, ys);
  std::vector<K> out;
  for (const auto& [z0, z1] : binary_roots(binary_form(chi.coeffs())).points)
    if (!z0.is_zero()) out.push_back(z1 / z0);
  return out;
}

/// Common eigenvector (v, lambda, mu) of a and b inside the subspace spanned
/// by s, using eigenvalues that lie in the ground field.
template <Field K>
std::optional<std::tuple<Vector<K>, K, K>> common_eigenvector(const Matrix<K>& a, const Matrix<K>& b,
                                                              const Matrix<K>& s) {
  if (s.cols() == 0) return std::nullopt;
  const auto ra = restrict_to(a, s), rb = restrict_to(b, s);
  if (!ra || !rb) return std::nullopt;
  const std::size_t dim = s.cols();
  for (const K& lambda : eigenvalues_in_field(*ra)) {
    const Matrix<K> eig = kernel_matrix(*ra - Matrix<K>::scalar(dim, lambda));
    const auto rbe = restrict_to(*rb, eig);
    if (!rbe) continue;
    for (const K& mu : eigenvalues_in_field(*rbe)) {
      const auto u = kernel_basis(*rbe - Matrix<K>::scalar(eig.cols(), mu));
      if (u.empty()) continue;
      return std::tuple{s * (eig * u.front()), lambda, mu};
    }
  }
  return std::nullopt;
}

/// Lifts a base point z where X(z) is not regular to a point [z : x : y] of
/// P^n where the monad degenerates, when the relevant eigenvalues are rational.
template <Field K>
std::optional<ProjPoint<K>> lift_failure(const MonadRep<K>& m, const ProjPoint<K>& z) {
  const Datum0<K> x0 = evaluate(*m.source, z);
  const auto verdict = is_regular(x0);
  std::optional<std::tuple<Vector<K>, K, K>> eig;
  if (verdict.costability_witness) eig = common_eigenvector(x0.A, x0.B, *verdict.costability_witness);
  if (!eig && verdict.stability_witness) {
    const Matrix<K> ann = annihilator(*verdict.stability_witness, x0.c()).transpose();
    eig = common_eigenvector(x0.A.transpose(), x0.B.transpose(), ann);
  }
  if (!eig) return std::nullopt;
  std::vector<K> coords(z.coords().begin(), z.coords().end());
  coords.push_back(std::get<1>(*eig));
  coords.push_back(std::get<2>(*eig));
  ProjPoint<K> p(std::move(coords));
  if (fiber_nondegenerate(m, p)) return std::nullopt;
  return p;
}

}  // namespace detail

/// Checks rank alpha = rank beta = c at every point. The symbolic method
/// (d <= 1, monad built from a datum) uses the global-regularity certificate;
/// otherwise points are sampled.
template <Field K>
MonadVerdict<K> verify_monad_fiberwise(const MonadRep<K>& m,
                                       RegularityMethod method = RegularityMethod::symbolic()) {
  MonadVerdict<K> out;
  const bool symbolic = method.kind == RegularityMethodKind::symbolic && m.source && m.n <= 3;
  if (!symbolic) {
    out.probabilistic = true;
    out.nondegenerate = true;
    for (const auto& p : sample_points<K>(m.num_vars(), method.samples, method.seed))
      if (!fiber_nondegenerate(m, p)) {
        out.nondegenerate = false;
        out.failure_points.push_back(p);
      }
    return out;
  }
  const auto cert = is_globally_regular(*m.source, RegularityMethod::symbolic());
  out.nondegenerate = cert.globally_regular;
  for (const auto& z : cert.failure_points) {
    out.base_failure_points.push_back(z);
    if (auto p = detail::lift_failure(m, z)) out.failure_points.push_back(*p);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cohomology of twists.

inline constexpr std::size_t kMaxAmbientDimension = 5;
inline constexpr int kMinTwist = -8;
inline constexpr int kMaxTwist = 4;

/// h^0(O_{P^n}(m))
inline std::size_t h0_line(std::size_t n, int m) {
  if (m < 0) return 0;
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(m) + n, n);
  return b.get_ui();
}

/// h^n(O_{P^n}(m)) = h^0(O(-m-n-1))
inline std::size_t hn_line(std::size_t n, int m) { return h0_line(n, -m - static_cast<int>(n) - 1); }

/// chi(O_{P^n}(m)) = C(m+n, n) as a polynomial in m.
inline long euler_line(std::size_t n, int m) {
  long num = 1, den = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    num *= m + static_cast<long>(i);
    den *= static_cast<long>(i);
  }
  return num / den;
}

/// Matrix of H^0(O(s))^cols -> H^0(O(s+1))^rows induced by a matrix of
/// linear forms; rows/columns indexed by (component, monomial).
template <Field K>
Matrix<K> section_map(const PencilMatrix<K>& p, int s) {
  const std::size_t nv = p.num_vars();
  const auto src = monomials(nv, s);
  const auto dst = monomials(nv, s + 1);
  const auto dst_idx = monomial_index(dst);
  Matrix<K> out(p.rows() * dst.size(), p.cols() * src.size());
  for (std::size_t j = 0; j < p.cols(); ++j)
    for (std::size_t mu = 0; mu < src.size(); ++mu)
      for (std::size_t v = 0; v < nv; ++v) {
        Exponent e = src[mu];
        ++e[v];
        const std::size_t row_mono = dst_idx.at(e);
        const auto& coeff = p.coeff(v);
        for (std::size_t i = 0; i < p.rows(); ++i)
          if (!coeff(i, j).is_zero()) out(i * dst.size() + row_mono, j * src.size() + mu) += coeff(i, j);
      }
  return out;
}

struct CohomologyTable {
  std::size_t n = 0;
  int k_min = 0, k_max = 0;
  std::vector<std::vector<std::size_t>> h;  // h[i][k - k_min] = h^i(E(k))

  std::size_t at(std::size_t i, int k) const { return h.at(i).at(static_cast<std::size_t>(k - k_min)); }
  long euler(int k) const {
    long chi = 0;
    for (std::size_t i = 0; i <= n; ++i) chi += (i % 2 ? -1L : 1L) * static_cast<long>(at(i, k));
    return chi;
  }
  friend bool operator==(const CohomologyTable&, const CohomologyTable&) = default;
};

/// chi(E(k)) from the monad: (2c+r) chi(O(k)) - c chi(O(k-1)) - c chi(O(k+1)).
inline long monad_euler(std::size_t n, std::size_t r, std::size_t c, int k) {
  return static_cast<long>(2 * c + r) * euler_line(n, k) - static_cast<long>(c) * euler_line(n, k - 1) -
         static_cast<long>(c) * euler_line(n, k + 1);
}

/// h^i(E(k)) for k in [k_min, k_max] from the hypercohomology spectral
/// sequence of the twisted monad. Only rows q = 0 and q = n of E_1 are
/// nonzero and the sequence degenerates at E_2 for n >= 2.
template <Field K>
CohomologyTable cohomology_dims(const MonadRep<K>& m, int k_min, int k_max, bool check_validity = true) {
  const std::size_t n = m.n;
  if (n < 2 || n > kMaxAmbientDimension)
    throw PreconditionError("cohomology_dims: ambient dimension must be in [2, 5]");
  if (k_min > k_max || k_min < kMinTwist || k_max > kMaxTwist)
    throw PreconditionError("cohomology_dims: twist window must lie in [" + std::to_string(kMinTwist) + ", " +
                            std::to_string(kMaxTwist) + "]");
  if (check_validity) {
    if (!composition(m).is_zero()) throw PreconditionError("cohomology_dims: invalid monad (beta.alpha != 0)");
    if (!verify_monad_fiberwise(m).nondegenerate)
      throw PreconditionError("cohomology_dims: invalid monad (degenerate fibers)");
  }
  const std::size_t c = m.c, mid = m.middle();
  const int ni = static_cast<int>(n);
  const PencilMatrix<K> alpha_t = m.alpha.transpose(), beta_t = m.beta.transpose();
  CohomologyTable t{n, k_min, k_max, std::vector<std::vector<std::size_t>>(n + 1)};
  for (int k = k_min; k <= k_max; ++k) {
    std::vector<long> h(n + 2, 0);
    // Row q = 0: H^0(O(k-1))^c -> H^0(O(k))^mid -> H^0(O(k+1))^c.
    const long a0 = static_cast<long>(c * h0_line(n, k - 1));
    const long b0 = static_cast<long>(mid * h0_line(n, k));
    const long e0 = static_cast<long>(c * h0_line(n, k + 1));
    const long ra0 = a0 && b0 ? static_cast<long>(rank(section_map(m.alpha, k - 1))) : 0;
    const long rb0 = b0 && e0 ? static_cast<long>(rank(section_map(m.beta, k))) : 0;
    // Row q = n, via Serre duality: ranks of the transposed maps on H^0.
    const long an = static_cast<long>(c * hn_line(n, k - 1));
    const long bn = static_cast<long>(mid * hn_line(n, k));
    const long en = static_cast<long>(c * hn_line(n, k + 1));
    const long ran = an && bn ? static_cast<long>(rank(section_map(alpha_t, -k - ni - 1))) : 0;
    const long rbn = bn && en ? static_cast<long>(rank(section_map(beta_t, -k - ni - 2))) : 0;

    if (a0 - ra0 != 0 || en - rbn != 0)
      throw PreconditionError("cohomology_dims: invalid monad (alpha not injective or beta not surjective)");
    h[0] += b0 - rb0 - ra0;
    h[1] += e0 - rb0;
    h[n - 1] += an - ran;
    h[n] += bn - rbn - ran;
    for (std::size_t i = 0; i <= n; ++i) {
      if (h[i] < 0) throw AssertionFailure("cohomology_dims: negative dimension");
      t.h[i].push_back(static_cast<std::size_t>(h[i]));
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// Restriction to lines.

template <Field K>
struct LineParam {
  ProjPoint<K> p, q;

  LineParam(ProjPoint<K> a, ProjPoint<K> b) : p(std::move(a)), q(std::move(b)) {
    if (p.size() != q.size()) throw PreconditionError("LineParam: points live in different spaces");
    Matrix<K> m(2, p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      m(0, i) = p[i];
      m(1, i) = q[i];
    }
    if (rank(m) != 2) throw PreconditionError("LineParam: points do not span a line");
  }

  std::string to_string() const { return p.to_string() + ";" + q.to_string(); }
};

/// The line {z_0 = ... = z_d = 0} in P^(d+2), spanned by the x and y points.
template <Field K>
LineParam<K> framing_line(std::size_t n) {
  std::vector<K> x(n + 1, K(0)), y(n + 1, K(0));
  x[n - 1] = K(1);
  y[n] = K(1);
  return {ProjPoint<K>(x), ProjPoint<K>(y)};
}

template <Field K>
PencilMatrix<K> restrict_pencil(const PencilMatrix<K>& m, const LineParam<K>& line) {
  return PencilMatrix<K>({m.evaluate(line.p.coords()), m.evaluate(line.q.coords())});
}

struct SplittingType {
  std::vector<int> exponents;  // a_1 >= ... >= a_r
  bool trivial() const {
    return std::all_of(exponents.begin(), exponents.end(), [](int a) { return a == 0; });
  }
  friend bool operator==(const SplittingType&, const SplittingType&) = default;
};

namespace detail {

/// Degrees k in [1, window] of minimal generators of the graded module
/// sum_{k >= 0} H^0(F(k)) for the bundle F = ker(b)/im(a) on P^1, plus the
/// dimension of H^0(F).
template <Field K>
std::pair<std::vector<std::size_t>, std::size_t> generator_counts(const PencilMatrix<K>& a,
                                                                  const PencilMatrix<K>& b, int window) {
  const std::size_t mid = a.rows();
  std::vector<std::size_t> gens(static_cast<std::size_t>(window) + 1, 0);
  PencilMatrix<K> shift_s(mid, mid, 2), shift_t(mid, mid, 2);
  shift_s.coeff(0) = Matrix<K>::identity(mid);
  shift_t.coeff(1) = Matrix<K>::identity(mid);
  Matrix<K> prev_kernel;
  std::size_t h0 = 0;
  for (int k = 0; k <= window; ++k) {
    const Matrix<K> z = kernel_matrix(section_map(b, k));
    const Matrix<K> im = k >= 1 ? section_map(a, k - 1) : Matrix<K>(z.rows(), 0);
    if (k == 0) {
      h0 = z.cols() - rank(im);
    } else {
      const std::size_t spanned =
          rank(hstack<K>({section_map(shift_s, k - 1) * prev_kernel, section_map(shift_t, k - 1) * prev_kernel, im}));
      gens[static_cast<std::size_t>(k)] = z.cols() - spanned;
    }
    prev_kernel = z;
  }
  return {gens, h0};
}

}  // namespace detail

inline constexpr int splitting_window(std::size_t c) { return static_cast<int>(c) + 1; }

/// Splitting type of E restricted to a line, from the generator degrees of
/// the section modules of E|_L and its dual.
template <Field K>
SplittingType restrict_to_line(const MonadRep<K>& m, const LineParam<K>& line) {
  if (line.p.size() != m.num_vars()) throw PreconditionError("restrict_to_line: line lives in the wrong space");
  const PencilMatrix<K> a = restrict_pencil(m.alpha, line), b = restrict_pencil(m.beta, line);
  const int window = splitting_window(m.c);
  const auto [neg, h0_e] = detail::generator_counts(a, b, window);
  const auto [pos, h0_dual] = detail::generator_counts(b.transpose(), a.transpose(), window);
  SplittingType st;
  std::size_t counted = 0;
  for (int k = window; k >= 1; --k)
    for (std::size_t i = 0; i < pos[static_cast<std::size_t>(k)]; ++i) st.exponents.push_back(k);
  for (int k = 1; k <= window; ++k) counted += pos[static_cast<std::size_t>(k)] + neg[static_cast<std::size_t>(k)];
  if (counted > m.r) throw AssertionFailure("restrict_to_line: more summands than the rank");
  const std::size_t zeros = m.r - counted;
  for (std::size_t i = 0; i < zeros; ++i) st.exponents.push_back(0);
  for (int k = 1; k <= window; ++k)
    for (std::size_t i = 0; i < neg[static_cast<std::size_t>(k)]; ++i) st.exponents.push_back(-k);
  // h^0(E|_L) = sum over a_i >= 0 of (a_i + 1); likewise for the dual.
  long expect_e = 0, expect_dual = 0, total = 0;
  for (int a_i : st.exponents) {
    if (a_i >= 0) expect_e += a_i + 1;
    if (a_i <= 0) expect_dual += -a_i + 1;
    total += a_i;
  }
  if (static_cast<long>(h0_e) != expect_e || static_cast<long>(h0_dual) != expect_dual || total != 0)
    throw PreconditionError("restrict_to_line: inconsistent section counts (line meets the degeneracy locus, "
                            "or a splitting exponent exceeds the window " +
                            std::to_string(window) + ")");
  return st;
}

template <Field K>
struct JumpingLine {
  LineParam<K> line;
  SplittingType splitting;
  std::size_t lines_tried;
};

/// Searches lines through random small-integer points until the splitting
/// type is nontrivial.
template <Field K>
std::optional<JumpingLine<K>> find_jumping_line(const MonadRep<K>& m, std::uint64_t seed,
                                                std::size_t max_lines = 1000, long radius = 3) {
  std::mt19937_64 rng(seed);
  for (std::size_t tried = 1; tried <= max_lines; ++tried) {
    const auto pts = sample_points<K>(m.num_vars(), 2, rng(), radius);
    Matrix<K> span(2, m.num_vars());
    for (std::size_t i = 0; i < m.num_vars(); ++i) {
      span(0, i) = pts[0][i];
      span(1, i) = pts[1][i];
    }
    if (rank(span) < 2) continue;
    const LineParam<K> line(pts[0], pts[1]);
    try {
      auto st = restrict_to_line(m, line);
      if (!st.trivial()) return JumpingLine<K>{line, std::move(st), tried};
    } catch (const PreconditionError&) {
      continue;
    }
  }
  return std::nullopt;
}

/// Change of framing: I_k -> I_k h, J_k -> h^-1 J_k.
template <Field K>
ADHMDatum<K> framing_change(const ADHMDatum<K>& x, const Matrix<K>& h) {
  if (h.rows() != x.r() || h.cols() != x.r()) throw PreconditionError("framing_change: h must be r x r");
  const auto inv = inverse(h);
  if (!inv) throw PreconditionError("framing_change: h is singular");
  return ADHMDatum<K>(x.A(), x.B(), x.I() * h, *inv * x.J());
}

}  // namespace adhm

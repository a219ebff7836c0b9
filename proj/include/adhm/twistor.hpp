#pragma once

// A globally regular d = 1 datum as a section p -> [X(p)] of the twistor
// fibration, and the web of subspaces S_t of its tangent space.

#include "adhm/deformation.hpp"

#include <optional>
#include <vector>

namespace adhm {

template <Field K>
struct SectionSample {
  ProjPoint<K> point;
  Datum0<K> datum;
  RegularityVerdict<K> verdict;
};

template <Field K>
std::vector<SectionSample<K>> section_samples(const ADHMDatum<K>& x, const std::vector<ProjPoint<K>>& points) {
  if (x.d() != 1) throw PreconditionError("section_samples: requires d = 1");
  std::vector<SectionSample<K>> out;
  for (const auto& p : points) {
    Datum0<K> x0 = evaluate(x, p);
    auto v = is_regular(x0);
    out.push_back({p, std::move(x0), std::move(v)});
  }
  return out;
}

template <Field K>
inline std::vector<ProjPoint<K>> default_web_points() {
  return {ProjPoint<K>{1, 0}, ProjPoint<K>{0, 1}, ProjPoint<K>{1, 1}, ProjPoint<K>{1, -1}, ProjPoint<K>{1, 2}};
}

/// Complement of the gauge directions inside ker L; columns are parameter
/// vectors (dA_k, dB_k, dI_k, dJ_k).
template <Field K>
struct TangentSpace {
  ParameterLayout layout;
  Matrix<K> basis;
  std::size_t dim() const { return basis.cols(); }
};

template <Field K>
TangentSpace<K> tangent_space(const ADHMDatum<K>& x) {
  require_regular_solution(x, "tangent_space");
  const Matrix<K> g = checked_gauge_directions(x);
  const Matrix<K> ker = kernel_matrix(linearization(x));
  if (rank(hstack<K>({ker, g})) != ker.cols())
    throw AssertionFailure("tangent_space: gauge directions are not in ker L");
  // Pivot columns of [G | ker] beyond G pick a complement.
  const auto ech = rref(hstack<K>({g, ker}));
  std::vector<Vector<K>> cols;
  for (auto p : ech.pivots)
    if (p >= g.cols()) cols.push_back(ker.col(p - g.cols()));
  return {layout_of(x), Matrix<K>::from_columns(ker.rows(), cols)};
}

/// delta X -> delta X(t) from d = 1 parameters to d = 0 parameters.
template <Field K>
Matrix<K> evaluation_operator(const ParameterLayout& lay, const ProjPoint<K>& t) {
  if (t.size() != lay.num_vars) throw PreconditionError("evaluation_operator: point has the wrong length");
  const std::size_t block = lay.per_variable();
  Matrix<K> e(block, lay.size());
  for (std::size_t k = 0; k < lay.num_vars; ++k)
    if (!t[k].is_zero()) e.set_block(0, k * block, Matrix<K>::scalar(block, t[k]));
  return e;
}

template <Field K>
struct WebSubspace {
  ProjPoint<K> point;
  Matrix<K> coords;  // basis of S_t in coordinates of the tangent basis
  std::size_t dim() const { return coords.cols(); }
};

/// S_t: directions whose value at t is an infinitesimal gauge transformation
/// of X(t).
template <Field K>
WebSubspace<K> web_subspace(const ADHMDatum<K>& x, const ProjPoint<K>& t, const TangentSpace<K>& tangent) {
  if (x.d() != 1) throw PreconditionError("web_subspace: requires d = 1");
  const auto x0 = ADHMDatum<K>::constant(evaluate(x, t));
  const Matrix<K> g0 = gauge_directions(x0);
  if (rank(g0) != x.c() * x.c())
    throw AssertionFailure("web_subspace: gauge image at X(t) does not have dimension c^2");
  const Matrix<K> quotient = annihilator(g0, g0.rows());
  const Matrix<K> composite = quotient * evaluation_operator(tangent.layout, t) * tangent.basis;
  return {t, kernel_matrix(composite)};
}

struct WebPair {
  std::size_t i = 0, j = 0;
  std::size_t intersection_dim = 0;
  std::size_t sum_dim = 0;
};

template <Field K>
struct WebReport {
  std::size_t tangent_dim = 0;
  std::size_t expected_subspace_dim = 0;  // 2rc
  std::vector<WebSubspace<K>> subspaces;
  std::vector<WebPair> pairs;  // i < j
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, Matrix<K>>> projections;  // ordered pairs
  bool projections_idempotent = true;
  bool projections_complementary = true;  // P_{t,t'} + P_{t',t} = 1
  std::size_t projection_span = 0;

  bool all_transversal() const {
    for (const auto& p : pairs)
      if (p.intersection_dim != 0 || p.sum_dim != tangent_dim) return false;
    return true;
  }
  /// Points where dim S_t differs from 2rc.
  std::vector<std::size_t> flagged() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < subspaces.size(); ++i)
      if (subspaces[i].dim() != expected_subspace_dim) out.push_back(i);
    return out;
  }
};

/// Projection onto span(s) along span(t), for complementary subspaces.
template <Field K>
Matrix<K> projection(const Matrix<K>& s, const Matrix<K>& t) {
  const Matrix<K> m = hstack<K>({s, t});
  const auto inv = inverse(m);
  if (!inv) throw PreconditionError("projection: subspaces are not complementary");
  Matrix<K> diag(m.cols(), m.cols());
  for (std::size_t i = 0; i < s.cols(); ++i) diag(i, i) = K(1);
  return m * diag * *inv;
}

template <Field K>
WebReport<K> web_report(const ADHMDatum<K>& x, const std::vector<ProjPoint<K>>& ts) {
  if (x.d() != 1) throw PreconditionError("web_report: requires d = 1");
  if (ts.size() < 3) throw PreconditionError("web_report: at least three points are required");
  for (std::size_t i = 0; i < ts.size(); ++i)
    for (std::size_t j = i + 1; j < ts.size(); ++j)
      if (ts[i].same_point(ts[j]))
        throw PreconditionError("web_report: repeated point " + ts[i].to_string());
  const auto tangent = tangent_space(x);
  WebReport<K> rep;
  rep.tangent_dim = tangent.dim();
  rep.expected_subspace_dim = 2 * x.r() * x.c();
  for (const auto& t : ts) rep.subspaces.push_back(web_subspace(x, t, tangent));

  const std::size_t n = tangent.dim();
  const Matrix<K> one = Matrix<K>::identity(n);
  std::vector<std::optional<Matrix<K>>> proj(ts.size() * ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i)
    for (std::size_t j = i + 1; j < ts.size(); ++j) {
      const auto& s = rep.subspaces[i].coords;
      const auto& t = rep.subspaces[j].coords;
      const std::size_t sum = rank(hstack<K>({s, t}));
      rep.pairs.push_back({i, j, s.cols() + t.cols() - sum, sum});
      if (sum != n || s.cols() + t.cols() != n) continue;
      proj[i * ts.size() + j] = projection(s, t);
      proj[j * ts.size() + i] = projection(t, s);
      const auto& p = *proj[i * ts.size() + j];
      const auto& q = *proj[j * ts.size() + i];
      rep.projections_idempotent = rep.projections_idempotent && p * p == p && q * q == q;
      rep.projections_complementary = rep.projections_complementary && p + q == one;
    }
  std::vector<Vector<K>> flat;
  for (std::size_t i = 0; i < ts.size(); ++i)
    for (std::size_t j = 0; j < ts.size(); ++j)
      if (proj[i * ts.size() + j]) {
        rep.projections.push_back({{i, j}, *proj[i * ts.size() + j]});
        flat.push_back(flatten(*proj[i * ts.size() + j]));
      }
  rep.projection_span = flat.empty() ? 0 : rank(Matrix<K>::from_columns(n * n, flat));
  return rep;
}

}  // namespace adhm

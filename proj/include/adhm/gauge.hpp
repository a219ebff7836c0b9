#pragma once

// GL(V) action g.(A_k, B_k, I_k, J_k) = (g A_k g^-1, g B_k g^-1, g I_k, J_k g^-1).

#include "adhm/datum.hpp"

#include <cstdint>
#include <optional>
#include <random>

namespace adhm {

template <Field K>
Datum0<K> gauge_act(const GaugeElement<K>& g, const Datum0<K>& x) {
  const auto& m = g.matrix();
  const auto& inv = g.inverse_matrix();
  return {m * x.A * inv, m * x.B * inv, m * x.I, x.J * inv};
}

template <Field K>
ADHMDatum<K> gauge_act(const GaugeElement<K>& g, const ADHMDatum<K>& x) {
  if (g.size() != x.c()) throw PreconditionError("gauge_act: gauge element has the wrong size");
  const auto& m = g.matrix();
  const auto& inv = g.inverse_matrix();
  return ADHMDatum<K>(m * x.A() * inv, m * x.B() * inv, m * x.I(), x.J() * inv);
}

/// Solves g A_k = A'_k g, g B_k = B'_k g, g I_k = I'_k, J_k = J'_k g for all k
/// and returns an invertible solution, if any.
template <Field K>
std::optional<GaugeElement<K>> gauge_equivalent(const ADHMDatum<K>& x, const ADHMDatum<K>& y) {
  if (x.dims() != y.dims()) return std::nullopt;
  const std::size_t c = x.c();
  std::vector<Matrix<K>> blocks;
  std::vector<K> rhs;
  auto append_rhs = [&](const Matrix<K>& m) { rhs.insert(rhs.end(), m.data().begin(), m.data().end()); };
  for (std::size_t k = 0; k < x.num_vars(); ++k) {
    const Datum0<K> a = x.coefficient(k), b = y.coefficient(k);
    blocks.push_back(right_multiplication(a.A, c) - left_multiplication(b.A, c));
    append_rhs(Matrix<K>(c, c));
    blocks.push_back(right_multiplication(a.B, c) - left_multiplication(b.B, c));
    append_rhs(Matrix<K>(c, c));
    blocks.push_back(right_multiplication(a.I, c));
    append_rhs(b.I);
    blocks.push_back(left_multiplication(b.J, c));
    append_rhs(a.J);
  }
  const Matrix<K> system = vstack(blocks);
  const auto particular = solve_linear(system, rhs);
  if (!particular) return std::nullopt;
  auto as_gauge = [&](const Vector<K>& v) -> std::optional<GaugeElement<K>> {
    Matrix<K> g = unflatten<K>(v, c, c);
    if (rank(g) < c) return std::nullopt;
    return GaugeElement<K>(std::move(g));
  };
  if (auto g = as_gauge(*particular)) return g;
  const auto kernel = kernel_basis(system);
  if (kernel.empty()) return std::nullopt;
  // Singular particular solution: look for an invertible point of the
  // affine solution space (possible only for data with a stabilizer).
  std::mt19937_64 rng(0x9a09eULL);
  for (int attempt = 0; attempt < 64; ++attempt) {
    Vector<K> v = *particular;
    for (const auto& kv : kernel) {
      const K s(static_cast<long>(rng() % 21) - 10);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] += s * kv[i];
    }
    if (auto g = as_gauge(v)) return g;
  }
  return std::nullopt;
}

}  // namespace adhm

#pragma once

// JSON datum files (schema_version "1") and report fragments.
//
//   {
//     "schema_version": "1",
//     "field": "rational",            // or "Fp" together with "prime": p
//     "d": 1, "r": 2, "c": 1,
//     "A": [ A_0, ..., A_d ],         // each a list of rows of scalar strings
//     "B": [...], "I": [...], "J": [...]
//   }

#include "adhm/monad.hpp"
#include "adhm/twistor.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <cstdint>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>

namespace adhm::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

/// Malformed input (file syntax, schema, or shapes).
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct FieldConfig {
  bool modular = false;
  std::uint64_t prime = ModP::kDefaultPrime;

  static FieldConfig rational() { return {}; }
  static FieldConfig fp(std::uint64_t p) { return {true, p}; }

  /// "rational", "fp:<prime>" or "Fp:<prime>".
  static FieldConfig parse(const std::string& s) {
    if (s == "rational") return rational();
    if (s.size() > 3 && (s.rfind("fp:", 0) == 0 || s.rfind("Fp:", 0) == 0)) {
      std::size_t used = 0;
      std::uint64_t p = 0;
      try {
        p = std::stoull(s.substr(3), &used);
      } catch (const std::exception&) {
        throw ParseError("bad field \"" + s + "\"");
      }
      if (used != s.size() - 3) throw ParseError("bad field \"" + s + "\"");
      return fp(p);
    }
    if (s == "fp" || s == "Fp") return fp(ModP::kDefaultPrime);
    throw ParseError("unknown field \"" + s + "\" (expected rational or fp:<prime>)");
  }

  /// Activates the modulus for ModP computations.
  void activate() const {
    if (!modular) return;
    try {
      ModP::set_modulus(prime);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }

  std::string name() const { return modular ? "Fp:" + std::to_string(prime) : "rational"; }
};

struct DatumHeader {
  FieldConfig field;
  Dimensions dims;
};

inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

namespace detail {

inline std::size_t get_size(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 0)
    throw ParseError(std::string("missing or invalid \"") + key + "\"");
  return j[key].get<std::size_t>();
}

template <Field K>
K parse_scalar(const Json& v) {
  try {
    if (v.is_string()) return K::parse(v.get<std::string>());
    if (v.is_number_integer()) return K(static_cast<long>(v.get<long long>()));
  } catch (const std::exception& e) {
    throw ParseError(std::string("bad scalar: ") + e.what());
  }
  throw ParseError("scalars must be strings such as \"3\", \"-1/2\" or \"0.25\"");
}

template <Field K>
Matrix<K> parse_matrix(const Json& j, std::size_t rows, std::size_t cols, const std::string& what) {
  if (!j.is_array() || j.size() != rows)
    throw ParseError(what + ": expected " + std::to_string(rows) + " rows");
  Matrix<K> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw ParseError(what + ": row " + std::to_string(i) + " must have " + std::to_string(cols) + " entries");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = parse_scalar<K>(j[i][k]);
  }
  return m;
}

template <Field K>
PencilMatrix<K> parse_pencil(const Json& j, const char* key, std::size_t n, std::size_t rows, std::size_t cols) {
  if (!j.contains(key) || !j[key].is_array() || j[key].size() != n)
    throw ParseError(std::string("\"") + key + "\" must list " + std::to_string(n) + " coefficient matrices");
  std::vector<Matrix<K>> coeffs;
  for (std::size_t k = 0; k < n; ++k)
    coeffs.push_back(parse_matrix<K>(j[key][k], rows, cols, std::string(key) + "_" + std::to_string(k)));
  return PencilMatrix<K>(std::move(coeffs));
}

}  // namespace detail

inline DatumHeader parse_header(const Json& j) {
  if (!j.is_object()) throw ParseError("datum file must be a JSON object");
  if (!j.contains("schema_version") || j["schema_version"] != kSchemaVersion)
    throw ParseError("unsupported or missing schema_version (expected \"1\")");
  DatumHeader h;
  if (!j.contains("field") || !j["field"].is_string()) throw ParseError("missing \"field\"");
  const std::string f = j["field"].get<std::string>();
  if (f == "rational") {
    h.field = FieldConfig::rational();
  } else if (f == "Fp") {
    if (!j.contains("prime") || !j["prime"].is_number_unsigned()) throw ParseError("field Fp requires \"prime\"");
    h.field = FieldConfig::fp(j["prime"].get<std::uint64_t>());
  } else {
    throw ParseError("unknown field \"" + f + "\"");
  }
  h.dims = {detail::get_size(j, "d"), detail::get_size(j, "r"), detail::get_size(j, "c")};
  if (h.dims.r == 0 || h.dims.c == 0) throw ParseError("r and c must be positive");
  return h;
}

/// Reads the coefficient arrays with scalars in K (the active field).
template <Field K>
ADHMDatum<K> parse_datum(const Json& j) {
  const DatumHeader h = parse_header(j);
  const std::size_t n = h.dims.d + 1, c = h.dims.c, r = h.dims.r;
  return ADHMDatum<K>(detail::parse_pencil<K>(j, "A", n, c, c), detail::parse_pencil<K>(j, "B", n, c, c),
                      detail::parse_pencil<K>(j, "I", n, c, r), detail::parse_pencil<K>(j, "J", n, r, c));
}

template <Field K>
Json to_json(const Matrix<K>& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

template <Field K>
Json to_json(const PencilMatrix<K>& p) {
  Json out = Json::array();
  for (std::size_t k = 0; k < p.num_vars(); ++k) out.push_back(to_json(p.coeff(k)));
  return out;
}

template <Field K>
Json serialize_datum(const ADHMDatum<K>& x, const FieldConfig& field) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["field"] = field.modular ? "Fp" : "rational";
  if (field.modular) j["prime"] = field.prime;
  j["d"] = x.d();
  j["r"] = x.r();
  j["c"] = x.c();
  j["A"] = to_json(x.A());
  j["B"] = to_json(x.B());
  j["I"] = to_json(x.I());
  j["J"] = to_json(x.J());
  return j;
}

/// Canonical text of a JSON document: two-space indent, trailing newline.
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return os.str();
}

// ---------------------------------------------------------------------------
// Points and lines on the command line: "1:0;0:1".

template <Field K>
ProjPoint<K> parse_point(const std::string& s) {
  std::vector<K> coords;
  std::size_t start = 0;
  while (true) {
    const auto end = s.find(':', start);
    const std::string item = s.substr(start, end == std::string::npos ? std::string::npos : end - start);
    try {
      coords.push_back(K::parse(item));
    } catch (const std::exception& e) {
      throw ParseError("bad point \"" + s + "\": " + e.what());
    }
    if (end == std::string::npos) break;
    start = end + 1;
  }
  try {
    return ProjPoint<K>(std::move(coords));
  } catch (const PreconditionError& e) {
    throw ParseError("bad point \"" + s + "\": " + e.what());
  }
}

template <Field K>
std::vector<ProjPoint<K>> parse_points(const std::string& s) {
  std::vector<ProjPoint<K>> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto end = s.find(';', start);
    const std::string item = s.substr(start, end == std::string::npos ? std::string::npos : end - start);
    if (!item.empty()) out.push_back(parse_point<K>(item));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

template <Field K>
Json to_json(const ProjPoint<K>& p) {
  return p.to_string();
}

template <Field K>
Json to_json(const std::vector<ProjPoint<K>>& pts) {
  Json out = Json::array();
  for (const auto& p : pts) out.push_back(p.to_string());
  return out;
}

// ---------------------------------------------------------------------------
// Report fragments.

template <Field K>
Json to_json(const RegularityVerdict<K>& v) {
  Json j;
  j["stable"] = v.stable;
  j["costable"] = v.costable;
  j["regular"] = v.regular();
  if (v.stability_witness) {
    j["stability_witness"] = to_json(*v.stability_witness);
    j["stability_witness_dim"] = v.stability_witness->cols();
  }
  if (v.costability_witness) {
    j["costability_witness"] = to_json(*v.costability_witness);
    j["costability_witness_dim"] = v.costability_witness->cols();
  }
  return j;
}

/// "regular", "not stable", "not costable" or "not stable, not costable".
template <Field K>
std::string describe(const RegularityVerdict<K>& v) {
  if (v.regular()) return "regular";
  std::string s;
  if (!v.stable) s = "not stable";
  if (!v.costable) s += std::string(s.empty() ? "" : ", ") + "not costable";
  return s;
}

template <Field K>
Json to_json(const GlobalRegularity<K>& g) {
  Json j;
  j["globally_regular"] = g.globally_regular;
  j["probabilistic"] = g.probabilistic;
  if (g.stability_gcd || g.costability_gcd || g.fails_everywhere) {
    j["stability_gcd"] = g.stability_gcd ? Json(g.stability_gcd->to_string()) : Json("0");
    j["costability_gcd"] = g.costability_gcd ? Json(g.costability_gcd->to_string()) : Json("0");
  }
  if (!g.globally_regular) {
    j["fails_everywhere"] = g.fails_everywhere;
    j["failure_points_complete"] = g.failure_points_complete;
    j["failure_points"] = to_json(g.failure_points);
  }
  if (g.probabilistic) j["samples"] = g.samples.size();
  return j;
}

inline Json to_json(const CohomologyTable& t) {
  Json j;
  j["n"] = t.n;
  j["k_min"] = t.k_min;
  j["k_max"] = t.k_max;
  Json rows = Json::array();
  for (int k = t.k_min; k <= t.k_max; ++k) {
    Json row;
    row["k"] = k;
    Json h = Json::array();
    for (std::size_t i = 0; i <= t.n; ++i) h.push_back(t.at(i, k));
    row["h"] = std::move(h);
    row["euler"] = t.euler(k);
    rows.push_back(std::move(row));
  }
  j["table"] = std::move(rows);
  return j;
}

inline Json to_json(const SplittingType& s) { return s.exponents; }

template <Field K>
Json to_json(const MonadVerdict<K>& v) {
  Json j;
  j["nondegenerate"] = v.nondegenerate;
  j["probabilistic"] = v.probabilistic;
  if (!v.nondegenerate) {
    j["base_failure_points"] = to_json(v.base_failure_points);
    j["failure_points"] = to_json(v.failure_points);
  }
  return j;
}

template <Field K>
Json to_json(const WebReport<K>& w) {
  Json j;
  j["tangent_dim"] = w.tangent_dim;
  j["expected_S_dim"] = w.expected_subspace_dim;
  Json dims = Json::array(), pts = Json::array();
  bool uniform = true;
  for (const auto& s : w.subspaces) {
    pts.push_back(s.point.to_string());
    dims.push_back(s.dim());
    uniform = uniform && s.dim() == w.subspaces.front().dim();
  }
  j["points"] = std::move(pts);
  j["S_dim"] = uniform && !w.subspaces.empty() ? Json(w.subspaces.front().dim()) : Json(nullptr);
  j["S_dims"] = std::move(dims);
  std::size_t worst = 0;
  Json pairs = Json::array();
  for (const auto& p : w.pairs) {
    worst = std::max(worst, p.intersection_dim);
    pairs.push_back({{"i", p.i}, {"j", p.j}, {"intersection_dim", p.intersection_dim}, {"sum_dim", p.sum_dim}});
  }
  j["pairwise_intersections"] = worst;
  j["pairs"] = std::move(pairs);
  j["transversal"] = w.all_transversal();
  j["projections_idempotent"] = w.projections_idempotent;
  j["projections_complementary"] = w.projections_complementary;
  j["projection_span"] = w.projection_span;
  j["flagged_points"] = w.flagged();
  return j;
}

}  // namespace adhm::io

// adhm: command-line front end.
//
//   adhm validate <file>
//   adhm random -d D -r R -c C --seed S [-o out.json]
//   adhm report <file> --tangent | --monad | --cohomology A B | --restrict LINE
//                      | --section PTS | --web PTS
//
// Global options: --field rational|fp:<prime>, --method symbolic|randomized:<n>,
// --seed, --timings. Exit codes: 0 pass, 1 validation or assertion failure,
// 2 parse error, 3 retry budget exhausted.

#include "adhm/adhm.hpp"
#include "adhm/io.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace adhm;
using io::Json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitParse = 2;
constexpr int kExitRetry = 3;

struct Options {
  std::string field;
  std::string method;
  std::optional<std::uint64_t> seed;
  bool timings = false;

  std::string file;
  // random
  std::size_t d = 1, r = 2, c = 1;
  std::string out;
  // report
  bool tangent = false, monad = false;
  std::vector<int> cohomology;
  std::string restrict_line, section, web;
};

class Stopwatch {
public:
  void lap(const std::string& name) {
    const auto now = std::chrono::steady_clock::now();
    laps_[name] = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
  }
  Json json() const { return laps_; }

private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
  Json laps_ = Json::object();
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io::ParseError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

RegularityMethod parse_method(const Options& opt, std::size_t d) {
  std::string m = opt.method;
  if (m.empty()) m = d <= 1 ? "symbolic" : "randomized:50";
  if (m == "symbolic") return RegularityMethod::symbolic();
  if (m.rfind("randomized:", 0) == 0) {
    std::size_t used = 0, n = 0;
    try {
      n = std::stoul(m.substr(11), &used);
    } catch (const std::exception&) {
      throw io::ParseError("bad method \"" + m + "\"");
    }
    if (used != m.size() - 11 || n == 0) throw io::ParseError("bad method \"" + m + "\"");
    if (!opt.seed) throw io::ParseError("randomized method requires --seed");
    return RegularityMethod::randomized(n, *opt.seed);
  }
  throw io::ParseError("unknown method \"" + m + "\" (expected symbolic or randomized:<n>)");
}

std::string method_name(const RegularityMethod& m) {
  return m.kind == RegularityMethodKind::symbolic ? "symbolic" : "randomized:" + std::to_string(m.samples);
}

Json header(const std::string& command, const std::string& digest, const io::FieldConfig& fc) {
  Json j;
  j["command"] = command;
  j["input_digest"] = digest;
  j["field"] = fc.name();
  j["arithmetic"] = fc.modular ? "modular" : "exact";
  return j;
}

/// Residual and global regularity; sets `pass`.
template <Field K>
Json validation(const ADHMDatum<K>& x, const RegularityMethod& method, bool& pass) {
  Json j;
  j["dims"] = {{"d", x.d()}, {"r", x.r()}, {"c", x.c()}};
  const bool solution = solves_adhm(x);
  j["residual_zero"] = solution;
  j["method"] = method_name(method);
  const auto g = is_globally_regular(x, method);
  j["global_regularity"] = io::to_json(g);
  std::string status;
  if (g.globally_regular) {
    status = g.probabilistic ? "globally regular (probabilistic)" : "globally regular";
  } else {
    const auto& p = g.failure_points.front();
    const auto v = is_regular(evaluate(x, p));
    status = io::describe(v);
    j["witness"] = {{"point", p.to_string()}, {"verdict", io::to_json(v)}};
  }
  if (!solution) status = "not a solution; " + status;
  j["status"] = status;
  pass = solution && g.globally_regular;
  j["pass"] = pass;
  return j;
}

template <Field K>
int run_validate(const Json& doc, const std::string& digest, const io::FieldConfig& fc, const Options& opt) {
  Stopwatch sw;
  const auto x = io::parse_datum<K>(doc);
  const auto method = parse_method(opt, x.d());
  bool pass = false;
  Json rep = header("validate", digest, fc);
  rep.update(validation(x, method, pass));
  sw.lap("validate");
  if (opt.timings) rep["timings_ms"] = sw.json();
  std::cout << io::dump(rep);
  return pass ? kExitPass : kExitFail;
}

template <Field K>
LineParam<K> parse_line(const std::string& s, std::size_t n) {
  if (s == "framing") return framing_line<K>(n);
  const auto pts = io::parse_points<K>(s);
  if (pts.size() != 2) throw io::ParseError("a line is \"framing\" or two points \"p;q\"");
  if (pts[0].size() != n + 1 || pts[1].size() != n + 1)
    throw io::ParseError("line points need " + std::to_string(n + 1) + " coordinates");
  try {
    return LineParam<K>(pts[0], pts[1]);
  } catch (const PreconditionError& e) {
    throw io::ParseError(e.what());
  }
}

template <Field K>
int run_report(const Json& doc, const std::string& digest, const io::FieldConfig& fc, const Options& opt) {
  Stopwatch sw;
  const auto x = io::parse_datum<K>(doc);
  const auto method = parse_method(opt, x.d());
  // Parse every argument before any computation.
  std::optional<LineParam<K>> line;
  if (!opt.restrict_line.empty()) line = parse_line<K>(opt.restrict_line, x.d() + 2);
  std::vector<ProjPoint<K>> section_pts, web_pts;
  if (!opt.section.empty()) section_pts = io::parse_points<K>(opt.section);
  if (!opt.web.empty()) web_pts = opt.web == "default" ? default_web_points<K>() : io::parse_points<K>(opt.web);
  for (const auto* pts : {&section_pts, &web_pts})
    for (const auto& p : *pts)
      if (p.size() != x.num_vars()) throw io::ParseError("sample points need " + std::to_string(x.num_vars()) + " coordinates");

  Json rep = header("report", digest, fc);
  bool pass = false;
  rep["validation"] = validation(x, method, pass);
  sw.lap("validate");
  if (!pass) {
    rep["error"] = "datum is not a globally regular solution";
    if (opt.timings) rep["timings_ms"] = sw.json();
    std::cout << io::dump(rep);
    return kExitFail;
  }

  if (opt.tangent) {
    Json t;
    const Matrix<K> L = linearization(x);
    const std::size_t ker = L.cols() - rank(L);
    t["dim"] = tangent_dimension(x, false);
    t["kernel_dim"] = ker;
    t["gauge_rank"] = rank(checked_gauge_directions(x));
    t["expected"] = (x.d() == 0 ? 2 : 4) * x.r() * x.c();
    t["framing_orbit_dim"] = framing_orbit_dimension(x);
    rep["tangent"] = std::move(t);
    sw.lap("tangent");
  }
  if (opt.monad || !opt.cohomology.empty() || line) {
    const auto m = build_monad(x);
    if (opt.monad) {
      Json mj;
      mj["n"] = m.n;
      Json vars = Json::array();
      for (std::size_t k = 0; k <= x.d(); ++k) vars.push_back("z" + std::to_string(k));
      vars.push_back("x");
      vars.push_back("y");
      mj["variables"] = std::move(vars);
      mj["alpha"] = io::to_json(m.alpha);
      mj["beta"] = io::to_json(m.beta);
      mj["identity_holds"] = composition(m) == embedded_residual(x);
      mj["monad_condition"] = composition(m).is_zero();
      mj["fiberwise"] = io::to_json(verify_monad_fiberwise(m, method));
      rep["monad"] = std::move(mj);
      sw.lap("monad");
    }
    if (!opt.cohomology.empty()) {
      const auto t = cohomology_dims(m, opt.cohomology[0], opt.cohomology[1]);
      Json cj = io::to_json(t);
      bool euler_ok = true;
      for (int k = t.k_min; k <= t.k_max; ++k) euler_ok = euler_ok && t.euler(k) == monad_euler(t.n, m.r, m.c, k);
      cj["euler_consistent"] = euler_ok;
      if (t.k_min <= -1 && -1 <= t.k_max) cj["charge"] = t.at(1, -1);
      rep["cohomology"] = std::move(cj);
      sw.lap("cohomology");
    }
    if (line) {
      const auto st = restrict_to_line(m, *line);
      rep["restrict"] = {{"line", line->to_string()}, {"splitting", io::to_json(st)}, {"trivial", st.trivial()}};
      sw.lap("restrict");
    }
  }
  if (!opt.section.empty()) {
    Json arr = Json::array();
    bool all_regular = true;
    for (const auto& s : section_samples(x, section_pts)) {
      all_regular = all_regular && s.verdict.regular();
      arr.push_back({{"point", s.point.to_string()}, {"status", io::describe(s.verdict)}, {"verdict", io::to_json(s.verdict)}});
    }
    rep["section"] = {{"samples", std::move(arr)}, {"all_regular", all_regular}};
    sw.lap("section");
  }
  if (!opt.web.empty()) {
    rep["web"] = io::to_json(web_report(x, web_pts));
    sw.lap("web");
  }
  if (opt.timings) rep["timings_ms"] = sw.json();
  std::cout << io::dump(rep);
  return kExitPass;
}

template <Field K>
int run_random(const io::FieldConfig& fc, const Options& opt) {
  const auto x = random_solution<K>({opt.d, opt.r, opt.c}, *opt.seed);
  const std::string text = io::dump(io::serialize_datum(x, fc));
  if (opt.out.empty()) {
    std::cout << text;
    return kExitPass;
  }
  std::ofstream f(opt.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + opt.out);
  f << text;
  Json rep = header("random", io::sha256_hex(text), fc);
  rep["dims"] = {{"d", opt.d}, {"r", opt.r}, {"c", opt.c}};
  rep["seed"] = *opt.seed;
  rep["output"] = opt.out;
  std::cout << io::dump(rep);
  return kExitPass;
}

template <class F>
int with_field(const io::FieldConfig& fc, F&& f) {
  fc.activate();
  return fc.modular ? f.template operator()<ModP>() : f.template operator()<Rational>();
}

int run(const std::string& command, const Options& opt) {
  if (command == "random") {
    const auto fc = opt.field.empty() ? io::FieldConfig::rational() : io::FieldConfig::parse(opt.field);
    return with_field(fc, [&]<Field K>() { return run_random<K>(fc, opt); });
  }
  const std::string text = read_file(opt.file);
  const Json doc = io::parse_json(text);
  const auto hdr = io::parse_header(doc);
  const auto fc = opt.field.empty() ? hdr.field : io::FieldConfig::parse(opt.field);
  const std::string digest = io::sha256_hex(text);
  if (command == "validate") return with_field(fc, [&]<Field K>() { return run_validate<K>(doc, digest, fc, opt); });
  return with_field(fc, [&]<Field K>() { return run_report<K>(doc, digest, fc, opt); });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact ADHM data, monads and twistor sections"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--field", opt.field, "rational or fp:<prime> (default: the file's field)");
  app.add_option("--method", opt.method, "symbolic or randomized:<n> (default: symbolic for d <= 1)");
  app.add_option("--seed", opt.seed, "seed for randomized operations");
  app.add_flag("--timings", opt.timings, "include wall-clock timings in reports");

  auto* validate = app.add_subcommand("validate", "check the ADHM equation and global regularity");
  validate->add_option("file", opt.file, "datum file")->required();

  auto* random = app.add_subcommand("random", "generate a random globally regular solution");
  random->add_option("-d", opt.d, "projective dimension d")->required();
  random->add_option("-r", opt.r, "rank r = dim W")->required()->check(CLI::PositiveNumber);
  random->add_option("-c", opt.c, "charge c = dim V")->required()->check(CLI::PositiveNumber);
  random->add_option("-o,--out", opt.out, "output file (default: stdout)");

  auto* report = app.add_subcommand("report", "analyze a validated datum");
  report->add_option("file", opt.file, "datum file")->required();
  auto* g = report->add_option_group("analysis", "choose one analysis");
  g->add_flag("--tangent", opt.tangent, "tangent space dimension");
  g->add_flag("--monad", opt.monad, "monad matrices and fiberwise check");
  g->add_option("--cohomology", opt.cohomology, "h^i(E(k)) for k in [A, B]")->expected(2);
  g->add_option("--restrict", opt.restrict_line, "splitting type on a line: framing or \"p;q\"");
  g->add_option("--section", opt.section, "section samples at points \"1:0;0:1\"");
  g->add_option("--web", opt.web, "web report at points, or default");
  g->require_option(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitPass : kExitParse;
  }
  if (random->parsed() && !opt.seed) {
    std::cerr << "random: --seed is required\n";
    return kExitParse;
  }

  const std::string command = validate->parsed() ? "validate" : random->parsed() ? "random" : "report";
  try {
    return run(command, opt);
  } catch (const io::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const DimensionError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const RetryExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cout << io::dump(Json{{"command", command}, {"error", "retry budget exhausted"}, {"attempts", e.attempts()}});
    return kExitRetry;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
}

#include "hecke/run.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include "hecke/class_field.hpp"
#include "hecke/coefficient_cache.hpp"
#include "hecke/coefficients.hpp"
#include "hecke/error.hpp"
#include "hecke/lfunc.hpp"
#include "hecke/moments.hpp"
#include "hecke/parallel.hpp"
#include "hecke/plot_data.hpp"
#include "hecke/selberg_sums.hpp"
#include "hecke/special_functions.hpp"
#include "hecke/value_dist.hpp"
#include "hecke/zero_scan.hpp"

namespace hecke {

using nlohmann::json;

namespace {

struct KnobInfo {
  const char* name;
  const char* help;
  bool is_switch;
};

const std::vector<KnobInfo>& knob_table() {
  static const std::vector<KnobInfo> t = {
      {"disc", "D, with -D a fundamental discriminant", false},
      {"char", "character index", false},
      {"pair", "two character indices k1,k2", false},
      {"combo", "combination k1:c1,k2:c2", false},
      {"limit", "coefficient table length N", false},
      {"t", "heights: list a,b,c or range a:b:step", false},
      {"sigma", "real part", false},
      {"from", "start height", false},
      {"to", "end height", false},
      {"step", "grid step (0 selects the default)", false},
      {"refine", "bisection bracket width", false},
      {"audit", "rescan at half step and report missed zeros", true},
      {"sigma-lo", "left edge of the counting box", false},
      {"sigma-hi", "right edge of the counting box", false},
      {"T", "height T, or a comma list for moments", false},
      {"A", "window constant, H = A m / log T", false},
      {"x-exp", "mollifier length exponent, X = T^e", false},
      {"samples", "number of sample heights", false},
      {"bins", "histogram bins", false},
      {"seed", "random seed", false},
      {"tol", "absolute tolerance of Lambda in scaled units", false},
      {"X", "cutoff of the Selberg sum", false},
      {"theta", "parameter in [0, 1/4]", false},
      {"method", "brute, decomposed or both", false},
      {"cache", "coefficient cache directory", false},
      {"csv", "path of the CSV side file", false},
      {"emit-plot", "path of the gnuplot data file", false},
      {"out", "path of the JSON envelope (stdout when absent)", false},
  };
  return t;
}

const std::map<std::string, std::set<std::string>>& knob_sets() {
  static const std::map<std::string, std::set<std::string>> m = {
      {"field", {"disc", "out"}},
      {"coeffs", {"disc", "char", "limit", "cache", "csv", "out"}},
      {"eval", {"disc", "char", "t", "sigma", "tol", "cache", "csv", "out"}},
      {"scan", {"disc", "combo", "from", "to", "step", "refine", "audit", "tol", "cache", "csv", "emit-plot", "out"}},
      {"count", {"disc", "combo", "from", "to", "step", "sigma-lo", "sigma-hi", "tol", "cache", "out"}},
      {"moments", {"disc", "char", "T", "A", "x-exp", "samples", "seed", "tol", "cache", "emit-plot", "out"}},
      {"clt", {"disc", "pair", "T", "samples", "bins", "seed", "tol", "cache", "csv", "emit-plot", "out"}},
      {"ssum", {"disc", "char", "X", "theta", "method", "out"}},
  };
  return m;
}

const std::map<std::string, std::map<std::string, std::string>>& default_table() {
  static const std::map<std::string, std::map<std::string, std::string>> m = {
      {"field", {}},
      {"coeffs", {{"char", "0"}}},
      {"eval", {{"char", "0"}, {"sigma", "0.5"}, {"tol", "1e-9"}}},
      {"scan", {{"from", "0"}, {"step", "0"}, {"refine", "1e-6"}, {"audit", "false"}, {"tol", "1e-9"}}},
      {"count", {{"from", "0"}, {"step", "0"}, {"sigma-lo", "-1"}, {"sigma-hi", "2.5"}, {"tol", "1e-9"}}},
      {"moments",
       {{"char", "0"}, {"T", "1000"}, {"A", "1"}, {"x-exp", "0.125"}, {"samples", "64"}, {"seed", "1"},
        {"tol", "1e-9"}}},
      {"clt", {{"T", "1000"}, {"samples", "4000"}, {"bins", "16"}, {"seed", "1"}, {"tol", "1e-9"}}},
      {"ssum", {{"char", "0"}, {"theta", "0"}, {"method", "both"}}},
  };
  return m;
}

const std::map<std::string, std::set<std::string>>& required_table() {
  static const std::map<std::string, std::set<std::string>> m = {
      {"field", {"disc"}},        {"coeffs", {"disc", "limit"}}, {"eval", {"disc", "t"}},
      {"scan", {"disc", "combo", "to"}}, {"count", {"disc", "combo", "to"}}, {"moments", {"disc"}},
      {"clt", {"disc", "pair"}},  {"ssum", {"disc", "X"}},
  };
  return m;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  return out;
}

double parse_double(const std::string& key, const std::string& v) {
  char* end = nullptr;
  double x = std::strtod(v.c_str(), &end);
  if (v.empty() || *end != '\0' || !std::isfinite(x)) throw DomainError("--" + key + ": not a number: '" + v + "'");
  return x;
}

std::uint64_t parse_uint(const std::string& key, const std::string& v) {
  if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
    throw DomainError("--" + key + ": not a non-negative integer: '" + v + "'");
  try {
    return std::stoull(v);
  } catch (const std::exception&) {
    throw DomainError("--" + key + ": out of range: '" + v + "'");
  }
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  for (const auto& part : split(v, ',')) out.push_back(parse_double(key, part));
  if (out.empty()) throw DomainError("--" + key + ": empty list");
  return out;
}

// a,b,c or a:b:step
std::vector<double> parse_heights(const std::string& v) {
  if (v.find(':') == std::string::npos) return parse_list("t", v);
  auto parts = split(v, ':');
  if (parts.size() != 3) throw DomainError("--t: range must be a:b:step");
  double a = parse_double("t", parts[0]), b = parse_double("t", parts[1]), h = parse_double("t", parts[2]);
  if (!(h > 0.0) || b < a) throw DomainError("--t: range needs a <= b and step > 0");
  double n = std::floor((b - a) / h + 1e-9);
  if (n > 1e6) throw DomainError("--t: more than 10^6 heights");
  std::vector<double> out;
  for (long i = 0; i <= static_cast<long>(n); ++i) out.push_back(a + i * h);
  return out;
}

std::string iso_now() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

EvalOptions eval_options(const RunConfig& cfg) {
  EvalOptions opt;
  if (cfg.has("tol")) opt.tol = cfg.number("tol");
  return opt;
}

// Cache directory in effect, empty for none.
std::string cache_dir(const RunConfig& cfg, bool always) {
  if (cfg.has("cache")) return cfg.text("cache");
  if (always || std::getenv("HECKE_CACHE_DIR")) return default_cache_dir();
  return "";
}

CoefficientTable table_for(const RunConfig& cfg, const FieldData& field, const std::vector<HeckeCharacter>& chars,
                           std::size_t k, std::uint64_t N) {
  std::string dir = cache_dir(cfg, false);
  if (dir.empty()) return r_coefficients(field, chars[k], k, N);
  return cached_coefficients(field, chars[k], k, N, dir);
}

struct Context {
  FieldData field;
  std::vector<HeckeCharacter> chars;
};

Context field_context(const RunConfig& cfg) {
  std::int64_t D = static_cast<std::int64_t>(cfg.integer("disc"));
  std::string problem = discriminant_problem(D);
  if (!problem.empty()) throw DomainError("--disc: " + problem);
  Context c;
  c.field = build_field(D);
  c.chars = characters(c.field);
  return c;
}

std::size_t char_index(const RunConfig& cfg, const Context& c) {
  std::uint64_t k = cfg.integer("char");
  if (k >= c.field.h)
    throw DomainError("--char: index " + std::to_string(k) + " out of range, h = " + std::to_string(c.field.h));
  return k;
}

std::pair<std::size_t, std::size_t> pair_indices(const RunConfig& cfg, const Context& c) {
  auto parts = split(cfg.text("pair"), ',');
  if (parts.size() != 2) throw DomainError("--pair: expected k1,k2");
  std::uint64_t a = parse_uint("pair", parts[0]), b = parse_uint("pair", parts[1]);
  if (a >= c.field.h || b >= c.field.h) throw DomainError("--pair: index out of range");
  if (a == b || c.chars[a].conjugate_index == b)
    throw DomainError("--pair: the two characters give the same L-function");
  return {a, b};
}

std::vector<double> moment_heights(const RunConfig& cfg) { return parse_list("T", cfg.text("T")); }

MomentConfig moment_config(const RunConfig& cfg, double T) {
  MomentConfig m;
  m.T = T;
  m.A = cfg.number("A");
  m.x_exp = cfg.number("x-exp");
  m.samples = cfg.integer("samples");
  m.seed = cfg.integer("seed");
  return m;
}

void check_height(double t, const std::string& key) {
  if (!(std::abs(t) <= kMaxGammaImag))
    throw DomainError("--" + key + ": |t| above " + std::to_string(static_cast<long>(kMaxGammaImag)));
}

void check_table_length(std::size_t need) {
  if (need > kMaxCoefficientN)
    throw DomainError("request needs " + std::to_string(need) + " coefficients, above the limit " +
                      std::to_string(kMaxCoefficientN));
}

// ---- pipelines ------------------------------------------------------------

json field_report(const Context& c) {
  json r;
  r["D"] = c.field.D;
  r["h"] = c.field.h;
  r["w"] = c.field.w;
  r["invariant_factors"] = c.field.invariant_factors;
  json forms = json::array();
  for (const auto& f : c.field.forms) forms.push_back({f.a, f.b, f.c});
  r["forms"] = forms;
  json chars = json::array();
  for (std::size_t k = 0; k < c.chars.size(); ++k) {
    const auto& ch = c.chars[k];
    json vals = json::array();
    for (auto v : ch.values) vals.push_back(complex_json(v));
    chars.push_back({{"index", k},
                     {"angles", ch.angle},
                     {"denominator", ch.denom},
                     {"values", vals},
                     {"complex", ch.is_complex},
                     {"n_psi", ch.n_psi},
                     {"conjugate", ch.conjugate_index},
                     {"representative", ch.representative}});
  }
  r["characters"] = chars;
  return r;
}

void run_coeffs(const RunConfig& cfg, const Context& c, RunOutput& out, json& rep) {
  std::size_t k = char_index(cfg, c);
  std::uint64_t N = cfg.integer("limit");
  std::string dir = cache_dir(cfg, true);
  CoefficientTable t = cached_coefficients(c.field, c.chars[k], k, N, dir);
  HeckeReport h = verify_hecke(t, c.field, k == 0);
  rep["char"] = k;
  rep["N"] = N;
  rep["cache_file"] = cache_path(dir, c.field.D, k);
  rep["checksum"] = fnv1a(t.r.data() + 1, N * sizeof(double));
  std::vector<double> head(t.r.begin() + 1, t.r.begin() + 1 + std::min<std::uint64_t>(N, 32));
  rep["first"] = head;
  json viol = json::array();
  for (const auto& v : h.violations)
    viol.push_back({{"n", v.n}, {"kind", v.kind}, {"expected", v.expected}, {"got", v.got}});
  rep["verification"] = {{"checked", h.checked}, {"violations", viol}};
  if (!h.ok()) throw InternalError("coefficient table failed verification");
  if (cfg.has("csv")) {
    std::vector<std::vector<double>> rows;
    for (std::uint64_t n = 1; n <= N; ++n) rows.push_back({static_cast<double>(n), t.r[n]});
    out.files.push_back({cfg.text("csv"), csv_table({{"n", ""}, {"r", ""}}, rows)});
  }
}

void run_eval(const RunConfig& cfg, const Context& c, RunOutput& out, json& rep) {
  std::size_t k = char_index(cfg, c);
  std::vector<double> ts = parse_heights(cfg.text("t"));
  double sigma = cfg.number("sigma");
  EvalOptions opt = eval_options(cfg);
  double tmax = 0.0;
  for (double t : ts) tmax = std::max(tmax, std::abs(t));
  std::size_t N = required_terms_range(c.field.D, opt, sigma, sigma, tmax);
  CoefficientTable table = table_for(cfg, c.field, c.chars, k, N);
  EvalContext ctx(c.field, table, k == 0, opt);
  auto rows = parallel_map(ts.size(), [&](std::size_t i) {
    cplx s(sigma, ts[i]);
    cplx lam = ctx.lambda_scaled(s)[0];
    cplx L = ctx.l_value(0, s);
    return std::vector<double>{ts[i], L.real(), L.imag(), std::log(std::abs(L)), lam.real(), lam.imag()};
  });
  json jr = json::array();
  for (const auto& r : rows)
    jr.push_back({{"t", r[0]}, {"L", {r[1], r[2]}}, {"log_abs_L", r[3]}, {"scaled_lambda", {r[4], r[5]}}});
  rep["char"] = k;
  rep["sigma"] = sigma;
  rep["terms"] = N;
  rep["rows"] = jr;
  if (cfg.has("csv"))
    out.files.push_back({cfg.text("csv"), csv_table({{"t", ""},
                                                    {"re_L", ""},
                                                    {"im_L", ""},
                                                    {"log_abs_L", ""},
                                                    {"scaled_lambda", ""},
                                                    {"scaled_lambda_im", ""}},
                                                   rows)});
}

json scan_json(const ScanResult& s) {
  json zs = json::array();
  for (const auto& z : s.zeros)
    zs.push_back({{"ordinate", z.ordinate}, {"width", z.width}, {"lo", z.lo}, {"hi", z.hi}, {"f_lo", z.f_lo},
                  {"f_hi", z.f_hi}});
  return {{"t0", s.t0},         {"t1", s.t1},
          {"step", s.step},     {"zeros", zs},
          {"count", s.zeros.size()}, {"evaluations", s.evaluations},
          {"perturbed_points", s.perturbed_points}, {"partial", s.partial}};
}

void run_scan(const RunConfig& cfg, const Context& c, RunOutput& out, json& rep, json& warnings, json& errors) {
  CombinationSpec spec = parse_combination(cfg.text("combo"));
  double t0 = cfg.number("from"), t1 = cfg.number("to");
  double step = cfg.number("step");
  Combination comb(c.field, c.chars, spec, t1, 0.5, 0.5, eval_options(cfg), cache_dir(cfg, false));
  if (step <= 0.0) step = default_step(t1, c.field.D);
  double refine = cfg.number("refine");
  ScanResult s = scan_sign_changes(comb, t0, t1, step, refine);
  rep["combo"] = cfg.text("combo");
  rep["scan"] = scan_json(s);
  if (s.partial) errors.push_back({{"type", "partial"}, {"message", s.error}});
  if (s.perturbed_points) warnings.push_back("grid points perturbed out of the noise band: " +
                                             std::to_string(s.perturbed_points));
  if (cfg.flag("audit") && !s.partial) {
    AuditResult a = halving_audit(comb, s, refine);
    rep["audit"] = {{"zeros_full", a.zeros_full}, {"zeros_half", a.zeros_half}, {"missed", a.missed}};
    for (double m : a.missed) warnings.push_back("missed zero near t = " + std::to_string(m));
  }
  std::vector<std::vector<double>> rows;
  for (const auto& z : s.zeros) rows.push_back({z.ordinate, z.width, z.lo, z.hi});
  if (cfg.has("csv"))
    out.files.push_back({cfg.text("csv"), csv_table({{"ordinate", ""}, {"width", ""}, {"lo", ""}, {"hi", ""}}, rows)});
  if (cfg.has("emit-plot")) out.files.push_back({cfg.text("emit-plot"), zeros_plot(s)});
}

void run_count(const RunConfig& cfg, const Context& c, json& rep) {
  CombinationSpec spec = parse_combination(cfg.text("combo"));
  double t0 = cfg.number("from"), t1 = cfg.number("to");
  double lo = cfg.number("sigma-lo"), hi = cfg.number("sigma-hi");
  Combination comb(c.field, c.chars, spec, t1, lo, hi, eval_options(cfg), cache_dir(cfg, false));
  CountResult r = count_zeros_region(comb, lo, hi, t0, t1, cfg.number("step"));
  rep["combo"] = cfg.text("combo");
  rep["count"] = r.count;
  rep["winding"] = r.winding;
  rep["perturbations"] = r.perturbations;
  rep["evaluations"] = r.evaluations;
  rep["contour"] = {{"sigma_lo", r.sigma_lo}, {"sigma_hi", r.sigma_hi}, {"t0", r.t0}, {"t1", r.t1}};
  rep["log"] = r.log;
}

void run_moments(const RunConfig& cfg, const Context& c, RunOutput& out, json& rep, json& warnings) {
  std::size_t k = char_index(cfg, c);
  std::vector<double> Ts = moment_heights(cfg);
  EvalOptions opt = eval_options(cfg);
  double tmax = 0.0;
  std::uint64_t xmax = 3;
  for (double T : Ts) {
    MomentConfig mc = moment_config(cfg, T);
    tmax = std::max(tmax, 2.0 * T + mc.window() + 1.0);
    xmax = std::max<std::uint64_t>(xmax, static_cast<std::uint64_t>(std::floor(mc.cutoff())));
  }
  std::size_t N = std::max<std::size_t>(required_terms_range(c.field.D, opt, 0.5, 0.5, tmax), xmax);
  CoefficientTable table = table_for(cfg, c.field, c.chars, k, N);
  EvalContext ctx(c.field, table, k == 0, opt);
  std::vector<MomentReport> reports;
  json rows = json::array();
  for (double T : Ts) {
    MomentConfig mc = moment_config(cfg, T);
    MollifierTable mt = mollifier_weights(alpha_coefficients(table, static_cast<std::uint64_t>(mc.cutoff())),
                                          mc.cutoff());
    MomentReport m = moment_suite(ctx, 0, mt, mc);
    std::size_t flagged = 0;
    json windows = json::array();
    for (std::size_t i = 0; i < m.windows.size(); ++i) {
      const auto& w = m.windows[i];
      flagged += w.flagged;
      windows.push_back({{"t", m.t[i]},
                         {"I", w.I.value},
                         {"M", w.M.value},
                         {"M_imag", w.M_imag},
                         {"J", w.J.value},
                         {"flagged", w.flagged}});
    }
    if (flagged) warnings.push_back("T = " + std::to_string(T) + ": " + std::to_string(flagged) +
                                    " windows with flagged quadrature excluded");
    rows.push_back({{"T", m.T},
                    {"H", m.H},
                    {"X", m.X},
                    {"samples", m.samples},
                    {"excluded", m.excluded},
                    {"I2", {{"mean", m.I2.mean}, {"se", m.I2.se}}},
                    {"Leta", {{"mean", m.Leta.mean}, {"se", m.Leta.se}}},
                    {"M2", {{"mean", m.M2.mean}, {"se", m.M2.se}}},
                    {"rho5", m.rho5},
                    {"rho6", m.rho6},
                    {"rho7", m.rho7},
                    {"rho5_err", m.rho5_err},
                    {"rho6_err", m.rho6_err},
                    {"rho7_err", m.rho7_err},
                    {"chain_holds", m.chain_holds},
                    {"dominance_holds", m.dominance_holds},
                    {"max_quadrature_error", m.max_quadrature_error},
                    {"windows", windows}});
    reports.push_back(std::move(m));
  }
  rep["char"] = k;
  rep["reports"] = rows;
  if (cfg.has("emit-plot")) out.files.push_back({cfg.text("emit-plot"), moments_plot(reports)});
}

void run_clt(const RunConfig& cfg, const Context& c, RunOutput& out, json& rep, json& warnings) {
  auto [a, b] = pair_indices(cfg, c);
  double T = cfg.number("T");
  EvalOptions opt = eval_options(cfg);
  std::size_t N = required_terms_range(c.field.D, opt, 0.5, 0.5, 2.0 * T + 1.0);
  CoefficientTable ta = table_for(cfg, c.field, c.chars, a, N);
  CoefficientTable tb = table_for(cfg, c.field, c.chars, b, N);
  EvalContext ctx(c.field, {&ta, &tb}, {a == 0, b == 0}, opt);
  DistReport r = clt_histogram(ctx, 0, 1, c.chars[a].n_psi, c.chars[b].n_psi, T, cfg.integer("samples"),
                               cfg.integer("bins"), cfg.integer("seed"));
  json hist = json::array();
  for (const auto& h : r.histogram)
    hist.push_back({{"lo", h.lo}, {"hi", h.hi}, {"mass", h.mass}, {"target_mass", h.target_mass}});
  rep["pair"] = {a, b};
  rep["T"] = r.T;
  rep["requested"] = r.requested;
  rep["samples"] = r.samples;
  rep["clipped"] = r.clipped;
  rep["resampled"] = r.resampled;
  rep["denominator"] = r.denominator;
  rep["ks"] = r.ks;
  rep["histogram"] = hist;
  if (r.clipped) warnings.push_back(std::to_string(r.clipped) + " samples excluded after repeated clipping");
  if (cfg.has("csv")) {
    std::vector<std::vector<double>> rows;
    for (const auto& h : r.histogram) rows.push_back({h.lo, h.hi, h.mass, h.target_mass});
    out.files.push_back(
        {cfg.text("csv"), csv_table({{"bin_lo", ""}, {"bin_hi", ""}, {"mass", ""}, {"target_mass", ""}}, rows)});
  }
  if (cfg.has("emit-plot")) out.files.push_back({cfg.text("emit-plot"), clt_plot(r)});
}

void run_ssum(const RunConfig& cfg, const Context& c, json& rep) {
  std::size_t k = char_index(cfg, c);
  SumConfig sc;
  sc.X = cfg.number("X");
  sc.theta = cfg.number("theta");
  std::string method = cfg.text("method");
  CoefficientTable table = r_coefficients(c.field, c.chars[k], k, std::max<std::uint64_t>(sc.cutoff(), 1));
  rep["char"] = k;
  rep["X"] = sc.X;
  rep["theta"] = sc.theta;
  rep["method"] = method;
  double value = 0.0;
  if (method == "brute" || method == "both") rep["brute"] = value = selberg_sum_brute(sc, table);
  if (method == "decomposed" || method == "both") {
    double d = selberg_sum_decomposed(sc, table);
    rep["decomposed"] = d;
    if (method == "both") rep["relative_residual"] = std::abs(value - d) / std::max(std::abs(value), 1e-300);
    value = d;
  }
  rep["bound_ratio"] = sc.X > 1.0 ? value * std::log(sc.X) / std::pow(sc.X, 2.0 * sc.theta) : 0.0;
}

}  // namespace

const std::string& RunConfig::text(const std::string& key) const {
  auto it = values.find(key);
  if (it == values.end()) throw DomainError("missing --" + key);
  return it->second;
}

double RunConfig::number(const std::string& key) const { return parse_double(key, text(key)); }

std::uint64_t RunConfig::integer(const std::string& key) const { return parse_uint(key, text(key)); }

bool RunConfig::flag(const std::string& key) const {
  if (!has(key)) return false;
  const std::string& v = text(key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw DomainError("--" + key + ": expected true or false");
}

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> s = {"field", "coeffs", "eval", "scan", "count", "moments", "clt", "ssum"};
  return s;
}

const std::set<std::string>& knobs(const std::string& subcommand) {
  auto it = knob_sets().find(subcommand);
  if (it == knob_sets().end()) throw DomainError("unknown subcommand '" + subcommand + "'");
  return it->second;
}

bool is_switch(const std::string& knob) {
  for (const auto& k : knob_table())
    if (knob == k.name) return k.is_switch;
  return false;
}

std::string knob_help(const std::string& knob) {
  for (const auto& k : knob_table())
    if (knob == k.name) return k.help;
  return "";
}

std::map<std::string, std::string> read_config_file(const std::string& path, const std::string& subcommand) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read config file " + path);
  const auto& allowed = knobs(subcommand);
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw DomainError(path + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (!allowed.count(key))
      throw DomainError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "' for " + subcommand);
    out[key] = value;
  }
  return out;
}

RunConfig make_config(const std::string& subcommand, const std::map<std::string, std::string>& flags,
                      const std::string& config_path) {
  const auto& allowed = knobs(subcommand);
  RunConfig cfg;
  cfg.subcommand = subcommand;
  for (const auto& [k, v] : default_table().at(subcommand)) {
    cfg.values[k] = v;
    cfg.sources[k] = "default";
  }
  if (!config_path.empty()) {
    for (const auto& [k, v] : read_config_file(config_path, subcommand)) {
      cfg.values[k] = v;
      cfg.sources[k] = "file";
    }
  }
  for (const auto& [k, v] : flags) {
    if (!allowed.count(k)) throw DomainError("--" + k + " does not apply to " + subcommand);
    cfg.values[k] = v;
    cfg.sources[k] = "flag";
  }
  return cfg;
}

void validate(const RunConfig& cfg) {
  const std::string& sc = cfg.subcommand;
  for (const auto& key : required_table().at(sc))
    if (!cfg.has(key)) throw DomainError(sc + ": --" + key + " is required");
  Context c = field_context(cfg);
  if (cfg.has("tol")) {
    double tol = cfg.number("tol");
    if (!(tol >= 1e-13 && tol <= 1e-3)) throw DomainError("--tol must lie in [1e-13, 1e-3]");
  }
  if (sc == "coeffs") {
    char_index(cfg, c);
    std::uint64_t N = cfg.integer("limit");
    if (N < 1 || N > kMaxCoefficientN) throw DomainError("--limit must lie in [1, 10^7]");
  } else if (sc == "eval") {
    char_index(cfg, c);
    double sigma = cfg.number("sigma");
    if (!(sigma >= -3.0 && sigma <= 4.0)) throw DomainError("--sigma must lie in [-3, 4]");
    double tmax = 0.0;
    for (double t : parse_heights(cfg.text("t"))) {
      check_height(t, "t");
      tmax = std::max(tmax, std::abs(t));
    }
    if (char_index(cfg, c) == 0) {
      for (double t : parse_heights(cfg.text("t")))
        if (t == 0.0 && (sigma == 0.0 || sigma == 1.0))
          throw DomainError("--t: the principal L-function has poles at s = 0 and s = 1");
    }
    check_table_length(required_terms_range(c.field.D, eval_options(cfg), sigma, sigma, tmax));
  } else if (sc == "scan" || sc == "count") {
    CombinationSpec spec = parse_combination(cfg.text("combo"));
    validate_combination(spec, c.chars);
    double t0 = cfg.number("from"), t1 = cfg.number("to");
    if (!(t0 >= 0.0 && t1 > t0)) throw DomainError("--from/--to: need 0 <= from < to");
    check_height(t1, "to");
    if (cfg.number("step") < 0.0) throw DomainError("--step must be non-negative");
    double lo = 0.5, hi = 0.5;
    if (sc == "scan") {
      double refine = cfg.number("refine");
      if (!(refine > 0.0)) throw DomainError("--refine must be positive");
      cfg.flag("audit");
    } else {
      lo = cfg.number("sigma-lo");
      hi = cfg.number("sigma-hi");
      if (!(lo < 0.5 && hi > 0.5 && lo >= -3.0 && hi <= 4.0))
        throw DomainError("--sigma-lo/--sigma-hi: need -3 <= lo < 1/2 < hi <= 4");
      for (auto k : spec.chars)
        if (k == 0 && t0 <= 0.0) throw DomainError("count: the principal character needs --from > 0");
    }
    check_table_length(required_terms_range(c.field.D, eval_options(cfg), lo, hi, t1));
  } else if (sc == "moments") {
    char_index(cfg, c);
    for (double T : moment_heights(cfg)) {
      MomentConfig mc = moment_config(cfg, T);
      mc.validate();
      check_height(2.0 * T + mc.window() + 1.0, "T");
      check_table_length(required_terms_range(c.field.D, eval_options(cfg), 0.5, 0.5, 2.0 * T + mc.window() + 1.0));
    }
  } else if (sc == "clt") {
    pair_indices(cfg, c);
    double T = cfg.number("T");
    if (!(T >= 100.0)) throw DomainError("--T must be at least 100");
    check_height(2.0 * T + 1.0, "T");
    if (cfg.integer("samples") < 1) throw DomainError("--samples must be positive");
    std::uint64_t bins = cfg.integer("bins");
    if (bins < 2 || bins > 1000) throw DomainError("--bins must lie in [2, 1000]");
    cfg.integer("seed");
    check_table_length(required_terms_range(c.field.D, eval_options(cfg), 0.5, 0.5, 2.0 * T + 1.0));
  } else if (sc == "ssum") {
    char_index(cfg, c);
    SumConfig s;
    s.X = cfg.number("X");
    s.theta = cfg.number("theta");
    s.validate();
    const std::string& m = cfg.text("method");
    if (m != "brute" && m != "decomposed" && m != "both")
      throw DomainError("--method must be brute, decomposed or both");
  }
}

RunOutput run(const RunConfig& cfg) {
  RunOutput out;
  json env;
  env["artifact"] = {{"name", kArtifactName}, {"version", kArtifactVersion}};
  env["subcommand"] = cfg.subcommand;
  env["config"] = cfg.values;
  env["sources"] = cfg.sources;
  env["timestamps"]["started"] = iso_now();
  json rep = json::object(), warnings = json::array(), errors = json::array();
  try {
    Context c = field_context(cfg);
    rep["D"] = c.field.D;
    const std::string& sc = cfg.subcommand;
    if (sc == "field") rep = field_report(c);
    else if (sc == "coeffs") run_coeffs(cfg, c, out, rep);
    else if (sc == "eval") run_eval(cfg, c, out, rep);
    else if (sc == "scan") run_scan(cfg, c, out, rep, warnings, errors);
    else if (sc == "count") run_count(cfg, c, rep);
    else if (sc == "moments") run_moments(cfg, c, out, rep, warnings);
    else if (sc == "clt") run_clt(cfg, c, out, rep, warnings);
    else if (sc == "ssum") run_ssum(cfg, c, rep);
    else throw DomainError("unknown subcommand '" + sc + "'");
  } catch (const DomainError& e) {
    errors.push_back({{"type", "domain"}, {"message", e.what()}});
  } catch (const ConvergenceError& e) {
    errors.push_back({{"type", "convergence"}, {"message", e.what()}});
  } catch (const InternalError& e) {
    errors.push_back({{"type", "internal"}, {"message", e.what()}});
  } catch (const std::exception& e) {
    errors.push_back({{"type", "error"}, {"message", e.what()}});
  }
  env["report"] = rep;
  env["warnings"] = warnings;
  env["errors"] = errors;
  env["timestamps"]["finished"] = iso_now();
  out.envelope = env;
  out.exit_code = errors.empty() ? 0 : 1;
  return out;
}

json strip_timestamps(json envelope) {
  envelope.erase("timestamps");
  return envelope;
}

std::string canonical_json(const json& j) { return j.dump(2) + "\n"; }

}  // namespace hecke

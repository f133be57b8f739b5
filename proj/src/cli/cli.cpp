#include "gstf/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "gstf/catalog.hpp"
#include "gstf/classify.hpp"
#include "gstf/parallel.hpp"
#include "gstf/parser.hpp"
#include "gstf/toeplitz.hpp"
#include "gstf/transforms.hpp"
#include "gstf/verify.hpp"
#include "gstf/witnesses.hpp"

namespace gstf::cli {

using json = nlohmann::ordered_json;

namespace {

constexpr int kSchemaVersion = 1;

// ---------------------------------------------------------------- writers

bool flat_object(const json& j) {
  return j.is_object() && std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
}

void write_json(std::string& out, const json& j, int indent);

// {"N": 0, "C": 1.5} on one line; used for table entries inside arrays.
void write_inline(std::string& out, const json& j) {
  out += "{";
  bool first = true;
  for (const auto& [key, value] : j.items()) {
    if (!first) out += ", ";
    first = false;
    out += json(key).dump() + ": ";
    write_json(out, value, 0);
  }
  out += "}";
}

void write_json(std::string& out, const json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + json(key).dump() + ": ";
        write_json(out, value, indent + 2);
      }
      out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "}";
      return;
    }
    case json::value_t::array: {
      const bool flat = std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
      if (j.empty() || flat) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          write_json(out, j[i], indent);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        if (flat_object(j[i]) && !j[i].empty()) write_inline(out, j[i]);
        else write_json(out, j[i], indent + 2);
      }
      out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "]";
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (std::isnan(v)) out += "null";
      else if (std::isinf(v)) out += v > 0 ? "\"inf\"" : "\"-inf\"";
      else out += format_double(v);
      return;
    }
    default: out += j.dump();
  }
}

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  return v.dump();
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;

  json to_json() const {
    json rs = json::array();
    for (const auto& r : rows) rs.push_back(json(r));
    return json{{"columns", columns}, {"rows", rs}};
  }

  std::string to_csv() const {
    std::string out;
    for (std::size_t c = 0; c < columns.size(); ++c) out += (c ? "," : "") + columns[c];
    out += "\n";
    for (const auto& r : rows) {
      for (std::size_t c = 0; c < r.size(); ++c) out += (c ? "," : "") + csv_cell(r[c]);
      out += "\n";
    }
    return out;
  }
};

struct Output {
  json doc;
  Table table;
  std::optional<Verdict> verdict;
  bool failed = false;
};

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }
json opt_json(const std::optional<std::string>& v) { return v ? json(*v) : json(nullptr); }

// ---------------------------------------------------------------- reports

json envelope_body(const EnvelopeReport& r) {
  json fitted;
  fitted["C_peak"] = r.C_peak;
  fitted["r_fit"] = r.r_fit;
  json nt = json::array();
  json boundary_n = json::array();
  for (const auto& e : r.N_table) {
    nt.push_back({{"N", e.N}, {"C", e.C}, {"interior_attained", e.interior_attained}, {"attained_at", e.attained_at}});
    if (!e.interior_attained) boundary_n.push_back(e.N);
  }
  fitted["N_table"] = nt;
  json bt = json::array();
  json boundary_r = json::array();
  for (const auto& e : r.beurling_table) {
    bt.push_back({{"r", e.r}, {"C", e.C}, {"interior_attained", e.interior_attained}, {"attained_at", e.attained_at}});
    if (!e.interior_attained) boundary_r.push_back(e.r);
  }
  fitted["beurling_table"] = bt;
  if (!r.growth_table.empty()) {
    json gt = json::array();
    for (const auto& e : r.growth_table) gt.push_back({{"r", e.r}, {"N0", e.N0}, {"C", e.C}});
    fitted["growth_table"] = gt;
  }

  json diag;
  diag["attainment"] = {{"rate_flag", std::string(to_string(r.rate_flag))},
                        {"rate_resolved", r.rate_resolved},
                        {"trivial", r.trivial},
                        {"boundary_N", boundary_n},
                        {"boundary_r", boundary_r}};
  diag["floor"] = r.floor_rel;
  diag["guard_band"] = r.guard;
  diag["space"] = r.space;
  diag["decay_axis"] = r.decay_axis;
  diag["fourier_axis"] = r.fourier_axis;
  diag["notes"] = r.notes;

  json j;
  j["verdict"] = std::string(to_string(r.verdict));
  j["fitted"] = fitted;
  j["diagnostics"] = diag;
  if (!r.parts.empty()) {
    json parts = json::array();
    for (const auto& p : r.parts) parts.push_back(envelope_body(p));
    j["parts"] = parts;
  }
  return j;
}

json header(const std::string& command, json params) {
  return json{{"schema_version", kSchemaVersion}, {"command", command}, {"params", std::move(params)}};
}

void merge(json& doc, const json& body) {
  for (const auto& [k, v] : body.items()) doc[k] = v;
}

// One CSV row per N or r trial, over the report and its parts.
Table envelope_table(const EnvelopeReport& r) {
  Table t{{"part", "space", "table", "param", "C", "interior_attained", "attained_at"}, {}};
  auto add = [&](const EnvelopeReport& e, const std::string& part) {
    for (const auto& n : e.N_table)
      t.rows.push_back({part, e.space, "N", n.N, n.C, n.interior_attained, n.attained_at});
    for (const auto& b : e.beurling_table)
      t.rows.push_back({part, e.space, "r", b.r, b.C, b.interior_attained, b.attained_at});
    for (const auto& g : e.growth_table) t.rows.push_back({part, e.space, "N0", g.r, g.C, g.N0 >= 0, g.N0});
  };
  add(r, "main");
  for (std::size_t i = 0; i < r.parts.size(); ++i) add(r.parts[i], "part" + std::to_string(i));
  return t;
}

Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::NotMember || b == Verdict::NotMember) return Verdict::NotMember;
  if (a == Verdict::Inconclusive || b == Verdict::Inconclusive) return Verdict::Inconclusive;
  return Verdict::Member;
}

// ---------------------------------------------------------------- arguments

struct Args {
  std::optional<std::string> expr, input, window, out, format, suite, envelope_table;
  std::string symbol = "gaussian";
  std::string space = "S";
  std::optional<std::string> type;
  std::optional<double> s, sigma, floor;
  double half_width = 12.0;
  long long points = 1024;
  int n_max = 8;
  std::vector<double> r_list;
  bool assert_member = false;
  bool dual = false;
  bool timings = false;
  unsigned threads = 1;
};

Grid1D grid_of(const Args& a) {
  if (a.points < 2 || !std::has_single_bit(static_cast<unsigned long long>(a.points)))
    throw Error(ErrorKind::NotPowerOfTwo, "--points must be a power of two, got " + std::to_string(a.points));
  return build_grid(a.half_width, std::countr_zero(static_cast<unsigned long long>(a.points)));
}

SampledFunction function_of(const Args& a) {
  if (a.expr && a.input) throw Error(ErrorKind::InvalidArgument, "give --expr or --input, not both");
  if (a.input) return read_sampled_csv(*a.input);
  if (!a.expr) throw Error(ErrorKind::InvalidArgument, "--expr or --input is required");
  return catalog_eval(parse_function_expr(*a.expr), grid_of(a));
}

SampledFunction window_of(const Args& a, const Grid1D& grid, const std::string& fallback) {
  return catalog_eval(parse_function_expr(a.window.value_or(fallback)), grid);
}

Regularity regularity_of(const Args& a) {
  const bool sigma_space = a.space == "Sigma";
  if (a.type) {
    const Regularity reg = *a.type == "beurling" ? Regularity::Beurling : Regularity::Roumieu;
    if (sigma_space && reg == Regularity::Roumieu)
      throw Error(ErrorKind::InvalidArgument, "--space Sigma is Beurling type but --type roumieu was given");
    return reg;
  }
  return sigma_space ? Regularity::Beurling : Regularity::Roumieu;
}

GSIndex index_of(const Args& a) {
  if (!a.s && !a.sigma) throw Error(ErrorKind::InvalidArgument, "--s or --sigma is required");
  return GSIndex(a.s.value_or(kInf), a.sigma.value_or(kInf), regularity_of(a));
}

ClassifyOptions options_of(const Args& a) {
  ClassifyOptions o;
  if (a.n_max < 0 || a.n_max > 16) throw Error(ErrorKind::InvalidArgument, "--n-max must lie in 0..16");
  o.n_max = a.n_max;
  if (!a.r_list.empty()) {
    for (double r : a.r_list)
      if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorKind::InvalidArgument, "--r-list entries must be positive");
    o.r_list = a.r_list;
    o.r_scale = 1.0;
  }
  if (a.floor) {
    if (!(*a.floor > 0.0 && *a.floor < 1.0)) throw Error(ErrorKind::InvalidArgument, "--floor must lie in (0, 1)");
    o.floor_rel = *a.floor;
  }
  return o;
}

json grid_params(const Args& a, const SampledFunction& f) {
  return json{{"half_width", f.grid().half_width()}, {"points", f.grid().count()}, {"input", opt_json(a.input)},
              {"expr", opt_json(a.expr)}};
}

json options_params(const ClassifyOptions& o) {
  return json{{"n_max", o.n_max}, {"r_list", o.trial_rates()}, {"floor", o.floor_rel}};
}

json index_params(const Args& a, const GSIndex& idx) {
  return json{{"space", idx.name()},
              {"s", opt_json(a.s)},
              {"sigma", opt_json(a.sigma)},
              {"type", std::string(to_string(idx.regularity))}};
}

void write_envelope_plot(const std::string& path, const SampledFunction& f, double r, double s) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorKind::IoError, "cannot open '" + path + "' for writing");
  os << "x,log_abs_times_envelope\n";
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double m = std::abs(f[j]);
    if (m <= 0.0) continue;
    const double x = f.grid().at(j);
    os << format_double(x) << "," << format_double(std::log(m) + r * std::pow(std::abs(x), 1.0 / s)) << "\n";
  }
  if (!os) throw Error(ErrorKind::IoError, "write to '" + path + "' failed");
}

// ---------------------------------------------------------------- commands

Table samples_table(const SampledFunction& f, const char* axis) {
  Table t{{axis, "re", "im", "abs", "log_abs"}, {}};
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double m = std::abs(f[j]);
    t.rows.push_back({f.grid().at(j), f[j].real(), f[j].imag(), m, m > 0.0 ? std::log(m) : -kInf});
  }
  return t;
}

Output cmd_transform(const Args& a) {
  const SampledFunction f = function_of(a);
  const SampledFunction F = dft(f);
  Output o;
  o.table = samples_table(F, "xi");
  o.doc = header("transform", grid_params(a, f));
  o.doc["verdict"] = nullptr;
  o.doc["summary"] = {{"l2_norm_in", f.l2_norm()}, {"l2_norm_out", F.l2_norm()}, {"sup_out", F.sup_abs()}};
  o.doc["table"] = o.table.to_json();
  return o;
}

Output cmd_stft(const Args& a) {
  const SampledFunction f = function_of(a);
  const SampledFunction w = window_of(a, f.grid(), "gaussian(1)");
  const TFGrid tf = default_tfgrid(f.grid());
  const TFR V = stft(f, w, tf);
  Output o;
  o.table.columns = {"x", "xi", "abs", "log_abs"};
  for (std::size_t i = 0; i < V.rows(); ++i)
    for (std::size_t k = 0; k < V.cols(); ++k) {
      const double m = std::abs(V(i, k));
      o.table.rows.push_back({tf.x.at(i), tf.xi.at(k), m, m > 0.0 ? std::log(m) : -kInf});
    }
  json params = grid_params(a, f);
  params["window"] = a.window.value_or("gaussian(1)");
  o.doc = header("stft", params);
  o.doc["verdict"] = nullptr;
  o.doc["summary"] = {{"rows", V.rows()}, {"cols", V.cols()}, {"sup", V.sup_abs()}, {"boundary_ratio", boundary_ratio(V)}};
  o.doc["table"] = o.table.to_json();
  return o;
}

Output cmd_classify(const Args& a) {
  const SampledFunction f = function_of(a);
  const GSIndex idx = index_of(a);
  const ClassifyOptions opts = options_of(a);
  if (a.dual && !a.window && !idx.one_parameter())
    throw Error(ErrorKind::TwoParameterIndex, "dual growth reports need a one-parameter index");

  EnvelopeReport rep;
  if (a.dual || a.window) {
    const SampledFunction w = window_of(a, f.grid(), "gaussian(1)");
    const TFGrid tf = default_tfgrid(f.grid());
    rep = a.dual ? dual_growth_report(f, w, idx, tf, opts) : classify_stft(f, w, idx, tf, opts);
  } else if (idx.one_parameter()) {
    rep = classify_function(f, idx, opts);
  } else {
    const EnvelopeReport d = classify_function(f, GSIndex::decay(idx.s, idx.regularity), opts);
    const EnvelopeReport s = classify_function(f, GSIndex::fourier(idx.sigma, idx.regularity), opts);
    rep = d;
    rep.space = idx.name();
    rep.verdict = combine(d.verdict, s.verdict);
    rep.notes.clear();
    rep.parts = {d, s};
  }

  if (a.envelope_table) {
    if (a.dual || a.window || !idx.one_parameter() || !std::isfinite(rep.r_fit))
      throw Error(ErrorKind::InvalidArgument,
                  "--envelope-table needs a plain one-parameter classification with a finite fitted rate");
    if (idx.has_s()) write_envelope_plot(*a.envelope_table, f, rep.r_fit, idx.s);
    else write_envelope_plot(*a.envelope_table, dft(f), rep.r_fit, idx.sigma);
  }

  json params = grid_params(a, f);
  merge(params, index_params(a, idx));
  merge(params, options_params(opts));
  params["window"] = opt_json(a.window);
  params["dual"] = a.dual;

  Output o;
  o.verdict = rep.verdict;
  o.table = envelope_table(rep);
  o.doc = header("classify", params);
  merge(o.doc, envelope_body(rep));
  return o;
}

Output cmd_witness(const Args& a) {
  if (!a.s || !a.sigma) throw Error(ErrorKind::InvalidArgument, "witness needs both --s and --sigma");
  const GSIndex idx = index_of(a);
  const Witness w = make_witness(idx);
  const WitnessCheck c = check_witness(w, idx);

  EnvelopeReport rep = c.decay_side;
  rep.space = idx.name();
  rep.verdict = c.passed ? Verdict::Member : combine(c.decay_side.verdict, c.fourier_side.verdict);
  rep.notes.clear();
  rep.parts = {c.decay_side, c.fourier_side};

  Output o;
  o.verdict = rep.verdict;
  o.table = envelope_table(rep);
  o.doc = header("witness", index_params(a, idx));
  o.doc["witness"] = {{"construction", w.construction},
                      {"fourier_image", w.fourier_image},
                      {"half_width", w.samples.grid().half_width()},
                      {"points", w.samples.grid().count()},
                      {"self_check_passed", c.passed}};
  merge(o.doc, envelope_body(rep));
  return o;
}

TFR symbol_of(const std::string& name, const TFGrid& tf) {
  if (name == "constant") return constant_symbol(tf);
  if (name == "gaussian") return gaussian_symbol(tf);
  if (name == "polynomial") return polynomial_symbol(tf);
  if (name.rfind("disk:", 0) == 0) {
    const std::string r = name.substr(5);
    char* end = nullptr;
    const double radius = std::strtod(r.c_str(), &end);
    if (r.empty() || *end != '\0' || !(radius > 0.0))
      throw Error(ErrorKind::InvalidArgument, "disk radius must be positive, got '" + r + "'");
    return disk_symbol(tf, radius);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown symbol '" + name + "' (constant, gaussian, polynomial, disk:R)");
}

Output cmd_toeplitz(const Args& a) {
  const SampledFunction f = function_of(a);
  const SampledFunction raw = window_of(a, f.grid(), "gaussian(1)");
  std::vector<cplx> wv(raw.values().begin(), raw.values().end());
  const double n = raw.l2_norm();
  if (!(n > 0.0)) throw Error(ErrorKind::InvalidArgument, "window is zero");
  for (auto& v : wv) v /= n;
  const SampledFunction w(f.grid(), std::move(wv));
  const TFGrid tf = default_tfgrid(f.grid());
  const TFR sym = symbol_of(a.symbol, tf);
  const SampledFunction out = apply_toeplitz(sym, w, w, f);

  json params = grid_params(a, f);
  params["window"] = a.window.value_or("gaussian(1)");
  params["symbol"] = a.symbol;

  Output o;
  o.table = samples_table(out, "x");
  if (a.s || a.sigma) {
    const GSIndex idx = index_of(a);
    const ClassifyOptions opts = options_of(a);
    merge(params, index_params(a, idx));
    merge(params, options_params(opts));
    const ContinuityReport rep = continuity_probe(sym, w, w, {f}, idx, opts);
    const EnvelopeReport out_rep = classify_function(out, idx, opts);
    o.verdict = out_rep.verdict;
    o.doc = header("toeplitz", params);
    merge(o.doc, envelope_body(out_rep));
    o.doc["continuity"] = {{"evidence_only", true},
                           {"symbol_verdict", std::string(to_string(rep.symbol_verdict))},
                           {"verdict_in", std::string(to_string(rep.entries[0].verdict_in))},
                           {"r_fit_in", rep.entries[0].r_fit_in},
                           {"r_fit_out", rep.entries[0].r_fit_out},
                           {"degradation", rep.entries[0].degradation}};
  } else {
    o.doc = header("toeplitz", params);
    o.doc["verdict"] = nullptr;
  }
  o.doc["summary"] = {{"l2_norm_in", f.l2_norm()}, {"l2_norm_out", out.l2_norm()}, {"sup_out", out.sup_abs()}};
  o.doc["table"] = o.table.to_json();
  return o;
}

Output cmd_verify(const Args& a) {
  const std::string suite = a.suite.value_or("all");
  const auto checks = run_verification(suite);
  Output o;
  o.table.columns = {"suite", "name", "value", "tolerance", "bound", "passed"};
  json arr = json::array();
  std::size_t passed = 0;
  for (const auto& c : checks) {
    o.table.rows.push_back({c.suite, c.name, c.value, c.tolerance, c.bound, c.passed});
    arr.push_back({{"suite", c.suite},
                   {"name", c.name},
                   {"value", c.value},
                   {"tolerance", c.tolerance},
                   {"bound", c.bound},
                   {"passed", c.passed}});
    passed += c.passed ? 1 : 0;
  }
  o.failed = passed != checks.size();
  o.doc = header("verify", json{{"suite", suite}});
  o.doc["verdict"] = o.failed ? "fail" : "pass";
  o.doc["summary"] = {{"checks", checks.size()}, {"passed", passed}, {"failed", checks.size() - passed}};
  o.doc["checks"] = arr;
  return o;
}

std::string render(const Output& o, const std::string& format) {
  if (format == "csv") return o.table.to_csv();
  std::string s;
  write_json(s, o.doc, 0);
  return s + "\n";
}

void add_grid_flags(CLI::App* sub, Args& a) {
  sub->add_option("--expr", a.expr, "Function expression, e.g. \"hermite(2)*gaussian(1)\"");
  sub->add_option("--input", a.input, "CSV samples (x, re[, im]) instead of --expr");
  sub->add_option("--half-width", a.half_width, "Grid half-width")->check(CLI::PositiveNumber);
  sub->add_option("--points", a.points, "Grid size (power of two)");
}

void add_space_flags(CLI::App* sub, Args& a) {
  sub->add_option("--space", a.space, "S or Sigma")->check(CLI::IsMember({"S", "Sigma"}));
  sub->add_option("--s", a.s, "Decay index")->check(CLI::PositiveNumber);
  sub->add_option("--sigma", a.sigma, "Regularity index")->check(CLI::PositiveNumber);
  sub->add_option("--type", a.type, "roumieu or beurling")
      ->check(CLI::IsMember({"roumieu", "beurling"}, CLI::ignore_case));
}

void add_fit_flags(CLI::App* sub, Args& a) {
  sub->add_option("--n-max", a.n_max, "Largest polynomial order N");
  sub->add_option("--r-list", a.r_list, "Comma-separated Beurling trial rates")->delimiter(',');
  sub->add_option("--floor", a.floor, "Relative noise floor");
}

void add_output_flags(CLI::App* sub, Args& a, bool verdict) {
  sub->add_option("--out", a.out, "Report file (default: stdout)");
  sub->add_option("--format", a.format, "json or csv (default from --out extension, else json)")
      ->check(CLI::IsMember({"json", "csv"}));
  sub->add_flag("--timings", a.timings, "Add wall-clock timings to JSON reports");
  if (verdict) sub->add_flag("--assert-member", a.assert_member, "Exit 1 unless the verdict is Member");
}

ErrorKind kind_of(const CLI::ParseError& e) {
  if (dynamic_cast<const CLI::ExtrasError*>(&e) != nullptr) return ErrorKind::UnknownFlag;
  return ErrorKind::InvalidArgument;
}

}  // namespace

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

SampledFunction read_sampled_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorKind::IoError, "cannot open '" + path + "'");
  std::vector<double> xs;
  std::vector<cplx> vs;
  std::string line;
  std::size_t lineno = 0;
  bool header_allowed = true;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line[line.find_first_not_of(" \t")] == '#') continue;
    std::vector<double> cols;
    std::stringstream ss(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(ss, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      while (end && (*end == ' ' || *end == '\t')) ++end;
      if (cell.empty() || *end != '\0') {
        numeric = false;
        break;
      }
      cols.push_back(v);
    }
    if (!numeric) {
      if (header_allowed) {
        header_allowed = false;
        continue;
      }
      throw Error(ErrorKind::IoError, path + ":" + std::to_string(lineno) + ": non-numeric row");
    }
    header_allowed = false;
    if (cols.size() != 2 && cols.size() != 3)
      throw Error(ErrorKind::IoError, path + ":" + std::to_string(lineno) + ": expected 2 or 3 columns");
    for (double c : cols)
      if (!std::isfinite(c)) throw Error(ErrorKind::NonFinite, path + ":" + std::to_string(lineno) + ": non-finite value");
    xs.push_back(cols[0]);
    vs.emplace_back(cols[1], cols.size() == 3 ? cols[2] : 0.0);
  }
  if (xs.size() < 2) throw Error(ErrorKind::IoError, path + ": need at least two samples");
  const double step = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
  if (!(step > 0.0)) throw Error(ErrorKind::InvalidArgument, path + ": x must be strictly increasing");
  for (std::size_t j = 1; j < xs.size(); ++j) {
    const double d = xs[j] - xs[j - 1];
    if (!(d > 0.0)) throw Error(ErrorKind::InvalidArgument, path + ": x must be strictly increasing");
    if (std::abs(d - step) > 1e-9 * step)
      throw Error(ErrorKind::InvalidArgument, path + ": x is not uniform at row " + std::to_string(j + 1));
  }
  const Grid1D grid(0.5 * (xs.front() + xs.back()), step, xs.size());
  return SampledFunction(grid, std::move(vs));
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Args a;
  CLI::App app{"Short-time Fourier transforms and Gelfand-Shilov envelope classification", "gstf"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--threads", a.threads, "Worker threads for transform loops")->check(CLI::Range(1u, 256u));

  auto* transform = app.add_subcommand("transform", "Fourier transform of a sampled function");
  add_grid_flags(transform, a);
  add_output_flags(transform, a, false);

  auto* st = app.add_subcommand("stft", "Short-time Fourier transform magnitudes");
  add_grid_flags(st, a);
  st->add_option("--window", a.window, "Window expression (default gaussian(1))");
  add_output_flags(st, a, false);

  auto* classify = app.add_subcommand("classify", "Envelope classification in a Gelfand-Shilov space");
  add_grid_flags(classify, a);
  add_space_flags(classify, a);
  add_fit_flags(classify, a);
  classify->add_option("--window", a.window, "Classify through the STFT with this window");
  classify->add_flag("--dual", a.dual, "Dual-space growth report through the STFT");
  classify->add_option("--envelope-table", a.envelope_table, "Write x, log|f| + r_fit |x|^(1/s) to this CSV");
  add_output_flags(classify, a, true);

  auto* witness = app.add_subcommand("witness", "Nontrivial member of a two-parameter space");
  add_space_flags(witness, a);
  add_output_flags(witness, a, true);

  auto* toeplitz = app.add_subcommand("toeplitz", "Apply a Toeplitz operator with unit-norm equal windows");
  add_grid_flags(toeplitz, a);
  add_space_flags(toeplitz, a);
  add_fit_flags(toeplitz, a);
  toeplitz->add_option("--window", a.window, "Window expression (default gaussian(1))");
  toeplitz->add_option("--symbol", a.symbol, "constant, gaussian, polynomial or disk:R");
  add_output_flags(toeplitz, a, true);

  auto* verify = app.add_subcommand("verify", "Run identity / classification / Toeplitz checks");
  verify->add_option("--suite", a.suite, "identities, classification, toeplitz or all")
      ->check(CLI::IsMember({"identities", "classification", "toeplitz", "all"}));
  add_output_flags(verify, a, false);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << to_string(kind_of(e)) << ": " << e.what() << "\n";
    return kError;
  }

  try {
    set_thread_count(a.threads);
    if (a.type) std::transform(a.type->begin(), a.type->end(), a.type->begin(), ::tolower);
    const auto t0 = std::chrono::steady_clock::now();
    Output o;
    if (transform->parsed()) o = cmd_transform(a);
    else if (st->parsed()) o = cmd_stft(a);
    else if (classify->parsed()) o = cmd_classify(a);
    else if (witness->parsed()) o = cmd_witness(a);
    else if (toeplitz->parsed()) o = cmd_toeplitz(a);
    else o = cmd_verify(a);
    if (a.timings)
      o.doc["timings"] = {{"total_ms", std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count()}};

    std::string format = a.format.value_or("");
    if (format.empty()) format = a.out && a.out->size() >= 4 && a.out->substr(a.out->size() - 4) == ".csv" ? "csv" : "json";
    const std::string text = render(o, format);
    if (a.out) {
      std::ofstream os(*a.out, std::ios::binary);
      if (!os) throw Error(ErrorKind::IoError, "cannot open '" + *a.out + "' for writing");
      os << text;
      if (!os) throw Error(ErrorKind::IoError, "write to '" + *a.out + "' failed");
    } else {
      out << text;
    }

    if (o.failed) return kAssertFailed;
    if (a.assert_member && o.verdict && *o.verdict != Verdict::Member) return kAssertFailed;
    return kOk;
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what();
    if (e.offset() != Error::npos) err << " (offset " << e.offset() << ")";
    err << "\n";
    return kError;
  } catch (const std::exception& e) {
    err << "error: InvalidArgument: " << e.what() << "\n";
    return kError;
  }
}

}  // namespace gstf::cli

#include "walters/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "walters/eigen.hpp"
#include "walters/errors.hpp"
#include "walters/gibbs.hpp"
#include "walters/oracle.hpp"
#include "walters/pressure.hpp"
#include "walters/spec_io.hpp"
#include "walters/zerotemp.hpp"

namespace walters {

namespace {

constexpr const char* kModule = "cli";

using nlohmann::json;

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"validate", "pressure", "eigen",  "gibbs",   "zero-temp",
                                              "select",   "rates",    "oracle", "example1"};
  return names;
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

LoadedPotential load(const RunConfig& cfg) {
  if (cfg.spec_path && cfg.builtin) throw SpecError(kModule, "give either --spec or --builtin");
  if (cfg.spec_path) return load_potential_file(*cfg.spec_path);
  if (cfg.builtin) return builtin_potential(*cfg.builtin);
  throw SpecError(kModule, "a potential is required (--spec FILE or --builtin NAME)");
}

std::vector<double> t_values(const RunConfig& cfg, bool required = true) {
  if (cfg.t && cfg.grid) throw SpecError(kModule, "give either --t or --t-grid");
  if (cfg.t) {
    if (!(*cfg.t > 0.0) || !std::isfinite(*cfg.t)) throw SpecError(kModule, "t must be positive");
    return {*cfg.t};
  }
  if (cfg.grid) return cfg.grid->values();
  if (required) throw SpecError(kModule, "this command needs --t or --t-grid");
  return {};
}

std::vector<Word> words_of(const RunConfig& cfg, int default_len) {
  std::vector<Word> words;
  for (const auto& w : cfg.words) words.emplace_back(w);
  if (words.empty()) {
    for (int len = 1; len <= default_len; ++len) {
      for (auto& w : all_words(len)) words.push_back(std::move(w));
    }
  }
  return words;
}

PressureOptions pressure_options(const RunConfig& cfg) {
  PressureOptions o;
  o.tol = cfg.tol;
  return o;
}

// ---- commands -------------------------------------------------------------

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
  const LoadedPotential lp = load(cfg);
  const WaltersPotential& f = lp.potential;
  ValidateReport r;
  r.name = lp.name;
  r.notes = lp.notes;
  r.sum_a_deviation = f.a_seq().tail_sum(1);
  r.sum_c_deviation = f.c_seq().tail_sum(1);
  r.sup_f = sup_f(f);
  r.limits_equal = f.a() == f.c();
  r.nonpositive = is_nonpositive(f);
  if (r.limits_equal) {
    const MaxHypothesis h = check_max_hypothesis(f);
    r.hypothesis_pass = h.pass;
    r.j0 = h.j0;
    r.j1 = h.j1;
  }
  if (cfg.format == "json") {
    out << json(r).dump(2) << "\n";
  } else {
    out << "key,value\n";
    out << "name," << csv_field(r.name) << "\n";
    out << "sum_a_deviation," << num(r.sum_a_deviation) << "\n";
    out << "sum_c_deviation," << num(r.sum_c_deviation) << "\n";
    out << "sup_f," << num(r.sup_f) << "\n";
    out << "limits_equal," << (r.limits_equal ? "true" : "false") << "\n";
    out << "hypothesis_pass," << (r.hypothesis_pass ? "true" : "false") << "\n";
    out << "j0," << r.j0 << "\n";
    out << "j1," << r.j1 << "\n";
    out << "nonpositive," << (r.nonpositive ? "true" : "false") << "\n";
    for (const auto& n : r.notes) out << "note," << csv_field(n) << "\n";
  }
  return r.limits_equal && r.hypothesis_pass ? 0 : 2;
}

int cmd_pressure(const RunConfig& cfg, std::ostream& out) {
  const WaltersPotential f = load(cfg).potential;
  const auto ts = t_values(cfg);
  const PressureOptions po = pressure_options(cfg);
  const auto sols = parallel_map<PressureSolution>(
      ts.size(), [&](std::size_t i) { return solve_pressure(f, ts[i], po); });
  if (cfg.format == "json") {
    out << json(sols).dump(2) << "\n";
    return 0;
  }
  out << "t,pressure,epsilon,log_epsilon,iterations,residual\n";
  for (const auto& s : sols) {
    out << num(s.t) << "," << num(s.pressure) << "," << num(s.epsilon) << ","
        << num(std::log(s.epsilon)) << "," << s.iterations << "," << num(s.residual) << "\n";
  }
  return 0;
}

EigenReport eigen_report(const WaltersPotential& f, double t, int q_max, const PressureOptions& po) {
  const EigenValues h = h_values(f, t, po, EigenOptions{.q_max = q_max});
  EigenReport r;
  r.t = t;
  r.pressure = h.pressure().pressure;
  r.log_beta_inf = h.beta_inf().log();
  r.q_max = q_max;
  std::vector<PatternPoint> pts{PatternPoint::zero_inf(), PatternPoint::one_inf()};
  for (int q = 1; q <= q_max; ++q) pts.push_back(PatternPoint::zero_run(q));
  for (int q = 1; q <= q_max; ++q) pts.push_back(PatternPoint::one_run(q));
  for (const auto& p : pts) {
    const LogValue v = h.at(p);
    r.values.push_back({p.label(), v.log(), v.linear()});
  }
  r.max_residual = max_eigen_residual(h, q_max);
  return r;
}

int cmd_eigen(const RunConfig& cfg, std::ostream& out) {
  const WaltersPotential f = load(cfg).potential;
  const auto ts = t_values(cfg);
  const PressureOptions po = pressure_options(cfg);
  const auto reports = parallel_map<EigenReport>(
      ts.size(), [&](std::size_t i) { return eigen_report(f, ts[i], cfg.q_max, po); });
  if (cfg.format == "json") {
    out << json(reports).dump(2) << "\n";
    return 0;
  }
  out << "t,pattern,log_h,h,max_residual\n";
  for (const auto& r : reports) {
    for (const auto& e : r.values) {
      out << num(r.t) << "," << e.pattern << "," << num(e.log_h) << "," << num(e.h) << ","
          << num(r.max_residual) << "\n";
    }
  }
  return 0;
}

GibbsReport gibbs_report(const WaltersPotential& f, double t, const std::vector<Word>& words,
                         const PressureOptions& po) {
  const GibbsTable g = top_cylinders(f, t, po);
  GibbsReport r;
  r.t = t;
  r.pressure = g.eigen().pressure().pressure;
  r.log_s0 = g.s0().log();
  r.log_s1 = g.s1().log();
  r.mu0 = g.mu0().linear();
  r.mu1 = g.mu1().linear();
  r.ratio_log = g.ratio_log();
  for (const auto& w : words) {
    const LogValue m = g.cylinder(w);
    r.cylinders.push_back({w.str(), m.log(), m.linear()});
  }
  return r;
}

int cmd_gibbs(const RunConfig& cfg, std::ostream& out) {
  const WaltersPotential f = load(cfg).potential;
  const auto ts = t_values(cfg);
  const auto words = words_of(cfg, 3);
  const PressureOptions po = pressure_options(cfg);
  const auto reports = parallel_map<GibbsReport>(
      ts.size(), [&](std::size_t i) { return gibbs_report(f, ts[i], words, po); });
  if (cfg.format == "json") {
    out << json(reports).dump(2) << "\n";
    return 0;
  }
  out << "t,word,log_mu,mu\n";
  for (const auto& r : reports) {
    for (const auto& c : r.cylinders) {
      out << num(r.t) << "," << c.word << "," << num(c.log_mu) << "," << num(c.mu) << "\n";
    }
  }
  return 0;
}

void emit_rates_csv(const std::map<std::string, RateEstimate>& rates, std::ostream& out) {
  out << "label,slope,intercept,r2,t,log_value,scaled,offset_from_target\n";
  for (const auto& [label, r] : rates) {
    for (std::size_t i = 0; i < r.fit.t.size(); ++i) {
      out << csv_field(label) << "," << num(r.fit.slope) << "," << num(r.fit.intercept) << ","
          << num(r.fit.r2) << "," << num(r.fit.t[i]) << "," << num(r.fit.log_values[i]) << ","
          << num(r.fit.scaled[i]) << ","
          << (r.target ? num(r.offset_from_target[i]) : std::string()) << "\n";
    }
  }
}

int cmd_zero_temp(const RunConfig& cfg, std::ostream& out) {
  const WaltersPotential f = load(cfg).potential;
  const auto ts = t_values(cfg, false);
  std::vector<Word> words;
  for (const auto& w : cfg.words) words.emplace_back(w);
  const LimitReport r = limit_report(f, cfg.q_max, ts, words, pressure_options(cfg));
  if (cfg.format == "json") {
    out << json(r).dump(2) << "\n";
    return 0;
  }
  out << "key,value\n";
  out << "beta," << num(r.beta) << "\n";
  out << "A," << num(r.A) << "\n";
  out << "A_case," << to_string(r.a_case) << "\n";
  out << "A_nonpositive," << (r.A_nonpositive ? num(*r.A_nonpositive) : std::string()) << "\n";
  out << "a_equation_residual," << num(r.a_equation_residual) << "\n";
  out << "calibration_residual," << num(r.calibration_residual) << "\n";
  out << "selection," << to_string(r.selection.verdict) << "\n";
  for (const auto& v : r.V) out << "V(" << v.pattern << ")," << num(v.value) << "\n";
  out << "V(0^q1...) q->inf," << num(r.v_zero_run_limit) << "\n";
  out << "V(1^q0...) q->inf," << num(r.v_one_run_limit) << "\n";
  if (!r.rate_estimates.empty()) {
    out << "\n";
    emit_rates_csv(r.rate_estimates, out);
  }
  return 0;
}

int cmd_select(const RunConfig& cfg, std::ostream& out) {
  const WaltersPotential f = load(cfg).potential;
  const SelectionVerdict v = select_measure(f);
  if (cfg.format == "json") {
    out << json(v).dump(2) << "\n";
    return 0;
  }
  out << "key,value\n";
  out << "verdict," << to_string(v.verdict) << "\n";
  out << "nonpositive," << (v.nonpositive ? "true" : "false") << "\n";
  out << "sum_a," << num(v.sum_a) << "\n";
  out << "sum_c," << num(v.sum_c) << "\n";
  out << "b," << num(v.b) << "\n";
  out << "d," << num(v.d) << "\n";
  out << "delta1_threshold," << num(v.delta1_threshold) << "\n";
  out << "delta0_threshold," << num(v.delta0_threshold) << "\n";
  return 0;
}

int cmd_rates(const RunConfig& cfg, std::ostream& out) {
  const WaltersPotential f = load(cfg).potential;
  const auto ts = t_values(cfg);
  if (ts.size() < 3) throw DegenerateFit("zerotemp", "rates need a t grid of at least 3 points");
  std::vector<Word> words;
  for (const auto& w : cfg.words) words.emplace_back(w);
  const PressureOptions po = pressure_options(cfg);
  const bool has_eps = f.a() == f.c();
  std::optional<double> A;
  if (has_eps) {
    try {
      A = compute_A(f).value;
    } catch (const Error&) {
      A.reset();
    }
  }

  struct Point {
    double log_eps;
    double log_ratio;
    std::vector<double> log_mu;
  };
  const auto pts = parallel_map<Point>(ts.size(), [&](std::size_t i) {
    const GibbsTable g = top_cylinders(f, ts[i], po, EigenOptions{.q_max = 8});
    Point p;
    p.log_eps = std::log(g.eigen().pressure().epsilon);
    p.log_ratio = g.ratio_log();
    for (const auto& w : words) p.log_mu.push_back(g.cylinder(w).log());
    return p;
  });

  auto fit = [&](auto pick, std::optional<double> target) {
    std::vector<std::pair<double, double>> xy;
    for (std::size_t i = 0; i < ts.size(); ++i) xy.emplace_back(ts[i], pick(pts[i]));
    RateEstimate r;
    r.fit = numeric_slope(xy);
    r.target = target;
    if (target) {
      for (double s : r.fit.scaled) r.offset_from_target.push_back(s - *target);
    }
    return r;
  };
  std::map<std::string, RateEstimate> rates;
  if (has_eps) rates.emplace("epsilon", fit([](const Point& p) { return p.log_eps; }, A));
  rates.emplace("log(mu[0]/mu[1])", fit([](const Point& p) { return p.log_ratio; }, std::nullopt));
  for (std::size_t k = 0; k < words.size(); ++k) {
    rates.emplace("mu[" + words[k].str() + "]",
                  fit([k](const Point& p) { return p.log_mu[k]; }, std::nullopt));
  }
  if (cfg.format == "json") {
    out << json(rates).dump(2) << "\n";
    return 0;
  }
  emit_rates_csv(rates, out);
  return 0;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out) {
  const WaltersPotential f = load(cfg).potential;
  const auto ts = t_values(cfg);
  if (cfg.depth < 2) throw SpecError(kModule, "--depth must be >= 2");
  std::vector<int> ks;
  for (int k = 4; k <= cfg.depth; k += 2) ks.push_back(k);
  if (ks.empty() || ks.back() != cfg.depth) ks.push_back(cfg.depth);
  std::vector<Word> words;
  for (const auto& w : cfg.words) {
    words.emplace_back(w);
    if (static_cast<int>(words.back().size()) > ks.front()) {
      throw SpecError(kModule, "oracle words must not be longer than the smallest depth");
    }
  }
  OracleOptions oo;
  oo.extension = cfg.periodic_extension ? Extension::Periodic : Extension::LastRun;

  std::vector<OracleReport> reports;
  for (double t : ts) {
    OracleReport rep;
    rep.t = t;
    rep.pressure = solve_pressure(f, t, pressure_options(cfg)).pressure;
    rep.extension = cfg.periodic_extension ? "periodic" : "last-run";
    rep.rows = parallel_map<OracleRow>(ks.size(), [&](std::size_t i) {
      const DepthKModel m(f, t, ks[i], oo);
      OracleRow row;
      row.k = ks[i];
      row.log_lambda = m.log_lambda();
      row.gap = std::abs(row.log_lambda - rep.pressure);
      for (const auto& w : words) {
        const LogValue v = m.cylinder(w);
        row.cylinders.push_back({w.str(), v.log(), v.linear()});
      }
      return row;
    });
    reports.push_back(std::move(rep));
  }
  if (cfg.format == "json") {
    out << json(reports).dump(2) << "\n";
    return 0;
  }
  out << "t,k,log_lambda,pressure,gap";
  for (const auto& w : words) out << ",mu[" << w.str() << "]";
  out << "\n";
  for (const auto& rep : reports) {
    for (const auto& row : rep.rows) {
      out << num(rep.t) << "," << row.k << "," << num(row.log_lambda) << "," << num(rep.pressure)
          << "," << num(row.gap);
      for (const auto& c : row.cylinders) out << "," << num(c.mu);
      out << "\n";
    }
  }
  return 0;
}

int cmd_example1(const RunConfig& cfg, std::ostream& out) {
  double b1 = -1.0;
  if (cfg.builtin && cfg.builtin->rfind("example1:", 0) == 0) {
    b1 = std::stod(cfg.builtin->substr(9));
  } else if (cfg.builtin && *cfg.builtin != "example1") {
    throw SpecError(kModule, "example1 only accepts --builtin example1[:B1]");
  }
  const Checklist c = example1_checklist(b1);
  if (cfg.format == "json") {
    out << json(c).dump(2) << "\n";
  } else {
    out << "check,passed,detail\n";
    for (const auto& item : c.items) {
      out << csv_field(item.name) << "," << (item.passed ? "pass" : "FAIL") << ","
          << csv_field(item.detail) << "\n";
    }
  }
  return c.all_passed() ? 0 : 3;
}

}  // namespace

std::vector<double> TGrid::values() const {
  if (count < 1) throw SpecError(kModule, "grid count must be >= 1");
  if (!(start > 0.0) || !std::isfinite(start) || !std::isfinite(stop)) {
    throw SpecError(kModule, "grid values must be positive");
  }
  if (count == 1) return {start};
  if (!(stop > start)) throw SpecError(kModule, "grid must be strictly increasing");
  std::vector<double> v;
  for (int i = 0; i < count; ++i) {
    const double s = static_cast<double>(i) / (count - 1);
    v.push_back(log_spacing ? std::exp(std::log(start) + s * (std::log(stop) - std::log(start)))
                            : start + s * (stop - start));
  }
  v.back() = stop;
  return v;
}

TGrid parse_t_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() != 3 && parts.size() != 4) {
    throw SpecError(kModule, "--t-grid expects A:B:N[:log]");
  }
  TGrid g;
  try {
    std::size_t pos = 0;
    g.start = std::stod(parts[0], &pos);
    if (pos != parts[0].size()) throw std::invalid_argument("start");
    g.stop = std::stod(parts[1], &pos);
    if (pos != parts[1].size()) throw std::invalid_argument("stop");
    g.count = std::stoi(parts[2], &pos);
    if (pos != parts[2].size()) throw std::invalid_argument("count");
  } catch (const std::exception&) {
    throw SpecError(kModule, "--t-grid expects A:B:N[:log], got '" + text + "'");
  }
  if (parts.size() == 4) {
    if (parts[3] == "log") {
      g.log_spacing = true;
    } else if (parts[3] != "linear") {
      throw SpecError(kModule, "grid spacing must be 'log' or 'linear'");
    }
  }
  g.values();
  return g;
}

unsigned thread_cap() {
  unsigned cap = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("WALTERS_THERMO_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) cap = static_cast<unsigned>(v);
  }
  return cap;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::ofstream file;
  std::ostream* sink = &out;
  try {
    if (cfg.format != "csv" && cfg.format != "json") {
      throw SpecError(kModule, "--format must be csv or json");
    }
    if (cfg.q_max < 1) throw SpecError(kModule, "--q-max must be >= 1");
    if (cfg.out) {
      file.open(*cfg.out);
      if (!file) throw SpecError(kModule, "cannot open output file '" + *cfg.out + "'");
      sink = &file;
    }
    const std::string& c = cfg.command;
    if (c == "validate") return cmd_validate(cfg, *sink);
    if (c == "pressure") return cmd_pressure(cfg, *sink);
    if (c == "eigen") return cmd_eigen(cfg, *sink);
    if (c == "gibbs") return cmd_gibbs(cfg, *sink);
    if (c == "zero-temp") return cmd_zero_temp(cfg, *sink);
    if (c == "select") return cmd_select(cfg, *sink);
    if (c == "rates") return cmd_rates(cfg, *sink);
    if (c == "oracle") return cmd_oracle(cfg, *sink);
    if (c == "example1") return cmd_example1(cfg, *sink);
    throw SpecError(kModule, "unknown command '" + c + "'");
  } catch (const Error& e) {
    err << "error [" << e.module() << "]: " << e.what() << "\n";
    return e.kind() == ErrorKind::Validation ? 2 : 3;
  } catch (const nlohmann::json::exception& e) {
    err << "error [potential]: " << e.what() << "\n";
    return 2;
  }
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Thermodynamic formalism for Walters-class potentials on the 2-shift"};
  RunConfig cfg;
  std::string spec, builtin, grid;
  double t = 0.0;
  app.add_option("command", cfg.command, "Command to run")
      ->required()
      ->check(CLI::IsMember(command_names()));
  auto* spec_opt = app.add_option("--spec", spec, "Potential spec file (JSON)");
  auto* builtin_opt = app.add_option("--builtin", builtin,
                                     "Built-in potential: zero, constant:K, example1[:B1], thm2, "
                                     "thm2-mirror, symmetric");
  spec_opt->excludes(builtin_opt);
  auto* t_opt = app.add_option("--t", t, "Inverse temperature");
  auto* grid_opt = app.add_option("--t-grid", grid, "Grid A:B:N[:log]");
  t_opt->excludes(grid_opt);
  app.add_option("--word", cfg.words, "Cylinder word (repeatable)");
  app.add_option("--depth", cfg.depth, "Oracle memory depth k");
  app.add_option("--tol", cfg.tol, "Pressure solver tolerance");
  app.add_option("--q-max", cfg.q_max, "Largest run length tabulated");
  app.add_flag("--periodic", cfg.periodic_extension, "Oracle: periodic extension of truncated words");
  app.add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", cfg.out, "Write the report to FILE");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error [cli]: " << e.what() << "\n";
    return 2;
  }
  if (*spec_opt) cfg.spec_path = spec;
  if (*builtin_opt) cfg.builtin = builtin;
  if (*t_opt) cfg.t = t;
  if (*grid_opt) {
    try {
      cfg.grid = parse_t_grid(grid);
    } catch (const Error& e) {
      err << "error [" << e.module() << "]: " << e.what() << "\n";
      return 2;
    }
  }
  return run(cfg, out, err);
}

// ---- example checklist ------------------------------------------------------

Checklist example1_checklist(double b1) {
  Checklist c;
  c.title = "example1 (b_1 = d_1 = " + num(b1) + ")";
  auto add = [&c](std::string name, bool ok, std::string detail) {
    c.items.push_back({std::move(name), ok, std::move(detail)});
  };
  auto guarded = [&](const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      add(name, false, e.what());
    }
  };

  const WaltersPotential f = example1_potential(b1);

  guarded("A = -7/2", [&] {
    const ZeroTempConstant A = compute_A(f);
    add("A = -7/2", A.value == -3.5 && A.kase == ACase::A1,
        "A = " + num(A.value) + " case " + to_string(A.kase));
  });

  guarded("V values", [&] {
    const Subaction V(f, compute_A(f).value, 30);
    add("V(1^inf) = b - d = -1/2", V.one_inf() == -0.5, "V(1^inf) = " + num(V.one_inf()));
    for (int p = 2; p <= 6; ++p) {
      const double expect = f.b() - f.a_seq().partial_sum(1, p - 1);
      const double got = V.zero_run(p);
      add("V(0^" + std::to_string(p) + "1...) = b - (a_2+...+a_p)",
          std::abs(got - expect) <= 1e-14, "V = " + num(got) + ", expected " + num(expect));
    }
    const double cal = calibration_residual(f, [&V](const PatternPoint& p) { return V.at(p); }, 30);
    add("V calibrated (q <= 30)", cal < 1e-9, "residual " + num(cal));
  });

  for (double t : {1.0, 5.0, 20.0}) {
    const std::string at = " at t = " + num(t);
    guarded("gibbs" + at, [&] {
      const GibbsTable g = top_cylinders(f, t);
      const double mu0 = g.mu0().linear();
      add("mu_t[0] = 1/2" + at, std::abs(mu0 - 0.5) <= 1e-10, "mu[0] = " + num(mu0));
      const double rel = std::abs(std::expm1(g.eigen().beta_inf().log() + t / 2));
      add("beta_inf = e^{-t/2}" + at, rel <= 1e-8, "relative error " + num(rel));
      double worst = 0.0;
      for (int j = 2; j <= 6; ++j) {
        const double l0 = g.cylinder(Word(std::string(j, '0') + "1")).log();
        const double l1 = g.cylinder(Word(std::string(j, '1') + "0")).log();
        worst = std::max(worst, std::abs(std::expm1(l0 - l1)));
      }
      add("mu_t[0^j1] = mu_t[1^j0], j = 2..6" + at, worst <= 1e-8, "relative gap " + num(worst));
    });
  }

  guarded("rates", [&] {
    const std::vector<double> grid{20.0, 40.0, 60.0, 80.0};
    const SlopeFit eps = epsilon_rate(f, grid);
    const double e20 = std::abs(eps.scaled.front() + 3.5);
    const double e80 = std::abs(eps.scaled.back() + 3.5);
    add("(1/t) log eps_t -> -7/2", e80 < 0.2 && e80 < e20,
        "slope " + num(eps.slope) + ", |gap| " + num(e20) + " (t=20) -> " + num(e80) + " (t=80)");
    for (const char* w : {"01", "10", "001"}) {
      const SlopeFit r = cylinder_rate(f, Word(w), grid);
      const double g20 = std::abs(r.scaled.front() + 3.5);
      const double g80 = std::abs(r.scaled.back() + 3.5);
      add(std::string("(1/t) log mu_t[") + w + "] -> -7/2", g80 < 0.2 && g80 < g20,
          "slope " + num(r.slope) + ", |gap| " + num(g20) + " (t=20) -> " + num(g80) + " (t=80)");
    }
  });
  return c;
}

}  // namespace walters

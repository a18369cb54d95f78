#include "dnls/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "dnls/elliptic.hpp"
#include "dnls/functionals.hpp"
#include "dnls/params.hpp"
#include "dnls/profiles.hpp"
#include "dnls/verify.hpp"
#include "dnls/version.hpp"

namespace dnls::cli {

namespace {

using json = nlohmann::ordered_json;

std::atomic<bool> g_color{false};

void diag(std::ostream& err, const std::string& msg) {
  if (g_color)
    err << "\x1b[31merror:\x1b[0m " << msg << '\n';
  else
    err << "error: " << msg << '\n';
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

// RFC 4180: quote only when needed
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

// Ordered (name, value) pairs rendered as one CSV row or one JSON object.
struct Record {
  std::vector<std::pair<std::string, json>> fields;
  void add(const std::string& k, double v) { fields.emplace_back(k, std::isfinite(v) ? json(v) : json(nullptr)); }
  void add_raw(const std::string& k, json v) { fields.emplace_back(k, std::move(v)); }
  json to_json() const {
    json j = json::object();
    for (const auto& [k, v] : fields) j[k] = v;
    return j;
  }
};

std::string csv_value(const json& v) {
  if (v.is_null()) return "";
  if (v.is_number_float()) return num(v.get<double>());
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_string()) return csv_field(v.get<std::string>());
  return csv_field(v.dump());
}

void write_csv(std::ostream& out, const std::vector<Record>& rows) {
  if (rows.empty()) return;
  for (std::size_t i = 0; i < rows[0].fields.size(); ++i) out << (i ? "," : "") << rows[0].fields[i].first;
  out << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.fields.size(); ++i) out << (i ? "," : "") << csv_value(r.fields[i].second);
    out << '\n';
  }
}

json rows_json(const std::vector<Record>& rows) {
  json a = json::array();
  for (const auto& r : rows) a.push_back(r.to_json());
  return a;
}

const char* command_name(Command c) {
  switch (c) {
    case Command::solve: return "solve";
    case Command::verify: return "verify";
    case Command::limit_study: return "limit-study";
    case Command::elliptic_check: return "elliptic-check";
  }
  return "?";
}

json meta(const RunConfig& cfg) {
  json m;
  m["version"] = DNLS_VERSION_STRING;
  m["command"] = command_name(cfg.command);
  m["omega"] = cfg.omega;
  m["c"] = cfg.c;
  if (cfg.L) m["L"] = *cfg.L;
  if (!cfg.L_list.empty()) m["L_list"] = cfg.L_list;
  m["n"] = cfg.n;
  m["m_max"] = cfg.m_max;
  m["jobs"] = cfg.jobs;
  if (!cfg.suites.empty()) m["suites"] = cfg.suites;
  if (cfg.tol) m["tol"] = *cfg.tol;
  if (cfg.samples) m["samples"] = cfg.samples;
  if (cfg.k) m["k"] = *cfg.k;
  if (cfg.u) m["u"] = *cfg.u;
  m["format"] = cfg.format == Format::csv ? "csv" : "json";
  return m;
}

void write_json(std::ostream& out, json doc) { out << doc.dump(2) << '\n'; }

// Builds the context or reports why not. Returns kOk on success.
int context_or_fail(const RunConfig& cfg, WaveContext& ctx, std::ostream& err) {
  try {
    ctx = make_context(cfg.omega, cfg.c);
    return kOk;
  } catch (const AdmissibilityError& e) {
    diag(err, std::string(e.what()) + "; need omega > c^2/4, or omega = c^2/4 with c > 0");
    return kAdmissibility;
  }
}

int period_fail(std::ostream& err, double L, double L0) {
  char buf[200];
  std::snprintf(buf, sizeof buf, "L = %.17g must exceed the minimal half-period L0 = %.17g", L, L0);
  diag(err, buf);
  return kPeriodBound;
}

std::vector<Record> verify_records(const std::vector<SuiteResult>& rs) {
  std::vector<Record> rows;
  for (const auto& r : rs) {
    Record rec;
    rec.add_raw("suite", r.name);
    rec.add("max_residual", r.max_residual);
    rec.add("threshold", r.threshold);
    rec.add_raw("status", r.pass ? "PASS" : "FAIL");
    rec.add_raw("worst_case", r.detail);
    rows.push_back(std::move(rec));
  }
  return rows;
}

int report_suites(const RunConfig& cfg, const std::vector<SuiteResult>& rs, std::ostream& out,
                  std::ostream& err) {
  const auto rows = verify_records(rs);
  if (cfg.format == Format::json) {
    json doc;
    doc["meta"] = meta(cfg);
    doc["rows"] = rows_json(rows);
    write_json(out, doc);
  } else {
    write_csv(out, rows);
  }
  std::string failed;
  for (const auto& r : rs)
    if (!r.pass) failed += (failed.empty() ? "" : ", ") + r.name;
  if (failed.empty()) return kOk;
  diag(err, "verification failed: " + failed);
  return kVerification;
}

}  // namespace

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!cfg.L) {
    diag(err, "solve needs --L");
    return kUsage;
  }
  WaveContext ctx;
  if (int rc = context_or_fail(cfg, ctx, err)) return rc;
  TorusProfile p;
  try {
    p = solve_eta3(ctx, *cfg.L);
  } catch (const NoSingleBumpError& e) {
    return period_fail(err, e.L(), e.L0());
  } catch (const RangeError& e) {
    diag(err, e.what());
    return kPeriodBound;
  }
  const auto res = adaptive_ode_residual(p, cfg.n);
  Record r;
  r.add("omega", ctx.omega);
  r.add("c", ctx.c);
  r.add("L", p.L);
  r.add("eta1", p.eta1);
  r.add("eta2", p.eta2);
  r.add("eta3", p.eta3);
  r.add("k", p.k.k);
  r.add("k_prime", p.k.k_prime);
  r.add("g", p.g);
  r.add("beta_sq", p.beta_sq);
  r.add("T", p.T);
  r.add("C_psi", p.C_psi);
  r.add("mass_closed", torus_mass_closed(p));
  r.add("mass_quadrature", quadrature_mass(sample_torus(p, res.n)));
  r.add("ode_residual", res.residual);
  r.add_raw("n", res.n);

  std::vector<Record> table;
  if (cfg.samples) {
    const GapEvaluator gap(p);
    for (std::size_t j = 0; j < cfg.samples; ++j) {
      const double x = -p.L + 2 * p.L * static_cast<double>(j) / static_cast<double>(cfg.samples - 1);
      Record s;
      s.add("x", x);
      s.add("phi_L", gap.torus().phi(x));
      s.add("phi", soliton_eval(gap.soliton(), x));
      s.add("phi_L_minus_phi", gap(x));
      table.push_back(std::move(s));
    }
  }
  if (cfg.format == Format::json) {
    json doc;
    doc["meta"] = meta(cfg);
    doc["rows"] = rows_json({r});
    if (!table.empty()) doc["profile"] = rows_json(table);
    write_json(out, doc);
  } else {
    write_csv(out, {r});
    if (!table.empty()) {
      out << '\n';
      write_csv(out, table);
    }
  }
  return kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  VerifyOptions o;
  o.tolerance = cfg.tol;
  o.suites = cfg.suites;
  if (cfg.context_given) {
    WaveContext ctx;
    if (int rc = context_or_fail(cfg, ctx, err)) return rc;
    o.context = std::make_pair(cfg.omega, cfg.c);
  }
  for (const auto& s : o.suites)
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end()) {
      diag(err, "unknown suite '" + s + "'");
      return kUsage;
    }
  return report_suites(cfg, run_verify(o), out, err);
}

int cmd_limit_study(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.L_list.empty()) {
    diag(err, "limit-study needs a non-empty --L-list");
    return kUsage;
  }
  if (!std::is_sorted(cfg.L_list.begin(), cfg.L_list.end()) ||
      std::adjacent_find(cfg.L_list.begin(), cfg.L_list.end()) != cfg.L_list.end()) {
    diag(err, "--L-list must be strictly ascending");
    return kUsage;
  }
  WaveContext ctx;
  if (int rc = context_or_fail(cfg, ctx, err)) return rc;
  for (double L : cfg.L_list)
    if (!(L > ctx.L0)) return period_fail(err, L, ctx.L0);

  const auto rows = convergence_study(ctx, cfg.L_list, cfg.m_max, cfg.n, cfg.jobs);
  std::vector<Record> recs;
  int rc = kOk;
  for (const auto& row : rows) {
    Record r;
    r.add("L", row.L);
    r.add("eta3", row.eta3);
    r.add("gap", row.gap);
    r.add("k", row.k);
    r.add("k_prime", row.k_prime);
    r.add("beta_sq", row.beta_sq);
    r.add("mass_torus", row.mass_torus);
    r.add("mass_gap", row.mass_gap);
    for (std::size_t i = 0; i < kPointwiseX.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof name, "pointwise_gap_x%g", kPointwiseX[i]);
      r.add(name, row.pointwise[i]);
    }
    for (int m = 0; m <= cfg.m_max; ++m) r.add("h" + std::to_string(m) + "_gap", row.h_m_gaps[static_cast<std::size_t>(m)]);
    for (int m = 0; m <= std::min(cfg.m_max, 2); ++m)
      r.add("c" + std::to_string(m) + "_gap", row.sup_gaps[static_cast<std::size_t>(m)]);
    for (int m = 0; m <= cfg.m_max; ++m) r.add("h" + std::to_string(m) + "_norm", row.h_m_norms[static_cast<std::size_t>(m)]);
    r.add("ode_residual", row.ode_residual);
    r.add_raw("n", row.n);
    r.add_raw("error", row.message);
    if (row.error) {
      diag(err, "row L = " + num(row.L) + ": " + row.message);
      rc = kPeriodBound;
    }
    recs.push_back(std::move(r));
  }
  const auto lim = long_period_limits(ctx);
  Record foot;
  foot.add("k_lim", lim.k);
  foot.add("beta_sq_lim", lim.beta_sq_unbounded ? INFINITY : lim.beta_sq);
  foot.add("eta1_lim", lim.eta1);
  foot.add("eta2_lim", lim.eta2);
  foot.add("inv_2g_lim", lim.inv_2g);
  foot.add("mu1", lim.mu1);
  foot.add("soliton_mass", soliton_mass(ctx));
  if (cfg.format == Format::json) {
    json doc;
    doc["meta"] = meta(cfg);
    doc["rows"] = rows_json(recs);
    doc["limits"] = foot.to_json();
    write_json(out, doc);
  } else {
    write_csv(out, recs);
    for (const auto& [k, v] : foot.fields) out << "# " << k << '=' << (v.is_null() ? "inf" : csv_value(v)) << '\n';
  }
  return rc;
}

int cmd_elliptic_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!cfg.k) {
    VerifyOptions o;
    o.tolerance = cfg.tol;
    o.suites = {"legendre", "jacobi-identities", "extremal", "k-quadrature", "legendre-endpoint"};
    return report_suites(cfg, run_verify(o), out, err);
  }
  const double k = *cfg.k;
  if (!(k >= 0.0 && k <= 1.0)) {
    diag(err, "--k must lie in [0, 1]");
    return kUsage;
  }
  const auto m = elliptic::Modulus::from_k(k);
  const auto mc = m.complement();
  Record r;
  r.add("k", m.k);
  r.add("k_prime", m.k_prime);
  const double K = elliptic::complete_K(m), E = elliptic::complete_E(m);
  const double Kc = elliptic::complete_K(mc), Ec = elliptic::complete_E(mc);
  r.add("K", K);
  r.add("E", E);
  r.add("K_prime", Kc);
  r.add("E_prime", Ec);
  r.add("legendre_residual", std::isfinite(Kc) && std::isfinite(K) ? E * Kc + Ec * K - K * Kc - std::numbers::pi / 2 : NAN);
  if (cfg.u) {
    const auto t = elliptic::jacobi(*cfg.u, m);
    r.add("u", *cfg.u);
    r.add("sn", t.sn);
    r.add("cn", t.cn);
    r.add("dn", t.dn);
  }
  if (cfg.format == Format::json) {
    json doc;
    doc["meta"] = meta(cfg);
    doc["rows"] = rows_json({r});
    write_json(out, doc);
  } else {
    write_csv(out, {r});
  }
  return kOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err, bool color) {
  g_color = color;
  RunConfig cfg;
  std::string format = "csv";
  double L = 0;

  CLI::App app{"Exact periodic traveling waves and their long-period limits", "dnls-waves"};
  app.set_version_flag("--version", DNLS_VERSION_STRING);
  app.require_subcommand(1, 1);

  auto add_context = [&](CLI::App* s) {
    s->add_option("--omega", cfg.omega, "frequency omega > 0");
    s->add_option("--c", cfg.c, "speed c with omega >= c^2/4");
  };
  auto add_io = [&](CLI::App* s) {
    s->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    s->add_option("--output", cfg.output, "write here instead of stdout");
  };

  auto* solve = app.add_subcommand("solve", "construct one periodic profile");
  add_context(solve);
  solve->add_option("--L", L, "half-period L > L0")->required();
  solve->add_option("--n", cfg.n, "starting grid size (power of two >= 256)");
  solve->add_option("--samples", cfg.samples, "also tabulate (x, Phi^L, Phi) at this many points");
  add_io(solve);

  auto* verify = app.add_subcommand("verify", "run the invariant suites");
  add_context(verify);
  verify->add_option("--tol", cfg.tol, "replace every suite threshold");
  verify->add_option("--suite", cfg.suites, "run only these suites")->delimiter(',');
  add_io(verify);

  auto* study = app.add_subcommand("limit-study", "long-period convergence table");
  add_context(study);
  study->add_option("--L-list", cfg.L_list, "ascending half-periods, comma separated")->delimiter(',')->required();
  study->add_option("--n", cfg.n, "grid size (power of two >= 256)");
  study->add_option("--m-max", cfg.m_max, "highest Sobolev order")->check(CLI::Range(0, 3));
  study->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::Range(1u, 256u));
  add_io(study);

  auto* ell = app.add_subcommand("elliptic-check", "complete integrals and Jacobi functions");
  ell->add_option("--k", cfg.k, "modulus in [0, 1]");
  ell->add_option("--u", cfg.u, "argument for sn, cn, dn");
  ell->add_option("--tol", cfg.tol, "replace every suite threshold");
  add_io(ell);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, d;
    const int code = app.exit(e, o, d);
    out << o.str();
    if (code != 0) {
      diag(err, e.what());
      return kUsage;
    }
    return kOk;
  }

  if (*solve) {
    cfg.command = Command::solve;
    cfg.L = L;
  } else if (*verify) {
    cfg.command = Command::verify;
  } else if (*study) {
    cfg.command = Command::limit_study;
  } else {
    cfg.command = Command::elliptic_check;
  }
  cfg.context_given = verify->count("--omega") + verify->count("--c") > 0;
  cfg.format = format == "json" ? Format::json : Format::csv;
  if (cfg.n < 256 || (cfg.n & (cfg.n - 1)) != 0) {
    diag(err, "--n must be a power of two >= 256");
    return kUsage;
  }
  if (cfg.samples == 1) {
    diag(err, "--samples must be 0 or at least 2");
    return kUsage;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!cfg.output.empty()) {
    file.open(cfg.output, std::ios::binary | std::ios::trunc);
    if (!file) {
      diag(err, "cannot open " + cfg.output + " for writing");
      return kUsage;
    }
    sink = &file;
  }
  switch (cfg.command) {
    case Command::solve: return cmd_solve(cfg, *sink, err);
    case Command::verify: return cmd_verify(cfg, *sink, err);
    case Command::limit_study: return cmd_limit_study(cfg, *sink, err);
    case Command::elliptic_check: return cmd_elliptic_check(cfg, *sink, err);
  }
  return kUsage;
}

}  // namespace dnls::cli

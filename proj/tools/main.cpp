#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <esvs/errors.hpp>
#include <esvs/metrics.hpp>
#include <esvs/optimize.hpp>
#include <esvs/oracle.hpp>
#include <esvs/states.hpp>

#include "report.hpp"
#include "verify.hpp"

namespace {

using esvs::cli::format9;
using esvs::cli::MetricReport;
using esvs::cli::round9;
using ordered_json = nlohmann::ordered_json;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw esvs::DomainError("cannot open output file: " + out_path);
  f << text;
  if (!f) throw esvs::DomainError("failed writing output file: " + out_path);
}

const char* method_for(double r) {
  return std::abs(r) < esvs::kRMin ? "oracle" : "closed_form";
}

bool uses_oracle(double r) { return std::abs(r) < esvs::kRMin; }

// Grid spec: "lo:hi:steps" (inclusive linspace) or a comma-separated list.
double parse_real(const std::string& tok) {
  const char* s = tok.c_str();
  char* end = nullptr;
  const double v = std::strtod(s, &end);
  if (end == s || *end != '\0' || !std::isfinite(v))
    throw esvs::DomainError("malformed number in grid spec: '" + tok + "'");
  return v;
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<std::string> toks;
  const char sep = spec.find(':') != std::string::npos ? ':' : ',';
  std::string cur;
  for (char c : spec) {
    if (c == sep) {
      toks.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  toks.push_back(cur);
  if (sep == ':') {
    if (toks.size() != 3) throw esvs::DomainError("grid spec must be lo:hi:steps");
    const double lo = parse_real(toks[0]);
    const double hi = parse_real(toks[1]);
    long steps = 0;
    try {
      size_t pos = 0;
      steps = std::stol(toks[2], &pos);
      if (pos != toks[2].size()) throw std::invalid_argument("");
    } catch (...) {
      throw esvs::DomainError("malformed step count in grid spec: '" + toks[2] + "'");
    }
    if (steps < 1 || steps > 1000000) throw esvs::DomainError("grid steps must be in [1, 1e6]");
    if (steps > 1 && hi < lo) throw esvs::DomainError("grid spec needs hi >= lo");
    std::vector<double> g(steps);
    for (long i = 0; i < steps; ++i)
      g[i] = steps == 1 ? lo : lo + (hi - lo) * double(i) / double(steps - 1);
    return g;
  }
  std::vector<double> g;
  for (const auto& t : toks) g.push_back(parse_real(t));
  if (g.empty()) throw esvs::DomainError("empty grid spec");
  return g;
}

std::vector<double> linspace(double lo, double hi, int steps) {
  if (steps < 1) throw esvs::DomainError("sweep needs at least one step");
  if (steps > 1 && hi < lo) throw esvs::DomainError("sweep needs an upper bound >= lower bound");
  std::vector<double> g(steps);
  for (int i = 0; i < steps; ++i)
    g[i] = steps == 1 ? lo : lo + (hi - lo) * double(i) / double(steps - 1);
  return g;
}

ordered_json round_array(const std::vector<double>& v) {
  ordered_json a = ordered_json::array();
  for (double x : v) a.push_back(round9(x));
  return a;
}

// ---------------------------------------------------------------- wigner --

struct WignerArgs {
  int n = 0;
  double r = 0.0;
  double qmin = 0.0, qmax = 0.0, pmin = 0.0, pmax = 0.0;
  int steps = 0;
  std::string method = "closed";
  std::string format = "csv";
  std::string out;
};

int run_wigner(const WignerArgs& a, int threads) {
  const esvs::EsvsParams ps{a.r, a.n};
  const bool want_oracle = a.method == "oracle" || uses_oracle(a.r);
  esvs::PhaseGrid grid;
  int used_dim = 0;
  if (a.method == "oracle") {
    esvs::esvs_log_norm(a.r, a.n);  // parameter validation
    double amax = 0.0;
    for (double q : {a.qmin, a.qmax})
      for (double p : {a.pmin, a.pmax}) amax = std::max(amax, std::sqrt(0.5 * (q * q + p * p)));
    const double base = esvs::oracle::default_dim(a.r, a.n);
    const double reach = base + 4.0 * amax * std::sqrt(base) + 2.0 * amax * amax;
    used_dim = std::max(esvs::oracle::default_dim(a.r, a.n),
                        esvs::oracle::bucket_dim(int(std::ceil(4.0 * reach / 3.0)) + 64));
    const auto v = esvs::oracle::esvs_vector(ps, used_dim);
    grid.steps_q = grid.steps_p = a.steps;
    grid.q_lo = a.qmin;
    grid.q_hi = a.qmax;
    grid.p_lo = a.pmin;
    grid.p_hi = a.pmax;
    if (a.steps < 1) throw esvs::DomainError("steps must be >= 1");
    if (a.qmax < a.qmin || a.pmax < a.pmin)
      throw esvs::DomainError("grid needs qmax >= qmin and pmax >= pmin");
    grid.values.resize(size_t(a.steps) * a.steps);
    for (int iq = 0; iq < a.steps; ++iq)
      for (int ip = 0; ip < a.steps; ++ip)
        grid.values[size_t(iq) * a.steps + ip] =
            esvs::oracle::wigner(v, grid.q_at(iq), grid.p_at(ip));
  } else {
    grid = esvs::wigner_grid(ps, {a.qmin, a.qmax}, {a.pmin, a.pmax}, a.steps, threads);
    if (uses_oracle(a.r)) used_dim = esvs::oracle::default_dim(a.r, a.n);
  }

  if (a.format == "csv") {
    std::string csv = "q,p,w\n";
    for (int iq = 0; iq < grid.steps_q; ++iq)
      for (int ip = 0; ip < grid.steps_p; ++ip)
        csv += format9(grid.q_at(iq)) + "," + format9(grid.p_at(ip)) + "," +
               format9(grid.at(iq, ip)) + "\n";
    emit(csv, a.out);
    return 0;
  }

  MetricReport rep;
  rep.metric = "wigner";
  rep.params = {{"n", a.n},     {"r", round9(a.r)},    {"qmin", round9(a.qmin)},
                {"qmax", round9(a.qmax)}, {"pmin", round9(a.pmin)}, {"pmax", round9(a.pmax)},
                {"steps", a.steps}};
  rep.method = want_oracle ? "oracle" : "closed_form";
  if (used_dim > 0) rep.fock_dim = used_dim;
  if (a.method != "oracle" && uses_oracle(a.r))
    rep.warnings.push_back("closed form is unstable below |r| = 1e-6; oracle route used");
  std::vector<double> qs(grid.steps_q), pvs(grid.steps_p);
  for (int i = 0; i < grid.steps_q; ++i) qs[i] = grid.q_at(i);
  for (int i = 0; i < grid.steps_p; ++i) pvs[i] = grid.p_at(i);
  ordered_json w = ordered_json::array();
  for (int iq = 0; iq < grid.steps_q; ++iq) {
    ordered_json row = ordered_json::array();
    for (int ip = 0; ip < grid.steps_p; ++ip) row.push_back(round9(grid.at(iq, ip)));
    w.push_back(std::move(row));
  }
  rep.values = {{"q", round_array(qs)}, {"p", round_array(pvs)}, {"w", std::move(w)}};
  emit(rep.to_json(), a.out);
  return 0;
}

// ------------------------------------------------------------------- pnd --

int run_pnd(int n, double r, int mmax, const std::string& format, const std::string& out) {
  if (mmax < 0) throw esvs::DomainError("mmax must be >= 0");
  const esvs::EsvsParams ps{r, n};
  std::vector<double> probs(mmax + 1);
  for (int m = 0; m <= mmax; ++m) probs[m] = esvs::pnd(ps, m);

  if (format == "csv") {
    std::string csv = "m,p\n";
    for (int m = 0; m <= mmax; ++m) csv += std::to_string(m) + "," + format9(probs[m]) + "\n";
    emit(csv, out);
    return 0;
  }
  MetricReport rep;
  rep.metric = "pnd";
  rep.params = {{"n", n}, {"r", round9(r)}, {"mmax", mmax}};
  rep.method = method_for(r);
  if (uses_oracle(r)) rep.fock_dim = esvs::oracle::default_dim(r, n);
  ordered_json ms = ordered_json::array();
  for (int m = 0; m <= mmax; ++m) ms.push_back(m);
  rep.values = {{"m", std::move(ms)}, {"p", round_array(probs)}};
  emit(rep.to_json(), out);
  return 0;
}

// --------------------------------------------------- scalar-or-sweep glue --

struct SweepArgs {
  double r = 0.0;
  double r_from = 0.0, r_to = 0.0;
  int r_steps = 0;
  bool scalar = false;
  std::vector<double> grid;  // filled for sweeps
};

void resolve_sweep(CLI::App* cmd, SweepArgs& s) {
  const bool have_r = cmd->count("--r") > 0;
  const int sweep_flags = (cmd->count("--r-from") > 0) + (cmd->count("--r-to") > 0) +
                          (cmd->count("--r-steps") > 0);
  if (have_r && sweep_flags > 0)
    throw esvs::DomainError("--r and --r-from/--r-to/--r-steps are mutually exclusive");
  if (!have_r && sweep_flags != 3)
    throw esvs::DomainError("provide either --r or all of --r-from, --r-to, --r-steps");
  s.scalar = have_r;
  if (!have_r) s.grid = linspace(s.r_from, s.r_to, s.r_steps);
}

// ---------------------------------------------------------------- mandel --

int run_mandel(int n, const SweepArgs& s, const std::string& format, const std::string& out) {
  if (s.scalar) {
    MetricReport rep;
    rep.metric = "mandel_q";
    rep.params = {{"n", n}, {"r", round9(s.r)}};
    rep.method = method_for(s.r);
    if (uses_oracle(s.r)) rep.fock_dim = esvs::oracle::default_dim(s.r, n);
    rep.values = {{"q", round9(esvs::mandel_q({s.r, n}))}};
    emit(rep.to_json(), out);
    return 0;
  }
  std::vector<double> qs(s.grid.size());
  int fallbacks = 0;
  for (size_t i = 0; i < s.grid.size(); ++i) {
    qs[i] = esvs::mandel_q({s.grid[i], n});
    fallbacks += uses_oracle(s.grid[i]);
  }
  if (format == "csv") {
    std::string csv = "r,q\n";
    for (size_t i = 0; i < s.grid.size(); ++i)
      csv += format9(s.grid[i]) + "," + format9(qs[i]) + "\n";
    emit(csv, out);
    return 0;
  }
  MetricReport rep;
  rep.metric = "mandel_q";
  rep.params = {{"n", n},
                {"r_from", round9(s.r_from)},
                {"r_to", round9(s.r_to)},
                {"r_steps", s.r_steps}};
  rep.method = "closed_form";
  if (fallbacks > 0)
    rep.warnings.push_back(std::to_string(fallbacks) +
                           " grid points below |r| = 1e-6 evaluated via the oracle");
  rep.values = {{"r", round_array(s.grid)}, {"q", round_array(qs)}};
  emit(rep.to_json(), out);
  return 0;
}

// ------------------------------------------------------------ quadrature --

ordered_json quad_values(const esvs::QuadratureReport& q) {
  return {{"var_x", round9(q.var_x)},   {"var_y", round9(q.var_y)},
          {"product", round9(q.product)}, {"snr_x", round9(q.snr_x)},
          {"snr_y", round9(q.snr_y)},   {"snr_xy", round9(q.snr_xy)},
          {"a_sq_moment", round9(q.m_val)}, {"mean_photons", round9(q.n_val)}};
}

int run_quadrature(int n, const SweepArgs& s, const std::string& format, const std::string& out) {
  if (s.scalar) {
    MetricReport rep;
    rep.metric = "quadrature";
    rep.params = {{"n", n}, {"r", round9(s.r)}};
    rep.method = method_for(s.r);
    if (uses_oracle(s.r)) rep.fock_dim = esvs::oracle::default_dim(s.r, n);
    rep.values = quad_values(esvs::quadrature({s.r, n}));
    emit(rep.to_json(), out);
    return 0;
  }
  std::vector<esvs::QuadratureReport> rows(s.grid.size());
  int fallbacks = 0;
  for (size_t i = 0; i < s.grid.size(); ++i) {
    rows[i] = esvs::quadrature({s.grid[i], n});
    fallbacks += uses_oracle(s.grid[i]);
  }
  if (format == "csv") {
    std::string csv = "r,var_x,var_y,product,snr_x,snr_y,snr_xy\n";
    for (size_t i = 0; i < s.grid.size(); ++i) {
      const auto& q = rows[i];
      csv += format9(s.grid[i]) + "," + format9(q.var_x) + "," + format9(q.var_y) + "," +
             format9(q.product) + "," + format9(q.snr_x) + "," + format9(q.snr_y) + "," +
             format9(q.snr_xy) + "\n";
    }
    emit(csv, out);
    return 0;
  }
  MetricReport rep;
  rep.metric = "quadrature";
  rep.params = {{"n", n},
                {"r_from", round9(s.r_from)},
                {"r_to", round9(s.r_to)},
                {"r_steps", s.r_steps}};
  rep.method = "closed_form";
  if (fallbacks > 0)
    rep.warnings.push_back(std::to_string(fallbacks) +
                           " grid points below |r| = 1e-6 evaluated via the oracle");
  ordered_json rows_json = ordered_json::array();
  for (const auto& q : rows) rows_json.push_back(quad_values(q));
  rep.values = {{"r", round_array(s.grid)}, {"quadrature", std::move(rows_json)}};
  emit(rep.to_json(), out);
  return 0;
}

// -------------------------------------------------------------- nongauss --

ordered_json ng_values(const esvs::NonGaussReport& g) {
  return {{"delta", round9(g.delta)},
          {"kappa", round9(g.kappa)},
          {"mu_tau", round9(g.mu_tau)},
          {"varsigma", round9(g.ref.varsigma)},
          {"nbar", round9(g.ref.nbar)},
          {"tail_bound", round9(g.tail_bound)}};
}

int run_nongauss(int n, const SweepArgs& s, double tol, int max_terms, const std::string& format,
                 const std::string& out) {
  if (s.scalar) {
    const auto g = esvs::non_gaussianity({s.r, n}, tol, max_terms);
    MetricReport rep;
    rep.metric = "nongauss";
    rep.params = {{"n", n}, {"r", round9(s.r)}};
    rep.method = method_for(s.r);
    rep.tolerance = tol;
    if (g.terms_used > 0) rep.terms_used = g.terms_used;
    if (uses_oracle(s.r)) rep.fock_dim = esvs::oracle::default_dim(s.r, n);
    rep.values = ng_values(g);
    emit(rep.to_json(), out);
    return 0;
  }
  std::vector<esvs::NonGaussReport> rows(s.grid.size());
  int fallbacks = 0;
  for (size_t i = 0; i < s.grid.size(); ++i) {
    rows[i] = esvs::non_gaussianity({s.grid[i], n}, tol, max_terms);
    fallbacks += uses_oracle(s.grid[i]);
  }
  if (format == "csv") {
    std::string csv = "r,delta,kappa,mu_tau,varsigma,nbar\n";
    for (size_t i = 0; i < s.grid.size(); ++i) {
      const auto& g = rows[i];
      csv += format9(s.grid[i]) + "," + format9(g.delta) + "," + format9(g.kappa) + "," +
             format9(g.mu_tau) + "," + format9(g.ref.varsigma) + "," + format9(g.ref.nbar) + "\n";
    }
    emit(csv, out);
    return 0;
  }
  MetricReport rep;
  rep.metric = "nongauss";
  rep.params = {{"n", n},
                {"r_from", round9(s.r_from)},
                {"r_to", round9(s.r_to)},
                {"r_steps", s.r_steps}};
  rep.method = "closed_form";
  rep.tolerance = tol;
  if (fallbacks > 0)
    rep.warnings.push_back(std::to_string(fallbacks) +
                           " grid points below |r| = 1e-6 evaluated via the oracle");
  ordered_json rows_json = ordered_json::array();
  for (const auto& g : rows) rows_json.push_back(ng_values(g));
  rep.values = {{"r", round_array(s.grid)}, {"nongauss", std::move(rows_json)}};
  emit(rep.to_json(), out);
  return 0;
}

// -------------------------------------------------------------- fidelity --

int run_fidelity(int n, int m, double lambda, double r, const std::string& out) {
  MetricReport rep;
  rep.metric = "fidelity";
  rep.params = {{"n", n}, {"m", m}, {"lambda", round9(lambda)}, {"r", round9(r)}};
  const bool orac = uses_oracle(r) || uses_oracle(lambda);
  rep.method = orac ? "oracle" : "closed_form";
  if (orac)
    rep.fock_dim =
        std::max(esvs::oracle::default_dim(r, n), esvs::oracle::default_dim(lambda, m));
  rep.values = {{"f", round9(esvs::fidelity({r, n}, {lambda, m}))}};
  emit(rep.to_json(), out);
  return 0;
}

int run_fidelity_opt(int n, int m, double lambda, double r_lo, double r_hi, double tol,
                     const std::string& out) {
  const auto res = esvs::optimal_fidelity(n, m, lambda, r_lo, r_hi, tol);
  MetricReport rep;
  rep.metric = "fidelity_opt";
  rep.params = {{"n", n}, {"m", m}, {"lambda", round9(lambda)}};
  rep.method = "closed_form";
  rep.tolerance = tol;
  rep.terms_used = res.evals;
  if (res.boundary)
    rep.warnings.push_back("optimum sits on the search bracket boundary; widen --r-lo/--r-hi");
  rep.values = {{"r_star", round9(res.r_star)}, {"f_star", round9(res.f_star)}};
  emit(rep.to_json(), out);
  return 0;
}

int run_fidelity_sweep(int n, int m, const std::string& lambda_spec, const std::string& r_spec,
                       int threads, const std::string& format, const std::string& out) {
  const auto lambdas = parse_grid(lambda_spec);
  const auto rs = parse_grid(r_spec);
  const auto table = esvs::fidelity_sweep(n, m, lambdas, rs, threads);
  if (format == "csv") {
    std::string csv = "lambda,r,f\n";
    for (const auto& c : table)
      csv += format9(c.lambda) + "," + format9(c.r) + "," + format9(c.f) + "\n";
    emit(csv, out);
    return 0;
  }
  MetricReport rep;
  rep.metric = "fidelity_sweep";
  rep.params = {{"n", n}, {"m", m}, {"lambda_grid", lambda_spec}, {"r_grid", r_spec}};
  rep.method = "closed_form";
  ordered_json f = ordered_json::array();
  for (size_t i = 0; i < lambdas.size(); ++i) {
    ordered_json row = ordered_json::array();
    for (size_t j = 0; j < rs.size(); ++j) row.push_back(round9(table[i * rs.size() + j].f));
    f.push_back(std::move(row));
  }
  rep.values = {{"lambda", round_array(lambdas)}, {"r", round_array(rs)}, {"f", std::move(f)}};
  emit(rep.to_json(), out);
  return 0;
}

// ---------------------------------------------------------------- verify --

int run_verify_cmd(const std::string& suite, double tol, int fock_dim) {
  const auto results = esvs::cli::run_verify(suite, tol, fock_dim);
  int failed = 0;
  for (const auto& cr : results) {
    std::printf("[%s] %s: %s\n", cr.pass ? "PASS" : "FAIL", cr.name.c_str(), cr.detail.c_str());
    failed += !cr.pass;
  }
  std::printf("%zu checks, %d failed\n", results.size(), failed);
  return failed == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonclassicality metrics of photon-added squeezed vacuum states"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Cap worker threads (default: logical processors)");

  std::function<int()> action;

  // wigner
  WignerArgs wa;
  auto* wig = app.add_subcommand("wigner", "Wigner function on a phase-space grid");
  wig->fallthrough();
  wig->add_option("--n", wa.n, "Number of photon additions")->required()->check(CLI::Range(0, 256));
  wig->add_option("--r", wa.r, "Squeezing parameter")->required();
  wig->add_option("--qmin", wa.qmin)->required();
  wig->add_option("--qmax", wa.qmax)->required();
  wig->add_option("--pmin", wa.pmin)->required();
  wig->add_option("--pmax", wa.pmax)->required();
  wig->add_option("--steps", wa.steps, "Points per axis")->required()->check(CLI::Range(1, 4096));
  wig->add_option("--method", wa.method)->check(CLI::IsMember({"closed", "oracle"}));
  wig->add_option("--format", wa.format)->check(CLI::IsMember({"csv", "json"}));
  wig->add_option("--out", wa.out, "Write output to a file instead of stdout");
  wig->callback([&] { action = [&] { return run_wigner(wa, threads); }; });

  // pnd
  int pn = 0, pmmax = 0;
  double pr = 0.0;
  std::string pformat = "json", pout;
  auto* pnd = app.add_subcommand("pnd", "Photon-number distribution");
  pnd->fallthrough();
  pnd->add_option("--n", pn)->required()->check(CLI::Range(0, 256));
  pnd->add_option("--r", pr)->required();
  pnd->add_option("--mmax", pmmax, "Largest photon number reported")->required();
  pnd->add_option("--format", pformat)->check(CLI::IsMember({"csv", "json"}));
  pnd->add_option("--out", pout);
  pnd->callback([&] { action = [&] { return run_pnd(pn, pr, pmmax, pformat, pout); }; });

  auto add_sweep_opts = [](CLI::App* cmd, SweepArgs& s) {
    cmd->add_option("--r", s.r, "Single squeezing value");
    cmd->add_option("--r-from", s.r_from, "Sweep start");
    cmd->add_option("--r-to", s.r_to, "Sweep end");
    cmd->add_option("--r-steps", s.r_steps, "Sweep point count")->check(CLI::Range(1, 1000000));
  };

  // mandel-q
  int mn = 0;
  SweepArgs ms;
  std::string mformat = "json", mout;
  auto* mq = app.add_subcommand("mandel-q", "Mandel Q parameter");
  mq->fallthrough();
  mq->add_option("--n", mn)->required()->check(CLI::Range(0, 256));
  add_sweep_opts(mq, ms);
  mq->add_option("--format", mformat)->check(CLI::IsMember({"csv", "json"}));
  mq->add_option("--out", mout);
  mq->callback([&] {
    action = [&] {
      resolve_sweep(mq, ms);
      return run_mandel(mn, ms, mformat, mout);
    };
  });

  // quadrature
  int qn = 0;
  SweepArgs qs;
  std::string qformat = "json", qout;
  auto* quad = app.add_subcommand("quadrature", "Quadrature variances and squeezing SNR");
  quad->fallthrough();
  quad->add_option("--n", qn)->required()->check(CLI::Range(0, 256));
  add_sweep_opts(quad, qs);
  quad->add_option("--format", qformat)->check(CLI::IsMember({"csv", "json"}));
  quad->add_option("--out", qout);
  quad->callback([&] {
    action = [&] {
      resolve_sweep(quad, qs);
      return run_quadrature(qn, qs, qformat, qout);
    };
  });

  // nongauss
  int gn = 0, gmax_terms = 4096;
  SweepArgs gs;
  double gtol = 1e-12;
  std::string gformat = "json", gout;
  auto* ng = app.add_subcommand("nongauss", "Hilbert-Schmidt non-Gaussianity");
  ng->fallthrough();
  ng->add_option("--n", gn)->required()->check(CLI::Range(0, 256));
  add_sweep_opts(ng, gs);
  ng->add_option("--tol", gtol, "Series tail tolerance");
  ng->add_option("--max-terms", gmax_terms)->check(CLI::Range(1, 1 << 20));
  ng->add_option("--format", gformat)->check(CLI::IsMember({"csv", "json"}));
  ng->add_option("--out", gout);
  ng->callback([&] {
    action = [&] {
      resolve_sweep(ng, gs);
      return run_nongauss(gn, gs, gtol, gmax_terms, gformat, gout);
    };
  });

  // fidelity
  int fn = 0, fm = 0;
  double flambda = 0.0, fr = 0.0;
  std::string fout;
  auto* fid = app.add_subcommand("fidelity", "Overlap with a photon-subtracted squeezed vacuum");
  fid->fallthrough();
  fid->add_option("--n", fn)->required()->check(CLI::Range(0, 256));
  fid->add_option("--m", fm, "Number of photon subtractions")->required()->check(CLI::Range(0, 256));
  fid->add_option("--lambda", flambda, "Target squeezing")->required();
  fid->add_option("--r", fr)->required();
  fid->add_option("--out", fout);
  fid->callback([&] { action = [&] { return run_fidelity(fn, fm, flambda, fr, fout); }; });

  // fidelity-opt
  int on = 0, om = 0;
  double olambda = 0.0, or_lo = 0.05, or_hi = 0.0, otol = 1e-8;
  std::string oout;
  auto* fopt = app.add_subcommand("fidelity-opt", "Squeezing that maximizes the fidelity");
  fopt->fallthrough();
  fopt->add_option("--n", on)->required()->check(CLI::Range(0, 256));
  fopt->add_option("--m", om)->required()->check(CLI::Range(0, 256));
  fopt->add_option("--lambda", olambda)->required();
  fopt->add_option("--r-lo", or_lo, "Bracket lower edge");
  fopt->add_option("--r-hi", or_hi, "Bracket upper edge (default: max(3, lambda + 1.5))");
  fopt->add_option("--tol", otol, "Bracket width at convergence");
  fopt->add_option("--out", oout);
  fopt->callback(
      [&] { action = [&] { return run_fidelity_opt(on, om, olambda, or_lo, or_hi, otol, oout); }; });

  // fidelity-sweep
  int sn = 0, sm = 0;
  std::string slgrid, srgrid, sformat = "csv", sout;
  auto* fsw = app.add_subcommand("fidelity-sweep", "Fidelity over a lambda x r grid");
  fsw->fallthrough();
  fsw->add_option("--n", sn)->required()->check(CLI::Range(0, 256));
  fsw->add_option("--m", sm)->required()->check(CLI::Range(0, 256));
  fsw->add_option("--lambda-grid", slgrid, "lo:hi:steps or comma list")->required();
  fsw->add_option("--r-grid", srgrid, "lo:hi:steps or comma list")->required();
  fsw->add_option("--format", sformat)->check(CLI::IsMember({"csv", "json"}));
  fsw->add_option("--out", sout);
  fsw->callback([&] {
    action = [&] { return run_fidelity_sweep(sn, sm, slgrid, srgrid, threads, sformat, sout); };
  });

  // verify
  std::string vsuite = "all";
  double vtol = 1e-7;
  int vdim = 0;
  auto* ver = app.add_subcommand("verify", "Cross-check closed forms against the Fock oracle");
  ver->fallthrough();
  ver->add_option("--suite", vsuite)
      ->check(CLI::IsMember({"all", "wigner", "pnd", "moments", "nongauss", "fidelity"}));
  ver->add_option("--fock-dim", vdim, "Override oracle truncation");
  ver->add_option("--tol", vtol, "Relative equivalence tolerance");
  ver->callback([&] { action = [&] { return run_verify_cmd(vsuite, vtol, vdim); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    return action();
  } catch (const esvs::DegreeOverflowError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const esvs::DomainError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const esvs::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}

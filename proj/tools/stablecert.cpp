// stablecert: verification harness for the stable-mixture entropy library.
// Subcommands evaluate densities, certify the dominating-function bounds on
// grids, compute mixture entropies and their dispersion derivative, and
// cross-check everything against a Monte Carlo oracle.  Reports land under
// <out>/<suite>/<alpha>_<eta or b>.json (plus a CSV projection on request).

#include <cmath>
#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sas/bounds.hpp"
#include "sas/density_table.hpp"
#include "sas/mc.hpp"
#include "sas/mixture.hpp"
#include "sas/report_io.hpp"
#include "sas/source_dist.hpp"
#include "sas/specfun.hpp"
#include "sas/stable_density.hpp"

namespace {

using nlohmann::json;
using sas::report_io::format_double;

struct Opts {
  std::vector<double> alphas;
  std::vector<double> etas{1.0};
  double b = 0.5;
  std::string source_path;
  std::string out = "out";
  std::string format = "json";
  double abs_tol = 1e-10;
  double u_min = -10.0, u_max = 10.0, u_step = 0.1;
  std::uint64_t seed = 20240611;
  std::size_t n_samples = 200000;
};

void add_common(CLI::App* cmd, Opts& o, bool needs_eta) {
  cmd->add_option("--alpha", o.alphas, "stability exponents, each in (0,2)")
      ->required();
  if (needs_eta) {
    cmd->add_option("--eta", o.etas, "dispersion values (> 0)");
  }
  cmd->add_option("--out", o.out, "report output directory");
  cmd->add_option("--format", o.format, "json|csv (csv adds a projection)")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--abs-tol", o.abs_tol, "quadrature absolute tolerance");
}

void check_opts(const Opts& o, bool needs_eta) {
  for (double a : o.alphas) {
    if (!(a > 0.0 && a < 2.0)) {
      throw CLI::ValidationError("--alpha", "alpha must lie in (0,2)");
    }
  }
  if (needs_eta) {
    if (o.etas.empty()) {
      throw CLI::ValidationError("--eta", "need at least one eta");
    }
    for (double e : o.etas) {
      if (!(e > 0.0)) {
        throw CLI::ValidationError("--eta", "eta must be positive");
      }
    }
  }
}

sas::SourceDistribution load_source(const Opts& o) {
  if (o.source_path.empty()) {
    return sas::SourceDistribution::atoms({{0.0, 1.0}});
  }
  try {
    return sas::SourceDistribution::load(o.source_path);
  } catch (const std::runtime_error& e) {
    throw std::invalid_argument(e.what());  // missing file is a config error
  }
}

sas::quad::QuadratureConfig quad_config(const Opts& o) {
  sas::quad::QuadratureConfig cfg;
  cfg.abs_tol = o.abs_tol;
  cfg.validate();
  return cfg;
}

std::string report_path(const Opts& o, const std::string& suite, double alpha,
                        double second) {
  return o.out + "/" + suite + "/" + format_double(alpha) + "_" +
         format_double(second) + ".json";
}

// CSV projection: fixed columns alpha,eta,y,value,bound,slack,pass.
struct CsvSink {
  std::vector<std::vector<std::string>> rows;
  void add(double alpha, double eta, double y, double value, double bound,
           double slack, bool pass) {
    rows.push_back({format_double(alpha), format_double(eta), format_double(y),
                    format_double(value), format_double(bound),
                    format_double(slack), pass ? "1" : "0"});
  }
  void write(const std::string& json_path) {
    std::string p = json_path;
    p.replace(p.rfind(".json"), 5, ".csv");
    sas::report_io::write_csv(
        p, {"alpha", "eta", "y", "value", "bound", "slack", "pass"}, rows);
  }
};

int run_pdf(const Opts& o, bool derivs) {
  bool all_pass = true;
  for (double alpha : o.alphas) {
    const auto table = sas::DensityTable::get(alpha);
    for (double eta : o.etas) {
      json pts = json::array();
      CsvSink csv;
      bool pass_here = true;
      const int n_orders = derivs ? 5 : 1;
      for (int n = 0; n < n_orders; ++n) {
        const double bound =
            sas::specfun::global_deriv_bound(alpha, n) *
            std::pow(eta, -(n + 1.0) / alpha);
        for (double u = o.u_min; u <= o.u_max + 1e-12; u += o.u_step) {
          double v;
          if (n == 0) {
            v = table->scaled_pdf(eta, u);
          } else {
            const double s = std::pow(eta, -1.0 / alpha);
            v = std::pow(s, n + 1.0) *
                sas::stable_evaluator(alpha).deriv(n, u * s);
          }
          const double slack = bound - std::fabs(v);
          // the bound is attained at u = 0, so allow rounding there
          const bool ok = slack >= -1e-9 * bound;
          pass_here = pass_here && ok;
          pts.push_back({{"n", n}, {"u", u}, {"value", v}, {"bound", bound}});
          csv.add(alpha, eta, u, v, bound, slack, ok);
        }
      }
      json rep = {{"suite", derivs ? "derivs" : "pdf"},
                  {"bound_id", "eq:uppcons"},
                  {"alpha", alpha},
                  {"eta", eta},
                  {"points", pts},
                  {"pass", pass_here}};
      const std::string path =
          report_path(o, derivs ? "derivs" : "pdf", alpha, eta);
      sas::report_io::write_json(path, rep);
      if (o.format == "csv") csv.write(path);
      all_pass = all_pass && pass_here;
    }
  }
  return all_pass ? 0 : 1;
}

json certify_bounds_for(double alpha, double b,
                        const sas::SourceDistribution& source,
                        bool* all_pass) {
  const sas::DispersionWindow window{b};
  const auto tc = sas::fitted_tail_constants(alpha);
  const auto spec = sas::build_envelope(alpha, window);
  const auto etas = sas::window_eta_grid(window);

  auto dom = sas::certify_domination(alpha, spec, etas, sas::domination_t_grid());

  const double y_med = sas::median_radius(source);
  const double y_lo =
      1.2 * std::max(10.0 * y_med,
                     tc.T * std::pow(2.0 * b, 1.0 / alpha) + y_med);
  auto qlow = sas::q_lower_bound_check(alpha, window, source,
                                       sas::log_grid(y_lo, 100.0 * y_lo, 200));

  const auto [S_b, L_b] = sas::envelope_integrals(spec, alpha);

  *all_pass = *all_pass && dom.pass && qlow.pass;
  return {{"alpha", alpha},
          {"window_b", b},
          {"tail_constants", tc.to_json()},
          {"envelope", spec.to_json()},
          {"S_b", S_b},
          {"L_b", L_b},
          {"domination", dom.to_json()},
          {"q_lower_bound", qlow.to_json()}};
}

int run_bounds(const Opts& o) {
  const auto source = load_source(o);
  bool all_pass = true;
  for (double alpha : o.alphas) {
    json rep = certify_bounds_for(alpha, o.b, source, &all_pass);
    rep["suite"] = "bounds";
    const std::string path = report_path(o, "bounds", alpha, o.b);
    sas::report_io::write_json(path, rep);
    if (o.format == "csv") {
      CsvSink csv;
      const auto& dom = rep["domination"];
      csv.add(alpha, dom["argmax_point"][0], dom["argmax_point"][1], 0.0, 0.0,
              dom["slack_min"], dom["pass"]);
      const auto& ql = rep["q_lower_bound"];
      csv.add(alpha, ql["argmax_point"][0], ql["argmax_point"][1], 0.0, 0.0,
              ql["slack_min"], ql["pass"]);
      csv.write(path);
    }
    if (!all_pass) {
      std::cerr << "bounds: certificate failed for alpha=" << alpha
                << " (see " << path << ")\n";
    }
  }
  return all_pass ? 0 : 1;
}

int run_entropy(const Opts& o) {
  const auto source = load_source(o);
  const auto cfg = quad_config(o);
  for (double alpha : o.alphas) {
    for (double eta : o.etas) {
      sas::MixtureModel model{{alpha, eta}, source};
      const auto rep = sas::entropy(model, cfg);
      json j = {{"suite", "entropy"}, {"alpha", alpha},
                {"eta", eta},         {"source", source.to_json()},
                {"abs_tol", cfg.abs_tol}, {"report", rep.to_json()}};
      const std::string path = report_path(o, "entropy", alpha, eta);
      sas::report_io::write_json(path, j);
      if (o.format == "csv") {
        CsvSink csv;
        csv.add(alpha, eta, 0.0, rep.h, rep.err_est, rep.err_est, true);
        csv.write(path);
      }
    }
  }
  return 0;
}

int run_debruijn(const Opts& o) {
  const auto source = load_source(o);
  const auto cfg = quad_config(o);
  bool all_pass = true;
  for (double alpha : o.alphas) {
    for (double eta : o.etas) {
      sas::MixtureModel model{{alpha, eta}, source};
      const auto rep = sas::fractional_fisher_J(model, cfg);
      const double tol = std::max(1e-4, 1e-3 * std::fabs(rep.J_identity));
      const bool pass = rep.abs_diff <= tol && std::fabs(rep.mass_derivative) <= 1e-6;
      all_pass = all_pass && pass;
      json j = {{"suite", "debruijn"},
                {"bound_id", "eq:final111"},
                {"alpha", alpha},
                {"eta", eta},
                {"source", source.to_json()},
                {"report", rep.to_json()},
                {"tolerance", tol},
                {"pass", pass}};
      const std::string path = report_path(o, "debruijn", alpha, eta);
      sas::report_io::write_json(path, j);
      if (o.format == "csv") {
        CsvSink csv;
        csv.add(alpha, eta, 0.0, rep.J_identity, rep.J_fd, rep.abs_diff, pass);
        csv.write(path);
      }
      if (!pass) {
        std::cerr << "debruijn: identity/fd mismatch for alpha=" << alpha
                  << " eta=" << eta << " (see " << path << ")\n";
      }
    }
  }
  return all_pass ? 0 : 1;
}

int run_mc(const Opts& o) {
  const auto source = load_source(o);
  const auto cfg = quad_config(o);
  bool all_pass = true;
  for (double alpha : o.alphas) {
    for (double eta : o.etas) {
      sas::MixtureModel model{{alpha, eta}, source};
      const auto quad_rep = sas::entropy(model, cfg);
      const auto mc_rep = sas::mc::mc_entropy(model, o.n_samples, o.seed);
      const double diff = std::fabs(mc_rep.h - quad_rep.h);
      const double tol = 3.0 * mc_rep.std_err + quad_rep.err_est;
      const bool pass = diff <= tol;
      all_pass = all_pass && pass;
      json j = {{"suite", "mc"},       {"alpha", alpha},
                {"eta", eta},          {"seed", o.seed},
                {"n", o.n_samples},    {"mc", mc_rep.to_json()},
                {"quadrature", quad_rep.to_json()}, {"abs_diff", diff},
                {"tolerance", tol},    {"pass", pass}};
      const std::string path = report_path(o, "mc", alpha, eta);
      sas::report_io::write_json(path, j);
      if (o.format == "csv") {
        CsvSink csv;
        csv.add(alpha, eta, 0.0, mc_rep.h, quad_rep.h, diff, pass);
        csv.write(path);
      }
      if (!pass) {
        std::cerr << "mc: estimator disagrees for alpha=" << alpha
                  << " eta=" << eta << " (see " << path << ")\n";
      }
    }
  }
  return all_pass ? 0 : 1;
}

int run_certify_all(const Opts& o) {
  const auto source = load_source(o);
  const auto cfg = quad_config(o);
  bool all_pass = true;
  for (double alpha : o.alphas) {
    json rep = certify_bounds_for(alpha, o.b, source, &all_pass);
    rep["suite"] = "certify-all";

    // Interchange-of-derivative check on a (y, eta) grid: the analytic
    // dispersion derivative must agree with a finite difference of q.
    const double eta_mid = 1.5 * o.b;
    {
      sas::MixtureModel model{{alpha, eta_mid}, source};
      double worst = 0.0, worst_y = 0.0;
      for (double y = -10.0; y <= 10.0 + 1e-12; y += 0.5) {
        const double d = sas::mixture_pdf_dispersion_deriv(model, y);
        const double step = 1e-5 * eta_mid;
        sas::MixtureModel up{{alpha, eta_mid + step}, source};
        sas::MixtureModel dn{{alpha, eta_mid - step}, source};
        const double fd =
            (sas::mixture_pdf(up, y) - sas::mixture_pdf(dn, y)) / (2.0 * step);
        const double err = std::fabs(d - fd) /
                           std::max(1e-8, 1e-5 * std::fabs(d));
        if (err > worst) {
          worst = err;
          worst_y = y;
        }
      }
      const bool pass = worst <= 1.0;
      all_pass = all_pass && pass;
      rep["interchange"] = {{"bound_id", "eq:lemt1"},
                            {"eta", eta_mid},
                            {"worst_ratio", worst},
                            {"argmax_y", worst_y},
                            {"pass", pass}};
    }

    {
      sas::MixtureModel model{{alpha, eta_mid}, source};
      const auto dbj = sas::fractional_fisher_J(model, cfg);
      const double tol = std::max(1e-4, 1e-3 * std::fabs(dbj.J_identity));
      const bool pass =
          dbj.abs_diff <= tol && std::fabs(dbj.mass_derivative) <= 1e-6;
      all_pass = all_pass && pass;
      json dj = dbj.to_json();
      dj["bound_id"] = "eq:final111";
      dj["eta"] = eta_mid;
      dj["tolerance"] = tol;
      dj["pass"] = pass;
      rep["debruijn"] = dj;
    }

    rep["pass"] = all_pass;
    const std::string path = report_path(o, "certify-all", alpha, o.b);
    sas::report_io::write_json(path, rep);
    if (!all_pass) {
      std::cerr << "certify-all: failure for alpha=" << alpha << " (see "
                << path << ")\n";
    }
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stable-mixture entropy verification harness"};
  app.require_subcommand(1);
  Opts o;

  auto* c_pdf = app.add_subcommand("pdf", "density values on a grid");
  auto* c_derivs = app.add_subcommand("derivs", "derivatives up to order 4");
  for (auto* c : {c_pdf, c_derivs}) {
    add_common(c, o, true);
    c->add_option("--umin", o.u_min);
    c->add_option("--umax", o.u_max);
    c->add_option("--ustep", o.u_step);
  }

  auto* c_bounds = app.add_subcommand("bounds", "certify dominating bounds");
  add_common(c_bounds, o, false);
  c_bounds->add_option("--b", o.b, "window lower endpoint; certifies (b, 2b)");
  c_bounds->add_option("--source", o.source_path, "source distribution JSON");

  auto* c_entropy = app.add_subcommand("entropy", "mixture entropy");
  auto* c_deb = app.add_subcommand("debruijn", "dh/deta identity vs FD");
  auto* c_mc = app.add_subcommand("mc", "Monte Carlo cross-check");
  for (auto* c : {c_entropy, c_deb, c_mc}) {
    add_common(c, o, true);
    c->add_option("--source", o.source_path, "source distribution JSON");
  }
  c_mc->add_option("--seed", o.seed, "PRNG seed");
  c_mc->add_option("--n", o.n_samples, "sample count");

  auto* c_all = app.add_subcommand("certify-all", "full certification run");
  add_common(c_all, o, false);
  c_all->add_option("--b", o.b, "window lower endpoint");
  c_all->add_option("--source", o.source_path, "source distribution JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const bool needs_eta = !(c_bounds->parsed() || c_all->parsed());
    check_opts(o, needs_eta);
    if (c_pdf->parsed()) return run_pdf(o, false);
    if (c_derivs->parsed()) return run_pdf(o, true);
    if (c_bounds->parsed()) return run_bounds(o);
    if (c_entropy->parsed()) return run_entropy(o);
    if (c_deb->parsed()) return run_debruijn(o);
    if (c_mc->parsed()) return run_mc(o);
    if (c_all->parsed()) return run_certify_all(o);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

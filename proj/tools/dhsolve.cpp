// dhsolve: command-line driver for the mean-field Dicke-Hubbard solver.
//
//   dhsolve solve    --lambda 0.5 --kappa 0.1 --nqubits 6
//   dhsolve sweep    --mode rwa --nqubits 2 --lambda-max 2 --kappa-max 0.2 --out grid.csv
//   dhsolve boundary --nqubits 48 --kappa-max 0.1 --kappa-points 11
//   dhsolve fs       --nqubits 12 --kappa 0.1 --lambda-min 0.2 --lambda-max 0.8
//   dhsolve analytic --what hp --kappa 0.1
//
// Every option may also come from --config <file> (key=value lines named like
// the long flags); flags on the command line override the file.
//
// Exit codes: 0 success, 2 invalid configuration, 3 unconverged points (the
// output is still written).

#include "dhub/analytic.hpp"
#include "dhub/io.hpp"
#include "dhub/observables.hpp"
#include "dhub/solver.hpp"
#include "dhub/sweep.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>

namespace {

using namespace dhub;

constexpr int kExitInvalid = 2;
constexpr int kExitUnconverged = 3;

struct Options {
  ModelParams params;
  std::string mode = "crt";
  int ntr_check = 0;
  std::string out;
  std::string format = "csv";
  int workers = 1;
  double lambda_min = 0.0, lambda_max = 2.0;
  int lambda_points = 81;
  double kappa_min = 0.0, kappa_max = 0.2;
  int kappa_points = 41;
  std::string axis2 = "kappa";
  std::vector<int> nqubits_list{2, 4, 6};
  bool cold = false;
  double threshold = 1e-3;
  int bisection = 6;
  double dlambda = 1e-3;
  std::string what = "hp";
  int n_max = 10;
};

std::vector<double> linspace(double lo, double hi, int points) {
  if (points < 1) throw InvalidParameter("points", "must be >= 1");
  if (points == 1) return {lo};
  std::vector<double> v(points);
  for (int i = 0; i < points; ++i) v[i] = lo + (hi - lo) * i / (points - 1);
  return v;
}

void deliver(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
  } else {
    write_text(o.out, text);
  }
}

void report_drift(const ModelParams& p, int extra) {
  if (extra <= 0) return;
  const double drift = truncation_drift(p, extra);
  std::cerr << "truncation check at lambda=" << p.lambda << " kappa=" << p.kappa << " N=" << p.n_qubits
            << ": |dE|/|E| = " << drift << " for Ntr " << p.n_trunc << " -> " << p.n_trunc + extra
            << (drift < p.tol_rel ? " (ok)" : " (EXCEEDS tol)") << "\n";
}

SweepConfig sweep_config(const Options& o, bool kappa_axis_only) {
  SweepConfig c;
  c.base = o.params;
  c.lambdas = linspace(o.lambda_min, o.lambda_max, o.lambda_points);
  c.workers = o.workers;
  c.warm_start = !o.cold;
  if (kappa_axis_only || o.axis2 == "kappa") {
    c.axis2 = SecondAxis::Kappa;
    c.axis2_values = linspace(o.kappa_min, o.kappa_max, o.kappa_points);
  } else if (o.axis2 == "nqubits") {
    c.axis2 = SecondAxis::NQubits;
    for (int n : o.nqubits_list) c.axis2_values.push_back(n);
  } else {
    throw InvalidParameter("axis2", "expected 'kappa' or 'nqubits'");
  }
  return c;
}

int run_solve(const Options& o) {
  const PointSolution s = solve_point(o.params, std::nullopt, true);
  const double rescaled = std::abs(s.psi) / std::sqrt(static_cast<double>(o.params.n_qubits));
  const Format fmt = format_from_string(o.format);
  const std::string hash = hash_hex("solve;" + canonical(o.params));
  SweepGrid single;
  single.axis1 = {o.params.lambda};
  single.axis2 = {o.params.kappa};
  single.cells.push_back({o.params.lambda, o.params.kappa, o.params.n_qubits, s.energy, s.psi, rescaled,
                          s.photon_number, s.converged, s.iterations});
  deliver(o, render(single, fmt, hash));
  std::cerr << "parity <P> = " << parity_expectation(s.bare) << "\n";
  report_drift(o.params, o.ntr_check);
  return s.converged ? 0 : kExitUnconverged;
}

int run_grid(const Options& o) {
  const SweepConfig c = sweep_config(o, false);
  const SweepGrid grid = run_sweep(c);
  deliver(o, render(grid, format_from_string(o.format), hash_hex("sweep;" + canonical(c))));
  for (std::size_t i2 = 0; i2 < c.axis2_values.size(); ++i2) {
    report_drift(point_params(c, i2, c.lambdas.back()), o.ntr_check);
  }
  return grid.unconverged() ? kExitUnconverged : 0;
}

int run_boundary(const Options& o) {
  const SweepConfig c = sweep_config(o, true);
  const SweepGrid grid = run_sweep(c);
  const BoundaryCurve curve = extract_boundary(grid, c, o.threshold, o.bisection);
  deliver(o, render(curve, format_from_string(o.format), hash_hex("boundary;" + canonical(c))));
  for (std::size_t i2 = 0; i2 < c.axis2_values.size(); ++i2) {
    report_drift(point_params(c, i2, c.lambdas.back()), o.ntr_check);
  }
  return grid.unconverged() ? kExitUnconverged : 0;
}

int run_fs(const Options& o) {
  const std::vector<double> lambdas = linspace(o.lambda_min, o.lambda_max, o.lambda_points);
  const FsCurve curve = fidelity_susceptibility_curve(o.params, lambdas, o.dlambda);
  std::ostringstream key;
  key << "fs;" << canonical(o.params) << ";range=" << o.lambda_min << ',' << o.lambda_max << ','
      << o.lambda_points << ";dlambda=" << o.dlambda;
  deliver(o, render(curve, format_from_string(o.format), hash_hex(key.str())));
  std::cerr << "FS peak at lambda = " << curve.peak_lambda << ", local maxima: " << local_maxima(curve).size()
            << "\n";
  ModelParams last = o.params;
  last.lambda = lambdas.back();
  report_drift(last, o.ntr_check);
  for (bool v : curve.valid) {
    if (!v) return kExitUnconverged;
  }
  return 0;
}

int run_analytic(const Options& o) {
  const std::string hash = hash_hex("analytic;" + o.what + ";" + canonical(o.params));
  std::string text = header_line(hash);
  char buf[160];
  if (o.what == "lobes") {
    const auto lobes = rwa_lobe_boundaries(o.params, o.n_max);
    text += "n,lambda_c\n";
    for (std::size_t n = 0; n < lobes.size(); ++n) {
      std::snprintf(buf, sizeof buf, "%zu,%.12g\n", n, lobes[n]);
      text += buf;
    }
  } else if (o.what == "spectrum") {
    const RwaSpectrumN2 s = rwa_spectrum_n2(o.params, o.n_max);
    text += "label,excitation,energy\n";
    for (const RwaLevel& l : s.levels) {
      std::snprintf(buf, sizeof buf, "\"%s\",%d,%.12g\n", l.label().c_str(), l.excitation, l.energy);
      text += buf;
    }
  } else if (o.what == "hp") {
    const HpResult r = hp_minimize(o.params);
    text += "kappa,lambda,lambda_c,alpha,beta,energy_per_site\n";
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n", o.params.kappa, o.params.lambda,
                  r.lambda_c, r.alpha, r.beta, r.energy_per_site);
    text += buf;
  } else {
    throw InvalidParameter("what", "expected 'lobes', 'spectrum' or 'hp'");
  }
  deliver(o, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mean-field Dicke-Hubbard ground states, phase boundaries and fidelity susceptibility"};
  app.set_config("--config", "", "key=value file with defaults for any long option");
  app.require_subcommand(1);

  Options o;
  ModelParams& p = o.params;
  app.add_option("--epsilon", p.epsilon, "qubit splitting")->capture_default_str();
  app.add_option("--omega0", p.omega0, "cavity frequency (energy unit)")->capture_default_str();
  app.add_option("--lambda", p.lambda, "qubit-cavity coupling")->capture_default_str();
  app.add_option("--kappa", p.kappa, "inter-site photon hopping")->capture_default_str();
  app.add_option("--z", p.z, "nearest-neighbour count")->capture_default_str();
  app.add_option("--nqubits", p.n_qubits, "qubits per cavity")->capture_default_str();
  app.add_option("--ntrunc", p.n_trunc, "photon truncation")->capture_default_str();
  app.add_option("--mode", o.mode, "coupling form")->check(CLI::IsMember({"crt", "rwa"}))->capture_default_str();
  app.add_option("--tol", p.tol_rel, "relative convergence threshold")->capture_default_str();
  app.add_option("--mixing", p.mixing, "fixed-point damping in (0,1]")->capture_default_str();
  app.add_option("--max-iters", p.max_iters, "iteration cap")->capture_default_str();
  app.add_option("--psi-scan-max", p.psi_scan_max, "upper end of the initial psi scan (<=0: automatic)")
      ->capture_default_str();
  app.add_option("--psi-scan-points", p.psi_scan_points, "points in the initial psi scan")->capture_default_str();
  app.add_option("--ntr-check", o.ntr_check, "re-solve with Ntr + this many levels and report the drift")
      ->capture_default_str();
  app.add_option("--out", o.out, "output file (default stdout)");
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--workers", o.workers, "worker threads for grids")->capture_default_str();
  app.add_option("--lambda-min", o.lambda_min)->capture_default_str();
  app.add_option("--lambda-max", o.lambda_max)->capture_default_str();
  auto* lambda_points = app.add_option("--lambda-points", o.lambda_points)->capture_default_str();
  app.add_option("--kappa-min", o.kappa_min)->capture_default_str();
  app.add_option("--kappa-max", o.kappa_max)->capture_default_str();
  app.add_option("--kappa-points", o.kappa_points)->capture_default_str();
  app.add_option("--axis2", o.axis2, "second grid axis")->check(CLI::IsMember({"kappa", "nqubits"}))
      ->capture_default_str();
  app.add_option("--nqubits-list", o.nqubits_list, "N values for --axis2 nqubits")->delimiter(',');
  app.add_flag("--cold", o.cold, "disable warm starts along lambda");
  app.add_option("--threshold", o.threshold, "onset threshold on |psi|/sqrt(N)")->capture_default_str();
  app.add_option("--bisection", o.bisection, "bisection steps refining each onset")->capture_default_str();
  app.add_option("--dlambda", o.dlambda, "fidelity step")->capture_default_str();
  app.add_option("--what", o.what, "analytic quantity")->check(CLI::IsMember({"lobes", "spectrum", "hp"}))
      ->capture_default_str();
  app.add_option("--nmax", o.n_max, "number of lobes / excitation cutoff")->capture_default_str();

  auto* solve = app.add_subcommand("solve", "self-consistent ground state at one point");
  auto* sweep = app.add_subcommand("sweep", "grid over (lambda, kappa) or (lambda, N)");
  auto* boundary = app.add_subcommand("boundary", "psi-onset boundary with the large-N overlay");
  auto* fs = app.add_subcommand("fs", "fidelity susceptibility along lambda");
  auto* analytic = app.add_subcommand("analytic", "closed-form lobes, N=2 spectrum, large-N minimizer");
  for (auto* sub : {solve, sweep, boundary, fs, analytic}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    p.coupling_form = coupling_form_from_string(o.mode);
    if (p.coupling_form == CouplingForm::RWA && lambda_points->count() == 0) o.lambda_points = 161;
    validate(p);
    format_from_string(o.format);
    if (*solve) return run_solve(o);
    if (*sweep) return run_grid(o);
    if (*boundary) return run_boundary(o);
    if (*fs) return run_fs(o);
    if (*analytic) return run_analytic(o);
  } catch (const InvalidParameter& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const NotApplicable& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const UnboundedEnergy& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

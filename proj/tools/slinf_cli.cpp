/* This file is part of slinf.
 *
 * Copyright (c) 2026 the slinf developers.
 * SPDX-License-Identifier: Apache-2.0
 *
 * Command-line surface over the library.  Curves go out as CSV,
 * certificates as JSON.  Exit codes: 0 pass, 1 certified failure,
 * 2 usage error.  Identical (command, flags, seed) gives byte-identical
 * output.
 */

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "slinf/slinf.hpp"

namespace {

using namespace slinf;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

/// Per-invocation configuration shared by all subcommands.
struct RunConfig {
  std::string command;
  std::uint64_t seed = 0;
  std::string output;  // empty = stdout
  // tolerance overrides; registered per command as --tol-<name> flags so
  // unknown names are rejected by the parser
  double tol_gram = kGramTol;
  double tol_slope = kSlopeTol;
  double tol_root_imag = kRootImagTol;
  double tol_reg = kRegTol;
};

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output, std::ios::binary);
  if (!out) throw io_error("cannot open output file: " + cfg.output);
  out << text;
}

std::vector<double> parse_double_list(const std::string& spec) {
  std::vector<double> out;
  std::string cell;
  std::istringstream ss(spec);
  while (std::getline(ss, cell, ',')) {
    if (cell.empty()) continue;
    out.push_back(detail::parse_double(cell));
  }
  return out;
}

Alpha parse_alpha(const std::string& spec) { return make_alpha(parse_double_list(spec)); }

std::vector<int> parse_int_list(const std::string& spec) {
  std::vector<int> out;
  for (double v : parse_double_list(spec)) out.push_back(static_cast<int>(v));
  return out;
}

/// "min:max:step" -> inclusive lambda grid.
std::vector<double> parse_range(const std::string& spec) {
  std::vector<std::string> parts;
  std::string cell;
  std::istringstream ss(spec);
  while (std::getline(ss, cell, ':')) parts.push_back(cell);
  if (parts.size() != 3) throw io_error("range must be min:max:step");
  const double lo = detail::parse_double(parts[0]);
  const double hi = detail::parse_double(parts[1]);
  const double step = detail::parse_double(parts[2]);
  if (!(step > 0.0) || hi < lo) throw io_error("range must satisfy min <= max, step > 0");
  std::vector<double> out;
  for (int k = 0;; ++k) {
    const double lam = lo + k * step;
    if (lam > hi + 1e-12) break;
    out.push_back(lam);
  }
  return out;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw io_error(std::string("invalid JSON in ") + path + ": " + e.what());
  }
  return j;
}

GroupElement load_element_or_g0(const std::string& path) {
  if (path.empty()) return canonical_g0();
  return element_from_json(load_json(path));
}

std::vector<GroupElement> seeded_elements(int num, int n, std::uint64_t seed) {
  std::vector<GroupElement> out;
  out.reserve(static_cast<std::size_t>(num));
  for (int i = 0; i < num; ++i)
    out.push_back(random_sl(n, derive_seed(seed, static_cast<std::uint64_t>(i))));
  return out;
}

// ---- subcommands ----

int cmd_eval_pi(const RunConfig& cfg, const std::string& alpha_spec,
                const std::string& range_spec, bool recovery_design) {
  const Alpha alpha = parse_alpha(alpha_spec);
  const std::vector<double> lambdas =
      recovery_design ? recovery_design_lambdas() : parse_range(range_spec);
  std::ostringstream os;
  os << "lambda,re,im,abs\n";
  for (double lam : lambdas) {
    const complexd v = pi_eval(alpha, lam);
    os << format_double(lam) << ',' << format_double(v.real()) << ','
       << format_double(v.imag()) << ',' << format_double(std::abs(v)) << '\n';
  }
  emit(cfg, os.str());
  return kExitPass;
}

int cmd_density(const RunConfig& cfg, const std::string& alpha_spec, double t_max,
                double step, bool check_ft) {
  const Alpha alpha = parse_alpha(alpha_spec);
  const DensityGrid grid = density_grid(alpha, t_max, step);
  std::ostringstream os;
  density_to_csv(grid, os);
  if (check_ft) {
    double worst = 0.0;
    for (int k = -300; k <= 300; ++k) {
      const double lam = k * 0.01;
      worst = std::max(worst, std::abs(char_function(grid, lam) - pi_eval(alpha, lam)));
    }
    os << "ft_max_residual," << format_double(worst) << '\n';
  }
  emit(cfg, os.str());
  return kExitPass;
}

int cmd_psd_check(const RunConfig& cfg, const std::string& alpha_spec, int n, int num,
                  bool flip_sign) {
  const Alpha alpha = parse_alpha(alpha_spec);
  const auto elements = seeded_elements(num, n, cfg.seed);
  const double sign = flip_sign ? -1.0 : 1.0;
  const auto f = [&alpha, sign](const GroupElement& g) {
    return sign * spherical_eval(alpha, g);
  };
  const GramReport report = psd_check(gram_matrix(f, elements), cfg.tol_gram);
  emit(cfg, gram_report_to_json(report).dump(2) + "\n");
  return report.passed ? kExitPass : kExitFail;
}

int cmd_spherical_limit(const RunConfig& cfg, const std::string& alpha_spec,
                        const std::string& x_path, const std::string& y_path,
                        const std::string& n_list_spec, int mc) {
  const Alpha alpha = parse_alpha(alpha_spec);
  const GroupElement x = load_element_or_g0(x_path);
  const GroupElement y = load_element_or_g0(y_path);
  const auto report =
      spherical_limit_test(alpha, x, y, parse_int_list(n_list_spec), mc, cfg.seed);
  std::ostringstream os;
  os << "n,estimate_re,estimate_im,target_re,target_im,abs_err,mc_stderr\n";
  for (const auto& row : report.rows) {
    os << row.n << ',' << format_double(row.estimate.real()) << ','
       << format_double(row.estimate.imag()) << ',' << format_double(row.target.real())
       << ',' << format_double(row.target.imag()) << ',' << format_double(row.abs_err)
       << ',' << format_double(row.mc_stderr) << '\n';
  }
  emit(cfg, os.str());
  return kExitPass;
}

int cmd_recover(const RunConfig& cfg, const std::string& samples_path,
                std::optional<int> p_hint, bool emit_design) {
  RecoveryOptions opt;
  opt.slope_tol = cfg.tol_slope;
  opt.root_imag_tol = cfg.tol_root_imag;

  if (emit_design) {
    std::ostringstream os;
    os << "lambda\n";
    for (double lam : recovery_design_lambdas(opt)) os << format_double(lam) << '\n';
    emit(cfg, os.str());
    return kExitPass;
  }

  std::ifstream in(samples_path);
  if (!in) throw io_error("cannot open samples file: " + samples_path);
  const ClassBSamples samples = samples_from_csv(in);

  // exact lookup oracle over the tabulated samples
  const auto oracle = [&samples](double lam) {
    for (std::size_t k = 0; k < samples.size(); ++k)
      if (std::abs(samples.lambdas[k] - lam) <= 1e-9) return samples.values[k];
    throw io_error("samples are missing the evaluation point lambda = " +
                   format_double(lam) +
                   "; generate them with eval-pi --recovery-design or see "
                   "recover --emit-design");
  };
  const Alpha rec = recover_alpha(oracle, p_hint, opt);
  emit(cfg, alpha_to_json(rec).dump() + "\n");
  return kExitPass;
}

/// psi from a measure file, with optional sign flip of the variable part.
std::function<complexd(const GroupElement&)> psi_from_measure(const MeasureFile& mf,
                                                              bool flip_sign) {
  const double sign = flip_sign ? -1.0 : 1.0;
  return [mf, sign](const GroupElement& g) {
    const complexd psi = synth_negative(mf.measure, mf.psi_at_e, g);
    return mf.psi_at_e + sign * (psi - mf.psi_at_e);
  };
}

int cmd_negtype_check(const RunConfig& cfg, const std::string& measure_path, int n, int num,
                      bool flip_sign) {
  const MeasureFile mf = measure_from_json(load_json(measure_path));
  const auto elements = seeded_elements(num, n, cfg.seed);
  const GramReport report =
      negtype_check(gram_matrix(psi_from_measure(mf, flip_sign), elements), cfg.tol_gram);
  emit(cfg, gram_report_to_json(report).dump(2) + "\n");
  return report.passed ? kExitPass : kExitFail;
}

int cmd_schoenberg(const RunConfig& cfg, const std::string& measure_path,
                   const std::string& t_list_spec, int n, int num, bool flip_sign) {
  const MeasureFile mf = measure_from_json(load_json(measure_path));
  const auto elements = seeded_elements(num, n, cfg.seed);
  const auto report = schoenberg_check(psi_from_measure(mf, flip_sign), elements,
                                       parse_double_list(t_list_spec), cfg.tol_gram);
  emit(cfg, schoenberg_report_to_json(report).dump(2) + "\n");
  return report.passed ? kExitPass : kExitFail;
}

int cmd_bound_check(const RunConfig& cfg, const std::string& measure_path, int n,
                    int num_samples) {
  const MeasureFile mf = measure_from_json(load_json(measure_path));
  const auto report =
      boundedness_check(mf.measure, mf.psi_at_e, n, num_samples, cfg.seed);
  emit(cfg, boundedness_report_to_json(report).dump(2) + "\n");
  return report.passed ? kExitPass : kExitFail;
}

int cmd_fit(const RunConfig& cfg, const std::string& measure_path,
            const std::string& samples_path, const std::string& grid_path, int count,
            int dim, bool negative) {
  json grid_json = load_json(grid_path);
  if (!grid_json.is_array() || grid_json.empty())
    throw io_error("grid must be a nonempty JSON array of alpha arrays");
  std::vector<Alpha> grid;
  for (const auto& a : grid_json) grid.push_back(alpha_from_json(a));

  std::vector<std::pair<GroupElement, complexd>> samples;
  double psi_at_e = 0.0;
  if (!measure_path.empty()) {
    // synthesize sample values from a known measure on a low-discrepancy design
    const MeasureFile mf = measure_from_json(load_json(measure_path));
    psi_at_e = negative ? mf.psi_at_e : 0.0;
    for (const CartanProfile& prof : lowdisc_profiles(count, dim)) {
      GroupElement g = GroupElement::from_profile(prof);
      const complexd v = negative
                             ? synth_negative(mf.measure, mf.psi_at_e, prof) - mf.psi_at_e
                             : synth_positive(mf.measure, prof);
      samples.emplace_back(std::move(g), v);
    }
  } else if (!samples_path.empty()) {
    const json sj = load_json(samples_path);
    if (!sj.is_array()) throw io_error("samples must be a JSON array");
    for (const auto& row : sj) {
      GroupElement g = element_from_json(row.at("element"));
      const auto& v = row.at("value");
      samples.emplace_back(std::move(g),
                           complexd{v.at(0).get<double>(), v.at(1).get<double>()});
    }
  } else {
    throw io_error("fit needs --measure or --samples");
  }

  const FitResult fit = negative ? fit_negative_measure(samples, grid, cfg.tol_reg)
                                 : fit_measure(samples, grid, cfg.tol_reg);
  json out = measure_to_json(fit.measure, psi_at_e);
  out["residual"] = fit.residual;
  out["ill_conditioned"] = fit.ill_conditioned;
  out["converged"] = fit.converged;
  emit(cfg, out.dump(2) + "\n");
  return fit.converged ? kExitPass : kExitFail;
}

int cmd_bochner_synth(const RunConfig& cfg, const std::string& measure_path,
                      const std::string& profile_spec, const std::string& range_spec) {
  const MeasureFile mf = measure_from_json(load_json(measure_path));
  std::ostringstream os;
  if (!range_spec.empty()) {
    // curve over stress profiles diag(e^l, e^-l)
    os << "lambda,phi_re,phi_im,psi_re,psi_im\n";
    for (double lam : parse_range(range_spec)) {
      const CartanProfile prof(std::vector<double>{lam, -lam});
      const complexd phi = synth_positive(mf.measure, prof);
      const complexd psi = synth_negative(mf.measure, mf.psi_at_e, prof);
      os << format_double(lam) << ',' << format_double(phi.real()) << ','
         << format_double(phi.imag()) << ',' << format_double(psi.real()) << ','
         << format_double(psi.imag()) << '\n';
    }
  } else {
    if (profile_spec.empty()) throw io_error("bochner-synth needs --profile or --range");
    const CartanProfile prof(parse_double_list(profile_spec));
    const complexd phi = synth_positive(mf.measure, prof);
    const complexd psi = synth_negative(mf.measure, mf.psi_at_e, prof);
    const json j{{"phi", json::array({phi.real(), phi.imag()})},
                 {"psi", json::array({psi.real(), psi.imag()})},
                 {"psi_at_e", mf.psi_at_e}};
    os << j.dump(2) << '\n';
  }
  emit(cfg, os.str());
  return kExitPass;
}

int cmd_convergence_demo(const RunConfig& cfg, const std::string& n_list_spec,
                         double lambda_max, double step) {
  const Alpha limit = make_alpha({0.0});
  std::ostringstream os;
  os << "n,sup_distance\n";
  for (int n : parse_int_list(n_list_spec)) {
    if (n < 1) throw io_error("convergence-demo: n values must be >= 1");
    const double d =
        classb_sup_distance(make_alpha({1.0 / n}), limit, lambda_max, step);
    os << n << ',' << format_double(d) << '\n';
  }
  emit(cfg, os.str());
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"harmonic analysis on the Olshanski pair (SL(inf), SU(inf)): "
               "class-B spherical building blocks, Bochner synthesis, kernel "
               "certification"};
  app.require_subcommand(1);

  RunConfig cfg;

  // eval-pi
  std::string alpha_spec;
  std::string range_spec;
  bool recovery_design = false;
  auto* eval_pi = app.add_subcommand("eval-pi", "evaluate Pi(alpha, lambda) on a grid (CSV)");
  eval_pi->add_option("--alpha", alpha_spec, "comma-separated parameters; empty = trivial");
  auto* range_opt = eval_pi->add_option("--range", range_spec, "lambda grid min:max:step");
  eval_pi->add_flag("--recovery-design", recovery_design,
                    "evaluate on the parameter-recovery design instead of --range");
  eval_pi->add_option("--output,-o", cfg.output, "write to file instead of stdout");

  // density
  double t_max = 40.0;
  double grid_step = 0.01;
  bool check_ft = false;
  auto* density = app.add_subcommand("density", "sample the density of mu_alpha (CSV)");
  density->add_option("--alpha", alpha_spec, "comma-separated parameters, p >= 1")
      ->required();
  density->add_option("--t-max", t_max, "half-width of the t grid");
  density->add_option("--step", grid_step, "t grid step");
  density->add_flag("--check-ft", check_ft, "append the max Fourier residual line");
  density->add_option("--output,-o", cfg.output);

  // psd-check
  int dim_n = 6;
  int num_elements = 40;
  bool flip_sign = false;
  auto* psd = app.add_subcommand("psd-check",
                                 "certify the spherical Gram matrix of phi_alpha (JSON)");
  psd->add_option("--alpha", alpha_spec);
  psd->add_option("--n", dim_n, "matrix dimension");
  psd->add_option("--num", num_elements, "number of random elements");
  psd->add_option("--seed", cfg.seed);
  psd->add_flag("--flip-sign", flip_sign, "corrupt the kernel to exercise failure");
  psd->add_option("--tol-gram", cfg.tol_gram, "eigenvalue slack scale");
  psd->add_option("--output,-o", cfg.output);

  // spherical-limit
  std::string x_path;
  std::string y_path;
  std::string n_list_spec = "4,8,16,32";
  int mc = 4000;
  auto* slimit = app.add_subcommand(
      "spherical-limit", "Monte Carlo check of the spherical functional equation (CSV)");
  slimit->add_option("--alpha", alpha_spec);
  slimit->add_option("--x", x_path, "JSON element file (default diag(e, 1/e))");
  slimit->add_option("--y", y_path, "JSON element file (default diag(e, 1/e))");
  slimit->add_option("--n-list", n_list_spec, "ascending embedding dimensions");
  slimit->add_option("--mc", mc, "Haar draws per dimension");
  slimit->add_option("--seed", cfg.seed);
  slimit->add_option("--output,-o", cfg.output);

  // recover
  std::string samples_path;
  int p_hint_value = -1;
  bool emit_design = false;
  auto* recover = app.add_subcommand("recover",
                                     "recover alpha from class-B samples (JSON array)");
  auto* samples_opt = recover->add_option("--samples", samples_path,
                                          "CSV with columns lambda,re,im");
  recover->add_option("--p-hint", p_hint_value, "skip order detection");
  recover->add_flag("--emit-design", emit_design,
                    "print the lambdas the algorithm needs and exit");
  recover->add_option("--tol-slope", cfg.tol_slope);
  recover->add_option("--tol-root-imag", cfg.tol_root_imag);
  recover->add_option("--output,-o", cfg.output);

  // negtype-check
  std::string measure_path;
  auto* negtype = app.add_subcommand("negtype-check",
                                     "certify negative type of a synthesized psi (JSON)");
  negtype->add_option("--measure", measure_path, "measure JSON file")->required();
  negtype->add_option("--n", dim_n);
  negtype->add_option("--num", num_elements);
  negtype->add_option("--seed", cfg.seed);
  negtype->add_flag("--flip-sign", flip_sign);
  negtype->add_option("--tol-gram", cfg.tol_gram);
  negtype->add_option("--output,-o", cfg.output);

  // schoenberg
  std::string t_list_spec = "0.1,1,10";
  auto* schoenberg = app.add_subcommand(
      "schoenberg", "joint Schoenberg certificate: e^{-t psi} PSD and psi negative type");
  schoenberg->add_option("--measure", measure_path)->required();
  schoenberg->add_option("--t-list", t_list_spec, "comma-separated positive t values");
  schoenberg->add_option("--n", dim_n);
  schoenberg->add_option("--num", num_elements);
  schoenberg->add_option("--seed", cfg.seed);
  schoenberg->add_flag("--flip-sign", flip_sign);
  schoenberg->add_option("--tol-gram", cfg.tol_gram);
  schoenberg->add_option("--output,-o", cfg.output);

  // bound-check
  int num_samples = 50;
  auto* bound = app.add_subcommand("bound-check",
                                   "certify boundedness of a synthesized psi (JSON)");
  bound->add_option("--measure", measure_path)->required();
  bound->add_option("--n", dim_n);
  bound->add_option("--num-samples", num_samples);
  bound->add_option("--seed", cfg.seed);
  bound->add_option("--output,-o", cfg.output);

  // fit
  std::string grid_path;
  std::string fit_samples_path;
  int fit_count = 60;
  int fit_dim = 6;
  bool fit_negative = false;
  auto* fit = app.add_subcommand("fit", "recover a representing measure by NNLS (JSON)");
  fit->add_option("--measure", measure_path,
                  "true measure to synthesize samples from (roundtrip mode)");
  fit->add_option("--samples", fit_samples_path,
                  "JSON array of {element, value} pairs");
  fit->add_option("--grid", grid_path, "JSON array of candidate alpha atoms")->required();
  fit->add_option("--count", fit_count, "design size in roundtrip mode");
  fit->add_option("--dim", fit_dim, "profile dimension in roundtrip mode");
  fit->add_flag("--negative", fit_negative, "fit the 1 - phi model to psi - psi(e) data");
  fit->add_option("--tol-reg", cfg.tol_reg, "NNLS gradient stopping tolerance");
  fit->add_option("--output,-o", cfg.output);

  // bochner-synth
  std::string profile_spec;
  auto* synth = app.add_subcommand("bochner-synth",
                                   "evaluate the synthesized phi and psi of a measure");
  synth->add_option("--measure", measure_path)->required();
  synth->add_option("--profile", profile_spec, "zero-sum profile, e.g. \"1,-1\" (JSON out)");
  synth->add_option("--range", range_spec,
                    "lambda range min:max:step over diag(e^l, e^-l) (CSV out)");
  synth->add_option("--output,-o", cfg.output);

  // convergence-demo
  std::string demo_n_list = "1,2,5,10,20,50,100,200,500,1000";
  double demo_lambda_max = 3.0;
  double demo_step = 0.01;
  auto* demo = app.add_subcommand(
      "convergence-demo", "sup distances of Pi((1/n,), .) to Pi((0,), .) (CSV)");
  demo->add_option("--n-list", demo_n_list);
  demo->add_option("--lambda-max", demo_lambda_max);
  demo->add_option("--step", demo_step);
  demo->add_option("--output,-o", cfg.output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (app.got_subcommand(eval_pi)) {
      if (!recovery_design && range_opt->count() == 0)
        throw io_error("eval-pi needs --range or --recovery-design");
      cfg.command = "eval-pi";
      return cmd_eval_pi(cfg, alpha_spec, range_spec, recovery_design);
    }
    if (app.got_subcommand(density)) {
      cfg.command = "density";
      return cmd_density(cfg, alpha_spec, t_max, grid_step, check_ft);
    }
    if (app.got_subcommand(psd)) {
      cfg.command = "psd-check";
      return cmd_psd_check(cfg, alpha_spec, dim_n, num_elements, flip_sign);
    }
    if (app.got_subcommand(slimit)) {
      cfg.command = "spherical-limit";
      return cmd_spherical_limit(cfg, alpha_spec, x_path, y_path, n_list_spec, mc);
    }
    if (app.got_subcommand(recover)) {
      cfg.command = "recover";
      if (!emit_design && samples_opt->count() == 0)
        throw io_error("recover needs --samples or --emit-design");
      std::optional<int> p_hint;
      if (p_hint_value >= 0) p_hint = p_hint_value;
      return cmd_recover(cfg, samples_path, p_hint, emit_design);
    }
    if (app.got_subcommand(negtype)) {
      cfg.command = "negtype-check";
      return cmd_negtype_check(cfg, measure_path, dim_n, num_elements, flip_sign);
    }
    if (app.got_subcommand(schoenberg)) {
      cfg.command = "schoenberg";
      return cmd_schoenberg(cfg, measure_path, t_list_spec, dim_n, num_elements,
                            flip_sign);
    }
    if (app.got_subcommand(bound)) {
      cfg.command = "bound-check";
      return cmd_bound_check(cfg, measure_path, dim_n, num_samples);
    }
    if (app.got_subcommand(fit)) {
      cfg.command = "fit";
      return cmd_fit(cfg, measure_path, fit_samples_path, grid_path, fit_count, fit_dim,
                     fit_negative);
    }
    if (app.got_subcommand(synth)) {
      cfg.command = "bochner-synth";
      return cmd_bochner_synth(cfg, measure_path, profile_spec, range_spec);
    }
    if (app.got_subcommand(demo)) {
      cfg.command = "convergence-demo";
      return cmd_convergence_demo(cfg, demo_n_list, demo_lambda_max, demo_step);
    }
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const validation_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    // computational failures (ambiguous order, non-real spectrum, ...)
    std::cerr << "error: " << e.what() << '\n';
    std::cout << json{{"error", e.what()}}.dump(2) << '\n';
    return kExitFail;
  }
  return kExitUsage;
}

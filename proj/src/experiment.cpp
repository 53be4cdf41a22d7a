#include "tfcalc/experiment.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>

#include "tfcalc/gabor.hpp"
#include "tfcalc/io.hpp"
#include "tfcalc/psido.hpp"
#include "tfcalc/sjostrand.hpp"
#include "tfcalc/transforms.hpp"

namespace tfcalc {

namespace {

using json = nlohmann::ordered_json;

struct Checker {
  json items = json::array();
  bool all_pass = true;

  void check(const std::string& name, double residual, double tol) {
    bool ok = std::isfinite(residual) && residual <= tol;
    all_pass = all_pass && ok;
    items.push_back({{"name", name},
                     {"residual", residual},
                     {"tolerance", tol},
                     {"pass", ok}});
  }
  void expected_negative(const std::string& name, const std::string& note) {
    items.push_back({{"name", name},
                     {"expected_negative", true},
                     {"note", note},
                     {"pass", true}});
  }
};

Signal make_window(const ExperimentConfig& c, const Group& g) {
  Signal w = [&] {
    switch (c.window) {
      case WindowKind::delta: return delta(g);
      case WindowKind::subgroup: return subgroup_indicator(Lattice(g, c.window_steps));
      case WindowKind::gaussian: return gaussian_like(g);
      case WindowKind::csv: return load_signal_csv(c.window_path, g);
    }
    throw std::logic_error("window kind");
  }();
  if (w.data().isZero(0.0))
    throw std::invalid_argument("config: the configured window is identically zero");
  return w;
}

Weight make_weight_on(const ExperimentConfig& c, const Group& target) {
  if (c.weight == WeightFamily::polynomial) return Weight::polynomial(target, c.weight_s);
  return Weight::subexponential(target, c.weight_a, c.weight_b);
}

Symbol make_symbol(const ExperimentConfig& c, const Group& g, std::mt19937_64& rng,
                   bool want_invertible) {
  switch (c.symbol) {
    case SymbolKind::identity: return identity_symbol(g);
    case SymbolKind::shift: {
      std::vector<int> pos(c.symbol_shift.begin(),
                           c.symbol_shift.begin() + static_cast<long>(g.dim()));
      std::vector<int> freq(c.symbol_shift.begin() + static_cast<long>(g.dim()),
                            c.symbol_shift.end());
      return shift_symbol(g, g.index(pos), g.index(freq));
    }
    case SymbolKind::random:
      return want_invertible ? well_conditioned_symbol(g, c.symbol_decay, 0.5, rng)
                             : random_decaying_symbol(g, c.symbol_decay, rng);
    case SymbolKind::csv: return load_symbol_csv(c.symbol_path, g);
  }
  throw std::logic_error("symbol kind");
}

// Least-squares slope of log h against the index metric; returns the decay
// rate (positive for decaying envelopes).
double envelope_decay_rate(const Group& g, const std::vector<double>& h) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (std::size_t k = 0; k < h.size(); ++k) {
    if (h[k] <= 1e-14) continue;
    double x = g.metric(k), y = std::log(h[k]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++n;
  }
  if (n < 2) return 0.0;
  double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-30) return 0.0;
  return -(n * sxy - sx * sy) / denom;
}

json vec_json(const std::vector<double>& v) { return json(v); }

// ---------------------------------------------------------------- identities

json run_identities(const ExperimentConfig& c, Checker& ck) {
  Group g(c.moduli);
  const std::size_t n = g.order();
  const Group space = phase_space(g);
  std::mt19937_64 rng(c.seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<std::size_t> pick_phase(0, space.order() - 1);

  double r_plancherel = 0, r_comm = 0, r_stftft = 0, r_cov = 0, r_c1 = 0;
  double r_riha = 0, r_wdstft = 0, r_moyal = 0, r_kohnriha = 0, r_key = 0;
  double r_compose = 0, r_kn_rt = 0, r_spread_rt = 0, r_spread_rec = 0;

  for (int t = 0; t < c.trials; ++t) {
    Signal f = random_signal(g, rng), h = random_signal(g, rng);
    Signal f2 = random_signal(g, rng), h2 = random_signal(g, rng);

    r_plancherel = std::max(r_plancherel, plancherel_residual(f));
    r_comm = std::max(r_comm, commutation_residual(f, pick(rng), pick(rng)));
    r_stftft = std::max(r_stftft, stft_fourier_residual(f, h));
    r_cov = std::max(r_cov, stft_covariance_residual(f, h, pick(rng), pick(rng),
                                                     pick(rng), pick(rng)));
    r_c1 = std::max(r_c1, stft_product_fourier_check(f, f2, h, h2));
    r_riha = std::max(r_riha,
                      rihaczek_covariance_residual(f, h, pick_phase(rng), pick_phase(rng)));
    r_moyal = std::max(r_moyal, moyal_residual(f, h));

    for (int s = 0; s < 8; ++s) {
      std::size_t x = pick_phase(rng), w = pick_phase(rng);
      cd direct = stft_of_rihaczek_direct(f, h, f2, h2, x, w);
      cd closed = stft_of_rihaczek_closed(f, h, f2, h2, x, w);
      r_wdstft = std::max(r_wdstft, std::abs(direct - closed));
    }

    Symbol sigma = random_decaying_symbol(g, c.symbol_decay, rng);
    // <K_sigma f, h> = <sigma, R(h, f)>
    cd lhs = inner(kn_apply(sigma, f), h);
    cd rhs = inner(sigma.data(), rihaczek(h, f));
    r_kohnriha = std::max(r_kohnriha, std::abs(lhs - rhs));

    // key identity: <K_sigma pi(b) f, pi(a) h> against the phase-space STFT of
    // sigma with window R(h, f).
    PhaseFunction rhf = rihaczek(h, f);
    for (int s = 0; s < 8; ++s) {
      std::size_t a = pick_phase(rng), b = pick_phase(rng);
      Signal pf = tf_shift(f, b / n, b % n);
      Signal ph = tf_shift(h, a / n, a % n);
      cd left = inner(kn_apply(sigma, pf), ph);
      std::size_t eval = (a / n) * n + (b % n);  // (output position, input frequency)
      cd right = std::conj(g.character(b % n, g.sub(a / n, b / n))) *
                 phase_stft_point(sigma.data(), rhf, eval, j_map(g, space.sub(b, a)));
      r_key = std::max(r_key, std::abs(left - right));
    }

    Symbol tau = random_decaying_symbol(g, c.symbol_decay, rng);
    Mat prod = kn_matrix(sigma).mat * kn_matrix(tau).mat;
    r_compose = std::max(
        r_compose, (kn_matrix(compose(sigma, tau)).mat - prod).cwiseAbs().maxCoeff());

    r_kn_rt = std::max(r_kn_rt,
                       max_abs_diff(kn_symbol_from_matrix(kn_matrix(sigma)).data(),
                                    sigma.data()));
    r_spread_rt = std::max(r_spread_rt,
                           max_abs_diff(symbol_from_spreading(spreading(sigma)).data(),
                                        sigma.data()));

    if (t < 3) {
      // Spreading reconstruction: K_sigma = (1/|G|) sum sigma^(w,u) M_w T_{-u}.
      SpreadingFunction sp = spreading(sigma);
      Mat rec = Mat::Zero(n, n);
      for (std::size_t w = 0; w < n; ++w) {
        for (std::size_t u = 0; u < n; ++u) {
          cd coeff = sp.data().at(w, u) / static_cast<double>(n);
          for (std::size_t x = 0; x < n; ++x) {
            rec(static_cast<Eigen::Index>(x),
                static_cast<Eigen::Index>(g.add(x, u))) += coeff * g.character(w, x);
          }
        }
      }
      r_spread_rec = std::max(
          r_spread_rec, (rec - kn_matrix(sigma).mat).cwiseAbs().maxCoeff());
    }
  }

  const double tol = c.tol_identity;
  ck.check("plancherel", r_plancherel, tol);
  ck.check("commutation", r_comm, tol);
  ck.check("stft_fourier", r_stftft, tol);
  ck.check("stft_covariance", r_cov, tol);
  ck.check("stft_product_fourier", r_c1, tol);
  ck.check("rihaczek_covariance", r_riha, tol);
  ck.check("stft_of_rihaczek", r_wdstft, tol);
  ck.check("moyal", r_moyal, tol);
  ck.check("kn_rihaczek_pairing", r_kohnriha, tol);
  ck.check("kn_key_identity", r_key, tol);
  ck.check("composition", r_compose, tol);
  ck.check("kn_matrix_round_trip", r_kn_rt, tol);
  ck.check("spreading_round_trip", r_spread_rt, tol);
  ck.check("spreading_reconstruction", r_spread_rec, tol);

  json out;
  out["trials"] = c.trials;
  return out;
}

// -------------------------------------------------------------------- frames

json run_frames(const ExperimentConfig& c, Checker& ck) {
  Group g(c.moduli);
  std::mt19937_64 rng(c.seed);
  GaborSystem sys(make_window(c, g), Lattice(phase_space(g), c.lattice_steps));
  FrameDiagnostics d = sys.frame_bounds();

  json out;
  out["lower_bound"] = d.lower;
  out["upper_bound"] = d.upper;
  out["is_frame"] = d.is_frame;
  out["is_tight"] = d.is_tight;
  out["redundancy"] = d.redundancy;

  // Adjointness of analysis/synthesis holds frame or not.
  double r_adjoint = 0;
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int t = 0; t < std::min(c.trials, 10); ++t) {
    Signal f = random_signal(g, rng);
    Vec coeff(static_cast<Eigen::Index>(sys.lattice().size()));
    for (Eigen::Index i = 0; i < coeff.size(); ++i) coeff[i] = cd(gauss(rng), gauss(rng));
    cd a = inner(sys.synthesis(coeff), f);
    cd b = coeff.dot(sys.analysis(f));  // <c, Cf> with Eigen conjugating c
    r_adjoint = std::max(r_adjoint, std::abs(a - std::conj(b)));
  }
  ck.check("analysis_synthesis_adjoint", r_adjoint, 1e-12);

  if (!d.is_frame) {
    ck.expected_negative("frame_property",
                         "not a frame (lower bound at zero); tight-window, duality and "
                         "domination checks skipped");
    return out;
  }

  Signal tight = sys.tight_window();
  GaborSystem tight_sys(tight, sys.lattice());
  FrameDiagnostics td = tight_sys.frame_bounds();
  out["tight_lower"] = td.lower;
  out["tight_upper"] = td.upper;
  ck.check("tight_lower_bound", std::abs(td.lower - 1.0), c.tol_tight);
  ck.check("tight_upper_bound", std::abs(td.upper - 1.0), c.tol_tight);

  Signal dual = sys.dual_window();
  GaborSystem dual_sys(dual, sys.lattice());
  double r_rec = 0;
  for (int t = 0; t < std::min(c.trials, 10); ++t) {
    Signal f = random_signal(g, rng);
    Signal rec = sys.synthesis(dual_sys.analysis(f));
    r_rec = std::max(r_rec, max_abs_diff(rec, f));
  }
  ck.check("dual_reconstruction", r_rec, c.tol_identity);

  // S commutes with lattice time-frequency shifts.
  Mat s = sys.frame_operator();
  const std::size_t n = g.order();
  double r_comm = 0;
  for (std::size_t k = 0; k < sys.lattice().size(); ++k) {
    std::size_t m = sys.lattice().point(k);
    Mat pm = Mat::Zero(n, n);
    for (std::size_t x = 0; x < n; ++x) {
      pm(static_cast<Eigen::Index>(g.add(x, m / n)), static_cast<Eigen::Index>(x)) =
          g.character(m % n, g.add(x, m / n));
    }
    r_comm = std::max(r_comm, (s * pm - pm * s).cwiseAbs().maxCoeff());
  }
  ck.check("frame_operator_commutes", r_comm, c.tol_identity);

  return out;
}

// --------------------------------------------------------------- almost-diag

json run_almost_diag(const ExperimentConfig& c, Checker& ck) {
  Group g(c.moduli);
  std::mt19937_64 rng(c.seed);
  GaborSystem raw(make_window(c, g), Lattice(phase_space(g), c.lattice_steps));
  FrameDiagnostics d = raw.frame_bounds();

  json out;
  out["is_frame"] = d.is_frame;
  out["redundancy"] = d.redundancy;

  bool tight = d.is_frame;
  GaborSystem sys = tight ? GaborSystem(raw.tight_window(), raw.lattice()) : raw;
  const Weight v = make_weight_on(c, phase_space(g));
  const Weight vl = v.restrict_to(sys.lattice());

  double r_domination = 0, r_cont = 0;
  double equiv_min = std::numeric_limits<double>::infinity(), equiv_max = 0;
  Envelope last_h{sys.lattice().index_group(), {}, 0};
  std::vector<double> last_cv;
  Envelope last_rev{sys.lattice().index_group(), {}, 0};
  double mass_sum = 0, rev_mass_sum = 0, decay_sum = 0;

  std::vector<double> alpha = window_autocorrelation(sys);

  for (int t = 0; t < c.trials; ++t) {
    Symbol sigma = make_symbol(c, g, rng, false);
    GaborMatrix m = gabor_matrix(sigma, sys);
    Envelope h = almost_diag_envelope(sigma, sys, v);
    r_domination = std::max(r_domination, domination_defect(m, h));

    Envelope cont = continuous_envelope(sigma, sys.window(), v);
    double nrm = sjostrand_norm(sigma, rihaczek(sys.window(), sys.window()), v);
    r_cont = std::max(r_cont, std::abs(cont.weighted_mass - nrm));

    double cvn = cv_norm(m.entries, sys.lattice().index_group(), vl);
    if (nrm > 1e-14) {
      equiv_min = std::min(equiv_min, cvn / nrm);
      equiv_max = std::max(equiv_max, cvn / nrm);
    }

    last_h = h;
    last_cv = cv_envelope(m.entries, sys.lattice().index_group());
    last_rev = reverse_envelope(h, alpha, vl);
    mass_sum += h.weighted_mass;
    rev_mass_sum += last_rev.weighted_mass;
    decay_sum += envelope_decay_rate(sys.lattice().index_group(), h.h);
  }

  ck.check("entrywise_domination", r_domination, c.tol_identity);
  ck.check("continuous_envelope_mass_vs_norm", r_cont, c.tol_identity);

  if (tight) {
    // pi(u) g expands over the frame for every u in the fundamental domain.
    double r_expand = 0;
    const std::size_t n = g.order();
    for (std::size_t u : sys.lattice().fundamental_domain()) {
      Signal shifted = tf_shift(sys.window(), u / n, u % n);
      Signal rec = sys.synthesis(sys.analysis(shifted));
      r_expand = std::max(r_expand, max_abs_diff(rec, shifted));
    }
    ck.check("tf_shift_expansion", r_expand, c.tol_identity);
  } else {
    double r_expand = 0;
    const std::size_t n = g.order();
    for (std::size_t u : sys.lattice().fundamental_domain()) {
      Signal shifted = tf_shift(sys.window(), u / n, u % n);
      Signal rec = sys.synthesis(sys.analysis(shifted));
      r_expand = std::max(r_expand, max_abs_diff(rec, shifted));
    }
    std::ostringstream note;
    note << "not a frame: reconstruction step of the reverse direction fails, "
            "observed expansion violation " << r_expand;
    ck.expected_negative("tf_shift_expansion", note.str());
    out["expansion_violation"] = r_expand;
  }

  out["mean_envelope_mass"] = mass_sum / c.trials;
  out["mean_reverse_mass"] = rev_mass_sum / c.trials;
  out["mean_decay_rate"] = decay_sum / c.trials;
  out["cv_vs_sjostrand_min"] = equiv_min;
  out["cv_vs_sjostrand_max"] = equiv_max;
  out["envelopes"] = {
      {"index_group", sys.lattice().index_group().moduli()},
      {"h", vec_json(last_h.h)},
      {"alpha", vec_json(alpha)},
      {"reverse", vec_json(last_rev.h)},
      {"gabor_matrix", vec_json(last_cv)},
      {"weight", vec_json(vl.values())},
  };
  return out;
}

// -------------------------------------------------------------------- wiener

json run_wiener(const ExperimentConfig& c, Checker& ck) {
  Group g(c.moduli);
  std::mt19937_64 rng(c.seed);
  GaborSystem raw(make_window(c, g), Lattice(phase_space(g), c.lattice_steps));
  FrameDiagnostics d = raw.frame_bounds();
  if (!d.is_frame)
    throw std::invalid_argument("wiener experiment: the configured system is not a frame");
  GaborSystem sys(raw.tight_window(), raw.lattice());
  const Weight v = make_weight_on(c, phase_space(g));

  json out;
  out["redundancy"] = d.redundancy;

  double r_inv = 0, r_pinv = 0, r_mp = 0;
  double cond_max = 0;
  double sig_nrm = 0, tau_nrm = 0, sig_cv = 0, tau_cv = 0;
  double equiv_min = std::numeric_limits<double>::infinity(), equiv_max = 0;
  std::vector<double> last_sigma_env, last_tau_env;
  double tau_decay = 0;

  for (int t = 0; t < c.trials; ++t) {
    Symbol sigma = make_symbol(c, g, rng, true);
    WienerReport r = wiener_experiment(sigma, sys, v, c.tol_rank);
    r_inv = std::max(r_inv, r.inverse_residual);
    r_pinv = std::max(r_pinv, r.pinv_residual);
    r_mp = std::max(r_mp, r.mp_residual);
    cond_max = std::max(cond_max, r.condition);
    sig_nrm += r.sigma_sjostrand;
    tau_nrm += r.tau_sjostrand;
    sig_cv += r.sigma_cv;
    tau_cv += r.tau_cv;
    if (r.sigma_sjostrand > 1e-14) {
      equiv_min = std::min(equiv_min, r.sigma_cv / r.sigma_sjostrand);
      equiv_max = std::max(equiv_max, r.sigma_cv / r.sigma_sjostrand);
    }
    last_sigma_env = r.sigma_envelope;
    last_tau_env = r.tau_envelope;
    tau_decay += envelope_decay_rate(sys.lattice().index_group(), r.tau_envelope);
  }

  ck.check("inverse_identity", r_inv, c.tol_identity);
  ck.check("gabor_matrix_pseudoinverse", r_pinv, c.tol_pinv);
  ck.check("moore_penrose", r_mp, c.tol_pinv);

  out["max_condition"] = cond_max;
  out["mean_sigma_sjostrand"] = sig_nrm / c.trials;
  out["mean_tau_sjostrand"] = tau_nrm / c.trials;
  out["mean_sigma_cv"] = sig_cv / c.trials;
  out["mean_tau_cv"] = tau_cv / c.trials;
  out["cv_vs_sjostrand_min"] = equiv_min;
  out["cv_vs_sjostrand_max"] = equiv_max;
  out["mean_tau_decay_rate"] = tau_decay / c.trials;
  const Weight vl = v.restrict_to(sys.lattice());
  out["envelopes"] = {
      {"index_group", sys.lattice().index_group().moduli()},
      {"sigma", vec_json(last_sigma_env)},
      {"tau", vec_json(last_tau_env)},
      {"weight", vec_json(vl.values())},
  };
  return out;
}

// ------------------------------------------------------------------ section6

json run_section6(const ExperimentConfig& c, Checker& ck) {
  Group g(c.moduli);
  std::mt19937_64 rng(c.seed);
  const Weight v = make_weight_on(c, g);
  PhaseFunction win_discrete = delta_tensor_one(g);
  PhaseFunction win_periodic = one_tensor_delta(g);
  Weight v_pos = position_weight(v);
  Weight v_freq = frequency_weight(v);

  double r_matrix = 0, r_norm_d = 0, r_conj = 0, r_norm_p = 0;
  double norm_sum = 0;

  Mat f = Mat::Zero(g.order(), g.order());
  for (std::size_t xi = 0; xi < g.order(); ++xi) {
    for (std::size_t x = 0; x < g.order(); ++x) {
      f(static_cast<Eigen::Index>(xi), static_cast<Eigen::Index>(x)) =
          std::conj(g.character(xi, x));
    }
  }
  Mat finv = Mat::Zero(g.order(), g.order());
  for (std::size_t x = 0; x < g.order(); ++x) {
    for (std::size_t xi = 0; xi < g.order(); ++xi) {
      finv(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(xi)) =
          g.character(xi, x) / static_cast<double>(g.order());
    }
  }

  for (int t = 0; t < c.trials; ++t) {
    Symbol sigma = make_symbol(c, g, rng, false);
    Mat k = kn_matrix(sigma).mat;

    Mat a = discrete_case_matrix(sigma);
    r_matrix = std::max(r_matrix, (a - k).cwiseAbs().maxCoeff());
    double cv_d = cv_norm(a, g, v);
    double sj_d = sjostrand_norm(sigma, win_discrete, v_pos);
    r_norm_d = std::max(r_norm_d, std::abs(cv_d - sj_d));
    norm_sum += cv_d;

    Mat b = periodic_case_matrix(sigma);
    r_conj = std::max(r_conj, (b - f * k * finv).cwiseAbs().maxCoeff());
    double cv_p = cv_norm(b, g, v);
    double sj_p = sjostrand_norm(sigma, win_periodic, v_freq);
    r_norm_p = std::max(r_norm_p, std::abs(cv_p - sj_p));
  }

  ck.check("discrete_matrix_equals_kn", r_matrix, c.tol_identity);
  ck.check("discrete_norm_identity", r_norm_d, 1e-12);
  ck.check("periodic_matrix_conjugation", r_conj, c.tol_identity);
  ck.check("periodic_norm_identity", r_norm_p, 1e-12);

  json out;
  out["mean_cv_norm"] = norm_sum / c.trials;
  return out;
}

json config_echo(const ExperimentConfig& c) {
  json j;
  j["name"] = c.name;
  j["moduli"] = c.moduli;
  j["lattice_steps"] = c.lattice_steps;
  j["window"] = to_string(c.window);
  j["weight"] = to_string(c.weight);
  j["weight_s"] = c.weight_s;
  j["weight_a"] = c.weight_a;
  j["weight_b"] = c.weight_b;
  j["symbol"] = to_string(c.symbol);
  j["symbol_decay"] = c.symbol_decay;
  j["kind"] = to_string(c.kind);
  j["seed"] = c.seed;
  j["trials"] = c.trials;
  return j;
}

}  // namespace

RunOutcome run_experiment(const ExperimentConfig& c) {
  validate(c);
  RunOutcome out;
  out.report["schema_version"] = 1;
  out.report["kind"] = to_string(c.kind);
  out.report["config"] = config_echo(c);

  Checker ck;
  try {
    json results;
    switch (c.kind) {
      case ExperimentKind::identities: results = run_identities(c, ck); break;
      case ExperimentKind::frames: results = run_frames(c, ck); break;
      case ExperimentKind::almost_diag: results = run_almost_diag(c, ck); break;
      case ExperimentKind::wiener: results = run_wiener(c, ck); break;
      case ExperimentKind::section6: results = run_section6(c, ck); break;
    }
    out.report["results"] = results;
  } catch (const RankAmbiguityError& e) {
    out.report["status"] = "aborted";
    out.report["abort_reason"] = e.what();
    out.aborted = true;
    out.pass = false;
    out.report["assertions"] = ck.items;
    return out;
  }
  out.report["assertions"] = ck.items;
  out.pass = ck.all_pass;
  out.report["status"] = out.pass ? "pass" : "fail";
  return out;
}

namespace {
void write_envelope_csv(const ExperimentConfig& c, const json& report) {
  if (c.envelope_path.empty()) return;
  if (!report.contains("results") || !report["results"].contains("envelopes")) return;
  const json& env = report["results"]["envelopes"];
  Group index_group(env["index_group"].get<std::vector<int>>());
  std::vector<std::pair<std::string, std::vector<double>>> cols;
  for (auto it = env.begin(); it != env.end(); ++it) {
    if (it.key() == "index_group") continue;
    cols.emplace_back(it.key(), it.value().get<std::vector<double>>());
  }
  save_series_csv(c.envelope_path, index_group, cols);
}
}  // namespace

int run_to_files(const ExperimentConfig& c) {
  RunOutcome out;
  try {
    out = run_experiment(c);
  } catch (const std::exception& e) {
    // Invalid config or failed precondition: diagnostic only, no partial report.
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  auto stamp = std::chrono::system_clock::now().time_since_epoch();
  out.report["timestamp"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(stamp).count();

  std::ofstream rep(c.report_path);
  rep << out.report.dump(2) << '\n';
  write_envelope_csv(c, out.report);

  if (out.aborted) return 2;
  return out.pass ? 0 : 1;
}

std::string sweep_csv(std::vector<ExperimentConfig> configs) {
  std::ostringstream out;
  out << "name,kind,moduli,lattice,redundancy,weight,weight_s,weight_a,weight_b,"
         "is_frame,lower_bound,upper_bound,sigma_sjostrand,tau_sjostrand,"
         "sigma_cv,tau_cv,equiv_min,equiv_max,decay_rate,max_residual,status\n";
  if (configs.empty()) return out.str();

  for (std::size_t i = 1; i < configs.size(); ++i) {
    if (configs[i].kind != configs[0].kind)
      throw std::invalid_argument("sweep: mixed experiment kinds");
  }

  for (const ExperimentConfig& c : configs) {
    RunOutcome r = run_experiment(c);
    const json& res = r.report.contains("results") ? r.report["results"] : json::object();
    auto get = [&](const char* key) -> std::string {
      if (res.contains(key)) return json(res[key]).dump();
      return "";
    };
    double max_res = 0;
    if (r.report.contains("assertions")) {
      for (const auto& a : r.report["assertions"]) {
        if (a.contains("residual")) max_res = std::max(max_res, a["residual"].get<double>());
      }
    }
    std::ostringstream moduli, lattice;
    for (std::size_t j = 0; j < c.moduli.size(); ++j)
      moduli << (j ? " " : "") << c.moduli[j];
    for (std::size_t j = 0; j < c.lattice_steps.size(); ++j)
      lattice << (j ? " " : "") << c.lattice_steps[j];

    out << c.name << ',' << to_string(c.kind) << ',' << moduli.str() << ','
        << lattice.str() << ',' << get("redundancy") << ',' << to_string(c.weight)
        << ',' << c.weight_s << ',' << c.weight_a << ',' << c.weight_b << ','
        << get("is_frame") << ',' << get("lower_bound") << ',' << get("upper_bound")
        << ',' << get("mean_sigma_sjostrand") << ',' << get("mean_tau_sjostrand") << ','
        << get("mean_sigma_cv") << ',' << get("mean_tau_cv") << ','
        << get("cv_vs_sjostrand_min") << ',' << get("cv_vs_sjostrand_max") << ','
        << (res.contains("mean_tau_decay_rate") ? get("mean_tau_decay_rate")
                                                : get("mean_decay_rate"))
        << ',' << max_res << ',' << r.report["status"].get<std::string>() << '\n';
  }
  return out.str();
}

}  // namespace tfcalc

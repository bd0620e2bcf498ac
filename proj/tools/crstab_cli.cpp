// crstab: reproducible experiment driver for the CR-sphere stability library.
//
// Subcommands: constants, verify-eigs, deficit, distance, flow, chain,
// local-cert, ratio, hls, split. Every run writes a JSON report carrying the
// full configuration; exit code 0 means all asserted inequalities passed,
// 1 means an assertion failed, 2 means a usage error.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>

#include <crstab/serialize.hpp>

using namespace crstab;

namespace {

struct RunConfig {
  std::string subcommand;
  int n = 1;
  int degree = 6;
  int exactness = -1;  // -1 = default for (n, degree)
  uint64_t seed = 987654321ULL;
  std::string field_expr;
  std::string out_path;
  std::string cache_dir;

  Json to_json() const {
    return Json{{"subcommand", subcommand}, {"n", n},       {"degree", degree},
                {"exactness", exactness},   {"seed", seed},  {"field", field_expr},
                {"out", out_path},          {"cache_dir", cache_dir}};
  }
};

// ---------------------------------------------------------------------------
// Field expression mini-language:
//   expr    := term (('+'|'-') term)*
//   term    := number ['*' atom] | atom
//   atom    := 'Y(' j ',' k ')' ['[' idx ']'] | 'extremal(' c ';' cplx {',' cplx} ')'
//   cplx    := real | real('+'|'-')real'i' | real'i'
// Y(j,k)[idx] is the L²(probability)-normalized real field built from basis
// element idx of H_{j,k}; extremal(c; eta...) is the Sobolev-kind extremal
// projected onto the basis.
// ---------------------------------------------------------------------------
class ExprParser {
 public:
  ExprParser(std::string s, ContextPtr ctx) : s_(std::move(s)), ctx_(std::move(ctx)) {}

  SpectralField parse() {
    SpectralField acc = SpectralField::zero(ctx_);
    skip_ws();
    double sign = 1.0;
    if (peek() == '+' || peek() == '-') sign = (get() == '-') ? -1.0 : 1.0;
    acc = acc + term() * sign;
    skip_ws();
    while (pos_ < s_.size()) {
      const char op = get();
      if (op != '+' && op != '-') fail("expected '+' or '-'");
      acc = acc + term() * (op == '-' ? -1.0 : 1.0);
      skip_ws();
    }
    return acc;
  }

 private:
  std::string s_;
  size_t pos_ = 0;
  ContextPtr ctx_;

  [[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument("field expression: " + msg + " at position " + std::to_string(pos_));
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  char get() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end");
    return s_[pos_++];
  }
  void expect(char c) {
    if (get() != c) fail(std::string("expected '") + c + "'");
  }
  double number() {
    skip_ws();
    size_t len = 0;
    double v;
    try {
      v = std::stod(s_.substr(pos_), &len);
    } catch (...) {
      fail("expected a number");
    }
    pos_ += len;
    return v;
  }
  int integer() { return static_cast<int>(std::lround(number())); }

  Complex complex_number() {
    // real | real±imag i | imag i
    double a = number();
    skip_ws();
    if (pos_ < s_.size() && (s_[pos_] == 'i' || s_[pos_] == 'I')) {
      ++pos_;
      return Complex(0.0, a);
    }
    if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
      const size_t save = pos_;
      const char sign = s_[pos_];
      double b = number();
      skip_ws();
      if (pos_ < s_.size() && (s_[pos_] == 'i' || s_[pos_] == 'I')) {
        ++pos_;
        (void)sign;
        return Complex(a, b);
      }
      pos_ = save;  // the ± belongs to the outer expression
    }
    return Complex(a, 0.0);
  }

  SpectralField atom() {
    skip_ws();
    if (s_.compare(pos_, 2, "Y(") == 0) {
      pos_ += 2;
      const int j = integer();
      expect(',');
      const int k = integer();
      expect(')');
      int idx = 0;
      if (peek() == '[') {
        expect('[');
        idx = integer();
        expect(']');
      }
      return real_harmonic(ctx_, j, k, idx, Measure::Probability);
    }
    if (s_.compare(pos_, 9, "extremal(") == 0) {
      pos_ += 9;
      const double c = number();
      expect(';');
      CVector eta;
      eta.push_back(complex_number());
      while (peek() == ',') {
        expect(',');
        eta.push_back(complex_number());
      }
      expect(')');
      if (static_cast<int>(eta.size()) != ctx_->dim().complex_dim())
        fail("extremal needs n+1 eta components");
      const ExtremalField g(ctx_->dim(), ExtremalParams{c, eta}, ExtremalKind::Sobolev);
      return SpectralField::project(ctx_, [&](const SpherePoint& p) { return Complex(g.value(p)); });
    }
    return SpectralField::constant(ctx_, number());
  }

  SpectralField term() {
    skip_ws();
    const char c = peek();
    if (c == 'Y' || c == 'e') return atom();
    const double coef = number();
    if (peek() == '*') {
      expect('*');
      return atom() * coef;
    }
    return SpectralField::constant(ctx_, coef);
  }
};

ContextPtr make_context(const RunConfig& cfg) {
  std::optional<std::string> cache;
  if (!cfg.cache_dir.empty()) cache = cfg.cache_dir;
  return SphereContext::make(cfg.n, cfg.degree, cfg.exactness, cache);
}

void emit(const RunConfig& cfg, Json report, bool passed) {
  report["config"] = cfg.to_json();
  report["passed"] = passed;
  const std::string text = report.dump(2);
  if (!cfg.out_path.empty()) {
    std::ofstream os(cfg.out_path);
    os << text << '\n';
  } else {
    std::cout << text << '\n';
  }
}

int run_constants(const RunConfig& cfg) {
  const SharpConstants c = sharp_constants(cfg.n);
  const double dual_res = sharp_constant_duality_residual(cfg.n);
  const bool pass = c.transfer_identity_residual() < 1e-12 && dual_res < 1e-12;
  std::cout << "n = " << cfg.n << "\n"
            << "  |S^{2n+1}|              = " << CRDimension(cfg.n).sphere_measure() << "\n"
            << "  Heisenberg Sobolev      = " << c.heisenberg_sobolev << "\n"
            << "  sphere factor           = " << c.sphere_sobolev_factor << "\n"
            << "  S_Q (sphere HLS)        = " << c.hls_SQ << "\n"
            << "  HLS on H^n (λ=Q-2)      = " << c.hls_heisenberg << "\n"
            << "  transfer residual       = " << c.transfer_identity_residual() << "\n"
            << "  duality identity resid  = " << dual_res << "\n";
  Json rep = to_json(c);
  rep["duality_identity_residual"] = dual_res;
  emit(cfg, rep, pass);
  return pass ? 0 : 1;
}

int run_verify_eigs(const RunConfig& cfg) {
  ContextPtr ctx = make_context(cfg);
  double worst_eig = 0.0;
  for (int i = 0; i < ctx->num_elements(); ++i)
    worst_eig = std::max(worst_eig, ctx->basis().eigen_residual(i));
  const Eigen::MatrixXcd G =
      ctx->values().adjoint() * ctx->weights().asDiagonal() * ctx->values();
  const double worst_gram =
      (G - Eigen::MatrixXcd::Identity(G.rows(), G.cols())).cwiseAbs().maxCoeff();
  // Spherical-harmonic L^p growth spot check: probability-normalized elements with
  // j+k <= 4 have ‖Y‖_{L4} <= 3^{(j+k)/2}.
  double worst_l4_excess = -1e300;
  const double smeas = ctx->dim().sphere_measure();
  for (int i = 0; i < ctx->num_elements(); ++i) {
    const auto& e = ctx->basis().elements[i];
    if (e.j + e.k > 4) continue;
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(ctx->num_elements());
    c(i) = std::sqrt(smeas);  // unit probability-measure L² norm
    const double l4 = SpectralField(ctx, c).lp_norm(4.0, Measure::Probability);
    worst_l4_excess = std::max(worst_l4_excess, l4 - std::pow(3.0, 0.5 * (e.j + e.k)));
  }
  const bool pass = worst_eig < 1e-9 && worst_gram < 1e-10 && worst_l4_excess <= 1e-12;
  std::cout << "n=" << cfg.n << " D=" << cfg.degree << ": " << ctx->num_elements()
            << " basis elements\n"
            << "  max eigen residual ‖LY-λY‖/‖Y‖ = " << worst_eig << "\n"
            << "  max Gram deviation             = " << worst_gram << "\n"
            << "  max L4 bound excess            = " << worst_l4_excess << "\n";
  emit(cfg, Json{{"elements", ctx->num_elements()},
                 {"max_eigen_residual", worst_eig},
                 {"max_gram_deviation", worst_gram},
                 {"max_l4_excess", worst_l4_excess}},
       pass);
  return pass ? 0 : 1;
}

int run_deficit(const RunConfig& cfg, const std::string& measure, bool heisenberg) {
  ContextPtr ctx = make_context(cfg);
  const SpectralField u = ExprParser(cfg.field_expr, ctx).parse();
  const Measure m = (measure == "probability") ? Measure::Probability : Measure::Surface;
  const DeficitReport rep = heisenberg
                                ? heisenberg_deficit(u, (ctx->dim().Q() - 2.0) / (2.0 * ctx->dim().Q()))
                                : sobolev_deficit(u, m);
  const bool pass = rep.deficit >= -1e-9 * std::max(1.0, rep.energy);
  std::cout << (heisenberg ? "Heisenberg" : "sphere") << " deficit of \"" << cfg.field_expr
            << "\":\n  energy  = " << rep.energy << "\n  rhs     = " << rep.rhs_term
            << "\n  deficit = " << rep.deficit << "\n  ‖u‖_q   = " << rep.lq_norm << "\n";
  emit(cfg, to_json(rep), pass);
  return pass ? 0 : 1;
}

int run_distance(const RunConfig& cfg, const std::string& manifold, int restarts) {
  ContextPtr ctx = make_context(cfg);
  const SpectralField u = ExprParser(cfg.field_expr, ctx).parse();
  DistanceOptions opts;
  opts.seed = cfg.seed;
  if (restarts > 0) opts.restarts = restarts;
  const DistanceResult res = (manifold == "hls") ? distance_to_hls_manifold(u, opts)
                                                 : distance_to_sobolev_manifold(u, opts);
  std::cout << manifold << " distance² of \"" << cfg.field_expr << "\" = " << res.squared_distance
            << "  (relative " << res.squared_distance / res.u_scale << ")\n"
            << "  argmin c = " << res.argmin.c << ", |eta| = " << res.argmin.eta_norm()
            << ", converged = " << res.converged << "\n";
  emit(cfg, to_json(res), res.converged);
  return res.converged ? 0 : 1;
}

int run_flow(const RunConfig& cfg, double tmax, double ratio, double sample_interval,
             const std::string& csv_path, const std::string& checkpoint_path,
             const std::string& resume_path) {
  ContextPtr ctx = make_context(cfg);
  FlowState start{SpectralField::zero(ctx), 0.0};
  if (!resume_path.empty()) {
    std::ifstream is(resume_path);
    if (!is) throw std::invalid_argument("flow: cannot open checkpoint " + resume_path);
    Json j;
    is >> j;
    start = flow_state_from_json(j, ctx);
  } else {
    start = FlowState{ExprParser(cfg.field_expr, ctx).parse(), 0.0};
  }
  FlowOptions opts;
  opts.sample_interval = sample_interval;
  opts.dist_opts.seed = cfg.seed;
  FlowStop stop;
  if (tmax > 0) stop.tmax = tmax;
  if (ratio > 0) stop.ratio = ratio;
  const FlowTrace trace = run_flow(start, stop, opts);

  double s_violation = 0.0, v_drift = 0.0;
  const double s0 = trace.samples.front().S, v0 = trace.samples.front().V;
  for (size_t i = 1; i < trace.samples.size(); ++i) {
    s_violation = std::max(s_violation, trace.samples[i].S - trace.samples[i - 1].S);
    v_drift = std::max(v_drift, std::abs(trace.samples[i].V - v0));
  }
  const bool pass = s_violation <= 1e-8 * s0 && v_drift <= 1e-6 * v0;
  std::cout << "flow on \"" << cfg.field_expr << "\": " << trace.accepted_steps << " steps, "
            << trace.samples.size() << " samples\n"
            << "  S: " << s0 << " -> " << trace.samples.back().S
            << " (worst increase " << s_violation / s0 << " rel)\n"
            << "  V drift " << v_drift / v0 << " rel\n"
            << "  final dist ratio " << trace.samples.back().dist_ratio << "\n";
  if (trace.ratio_reached) std::cout << "  ratio crossing at t = " << trace.t_cross << "\n";
  if (!csv_path.empty()) {
    std::ofstream os(csv_path);
    os << trace_to_csv(trace);
  }
  if (!checkpoint_path.empty()) {
    std::ofstream os(checkpoint_path);
    os << flow_state_to_json(trace.final_state).dump(2) << '\n';
  }
  emit(cfg, to_json(trace), pass);
  return pass ? 0 : 1;
}

int run_chain(const RunConfig& cfg, double delta) {
  ContextPtr ctx = make_context(cfg);
  // negative node values are clipped away: the reduction runs on positive data
  const SpectralField u0 = clip_positive(ExprParser(cfg.field_expr, ctx).parse(), 0.05);
  DistanceOptions dopts;
  dopts.seed = cfg.seed;
  const ChainReport rep = local_to_global_chain(u0, delta, FlowOptions{}, dopts);
  std::cout << "local-to-global chain at delta = " << delta << " (t_cross = " << rep.t_cross
            << "):\n"
            << "  deficit/dist²(u0) = " << rep.q1 << "\n  deficit/E(u0)     = " << rep.q2 << "\n"
            << "  deficit/E(t0)     = " << rep.q3 << "\n  δ·deficit/dist²   = " << rep.q4 << "\n"
            << "  min slack = " << rep.min_slack << "\n";
  emit(cfg, to_json(rep), rep.inequalities_hold);
  return rep.inequalities_hold ? 0 : 1;
}

int run_local_cert(const RunConfig& cfg, double eps0, int corpus, double scale) {
  if (cfg.n < 2) {
    std::cerr << "local-cert: the certificate requires n >= 2 (q = 2Q/(Q-2) must lie in (2,3]; "
                 "n=1 has q = 4). Use --n 2.\n";
    return 2;
  }
  ContextPtr ctx = make_context(cfg);
  const CutParams params = constants_chooser(eps0, ctx->dim());
  std::cout << "certificate ledger (eps0 = " << eps0 << ", q = " << params.q << "):\n"
            << "  eps1 = " << params.eps1 << ", eps2 = " << params.eps2
            << ", gamma = " << params.gamma << ", M = " << params.M << "\n"
            << "  sigma0 = " << params.sigma0 << ", C = " << params.C_cut
            << ", L = " << params.L_degree << "\n"
            << "  delta1 = " << params.delta1 << ", log10(delta2) = " << params.log10_delta2
            << ", delta_tilde_eff = " << params.delta_tilde_effective << "\n";
  Json reports = Json::array();
  bool pass = true;
  std::mt19937_64 rng(cfg.seed);
  auto uni = [&rng] { return 2.0 * ((rng() >> 11) * 0x1.0p-53) - 1.0; };
  std::vector<SpectralField> fields;
  if (!cfg.field_expr.empty()) {
    fields.push_back(ExprParser(cfg.field_expr, ctx).parse());
  } else {
    for (int t = 0; t < corpus; ++t) {
      Eigen::VectorXcd c(ctx->num_elements());
      for (int i = 0; i < ctx->num_elements(); ++i) c(i) = Complex(uni(), uni());
      SpectralField realf =
          SpectralField::project_nodes(ctx, SpectralField(ctx, c).real_node_values().cast<Complex>());
      Eigen::VectorXcd cc = realf.coeffs();
      for (int i = 0; i < ctx->num_elements(); ++i)
        if (ctx->basis().elements[i].j + ctx->basis().elements[i].k < 2) cc(i) = 0.0;
      fields.emplace_back(ctx, cc);
    }
  }
  for (auto& f : fields) {
    const double nq = f.lp_norm(ctx->dim().q(), Measure::Probability);
    const SpectralField r = f * (std::sqrt(scale * params.delta_tilde_effective) / nq);
    const TermReport rep = verify_certificate(r, params);
    pass = pass && rep.certificate_holds && rep.headline_holds;
    reports.push_back(to_json(rep));
  }
  std::cout << "  corpus size " << fields.size() << ": certificate "
            << (pass ? "holds" : "FAILED") << "\n";
  emit(cfg, Json{{"params", to_json(params)}, {"reports", reports}}, pass);
  return pass ? 0 : 1;
}

int run_ratio(const RunConfig& cfg, int j, int k) {
  const double r = spectral_ratio(j, k, cfg.n);
  std::cout << r << "\n";
  emit(cfg, Json{{"j", j}, {"k", k}, {"ratio", r}}, true);
  return 0;
}

int run_hls(const RunConfig& cfg, double beta, const std::string& spectrum_csv, int spectrum_degree) {
  ContextPtr ctx = make_context(cfg);
  if (!spectrum_csv.empty()) {
    const KernelSpectrum s =
        kernel_spectrum(0.25 * (ctx->dim().Q() - 2.0), cfg.n, spectrum_degree);
    std::ofstream os(spectrum_csv);
    os << s.to_csv();
  }
  Json rep;
  bool pass = true;
  if (!cfg.field_expr.empty()) {
    const SpectralField g = ExprParser(cfg.field_expr, ctx).parse();
    DistanceOptions dopts;
    dopts.seed = cfg.seed;
    const HlsStabilityReport r = hls_stability_check(g, beta, dopts);
    pass = r.deficit.deficit >= -1e-8 * std::max(1.0, r.deficit.energy);
    std::cout << "HLS deficit = " << r.deficit.deficit << ", d² = "
              << r.distance.squared_distance << ", ratio = "
              << (r.indeterminate ? std::string("indeterminate") : std::to_string(r.ratio))
              << "\n  dual constant(beta=" << beta << ") = " << r.dual_constant << "\n";
    rep = to_json(r);
  } else {
    rep = Json{{"spectrum_csv", spectrum_csv}};
  }
  emit(cfg, rep, pass);
  return pass ? 0 : 1;
}

int run_split(const RunConfig& cfg) {
  ContextPtr ctx = make_context(cfg);
  const SpectralField u = ExprParser(cfg.field_expr, ctx).parse();
  const SplitReport rep = pos_neg_split_bound(u);
  std::cout << "positive/negative split of \"" << cfg.field_expr << "\":\n"
            << "  m = " << rep.m << (rep.swapped ? " (parts swapped)" : "") << "\n"
            << "  concavity gap = " << rep.concavity_gap << "\n"
            << "  chain slack = " << rep.chain_slack << " (floor " << rep.floor_constant << ")\n";
  emit(cfg, to_json(rep), rep.chain_holds);
  return rep.chain_holds ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CR-sphere Sobolev/HLS stability toolkit"};
  app.require_subcommand(1);

  RunConfig cfg;
  if (const char* env = std::getenv("CRSTAB_CACHE_DIR")) cfg.cache_dir = env;

  auto add_common = [&](CLI::App* sub, bool with_field) {
    sub->add_option("--n", cfg.n, "CR dimension n (sphere S^{2n+1})");
    sub->add_option("--degree", cfg.degree, "basis truncation degree D");
    sub->add_option("--exactness", cfg.exactness, "quadrature exactness (-1 = default)");
    sub->add_option("--seed", cfg.seed, "RNG seed for optimizers/corpora");
    sub->add_option("--out", cfg.out_path, "write the JSON report here instead of stdout");
    sub->add_option("--cache-dir", cfg.cache_dir, "basis cache directory");
    if (with_field) sub->add_option("--field,--init", cfg.field_expr, "field expression");
  };

  auto* c_const = app.add_subcommand("constants", "sharp constants and their identities");
  add_common(c_const, false);

  auto* c_eigs = app.add_subcommand("verify-eigs", "eigenfunction and orthonormality checks");
  add_common(c_eigs, false);

  auto* c_def = app.add_subcommand("deficit", "Sobolev deficit of a field");
  add_common(c_def, true);
  std::string measure = "surface";
  bool heisenberg = false;
  c_def->add_option("--measure", measure, "surface|probability");
  c_def->add_flag("--heisenberg", heisenberg, "report the Heisenberg-side deficit");

  auto* c_dist = app.add_subcommand("distance", "distance to the extremal manifold");
  add_common(c_dist, true);
  std::string manifold = "sobolev";
  int restarts = 0;
  c_dist->add_option("--manifold", manifold, "sobolev|hls");
  c_dist->add_option("--restarts", restarts, "override multistart count");

  auto* c_flow = app.add_subcommand("flow", "CR Yamabe flow");
  add_common(c_flow, true);
  double tmax = 0.0, ratio = 0.0, sample_interval = 0.5;
  std::string csv_path, checkpoint_path, resume_path;
  c_flow->add_option("--tmax", tmax, "integrate to this (absolute) time");
  c_flow->add_option("--ratio", ratio, "stop at this relative-distance ratio");
  c_flow->add_option("--sample-interval", sample_interval, "trace sampling interval");
  c_flow->add_option("--csv", csv_path, "write the trace CSV here");
  c_flow->add_option("--checkpoint", checkpoint_path, "write the final state JSON here");
  c_flow->add_option("--resume", resume_path, "resume from a checkpoint JSON (instead of --init)");

  auto* c_chain = app.add_subcommand("chain", "local-to-global reduction along the flow");
  add_common(c_chain, true);
  double delta = 0.1;
  c_chain->add_option("--delta", delta, "distance-ratio threshold");

  auto* c_cert = app.add_subcommand("local-cert", "local stability certificate (n >= 2)");
  add_common(c_cert, true);
  double eps0 = 1.0 / 6.0;
  int corpus = 5;
  double cert_scale = 0.5;
  c_cert->add_option("--eps0", eps0, "certificate parameter in (0, 1/3)");
  c_cert->add_option("--corpus", corpus, "number of random admissible fields");
  c_cert->add_option("--scale", cert_scale, "‖r‖_q² as a fraction of delta_tilde");

  auto* c_ratio = app.add_subcommand("ratio", "spectral stability ratio 1-(q-1)λ00/λjk");
  add_common(c_ratio, false);
  int rj = 2, rk = 0;
  c_ratio->add_option("--j", rj, "holomorphic degree");
  c_ratio->add_option("--k", rk, "antiholomorphic degree");

  auto* c_hls = app.add_subcommand("hls", "HLS deficit / duality / kernel spectrum");
  add_common(c_hls, true);
  double beta = 0.1;
  std::string spectrum_csv;
  int spectrum_degree = 8;
  c_hls->add_option("--beta", beta, "Sobolev stability constant fed to the dual bound");
  c_hls->add_option("--spectrum-csv", spectrum_csv, "export kernel eigenvalue table");
  c_hls->add_option("--spectrum-degree", spectrum_degree, "table degree");

  auto* c_split = app.add_subcommand("split", "positive/negative part reduction");
  add_common(c_split, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (c_const->parsed()) return cfg.subcommand = "constants", run_constants(cfg);
    if (c_eigs->parsed()) return cfg.subcommand = "verify-eigs", run_verify_eigs(cfg);
    if (c_def->parsed()) return cfg.subcommand = "deficit", run_deficit(cfg, measure, heisenberg);
    if (c_dist->parsed()) return cfg.subcommand = "distance", run_distance(cfg, manifold, restarts);
    if (c_flow->parsed())
      return cfg.subcommand = "flow",
             run_flow(cfg, tmax, ratio, sample_interval, csv_path, checkpoint_path, resume_path);
    if (c_chain->parsed()) return cfg.subcommand = "chain", run_chain(cfg, delta);
    if (c_cert->parsed())
      return cfg.subcommand = "local-cert", run_local_cert(cfg, eps0, corpus, cert_scale);
    if (c_ratio->parsed()) return cfg.subcommand = "ratio", run_ratio(cfg, rj, rk);
    if (c_hls->parsed()) return cfg.subcommand = "hls", run_hls(cfg, beta, spectrum_csv, spectrum_degree);
    if (c_split->parsed()) return cfg.subcommand = "split", run_split(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

// Acceptance suite: runs every verification criterion end-to-end and prints
// one PASS/FAIL line per criterion. Exit code 0 iff all pass.

#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <vector>

#include <crstab/hls.hpp>
#include <crstab/local_stability.hpp>
#include <crstab/serialize.hpp>
#include <crstab/yamabe.hpp>

#include "test_support.hpp"

using namespace crstab;
using crstab::testing::Rng;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int idx, const char* name, bool pass, const std::string& detail) {
  std::printf("[%s] %2d. %-22s %s\n", pass ? "PASS" : "FAIL", idx, name, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof(buf), f, ap);
  va_end(ap);
  return buf;
}

// 1. Symbolic sublaplacian action matches λ_{j,k} on every basis element.
void criterion_eigenvalue_law() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  const auto& b1 = crstab::testing::ctx_n1(6)->basis();
  for (int i = 0; i < b1.size(); ++i) worst = std::max(worst, b1.eigen_residual(i));
  const auto& b2 = crstab::testing::ctx_n2(4)->basis();
  for (int i = 0; i < b2.size(); ++i) worst = std::max(worst, b2.eigen_residual(i));
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  report(1, "eigenvalue-law", worst < 1e-9 && secs < 60.0,
         fmt("max residual %.2e (tol 1e-9), %.1f s (budget 60 s)", worst, secs));
}

// 2. Random extremals have vanishing relative Sobolev deficit.
void criterion_extremal_deficits() {
  Rng rng(101);
  double worst1 = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const ExtremalParams p{0.5 + rng.positive(), crstab::testing::random_eta(1, rng, 0.8)};
    const DeficitReport r = extremal_sobolev_deficit(CRDimension(1), p, 128);
    worst1 = std::max(worst1, std::abs(r.deficit) / r.energy);
  }
  double worst2 = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const ExtremalParams p{0.5 + rng.positive(), crstab::testing::random_eta(2, rng, 0.8)};
    const DeficitReport r = extremal_sobolev_deficit(CRDimension(2), p, 128);
    worst2 = std::max(worst2, std::abs(r.deficit) / r.energy);
  }
  report(2, "extremal-manifold", worst1 < 1e-7 && worst2 < 1e-6,
         fmt("n=1 worst |deficit|/E %.2e (tol 1e-7), n=2 %.2e (tol 1e-6)", worst1, worst2));
}

// 3. deficit/d² along H_{2,0} perturbations converges to 4/(Q+6).
void criterion_spectral_ratio() {
  bool ok = true;
  std::string detail;
  for (int n : {1, 2}) {
    const auto ctx = (n == 1) ? crstab::testing::ctx_n1(6) : crstab::testing::ctx_n2(4);
    const SpectralField y = real_harmonic(ctx, 2, 0, 0);
    const SpectralField one = SpectralField::constant(ctx, 1.0);
    DistanceOptions dopts;
    dopts.restarts = 4;
    dopts.max_evals = 1200;
    auto ratio_at = [&](double eps) {
      const SpectralField u = one + y * eps;
      const double deficit = sobolev_deficit(u, Measure::Surface).deficit;
      const double d2 = distance_to_sobolev_manifold(u, dopts).squared_distance;
      return deficit / d2;
    };
    const double r1 = ratio_at(1e-2), r2 = ratio_at(5e-3), r3 = ratio_at(2.5e-3);
    const double extrap = 2.0 * r3 - r2;
    (void)r1;
    const double target = 4.0 / (2.0 * n + 8.0);
    const double rel = std::abs(extrap - target) / target;
    ok = ok && rel < 1e-2;
    detail += fmt("n=%d: %.5f vs %.5f (rel %.2e)  ", n, extrap, target, rel);
  }
  report(3, "spectral-ratio", ok, detail + "(tol 1%)");
}

// 4. Flow diagnostics at n=1, D=8, u0 = 1 + 0.3 Y(2,0), T = 50.
void criterion_flow() {
  const auto t0 = Clock::now();
  const auto ctx = crstab::testing::ctx_n1_d8();
  const SpectralField u0 =
      SpectralField::constant(ctx, 1.0) + real_harmonic(ctx, 2, 0, 0) * 0.3;
  FlowOptions opts;
  opts.dist_opts.restarts = 1;
  opts.dist_opts.max_evals = 500;
  const FlowTrace trace = run_flow(u0, FlowStop{50.0, std::nullopt}, opts);
  const double s0 = trace.samples.front().S, v0 = trace.samples.front().V;
  double s_viol = 0.0, v_drift = 0.0, id_worst = 0.0;
  for (size_t i = 0; i < trace.samples.size(); ++i) {
    const auto& s = trace.samples[i];
    if (i) s_viol = std::max(s_viol, s.S - trace.samples[i - 1].S);
    v_drift = std::max(v_drift, std::abs(s.V - v0));
    if (std::abs(s.dsdt_fd) > 1e-8)
      id_worst = std::max(id_worst, std::abs(s.dsdt_fd - s.dsdt_identity) / std::abs(s.dsdt_fd));
  }
  DistanceOptions final_opts;
  final_opts.restarts = 6;
  const double final_ratio =
      distance_to_sobolev_manifold(trace.final_state.u, final_opts).squared_distance /
      energy(trace.final_state.u);
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  const bool pass = s_viol <= 1e-8 * s0 && v_drift <= 1e-6 * v0 && final_ratio < 1e-3 &&
                    id_worst <= 0.05 && secs < 300.0;
  report(4, "yamabe-flow", pass,
         fmt("S viol %.1e rel, V drift %.1e rel, final dist %.1e, dS/dt id %.2f%%, %.0f s",
             s_viol / s0, v_drift / v0, final_ratio, 100.0 * id_worst, secs));
}

// 5. Local-to-global quotient chain at delta = 0.1.
void criterion_chain() {
  const auto ctx = crstab::testing::ctx_n1_d8();
  const SpectralField u0 = clip_positive(
      SpectralField::constant(ctx, 1.0) + real_harmonic(ctx, 2, 0, 0) * 0.8, 0.05);

  FlowOptions fopts;
  fopts.dist_opts.restarts = 2;
  fopts.dist_opts.max_evals = 800;
  DistanceOptions dopts;
  dopts.restarts = 6;
  const ChainReport rep = local_to_global_chain(u0, 0.1, fopts, dopts);
  const bool bracket_ok =
      rep.t_cross_bracket <= 1e-4 * std::max(1.0, rep.t_cross + rep.t_cross_bracket);
  const bool pass = rep.inequalities_hold && rep.t_cross > 0.0 && bracket_ok;
  report(5, "local-to-global", pass,
         fmt("q=(%.4f,%.4f,%.4f,%.4f) min slack %.1e, t0=%.4f (bracket %.1e)", rep.q1, rep.q2,
             rep.q3, rep.q4, rep.min_slack, rep.t_cross, rep.t_cross_bracket));
}

// 6. Certificate at eps0 = 1/6, n = 2, corpus of 20 admissible fields.
void criterion_certificate() {
  const auto ctx = crstab::testing::ctx_n2(4);
  const CutParams params = constants_chooser(1.0 / 6.0, ctx->dim());
  Rng rng(106);
  bool ok = params.delta_tilde_effective > 0.0;
  double worst_I = 1e300, worst_headline = 1e300;
  for (int trial = 0; trial < 20; ++trial) {
    SpectralField f = crstab::testing::random_real_field(ctx, rng, 2);
    f = f * (std::sqrt(0.5 * params.delta_tilde_effective) /
             f.lp_norm(ctx->dim().q(), Measure::Probability));
    const TermReport rep = verify_certificate(f, params);
    worst_I = std::min({worst_I, rep.I1, rep.I2, rep.I3});
    worst_headline =
        std::min(worst_headline,
                 rep.deficit - ctx->dim().theta() * params.eps0 * rep.energy_r);
    ok = ok && rep.certificate_holds && rep.headline_holds;
  }
  report(6, "local-certificate", ok,
         fmt("min I %.2e (tol -1e-9), headline slack %.2e (tol -1e-8), delta_eff %.2e", worst_I,
             worst_headline, params.delta_tilde_effective));
}

// 7. Cutting bound over the full scan box with the estimated constant.
void criterion_cut_scan() {
  const double gamma = 0.125, eps = 0.125, M = 0.5;
  const std::vector<double> qs = {2.0, 2.4, 3.0};
  const double C = estimate_cut_constant(gamma, eps, M, qs, 100000);
  long violations = 0;
  for (double q : qs)
    for (long i = 0; i <= 1000000; ++i) {
      const double r = -1.0 + (10.0 * M + 1.0) * static_cast<double>(i) / 1000000.0;
      if (!pointwise_cut_bound(r, q, gamma, eps, M, C)) ++violations;
    }
  report(7, "cutting-lemma-scan", violations == 0,
         fmt("C = %.3f, violations on 10x validation grid: %ld", C, violations));
}

// 8. Positive/negative split chain on 50 sign-changing fields.
void criterion_split() {
  const auto ctx = crstab::testing::ctx_n1(6);
  Rng rng(108);
  int tested = 0;
  bool ok = true;
  double worst = 1e300;
  while (tested < 50) {
    const SpectralField u = SpectralField::constant(ctx, 0.4 * rng.uniform()) +
                            crstab::testing::random_real_field(ctx, rng);
    if (u.min_node_value() >= 0.0 || u.real_node_values().maxCoeff() <= 0.0) continue;
    ++tested;
    const SplitReport rep = pos_neg_split_bound(u);
    ok = ok && rep.chain_holds;
    worst = std::min(worst, std::min(rep.part_slack, rep.chain_slack));
  }
  const double floor4 = 1.0 - std::pow(2.0, -0.5);
  const bool floor_ok = std::abs(floor4 - 0.29289) < 1e-5;
  report(8, "pos-neg-split", ok && floor_ok,
         fmt("50 fields, worst slack %.2e; floor(Q=4) = %.6f", worst, floor4));
}

// 9. HLS duality, spectral-vs-quadrature oracle, and sharpness corpus.
void criterion_hls() {
  double worst_dual = 0.0;
  for (int n : {1, 2}) {
    const CRDimension dim(n);
    const double gd = std::tgamma(dim.half_nu());
    for (int j = 0; j <= 8; ++j)
      for (int k = 0; k + j <= 8; ++k) {
        const double lhs =
            kernel_eigenvalue(j, k, dim.half_nu(), n) * gd * gd / (2.0 * std::pow(kPi, n + 1));
        const double rhs = 1.0 / sublaplacian_eigenvalue(j, k, n);
        worst_dual = std::max(worst_dual, std::abs(lhs - rhs) / rhs);
      }
  }

  const auto ctx3 = crstab::testing::ctx_n1(3);
  Rng rng(109);
  const SpectralField g =
      SpectralField::constant(ctx3, 1.0) + crstab::testing::random_real_field(ctx3, rng) * 0.4;
  const double spectral = hls_energy(g);
  const double oracle = crstab::testing::hls_energy_oracle(g);
  const double oracle_rel = std::abs(oracle - spectral) / std::abs(spectral);

  const auto ctx = crstab::testing::ctx_n1(4);
  double corpus_min = 1e300;
  for (int trial = 0; trial < 200; ++trial) {
    const SpectralField f = SpectralField::constant(ctx, rng.uniform()) +
                            crstab::testing::random_real_field(ctx, rng);
    const DeficitReport rep = hls_deficit(f);
    corpus_min = std::min(corpus_min, rep.deficit / std::max(1.0, rep.energy));
  }
  // extremal sub-corpus
  const auto ctx10 = crstab::testing::ctx_n1(10);
  double extremal_worst = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const ExtremalParams p{1.0, crstab::testing::random_eta(1, rng, 0.4)};
    const ExtremalField ge(ctx10->dim(), p, ExtremalKind::HLS);
    const SpectralField gf = SpectralField::project(
        ctx10, [&](const SpherePoint& q) { return Complex(ge.value(q)); });
    extremal_worst = std::max(extremal_worst, std::abs(hls_deficit(gf).deficit));
  }
  const bool pass =
      worst_dual < 1e-12 && oracle_rel < 1e-6 && corpus_min >= -1e-8 && extremal_worst < 1e-6;
  report(9, "hls-duality", pass,
         fmt("dual id %.1e (1e-12), oracle rel %.1e (1e-6), corpus min %.1e (-1e-8), extremal %.1e",
             worst_dual, oracle_rel, corpus_min, extremal_worst));
}

// 10. Sharp-constant bookkeeping across dimensions.
void criterion_constants() {
  double worst_transfer = 0.0;
  for (int n = 1; n <= 4; ++n) {
    const SharpConstants c = sharp_constants(n);
    worst_transfer = std::max(worst_transfer, c.transfer_identity_residual() / c.hls_heisenberg);
  }
  double worst_dual = 0.0;
  for (int n = 1; n <= 6; ++n)
    worst_dual = std::max(worst_dual, sharp_constant_duality_residual(n));
  report(10, "constant-bookkeeping", worst_transfer < 1e-12 && worst_dual < 1e-12,
         fmt("transfer %.1e, duality %.1e (tol 1e-12)", worst_transfer, worst_dual));
}

}  // namespace

int main() {
  criterion_eigenvalue_law();
  criterion_extremal_deficits();
  criterion_spectral_ratio();
  criterion_flow();
  criterion_chain();
  criterion_certificate();
  criterion_cut_scan();
  criterion_split();
  criterion_hls();
  criterion_constants();
  std::printf("%d/10 criteria passed\n", 10 - g_failures);
  return g_failures == 0 ? 0 : 1;
}

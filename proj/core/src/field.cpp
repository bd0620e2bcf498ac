#include "crstab/field.hpp"

namespace crstab {

SphereContext::SphereContext(CRDimension dim, HarmonicBasis basis, QuadratureGrid grid)
    : dim_(dim), basis_(std::move(basis)), grid_(std::move(grid)) {
  if (basis_.n != dim_.n || grid_.n != dim_.n)
    throw std::invalid_argument("SphereContext: dimension mismatch between basis/grid");
  const Eigen::Index m = grid_.size();
  const int e = basis_.size();
  values_.resize(m, e);
  lambdas_.resize(e);
  std::vector<Complex> pt(dim_.complex_dim());
  for (Eigen::Index i = 0; i < m; ++i) {
    for (int c = 0; c < dim_.complex_dim(); ++c) pt[c] = grid_.nodes(i, c);
    for (int b = 0; b < e; ++b) values_(i, b) = basis_.elements[b].poly.evaluate(pt);
  }
  for (int b = 0; b < e; ++b) lambdas_(b) = basis_.elements[b].lambda;
}

std::shared_ptr<const SphereContext> SphereContext::make(int n, int D, int exactness,
                                                         const std::optional<std::string>& cache_dir) {
  if (exactness < 0) exactness = default_exactness(n, D);
  if (exactness < 2 * D) throw std::invalid_argument("SphereContext: exactness below 2*D breaks projection");
  HarmonicBasis basis = HarmonicBasis::load_or_build(n, D, cache_dir);
  QuadratureGrid grid = sphere_quadrature(n, exactness);
  return std::make_shared<SphereContext>(CRDimension(n), std::move(basis), std::move(grid));
}

Eigen::VectorXcd SphereContext::coordinate_values(int j, bool conjugated) const {
  Eigen::VectorXcd v = grid_.nodes.col(j);
  if (conjugated) v = v.conjugate();
  return v;
}

SpectralField::SpectralField(ContextPtr ctx, Eigen::VectorXcd coeffs)
    : ctx_(std::move(ctx)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != ctx_->num_elements())
    throw std::invalid_argument("SpectralField: coefficient count does not match basis");
}

SpectralField SpectralField::zero(ContextPtr ctx) {
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(ctx->num_elements());
  return SpectralField(std::move(ctx), std::move(c));
}

SpectralField SpectralField::constant(ContextPtr ctx, double value) {
  SpectralField f = zero(ctx);
  // H_{0,0} is spanned by 1/sqrt(|S|); the constant-field coefficient follows.
  f.coeffs_(0) = value * std::sqrt(ctx->dim().sphere_measure());
  return f;
}

SpectralField SpectralField::project_nodes(ContextPtr ctx, const Eigen::VectorXcd& node_values) {
  if (node_values.size() != ctx->num_nodes())
    throw std::invalid_argument("project_nodes: node count mismatch");
  Eigen::VectorXcd weighted = ctx->weights().cast<Complex>().cwiseProduct(node_values);
  Eigen::VectorXcd c = ctx->values().adjoint() * weighted;
  return SpectralField(std::move(ctx), std::move(c));
}

SpectralField SpectralField::project(ContextPtr ctx, const std::function<Complex(const SpherePoint&)>& f) {
  Eigen::VectorXcd vals(ctx->num_nodes());
  for (Eigen::Index i = 0; i < ctx->num_nodes(); ++i) vals(i) = f(ctx->grid().point(i));
  return project_nodes(std::move(ctx), vals);
}

SpectralField SpectralField::project_polynomial(ContextPtr ctx, const ComplexPolynomial& p) {
  const int n = ctx->dim().n;
  Eigen::VectorXcd c(ctx->num_elements());
  for (int b = 0; b < ctx->num_elements(); ++b)
    c(b) = sphere_inner_product(p, ctx->basis().elements[b].poly, n);
  return SpectralField(std::move(ctx), std::move(c));
}

const Eigen::VectorXcd& SpectralField::node_values() const {
  if (!node_cache_) node_cache_ = ctx_->values() * coeffs_;
  return *node_cache_;
}

Eigen::VectorXd SpectralField::real_node_values() const { return node_values().real(); }

Complex SpectralField::evaluate(const SpherePoint& p) const {
  Complex s = 0.0;
  for (int b = 0; b < ctx_->num_elements(); ++b) {
    if (coeffs_(b) == 0.0) continue;
    s += coeffs_(b) * ctx_->basis().elements[b].poly.evaluate(p);
  }
  return s;
}

ComplexPolynomial SpectralField::to_polynomial() const {
  ComplexPolynomial p;
  for (int b = 0; b < ctx_->num_elements(); ++b) {
    if (coeffs_(b) == 0.0) continue;
    p += ctx_->basis().elements[b].poly * coeffs_(b);
  }
  return p;
}

double SpectralField::l2_norm_sq(Measure m) const {
  double s = coeffs_.squaredNorm();
  if (m == Measure::Probability) s /= ctx_->dim().sphere_measure();
  return s;
}

double SpectralField::lp_norm(double p, Measure m) const {
  if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
  const Eigen::VectorXcd& v = node_values();
  double s = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += ctx_->weights()(i) * std::pow(std::abs(v(i)), p);
  if (m == Measure::Probability) s /= ctx_->dim().sphere_measure();
  return std::pow(s, 1.0 / p);
}

double SpectralField::mean(Measure m) const {
  double s = std::real(coeffs_(0)) * std::sqrt(ctx_->dim().sphere_measure());
  if (m == Measure::Probability) s /= ctx_->dim().sphere_measure();
  return s;
}

bool SpectralField::is_real(double tol) const {
  const Eigen::VectorXcd& v = node_values();
  double worst = 0.0, scale = 1e-300;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    worst = std::max(worst, std::abs(v(i).imag()));
    scale = std::max(scale, std::abs(v(i)));
  }
  return worst <= tol * std::max(1.0, scale);
}

double SpectralField::min_node_value() const { return node_values().real().minCoeff(); }

SpectralField SpectralField::operator+(const SpectralField& o) const {
  return SpectralField(ctx_, coeffs_ + o.coeffs_);
}
SpectralField SpectralField::operator-(const SpectralField& o) const {
  return SpectralField(ctx_, coeffs_ - o.coeffs_);
}
SpectralField SpectralField::operator*(double s) const { return SpectralField(ctx_, coeffs_ * s); }

SpectralField clip_positive(const SpectralField& u, double floor, int max_iters) {
  if (!(u.mean(Measure::Probability) > 0.0))
    throw std::invalid_argument("clip_positive: field must have positive mean");
  SpectralField f = u;
  for (int it = 0; it < max_iters; ++it) {
    if (f.min_node_value() > 0.0 && it > 0) return f;
    Eigen::VectorXd v = f.real_node_values();
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = std::max(v(i), floor);
    f = SpectralField::project_nodes(f.context(), v.cast<Complex>());
  }
  // Gibbs oscillation persisted: pull toward the constant mean.
  const SpectralField base = SpectralField::constant(f.context(), f.mean(Measure::Probability));
  double lo = 0.0, hi = 1.0;  // hi = fully constant, always positive
  for (int it = 0; it < 50; ++it) {
    const double mid = 0.5 * (lo + hi);
    if ((f * (1.0 - mid) + base * mid).min_node_value() > floor * 0.5)
      hi = mid;
    else
      lo = mid;
  }
  return f * (1.0 - hi) + base * hi;
}

SpectralField real_harmonic(ContextPtr ctx, int j, int k, int idx, Measure m) {
  auto [begin, count] = ctx->basis().block(j, k);
  if (idx < 0 || idx >= count) throw std::out_of_range("real_harmonic: element index out of range");
  const ComplexPolynomial& p = ctx->basis().elements[begin + idx].poly;
  ComplexPolynomial re_part = p + p.conjugate();                       // 2 Re Y
  ComplexPolynomial im_part = (p - p.conjugate()) * Complex(0.0, -1.0);  // 2 Im Y
  const int n = ctx->dim().n;
  const ComplexPolynomial& chosen =
      sphere_norm_sq(re_part, n) >= sphere_norm_sq(im_part, n) ? re_part : im_part;
  SpectralField f = SpectralField::project_polynomial(ctx, chosen);
  return f * (1.0 / std::sqrt(f.l2_norm_sq(m)));
}

}  // namespace crstab

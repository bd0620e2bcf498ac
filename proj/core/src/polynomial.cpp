#include "crstab/polynomial.hpp"

#include <cmath>

namespace crstab {

ComplexPolynomial ComplexPolynomial::constant(Complex c) {
  ComplexPolynomial p;
  if (c != 0.0) p.terms_[MonomialKey{}] = c;
  return p;
}

ComplexPolynomial ComplexPolynomial::variable(int j, bool conjugated) {
  if (j < 0 || j >= MonomialKey::kMaxVars) throw std::invalid_argument("variable: index out of range");
  MonomialKey m;
  if (conjugated)
    m.b[j] = 1;
  else
    m.a[j] = 1;
  ComplexPolynomial p;
  p.terms_[m] = 1.0;
  return p;
}

void ComplexPolynomial::add_term(const MonomialKey& m, Complex c) {
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

int ComplexPolynomial::total_degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

ComplexPolynomial ComplexPolynomial::operator+(const ComplexPolynomial& o) const {
  ComplexPolynomial r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

ComplexPolynomial& ComplexPolynomial::operator+=(const ComplexPolynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

ComplexPolynomial ComplexPolynomial::operator-(const ComplexPolynomial& o) const {
  ComplexPolynomial r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

ComplexPolynomial ComplexPolynomial::operator*(const ComplexPolynomial& o) const {
  ComplexPolynomial r;
  for (const auto& [m1, c1] : terms_) {
    for (const auto& [m2, c2] : o.terms_) {
      MonomialKey m;
      for (int i = 0; i < MonomialKey::kMaxVars; ++i) {
        m.a[i] = static_cast<uint8_t>(m1.a[i] + m2.a[i]);
        m.b[i] = static_cast<uint8_t>(m1.b[i] + m2.b[i]);
      }
      r.add_term(m, c1 * c2);
    }
  }
  return r;
}

ComplexPolynomial ComplexPolynomial::operator*(Complex s) const {
  ComplexPolynomial r;
  if (s == 0.0) return r;
  for (const auto& [m, c] : terms_) r.terms_[m] = c * s;
  return r;
}

ComplexPolynomial ComplexPolynomial::conjugate() const {
  ComplexPolynomial r;
  for (const auto& [m, c] : terms_) {
    MonomialKey mc;
    mc.a = m.b;
    mc.b = m.a;
    r.terms_[mc] = std::conj(c);
  }
  return r;
}

ComplexPolynomial ComplexPolynomial::derivative(int j, bool conjugated) const {
  ComplexPolynomial r;
  for (const auto& [m, c] : terms_) {
    const uint8_t e = conjugated ? m.b[j] : m.a[j];
    if (e == 0) continue;
    MonomialKey md = m;
    if (conjugated)
      md.b[j] = static_cast<uint8_t>(e - 1);
    else
      md.a[j] = static_cast<uint8_t>(e - 1);
    r.add_term(md, c * static_cast<double>(e));
  }
  return r;
}

Complex ComplexPolynomial::evaluate(std::span<const Complex> point) const {
  Complex s = 0.0;
  for (const auto& [m, c] : terms_) {
    Complex v = c;
    for (size_t i = 0; i < point.size(); ++i) {
      for (int e = 0; e < m.a[i]; ++e) v *= point[i];
      for (int e = 0; e < m.b[i]; ++e) v *= std::conj(point[i]);
    }
    s += v;
  }
  return s;
}

ComplexPolynomial ComplexPolynomial::pruned(double tol) const {
  ComplexPolynomial r;
  for (const auto& [m, c] : terms_)
    if (std::abs(c) > tol) r.terms_[m] = c;
  return r;
}

ComplexPolynomial ComplexPolynomial::sphere_reduce(int nvars) const {
  const int m = nvars - 1;  // eliminate |ζ_m|²
  ComplexPolynomial result;
  ComplexPolynomial work = *this;
  while (!work.terms_.empty()) {
    ComplexPolynomial next;
    for (const auto& [key, c] : work.terms_) {
      if (key.a[m] >= 1 && key.b[m] >= 1) {
        // ζ_m ζ̄_m -> 1 - Σ_{i<m} ζ_i ζ̄_i
        MonomialKey base = key;
        base.a[m] -= 1;
        base.b[m] -= 1;
        next.add_term(base, c);
        for (int i = 0; i < m; ++i) {
          MonomialKey k2 = base;
          k2.a[i] += 1;
          k2.b[i] += 1;
          next.add_term(k2, -c);
        }
      } else {
        result.add_term(key, c);
      }
    }
    work = std::move(next);
  }
  return result;
}

namespace {
double log_factorial(int k) { return std::lgamma(static_cast<double>(k) + 1.0); }
}  // namespace

double monomial_integral(std::span<const int> alpha, std::span<const int> beta, int n) {
  if (alpha.size() != beta.size()) throw std::invalid_argument("monomial_integral: multi-index size mismatch");
  int total = 0;
  for (size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] != beta[i]) return 0.0;
    total += alpha[i];
  }
  const CRDimension dim(n);
  double log_ratio = log_factorial(n) - log_factorial(n + total);
  for (size_t i = 0; i < alpha.size(); ++i) log_ratio += log_factorial(alpha[i]);
  return dim.sphere_measure() * std::exp(log_ratio);
}

double monomial_integral(const MonomialKey& m, int n) {
  std::array<int, MonomialKey::kMaxVars> a{}, b{};
  for (int i = 0; i < MonomialKey::kMaxVars; ++i) {
    a[i] = m.a[i];
    b[i] = m.b[i];
  }
  return monomial_integral(std::span<const int>(a.data(), n + 1), std::span<const int>(b.data(), n + 1), n);
}

Complex sphere_inner_product(const ComplexPolynomial& p, const ComplexPolynomial& q, int n) {
  // ∫ p conj(q): the term-wise product has holomorphic exponents a_p + b_q
  // and antiholomorphic exponents b_p + a_q.
  Complex s = 0.0;
  for (const auto& [mp, cp] : p.terms()) {
    for (const auto& [mq, cq] : q.terms()) {
      MonomialKey m;
      for (int i = 0; i < MonomialKey::kMaxVars; ++i) {
        m.a[i] = static_cast<uint8_t>(mp.a[i] + mq.b[i]);
        m.b[i] = static_cast<uint8_t>(mp.b[i] + mq.a[i]);
      }
      const double I = monomial_integral(m, n);
      if (I != 0.0) s += cp * std::conj(cq) * I;
    }
  }
  return s;
}

double sphere_norm_sq(const ComplexPolynomial& p, int n) {
  return std::real(sphere_inner_product(p, p, n));
}

ComplexPolynomial apply_T(const ComplexPolynomial& p, int j, bool conjugated, int nvars) {
  if (j < 0 || j >= nvars) throw std::invalid_argument("apply_T: index out of range");
  // T_j p = ∂_j p - ζ̄_j Σ_k ζ_k ∂_k p ; T̄_j swaps the roles of ζ and ζ̄.
  ComplexPolynomial radial;
  for (int k = 0; k < nvars; ++k) {
    const ComplexPolynomial dk = p.derivative(k, conjugated);
    if (dk.empty()) continue;
    radial += ComplexPolynomial::variable(k, conjugated) * dk;
  }
  return p.derivative(j, conjugated) - ComplexPolynomial::variable(j, !conjugated) * radial;
}

ComplexPolynomial apply_conformal_sublaplacian(const ComplexPolynomial& p, int n) {
  const int nvars = n + 1;
  ComplexPolynomial sum;
  for (int j = 0; j < nvars; ++j) {
    sum += apply_T(apply_T(p, j, false, nvars), j, true, nvars);
    sum += apply_T(apply_T(p, j, true, nvars), j, false, nvars);
  }
  return p * Complex(0.25 * n * n) - sum * Complex(0.5);
}

double sublaplacian_eigenvalue(int j, int k, int n) {
  if (j < 0 || k < 0) throw std::invalid_argument("sublaplacian_eigenvalue: j,k must be >= 0");
  const double h = 0.5 * n;
  return (h + k) * (h + j);
}

double sublaplacian_eigenvalue_gamma(int j, int k, int n) {
  const double Q = 2.0 * n + 2.0;
  const double up = 0.25 * (Q + 2.0), dn = 0.25 * (Q - 2.0);
  return std::exp(std::lgamma(j + up) + std::lgamma(k + up) - std::lgamma(j + dn) - std::lgamma(k + dn));
}

}  // namespace crstab

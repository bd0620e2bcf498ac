#include "crstab/harmonics.hpp"

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>

namespace crstab {

namespace {

// All multi-indices over `vars` variables with |α| = total, lexicographic.
void enumerate_multi_indices(int vars, int total, std::vector<std::vector<int>>& out) {
  std::vector<int> cur(vars, 0);
  std::function<void(int, int)> rec = [&](int pos, int remaining) {
    if (pos == vars - 1) {
      cur[pos] = remaining;
      out.push_back(cur);
      return;
    }
    for (int v = remaining; v >= 0; --v) {
      cur[pos] = v;
      rec(pos + 1, remaining - v);
    }
  };
  rec(0, total);
}

ComplexPolynomial monomial_poly(const std::vector<int>& alpha, const std::vector<int>& beta) {
  MonomialKey m;
  for (size_t i = 0; i < alpha.size(); ++i) {
    m.a[i] = static_cast<uint8_t>(alpha[i]);
    m.b[i] = static_cast<uint8_t>(beta[i]);
  }
  ComplexPolynomial p;
  p.add_term(m, 1.0);
  return p;
}

// One round of orthogonalization of p against an orthonormal family.
void project_out(ComplexPolynomial& p, const std::vector<const ComplexPolynomial*>& family, int n) {
  for (const auto* f : family) {
    const Complex c = sphere_inner_product(p, *f, n);
    if (c != 0.0) p = p - (*f) * c;
  }
}

}  // namespace

long HarmonicBasis::dimension_formula(int n, int j, int k) {
  auto binom = [](long a, long b) {
    long r = 1;
    for (long i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  return (j + k + n) * binom(j + n - 1, n - 1) * binom(k + n - 1, n - 1) / n;
}

HarmonicBasis HarmonicBasis::build(int n, int D) {
  if (n < 1 || n + 1 > MonomialKey::kMaxVars)
    throw std::invalid_argument("HarmonicBasis::build: unsupported n");
  if (D < 0) throw std::invalid_argument("HarmonicBasis::build: D must be >= 0");

  const int nvars = n + 1;
  std::map<std::pair<int, int>, std::vector<ComplexPolynomial>> blocks;

  for (int d = 0; d <= D; ++d) {
    for (int j = d; 2 * j >= d; --j) {
      const int k = d - j;
      std::vector<std::vector<int>> alphas, betas;
      enumerate_multi_indices(nvars, j, alphas);
      enumerate_multi_indices(nvars, k, betas);

      std::vector<ComplexPolynomial> cands;
      cands.reserve(alphas.size() * betas.size());
      for (const auto& a : alphas)
        for (const auto& b : betas) cands.push_back(monomial_poly(a, b));

      // Lower components H_{j-m,k-m} share the restriction span of the
      // bidegree-(j,k) monomials; project them out first (twice).
      std::vector<const ComplexPolynomial*> lower;
      for (int m = 1; m <= k; ++m)
        for (const auto& e : blocks.at({j - m, k - m})) lower.push_back(&e);

      std::vector<double> orig_norm(cands.size());
      for (size_t i = 0; i < cands.size(); ++i) {
        orig_norm[i] = sphere_norm_sq(cands[i], n);
        project_out(cands[i], lower, n);
        project_out(cands[i], lower, n);
      }

      const long want = dimension_formula(n, j, k);
      std::vector<ComplexPolynomial> accepted;
      std::vector<bool> used(cands.size(), false);
      for (long a = 0; a < want; ++a) {
        // Pivot: largest residual norm, ties by candidate index.
        int pivot = -1;
        double best = -1.0;
        for (size_t i = 0; i < cands.size(); ++i) {
          if (used[i]) continue;
          const double nn = sphere_norm_sq(cands[i], n);
          if (nn > best) {
            best = nn;
            pivot = static_cast<int>(i);
          }
        }
        if (pivot < 0 || best < 1e-18 * orig_norm[pivot]) {
          throw std::runtime_error("HarmonicBasis::build: Gram matrix numerically singular at bidegree (" +
                                   std::to_string(j) + "," + std::to_string(k) + ")");
        }
        ComplexPolynomial e = cands[pivot];
        std::vector<const ComplexPolynomial*> acc_ptrs;
        for (const auto& q : accepted) acc_ptrs.push_back(&q);
        project_out(e, acc_ptrs, n);  // second pass against accepted
        e = e * Complex(1.0 / std::sqrt(sphere_norm_sq(e, n)));
        e = e.pruned(1e-300);
        used[pivot] = true;
        // Modified GS update of the remaining candidates.
        for (size_t i = 0; i < cands.size(); ++i) {
          if (used[i]) continue;
          const Complex c = sphere_inner_product(cands[i], e, n);
          if (c != 0.0) cands[i] = cands[i] - e * c;
        }
        accepted.push_back(std::move(e));
      }
      blocks[{j, k}] = accepted;
      if (j != k) {
        std::vector<ComplexPolynomial> conj_block;
        conj_block.reserve(accepted.size());
        for (const auto& e : accepted) conj_block.push_back(e.conjugate());
        blocks[{k, j}] = std::move(conj_block);
      }
    }
  }

  HarmonicBasis basis;
  basis.n = n;
  basis.max_degree = D;
  for (int d = 0; d <= D; ++d) {
    for (int j = 0; j <= d; ++j) {
      const int k = d - j;
      const auto& blk = blocks.at({j, k});
      for (size_t i = 0; i < blk.size(); ++i) {
        BasisElement e;
        e.j = j;
        e.k = k;
        e.idx = static_cast<int>(i);
        e.lambda = sublaplacian_eigenvalue(j, k, n);
        e.poly = blk[i];
        basis.elements.push_back(std::move(e));
      }
    }
  }
  return basis;
}

std::pair<int, int> HarmonicBasis::block(int j, int k) const {
  int begin = -1, count = 0;
  for (size_t i = 0; i < elements.size(); ++i) {
    if (elements[i].j == j && elements[i].k == k) {
      if (begin < 0) begin = static_cast<int>(i);
      ++count;
    }
  }
  if (begin < 0) throw std::out_of_range("HarmonicBasis::block: (j,k) not in basis");
  return {begin, count};
}

int HarmonicBasis::conjugate_index(int i) const {
  const auto& e = elements.at(i);
  if (e.j == e.k) return i;
  auto [begin, count] = block(e.k, e.j);
  (void)count;
  return begin + e.idx;
}

double HarmonicBasis::eigen_residual(int i) const {
  const auto& e = elements.at(i);
  // L Y - λY lies in the sphere ideal; canonicalize before taking the norm so
  // the cancellation happens in coefficient space, not inside the integrals.
  const ComplexPolynomial r =
      (apply_conformal_sublaplacian(e.poly, n) - e.poly * Complex(e.lambda)).sphere_reduce(n + 1);
  return std::sqrt(std::max(0.0, sphere_norm_sq(r, n)) / sphere_norm_sq(e.poly, n));
}

namespace {
constexpr uint32_t kMagic = 0x43525342;  // "CRSB"
constexpr uint32_t kVersion = 1;

template <typename T>
void put(std::ofstream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}
template <typename T>
void get(std::ifstream& is, T& v) {
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
}
}  // namespace

void HarmonicBasis::save(const std::string& path) const {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("HarmonicBasis::save: cannot open " + path);
  put(os, kMagic);
  put(os, kVersion);
  put(os, static_cast<uint32_t>(n));
  put(os, static_cast<uint32_t>(max_degree));
  put(os, static_cast<uint64_t>(elements.size()));
  for (const auto& e : elements) {
    put(os, static_cast<int32_t>(e.j));
    put(os, static_cast<int32_t>(e.k));
    put(os, static_cast<int32_t>(e.idx));
    put(os, e.lambda);
    put(os, static_cast<uint64_t>(e.poly.term_count()));
    for (const auto& [m, c] : e.poly.terms()) {
      os.write(reinterpret_cast<const char*>(m.a.data()), m.a.size());
      os.write(reinterpret_cast<const char*>(m.b.data()), m.b.size());
      const double re = c.real(), im = c.imag();
      put(os, re);
      put(os, im);
    }
  }
}

HarmonicBasis HarmonicBasis::load(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("HarmonicBasis::load: cannot open " + path);
  uint32_t magic = 0, version = 0, n32 = 0, d32 = 0;
  uint64_t count = 0;
  get(is, magic);
  get(is, version);
  if (magic != kMagic || version != kVersion)
    throw std::runtime_error("HarmonicBasis::load: bad magic or version in " + path);
  get(is, n32);
  get(is, d32);
  get(is, count);
  HarmonicBasis basis;
  basis.n = static_cast<int>(n32);
  basis.max_degree = static_cast<int>(d32);
  basis.elements.resize(count);
  for (auto& e : basis.elements) {
    int32_t j, k, idx;
    get(is, j);
    get(is, k);
    get(is, idx);
    e.j = j;
    e.k = k;
    e.idx = idx;
    get(is, e.lambda);
    uint64_t nterms = 0;
    get(is, nterms);
    for (uint64_t t = 0; t < nterms; ++t) {
      MonomialKey m;
      is.read(reinterpret_cast<char*>(m.a.data()), m.a.size());
      is.read(reinterpret_cast<char*>(m.b.data()), m.b.size());
      double re, im;
      get(is, re);
      get(is, im);
      e.poly.add_term(m, Complex(re, im));
    }
  }
  if (!is) throw std::runtime_error("HarmonicBasis::load: truncated file " + path);
  return basis;
}

HarmonicBasis HarmonicBasis::load_or_build(int n, int D, const std::optional<std::string>& cache_dir) {
  if (cache_dir && !cache_dir->empty()) {
    std::filesystem::create_directories(*cache_dir);
    const std::string path =
        *cache_dir + "/basis_n" + std::to_string(n) + "_D" + std::to_string(D) + ".bin";
    if (std::filesystem::exists(path)) {
      try {
        HarmonicBasis b = load(path);
        if (b.n == n && b.max_degree == D) return b;
      } catch (const std::exception&) {
        // fall through and rebuild
      }
    }
    HarmonicBasis b = build(n, D);
    b.save(path);
    return b;
  }
  return build(n, D);
}

}  // namespace crstab

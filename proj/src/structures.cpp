#include "slra/structures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "slra/linalg.hpp"

namespace slra {

double PolyPair::norm() const {
  double acc = 0.0;
  for (double c : f) acc += c * c;
  for (double c : g) acc += c * c;
  return std::sqrt(acc);
}

namespace {

std::vector<double> parse_poly_line(const std::string& line) {
  std::istringstream words(line);
  std::vector<double> coeffs;
  double c;
  while (words >> c) {
    if (!std::isfinite(c))
      throw std::invalid_argument("PolyPair: non-finite coefficient");
    coeffs.push_back(c);
  }
  if (!words.eof())
    throw std::invalid_argument("PolyPair: malformed coefficient line");
  if (coeffs.empty())
    throw std::invalid_argument("PolyPair: empty polynomial line");
  return coeffs;
}

}  // namespace

PolyPair PolyPair::read(std::istream& in) {
  std::string line_f, line_g;
  if (!std::getline(in, line_f) || !std::getline(in, line_g))
    throw std::invalid_argument("PolyPair: expected two coefficient lines");
  return {parse_poly_line(line_f), parse_poly_line(line_g)};
}

void PolyPair::write(std::ostream& out) const {
  auto put = [&out](const std::vector<double>& poly) {
    char buf[32];
    for (size_t i = 0; i < poly.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", poly[i]);
      out << (i ? " " : "") << buf;
    }
    out << '\n';
  };
  put(f);
  put(g);
}

std::vector<double> poly_mul(const std::vector<double>& a,
                             const std::vector<double>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

namespace {

void check_sylvester_args(int m, int n, int d) {
  if (m < 1 || n < 1)
    throw std::invalid_argument("sylvester: polynomial degrees must be >= 1");
  if (d < 1 || d > std::min(m, n))
    throw std::invalid_argument("sylvester: need 1 <= d <= min(deg f, deg g)");
}

}  // namespace

DenseMatrix sylvester_matrix(const PolyPair& pair, int d_gcd) {
  const int m = pair.deg_f(), n = pair.deg_g();
  check_sylvester_args(m, n, d_gcd);
  DenseMatrix s(m + n - d_gcd + 1, m + n - 2 * d_gcd + 2);
  // Column k of the first block carries x^k * f written highest coefficient
  // first starting at row k; likewise for g in the second block.
  for (int k = 0; k <= n - d_gcd; ++k)
    for (int j = 0; j <= m; ++j) s(k + m - j, k) = pair.f[j];
  for (int k = 0; k <= m - d_gcd; ++k)
    for (int j = 0; j <= n; ++j) s(k + n - j, n - d_gcd + 1 + k) = pair.g[j];
  return s;
}

namespace {

AffineStructure build_sylvester_structure(int m, int n, int d) {
  check_sylvester_args(m, n, d);
  const int rows = m + n - d + 1;
  const int cols = m + n - 2 * d + 2;

  // One generator per coefficient: the indicator of its band, normalized.
  // Bands are disjoint, so the family is orthonormal as written.
  std::vector<DenseMatrix> basis;
  basis.reserve(m + n + 2);
  const double wf = 1.0 / std::sqrt(n - d + 1.0);
  for (int j = 0; j <= m; ++j) {
    DenseMatrix e(rows, cols);
    for (int k = 0; k <= n - d; ++k) e(k + m - j, k) = wf;
    basis.push_back(std::move(e));
  }
  const double wg = 1.0 / std::sqrt(m - d + 1.0);
  for (int j = 0; j <= n; ++j) {
    DenseMatrix e(rows, cols);
    for (int k = 0; k <= m - d; ++k) e(k + n - j, n - d + 1 + k) = wg;
    basis.push_back(std::move(e));
  }
  return AffineStructure::from_orthonormal_basis(DenseMatrix(rows, cols),
                                                 std::move(basis));
}

}  // namespace

SylvesterStructure::SylvesterStructure(int deg_f, int deg_g, int d_gcd)
    : m_(deg_f),
      n_(deg_g),
      d_(d_gcd),
      structure_(build_sylvester_structure(deg_f, deg_g, d_gcd)) {}

DenseMatrix SylvesterStructure::embed(const PolyPair& pair) const {
  if (pair.deg_f() != m_ || pair.deg_g() != n_)
    throw std::invalid_argument("SylvesterStructure: degree mismatch in embed");
  return sylvester_matrix(pair, d_);
}

PolyPair SylvesterStructure::extract(const DenseMatrix& matrix) const {
  if (matrix.rows() != structure_.rows() || matrix.cols() != structure_.cols())
    throw std::invalid_argument("SylvesterStructure: shape mismatch in extract");
  PolyPair pair;
  pair.f.assign(m_ + 1, 0.0);
  pair.g.assign(n_ + 1, 0.0);
  for (int j = 0; j <= m_; ++j) {
    double acc = 0.0;
    for (int k = 0; k <= n_ - d_; ++k) acc += matrix(k + m_ - j, k);
    pair.f[j] = acc / (n_ - d_ + 1);
  }
  for (int j = 0; j <= n_; ++j) {
    double acc = 0.0;
    for (int k = 0; k <= m_ - d_; ++k) acc += matrix(k + n_ - j, n_ - d_ + 1 + k);
    pair.g[j] = acc / (m_ - d_ + 1);
  }
  return pair;
}

AffineStructure completion_structure(const CoordinateMask& mask) {
  if (mask.rows < 1 || mask.cols < 1)
    throw std::invalid_argument("completion_structure: empty shape");

  DenseMatrix base(mask.rows, mask.cols);
  std::set<std::pair<int, int>> seen;
  for (const auto& obs : mask.observed) {
    if (obs.row < 0 || obs.row >= mask.rows || obs.col < 0 ||
        obs.col >= mask.cols)
      throw std::invalid_argument("completion_structure: coordinate out of range");
    if (!std::isfinite(obs.value))
      throw std::invalid_argument("completion_structure: non-finite observation");
    if (!seen.emplace(obs.row, obs.col).second)
      throw std::invalid_argument("completion_structure: duplicate coordinate");
    base(obs.row, obs.col) = obs.value;
  }

  // Unobserved coordinates span the directions; observed ones are the
  // complement. Both families are orthonormal by construction, so the
  // structure is assembled without any Gram-Schmidt work.
  std::vector<DenseMatrix> basis;
  std::vector<DenseMatrix> complement;
  for (int i = 0; i < mask.rows; ++i)
    for (int j = 0; j < mask.cols; ++j) {
      DenseMatrix e(mask.rows, mask.cols);
      e(i, j) = 1.0;
      if (seen.count({i, j}))
        complement.push_back(std::move(e));
      else
        basis.push_back(std::move(e));
    }
  return AffineStructure::from_orthonormal_basis(
      std::move(base), std::move(basis), std::move(complement));
}

namespace {

AffineStructure build_hankel_structure(int p, int q) {
  if (p < 1 || q < 1)
    throw std::invalid_argument("HankelStructure: empty shape");
  std::vector<DenseMatrix> basis;
  basis.reserve(p + q - 1);
  for (int s = 0; s <= p + q - 2; ++s) {
    DenseMatrix e(p, q);
    int count = 0;
    for (int i = std::max(0, s - q + 1); i <= std::min(p - 1, s); ++i) {
      e(i, s - i) = 1.0;
      ++count;
    }
    const double w = 1.0 / std::sqrt(static_cast<double>(count));
    e *= w;
    basis.push_back(std::move(e));
  }
  return AffineStructure::from_orthonormal_basis(DenseMatrix(p, q),
                                                 std::move(basis));
}

}  // namespace

HankelStructure::HankelStructure(int rows, int cols)
    : p_(rows), q_(cols), structure_(build_hankel_structure(rows, cols)) {}

DenseMatrix HankelStructure::embed(const HankelSpec& spec) const {
  if (spec.rows != p_ || spec.cols != q_ ||
      spec.antidiagonals.size() != static_cast<size_t>(p_ + q_ - 1))
    throw std::invalid_argument("HankelStructure: spec shape mismatch");
  DenseMatrix h(p_, q_);
  for (int i = 0; i < p_; ++i)
    for (int j = 0; j < q_; ++j) h(i, j) = spec.antidiagonals[i + j];
  return h;
}

HankelSpec HankelStructure::extract(const DenseMatrix& matrix) const {
  if (matrix.rows() != p_ || matrix.cols() != q_)
    throw std::invalid_argument("HankelStructure: shape mismatch in extract");
  HankelSpec spec;
  spec.rows = p_;
  spec.cols = q_;
  spec.antidiagonals.assign(p_ + q_ - 1, 0.0);
  for (int s = 0; s <= p_ + q_ - 2; ++s) {
    double acc = 0.0;
    int count = 0;
    for (int i = std::max(0, s - q_ + 1); i <= std::min(p_ - 1, s); ++i) {
      acc += matrix(i, s - i);
      ++count;
    }
    spec.antidiagonals[s] = acc / count;
  }
  return spec;
}

GcdRecovery recover_gcd(const PolyPair& pair, int d_gcd) {
  const int m = pair.deg_f(), n = pair.deg_g();
  check_sylvester_args(m, n, d_gcd);

  // Kernel vector of the truncated Sylvester matrix: u f + v g = 0 with
  // deg u = n - d, deg v = m - d, so u is proportional to g's cofactor and
  // -v to f's.
  DenseMatrix s = sylvester_matrix(pair, d_gcd);
  SvdFactors fac = svd(s);
  const int last = s.cols() - 1;
  std::vector<double> u(n - d_gcd + 1), v(m - d_gcd + 1);
  // Column k of the v factor corresponds to singular value k; the kernel
  // direction is the last column. Column k of the f block carries
  // x^(n-d-k) * f, so the kernel coordinates list the cofactor coefficients
  // highest degree first: read them in reverse to get low-first vectors.
  for (int k = 0; k <= n - d_gcd; ++k) u[k] = fac.v(n - d_gcd - k, last);
  for (int k = 0; k <= m - d_gcd; ++k)
    v[k] = fac.v(n - d_gcd + 1 + (m - d_gcd - k), last);

  GcdRecovery out;
  out.cofactor_g = u;
  out.cofactor_f.assign(v.size(), 0.0);
  for (size_t k = 0; k < v.size(); ++k) out.cofactor_f[k] = -v[k];

  // Stacked least-squares deconvolution: choose h minimizing
  // |f - h * cofactor_f|^2 + |g - h * cofactor_g|^2.
  const int hs = d_gcd + 1;
  DenseMatrix conv(static_cast<int>(pair.f.size() + pair.g.size()), hs);
  std::vector<double> rhs;
  rhs.reserve(pair.f.size() + pair.g.size());
  for (size_t i = 0; i < pair.f.size(); ++i) {
    for (int k = 0; k < hs; ++k) {
      const int idx = static_cast<int>(i) - k;
      if (idx >= 0 && idx < static_cast<int>(out.cofactor_f.size()))
        conv(static_cast<int>(i), k) = out.cofactor_f[idx];
    }
    rhs.push_back(pair.f[i]);
  }
  const int off = static_cast<int>(pair.f.size());
  for (size_t i = 0; i < pair.g.size(); ++i) {
    for (int k = 0; k < hs; ++k) {
      const int idx = static_cast<int>(i) - k;
      if (idx >= 0 && idx < static_cast<int>(out.cofactor_g.size()))
        conv(off + static_cast<int>(i), k) = out.cofactor_g[idx];
    }
    rhs.push_back(pair.g[i]);
  }
  out.common = min_norm_solve(conv, rhs);

  // Normalize the common factor to be monic; push the scale into the
  // cofactors so the products are unchanged.
  const double lead = out.common.back();
  if (lead != 0.0) {
    for (double& c : out.common) c /= lead;
    for (double& c : out.cofactor_f) c *= lead;
    for (double& c : out.cofactor_g) c *= lead;
  }
  return out;
}

}  // namespace slra

#pragma once

#include <iosfwd>
#include <vector>

#include "slra/subspace.hpp"

namespace slra {

/// A pair of univariate real polynomials, coefficients stored low degree
/// first (f[k] multiplies x^k). Degrees are fixed by the vector lengths;
/// leading coefficients may be zero for perturbed data.
struct PolyPair {
  std::vector<double> f;
  std::vector<double> g;

  int deg_f() const noexcept { return static_cast<int>(f.size()) - 1; }
  int deg_g() const noexcept { return static_cast<int>(g.size()) - 1; }

  /// Euclidean norm of the stacked coefficient vector (f, g).
  double norm() const;

  /// Text format: two lines, one polynomial per line, coefficients low
  /// degree first, separated by whitespace.
  static PolyPair read(std::istream& in);
  void write(std::ostream& out) const;
};

std::vector<double> poly_mul(const std::vector<double>& a,
                             const std::vector<double>& b);

/// Subresultant-style Sylvester matrix of (f, g) truncated for common-divisor
/// degree d: shape (m+n-d+1) x (m+n-2d+2) with n-d+1 shifted copies of f's
/// coefficients followed by m-d+1 shifted copies of g's, highest coefficient
/// on top of each column. Its rank drops below m+n-2d+1 exactly when
/// deg gcd(f, g) >= d, which is what ties approximate GCD computation to
/// structured low-rank approximation.
DenseMatrix sylvester_matrix(const PolyPair& pair, int d_gcd);

/// The affine structure swept by sylvester_matrix as the coefficients of
/// (f, g) vary, together with the coefficient embedding and its inverse.
class SylvesterStructure {
public:
  SylvesterStructure(int deg_f, int deg_g, int d_gcd);

  const AffineStructure& structure() const noexcept { return structure_; }
  int deg_f() const noexcept { return m_; }
  int deg_g() const noexcept { return n_; }
  int d_gcd() const noexcept { return d_; }
  /// Rank certifying deg gcd >= d: one below the full column count.
  int target_rank() const noexcept { return m_ + n_ - 2 * d_ + 1; }

  DenseMatrix embed(const PolyPair& pair) const;

  /// Reads the coefficients back out of any matrix in the structure by
  /// averaging each coefficient's band (exact on embedded matrices, and the
  /// orthogonal projection onto embeddings otherwise).
  PolyPair extract(const DenseMatrix& matrix) const;

private:
  int m_, n_, d_;
  AffineStructure structure_;
};

inline SylvesterStructure sylvester_structure(int deg_f, int deg_g, int d_gcd) {
  return SylvesterStructure(deg_f, deg_g, d_gcd);
}

/// Partially observed matrix: the observed coordinates and their values.
struct CoordinateMask {
  struct Observation {
    int row;
    int col;
    double value;
  };
  int rows = 0;
  int cols = 0;
  std::vector<Observation> observed;
};

/// E = matrices agreeing with the mask on the observed coordinates. The
/// direction space is spanned by the unobserved coordinate matrices (already
/// orthonormal, complement known for free), the base holds the observed
/// values with zeros elsewhere. Duplicate coordinates are rejected. A fully
/// observed mask yields the degenerate single-point structure.
AffineStructure completion_structure(const CoordinateMask& mask);

/// Values along the antidiagonals of a p x q Hankel matrix:
/// antidiagonals[s] = H(i, j) for all i + j = s (0-based), s in
/// [0, p + q - 2].
struct HankelSpec {
  int rows = 0;
  int cols = 0;
  std::vector<double> antidiagonals;
};

/// The subspace of p x q Hankel matrices with the embedding and the
/// antidiagonal-averaging extraction.
class HankelStructure {
public:
  HankelStructure(int rows, int cols);

  const AffineStructure& structure() const noexcept { return structure_; }
  int rows() const noexcept { return p_; }
  int cols() const noexcept { return q_; }

  DenseMatrix embed(const HankelSpec& spec) const;
  HankelSpec extract(const DenseMatrix& matrix) const;

private:
  int p_, q_;
  AffineStructure structure_;
};

inline HankelStructure hankel_structure(int rows, int cols) {
  return HankelStructure(rows, cols);
}

/// Factors recovered from a rank-deficient Sylvester embedding: the
/// (monic-normalized) approximate common divisor of degree d and the
/// cofactors f = common * cofactor_f, g = common * cofactor_g.
struct GcdRecovery {
  std::vector<double> common;
  std::vector<double> cofactor_f;
  std::vector<double> cofactor_g;
};

/// Recovers an approximate degree-d GCD from a polynomial pair whose
/// truncated Sylvester matrix is (numerically) rank deficient: the kernel
/// vector gives the cofactors, the common factor follows by least-squares
/// deconvolution of both products.
GcdRecovery recover_gcd(const PolyPair& pair, int d_gcd);

}  // namespace slra

#include "property_suites.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "slra/dense_matrix.hpp"
#include "slra/detail/eigen_interop.hpp"
#include "slra/linalg.hpp"
#include "slra/manifold.hpp"
#include "slra/rng.hpp"
#include "slra/structures.hpp"
#include "slra/subspace.hpp"

using slra::AffineStructure;
using slra::DenseMatrix;
using slra::RankProjection;
using slra::Rng;
using slra::SvdFactors;

namespace {

constexpr double kTol = 1e-10;

DenseMatrix random_matrix(int rows, int cols, Rng& rng) {
  DenseMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rng.gaussian();
  return m;
}

std::string describe(const char* check, int case_index, double got,
                     double bound) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%s (case %d: %.3e vs bound %.3e)", check,
                case_index, got, bound);
  return buf;
}

}  // namespace

void PropertyReport::expect(bool pass, const std::string& what) {
  ++checks;
  if (!pass) {
    ++failures;
    if (first_failure.empty()) first_failure = what;
  }
}

PropertyReport run_linalg_properties(int cases, std::uint64_t seed) {
  PropertyReport report;
  report.cases = cases;
  Rng rng(seed);

  for (int c = 0; c < cases; ++c) {
    const int p = 1 + static_cast<int>(rng.below(6));
    const int q = 1 + static_cast<int>(rng.below(6));

    // Inner product: symmetry and positivity.
    {
      const DenseMatrix a = random_matrix(p, q, rng);
      const DenseMatrix b = random_matrix(p, q, rng);
      const double ab = frobenius_inner(a, b);
      const double ba = frobenius_inner(b, a);
      report.expect(std::abs(ab - ba) <= kTol * std::max(1.0, std::abs(ab)),
                    describe("inner symmetry", c, std::abs(ab - ba), kTol));
      const double aa = frobenius_inner(a, a);
      const double n = frobenius_norm(a);
      report.expect(aa >= 0.0, describe("inner positivity", c, aa, 0.0));
      report.expect(std::abs(aa - n * n) <= kTol * std::max(1.0, aa),
                    describe("norm consistency", c, std::abs(aa - n * n), kTol));
    }

    // SVD: orthogonal factors, sorted spectrum, reconstruction.
    {
      const DenseMatrix m = random_matrix(p, q, rng);
      const SvdFactors fac = slra::svd(m);
      auto eu = slra::detail::as_eigen(fac.u);
      auto ev = slra::detail::as_eigen(fac.v);
      const double du =
          (eu.transpose() * eu -
           Eigen::MatrixXd::Identity(p, p)).norm();
      const double dv =
          (ev.transpose() * ev -
           Eigen::MatrixXd::Identity(q, q)).norm();
      report.expect(du <= 1e-12 * p, describe("U orthogonality", c, du, 1e-12 * p));
      report.expect(dv <= 1e-12 * q, describe("V orthogonality", c, dv, 1e-12 * q));
      bool sorted = true;
      for (size_t i = 0; i + 1 < fac.sigma.size(); ++i)
        if (fac.sigma[i] < fac.sigma[i + 1]) sorted = false;
      report.expect(sorted && (fac.sigma.empty() || fac.sigma.back() >= 0.0),
                    describe("sigma sorted nonnegative", c, 0.0, 0.0));
      Eigen::MatrixXd s = Eigen::MatrixXd::Zero(p, q);
      for (size_t i = 0; i < fac.sigma.size(); ++i) s(i, i) = fac.sigma[i];
      const double scale = std::max(frobenius_norm(m), 1e-300);
      const double rec =
          (eu * s * ev.transpose() - slra::detail::as_eigen(m)).norm();
      report.expect(rec <= 1e-12 * scale,
                    describe("svd reconstruction", c, rec / scale, 1e-12));
    }

    // Minimum-norm least squares on consistent systems.
    {
      const int k = 1 + static_cast<int>(rng.below(6));
      const int n = 1 + static_cast<int>(rng.below(6));
      const int rk = 1 + static_cast<int>(rng.below(
                             static_cast<std::uint64_t>(std::min(k, n))));
      const DenseMatrix bl = random_matrix(k, rk, rng);
      const DenseMatrix br = random_matrix(rk, n, rng);
      Eigen::MatrixXd ea =
          slra::detail::as_eigen(bl) * slra::detail::as_eigen(br);
      const DenseMatrix a = slra::detail::from_eigen(ea);
      Eigen::VectorXd x0(n);
      for (int i = 0; i < n; ++i) x0[i] = rng.gaussian();
      Eigen::VectorXd eb = ea * x0;
      const std::vector<double> b(eb.data(), eb.data() + k);

      const std::vector<double> x = slra::min_norm_solve(a, b);
      Eigen::Map<const Eigen::VectorXd> ex(x.data(), n);
      const double resid = (ea * ex - eb).norm();
      const double bscale = std::max(1.0, eb.norm());
      report.expect(resid <= kTol * bscale,
                    describe("lsq residual", c, resid / bscale, kTol));

      // x must not be longer than any other solution: perturb along the
      // null space sampled through an independent decomposition.
      Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(ea);
      Eigen::MatrixXd null_proj =
          Eigen::MatrixXd::Identity(n, n) - cod.pseudoInverse() * ea;
      for (int t = 0; t < 3; ++t) {
        Eigen::VectorXd z(n);
        for (int i = 0; i < n; ++i) z[i] = rng.gaussian();
        const Eigen::VectorXd y = ex + null_proj * z;
        report.expect(ex.norm() <= y.norm() + kTol,
                      describe("lsq min-norm", c, ex.norm() - y.norm(), kTol));
      }
    }

    // Gram-Schmidt: orthonormal output spanning the input.
    {
      const int count = 1 + static_cast<int>(rng.below(5));
      std::vector<DenseMatrix> family;
      for (int i = 0; i < count; ++i) {
        if (!family.empty() && rng.uniform01() < 0.3) {
          // A dependent member: random combination of what is already there.
          DenseMatrix dep(p, q);
          for (const auto& f : family) {
            DenseMatrix scaled = f;
            scaled *= rng.uniform(-2.0, 2.0);
            dep += scaled;
          }
          family.push_back(std::move(dep));
        } else {
          family.push_back(random_matrix(p, q, rng));
        }
      }
      const std::vector<DenseMatrix> basis = slra::gram_schmidt(family);
      double gram_dev = 0.0;
      for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = 0; j < basis.size(); ++j) {
          const double want = i == j ? 1.0 : 0.0;
          gram_dev = std::max(
              gram_dev, std::abs(frobenius_inner(basis[i], basis[j]) - want));
        }
      report.expect(gram_dev <= kTol, describe("gram-schmidt orthonormal", c,
                                               gram_dev, kTol));
      for (const auto& f : family) {
        DenseMatrix resid = f;
        for (const auto& e : basis) {
          DenseMatrix scaled = e;
          scaled *= frobenius_inner(f, e);
          resid -= scaled;
        }
        const double r = frobenius_norm(resid);
        const double bound = 1e-8 * std::max(1.0, frobenius_norm(f));
        report.expect(r <= bound, describe("gram-schmidt span", c, r, bound));
      }
    }
  }
  return report;
}

PropertyReport run_subspace_properties(int cases, std::uint64_t seed) {
  PropertyReport report;
  report.cases = cases;
  Rng rng(seed);

  for (int c = 0; c < cases; ++c) {
    const int p = 2 + static_cast<int>(rng.below(4));
    const int q = 2 + static_cast<int>(rng.below(4));

    AffineStructure structure = [&]() -> AffineStructure {
      switch (c % 3) {
        case 0: {
          const int want = 1 + static_cast<int>(rng.below(
                                   static_cast<std::uint64_t>(p * q - 1)));
          std::vector<DenseMatrix> gens;
          for (int i = 0; i < want; ++i) gens.push_back(random_matrix(p, q, rng));
          if (rng.uniform01() < 0.5) gens.push_back(gens.front());  // dependent
          return AffineStructure::from_generators(random_matrix(p, q, rng),
                                                  gens);
        }
        case 1:
          return slra::hankel_structure(p, q).structure();
        default: {
          slra::CoordinateMask mask;
          mask.rows = p;
          mask.cols = q;
          for (int i = 0; i < p; ++i)
            for (int j = 0; j < q; ++j)
              if (rng.uniform01() < 0.4)
                mask.observed.push_back({i, j, rng.gaussian()});
          if (mask.observed.empty()) mask.observed.push_back({0, 0, 1.0});
          if (static_cast<int>(mask.observed.size()) == p * q)
            mask.observed.pop_back();
          return slra::completion_structure(mask);
        }
      }
    }();

    const DenseMatrix x = random_matrix(p, q, rng);
    const DenseMatrix y = random_matrix(p, q, rng);
    const DenseMatrix px = structure.project_onto(x);
    const DenseMatrix py = structure.project_onto(y);

    // Idempotence.
    const double idem = frobenius_norm(structure.project_onto(px) - px);
    report.expect(idem <= kTol * std::max(1.0, frobenius_norm(px)),
                  describe("projection idempotent", c, idem, kTol));

    // 1-Lipschitz.
    const double dxy = frobenius_norm(x - y);
    const double dpxy = frobenius_norm(px - py);
    report.expect(dpxy <= dxy + kTol * std::max(1.0, dxy),
                  describe("projection Lipschitz", c, dpxy - dxy, kTol));

    // Residual orthogonal to every basis element.
    const DenseMatrix resid = x - px;
    const double xscale = std::max(1.0, frobenius_norm(x));
    for (const auto& e : structure.basis()) {
      const double coeff = std::abs(frobenius_inner(resid, e));
      report.expect(coeff <= kTol * xscale,
                    describe("residual orthogonality", c, coeff, kTol * xscale));
    }

    // basis + complement is an orthonormal basis of the whole space.
    std::vector<const DenseMatrix*> full;
    for (const auto& e : structure.basis()) full.push_back(&e);
    for (const auto& e : structure.complement()) full.push_back(&e);
    report.expect(static_cast<int>(full.size()) == p * q,
                  describe("full family size", c,
                           static_cast<double>(full.size()),
                           static_cast<double>(p * q)));
    double gram_dev = 0.0;
    for (size_t i = 0; i < full.size(); ++i)
      for (size_t j = i; j < full.size(); ++j) {
        const double want = i == j ? 1.0 : 0.0;
        gram_dev = std::max(
            gram_dev, std::abs(frobenius_inner(*full[i], *full[j]) - want));
      }
    report.expect(gram_dev <= 1e-9,
                  describe("basis+complement Gram", c, gram_dev, 1e-9));

    // Parseval: membership residual equals the complement-coordinate norm.
    double through_complement = 0.0;
    const DenseMatrix centered = x - structure.base();
    for (const auto& e : structure.complement()) {
      const double coeff = frobenius_inner(centered, e);
      through_complement += coeff * coeff;
    }
    through_complement = std::sqrt(through_complement);
    const double direct = structure.membership_residual(x);
    report.expect(std::abs(direct - through_complement) <= kTol * xscale,
                  describe("membership Parseval", c,
                           std::abs(direct - through_complement), kTol * xscale));
  }
  return report;
}

PropertyReport run_manifold_properties(int cases, std::uint64_t seed) {
  PropertyReport report;
  report.cases = cases;
  Rng rng(seed);

  for (int c = 0; c < cases; ++c) {
    const int p = 2 + static_cast<int>(rng.below(5));
    const int q = 2 + static_cast<int>(rng.below(5));
    const int r = 1 + static_cast<int>(rng.below(
                          static_cast<std::uint64_t>(std::min(p, q) - 1)));
    const DenseMatrix m = random_matrix(p, q, rng);

    RankProjection proj = [&] {
      // Gaussian matrices have simple spectrum almost surely; retry the
      // measure-zero collisions rather than skipping the case.
      for (;;) {
        try {
          return RankProjection::compute(m, r);
        } catch (const slra::GapTooSmall&) {
          continue;
        }
      }
    }();

    const double mscale = std::max(1.0, frobenius_norm(m));

    // The truncation really is rank <= r, and distance() matches the direct
    // Frobenius distance.
    {
      const SvdFactors tf = slra::svd(proj.truncated());
      report.expect(tf.sigma[r] <= kTol * std::max(1.0, tf.sigma[0]),
                    describe("truncation rank", c, tf.sigma[r], kTol));
      const double direct = frobenius_norm(m - proj.truncated());
      report.expect(std::abs(direct - proj.distance()) <= kTol * mscale,
                    describe("distance consistency", c,
                             std::abs(direct - proj.distance()), kTol));
    }

    // Eckart-Young minimality against sampled rank-r competitors.
    {
      auto eu = slra::detail::as_eigen(proj.u());
      auto ev = slra::detail::as_eigen(proj.v());
      Eigen::MatrixXd wl = eu.leftCols(r);
      Eigen::MatrixXd wr = ev.leftCols(r);
      for (int i = 0; i < r; ++i) wl.col(i) *= proj.sigma()[i];
      for (int t = 0; t < 5; ++t) {
        Eigen::MatrixXd dl(p, r), dr(q, r);
        for (int i = 0; i < p; ++i)
          for (int j = 0; j < r; ++j) dl(i, j) = 0.1 * rng.gaussian();
        for (int i = 0; i < q; ++i)
          for (int j = 0; j < r; ++j) dr(i, j) = 0.1 * rng.gaussian();
        Eigen::MatrixXd competitor = (wl + dl) * (wr + dr).transpose();
        const double dist_comp =
            (slra::detail::as_eigen(m) - competitor).norm();
        report.expect(proj.distance() <= dist_comp + kTol,
                      describe("Eckart-Young minimality", c,
                               proj.distance() - dist_comp, kTol));
      }
    }

    // Parseval duality of the normal and tangent coordinates.
    const DenseMatrix x = random_matrix(p, q, rng);
    {
      const std::vector<double> nc = proj.normal_inner(x);
      const std::vector<double> tc = proj.tangent_inner(x);
      double total = 0.0;
      for (double v : nc) total += v * v;
      for (double v : tc) total += v * v;
      const double xx = frobenius_inner(x, x);
      report.expect(std::abs(total - xx) <= kTol * std::max(1.0, xx),
                    describe("normal/tangent Parseval", c,
                             std::abs(total - xx), kTol));
    }

    // Tangent family elements have zero normal coordinates.
    for (int t = 0; t < 3; ++t) {
      std::vector<double> coeffs(proj.tangent_dim(), 0.0);
      coeffs[rng.below(coeffs.size())] = 1.0;
      const DenseMatrix tangent_elem = proj.tangent_combine(coeffs);
      double worst = 0.0;
      for (double v : proj.normal_inner(tangent_elem))
        worst = std::max(worst, std::abs(v));
      report.expect(worst <= kTol,
                    describe("tangent normal-free", c, worst, kTol));
    }

    // Tangent round-trip: coefficients -> matrix -> coefficients.
    {
      std::vector<double> coeffs(proj.tangent_dim());
      for (double& v : coeffs) v = rng.gaussian();
      const DenseMatrix xt = proj.tangent_combine(coeffs);
      const std::vector<double> back = proj.tangent_inner(xt);
      double worst = 0.0;
      for (size_t i = 0; i < coeffs.size(); ++i)
        worst = std::max(worst, std::abs(back[i] - coeffs[i]));
      report.expect(worst <= kTol, describe("tangent round-trip", c, worst, kTol));
      double nworst = 0.0;
      for (double v : proj.normal_inner(xt)) nworst = std::max(nworst, std::abs(v));
      report.expect(nworst <= kTol,
                    describe("tangent matrix normal-free", c, nworst, kTol));
    }

    // Maps sending the kernel of the truncation into its image have zero
    // normal coordinates: build one explicitly as U C V^T with the trailing
    // (p-r) x (q-r) block of C zeroed.
    {
      Eigen::MatrixXd cmat(p, q);
      for (int i = 0; i < p; ++i)
        for (int j = 0; j < q; ++j) cmat(i, j) = rng.gaussian();
      cmat.bottomRightCorner(p - r, q - r).setZero();
      Eigen::MatrixXd lp = slra::detail::as_eigen(proj.u()) * cmat *
                           slra::detail::as_eigen(proj.v()).transpose();
      const DenseMatrix lmat = slra::detail::from_eigen(lp);
      double worst = 0.0;
      for (double v : proj.normal_inner(lmat)) worst = std::max(worst, std::abs(v));
      const double bound = kTol * std::max(1.0, frobenius_norm(lmat));
      report.expect(worst <= bound,
                    describe("kernel-to-image normal-free", c, worst, bound));
    }

    // Sign invariance: flipping a paired singular-vector column changes
    // nothing downstream (normal coordinates flip sign at most).
    {
      SvdFactors flipped = slra::svd(m);
      const int col = static_cast<int>(rng.below(
          static_cast<std::uint64_t>(std::min(p, q))));
      for (int i = 0; i < p; ++i) flipped.u(i, col) = -flipped.u(i, col);
      for (int i = 0; i < q; ++i) flipped.v(i, col) = -flipped.v(i, col);
      const RankProjection proj2 = RankProjection::from_svd(flipped, r);

      double trunc_dev = 0.0;
      for (int i = 0; i < p; ++i)
        for (int j = 0; j < q; ++j)
          trunc_dev = std::max(trunc_dev, std::abs(proj.truncated()(i, j) -
                                                   proj2.truncated()(i, j)));
      report.expect(trunc_dev == 0.0,
                    describe("sign-flip truncation", c, trunc_dev, 0.0));

      const std::vector<double> n1 = proj.normal_inner(x);
      const std::vector<double> n2 = proj2.normal_inner(x);
      double mag_dev = 0.0;
      for (size_t i = 0; i < n1.size(); ++i)
        mag_dev = std::max(mag_dev, std::abs(std::abs(n1[i]) - std::abs(n2[i])));
      report.expect(mag_dev == 0.0,
                    describe("sign-flip normal magnitudes", c, mag_dev, 0.0));

      const DenseMatrix rec1 = proj.tangent_combine(proj.tangent_inner(x));
      const DenseMatrix rec2 = proj2.tangent_combine(proj2.tangent_inner(x));
      double rec_dev = 0.0;
      for (int i = 0; i < p; ++i)
        for (int j = 0; j < q; ++j)
          rec_dev = std::max(rec_dev, std::abs(rec1(i, j) - rec2(i, j)));
      report.expect(rec_dev == 0.0,
                    describe("sign-flip tangent reconstruction", c, rec_dev, 0.0));
    }

    // Normal coordinates against a dense materialization of N_(i,j).
    {
      const int i = static_cast<int>(rng.below(
          static_cast<std::uint64_t>(p - r)));
      const int j = static_cast<int>(rng.below(
          static_cast<std::uint64_t>(q - r)));
      auto eu = slra::detail::as_eigen(proj.u());
      auto ev = slra::detail::as_eigen(proj.v());
      Eigen::MatrixXd dense_n = eu.col(r + i) * ev.col(r + j).transpose();
      const double want =
          (dense_n.array() * slra::detail::as_eigen(x).array()).sum();
      const double got = proj.normal_inner(x)[i * (q - r) + j];
      report.expect(std::abs(want - got) <= 1e-12 * std::max(1.0, std::abs(want)),
                    describe("normal materialization oracle", c,
                             std::abs(want - got), 1e-12));
    }
  }
  return report;
}

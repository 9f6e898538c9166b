#include "gaugekit/lie.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace gaugekit {

namespace {

void check_same_algebra(const AlgebraElement& a, const AlgebraElement& b) {
  if (!(a.spec == b.spec) || a.mat.rows() != b.mat.rows() || a.mat.cols() != b.mat.cols())
    throw std::invalid_argument("lie: algebra elements from different algebras");
}

}  // namespace

std::string LieGroupSpec::name() const {
  switch (kind) {
    case GroupKind::U1: return "U1";
    case GroupKind::SO3: return "SO3";
    case GroupKind::SU2: return "SU2";
    case GroupKind::GLn: return "GL" + std::to_string(n);
  }
  return "?";
}

int LieGroupSpec::algebra_dim() const {
  switch (kind) {
    case GroupKind::U1: return 1;
    case GroupKind::SO3: return 3;
    case GroupKind::SU2: return 3;
    case GroupKind::GLn: return n * n;
  }
  return 0;
}

std::vector<CMat> LieGroupSpec::algebra_basis() const {
  std::vector<CMat> basis;
  const Complex i01(0.0, 1.0);
  switch (kind) {
    case GroupKind::U1: {
      CMat e(1, 1);
      e(0, 0) = i01;
      basis.push_back(e);
      break;
    }
    case GroupKind::SO3: {
      // (L_k)_{ij} = -eps_{kij}; with c = 1/2, k(L_a, L_b) = delta_ab.
      for (int k = 0; k < 3; ++k) {
        CMat e = CMat::Zero(3, 3);
        int a = (k + 1) % 3, b = (k + 2) % 3;
        e(b, a) = 1.0;
        e(a, b) = -1.0;
        basis.push_back(e);
      }
      break;
    }
    case GroupKind::SU2: {
      CMat s1(2, 2), s2(2, 2), s3(2, 2);
      s1 << 0, 1, 1, 0;
      s2 << 0, -i01, i01, 0;
      s3 << 1, 0, 0, -1;
      basis.push_back(0.5 * i01 * s1);
      basis.push_back(0.5 * i01 * s2);
      basis.push_back(0.5 * i01 * s3);
      break;
    }
    case GroupKind::GLn: {
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
          CMat e = CMat::Zero(n, n);
          e(r, c) = 1.0;
          basis.push_back(e);
        }
      break;
    }
  }
  return basis;
}

double LieGroupSpec::inner_normalization() const {
  switch (kind) {
    case GroupKind::U1: return 1.0;
    case GroupKind::SO3: return 0.5;
    case GroupKind::SU2: return 2.0;
    case GroupKind::GLn: return 1.0;
  }
  return 1.0;
}

double LieGroupSpec::membership_violation(const CMat& g) const {
  if (g.rows() != n || g.cols() != n) return std::numeric_limits<double>::infinity();
  if (!all_finite(g)) return std::numeric_limits<double>::infinity();
  switch (kind) {
    case GroupKind::U1:
      return std::abs(std::abs(g(0, 0)) - 1.0);
    case GroupKind::SO3: {
      double real = g.imag().cwiseAbs().maxCoeff();
      double orth = (g.adjoint() * g - CMat::Identity(3, 3)).cwiseAbs().maxCoeff();
      double det = std::abs(g.determinant() - Complex(1.0, 0.0));
      return std::max({real, orth, det});
    }
    case GroupKind::SU2: {
      double unit = (g.adjoint() * g - CMat::Identity(2, 2)).cwiseAbs().maxCoeff();
      double det = std::abs(g.determinant() - Complex(1.0, 0.0));
      return std::max(unit, det);
    }
    case GroupKind::GLn: {
      double real = g.imag().cwiseAbs().maxCoeff();
      double det = std::abs(g.determinant());
      if (det < 1e-14) return std::numeric_limits<double>::infinity();
      return real;
    }
  }
  return 0.0;
}

double LieGroupSpec::algebra_violation(const CMat& z) const {
  if (z.rows() != n || z.cols() != n) return std::numeric_limits<double>::infinity();
  switch (kind) {
    case GroupKind::U1:
      return std::abs(z(0, 0).real());
    case GroupKind::SO3: {
      double real = z.imag().cwiseAbs().maxCoeff();
      double skew = (z + z.transpose()).cwiseAbs().maxCoeff();
      return std::max(real, skew);
    }
    case GroupKind::SU2: {
      double skewh = (z + z.adjoint()).cwiseAbs().maxCoeff();
      double tr = std::abs(z.trace());
      return std::max(skewh, tr);
    }
    case GroupKind::GLn:
      return z.imag().cwiseAbs().maxCoeff();
  }
  return 0.0;
}

GroupElement lie_exp(const AlgebraElement& z) {
  if (!all_finite(z.mat)) throw std::domain_error("lie_exp: non-finite entries");
  return {z.spec, z.mat.exp()};
}

AlgebraElement lie_log(const GroupElement& g) {
  if (!all_finite(g.mat)) throw std::domain_error("lie_log: non-finite entries");
  if (g.spec.kind == GroupKind::U1) {
    Complex w = g.mat(0, 0);
    if (std::abs(w) < 1e-300) throw std::domain_error("lie_log: zero element");
    CMat z(1, 1);
    z(0, 0) = std::log(w);
    return {g.spec, z};
  }
  const CMat id = CMat::Identity(g.mat.rows(), g.mat.cols());
  if (operator_norm(CMat(g.mat - id)) >= 1.9)
    throw std::domain_error("lie_log: element outside principal branch domain (||g-I|| >= 1.9)");
  return {g.spec, g.mat.log()};
}

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) {
  check_same_algebra(x, y);
  return {x.spec, x.mat * y.mat - y.mat * x.mat};
}

AlgebraElement Ad(const GroupElement& g, const AlgebraElement& z) {
  if (!(g.spec == z.spec)) throw std::invalid_argument("Ad: group/algebra mismatch");
  Eigen::FullPivLU<CMat> lu(g.mat);
  if (!lu.isInvertible()) throw std::domain_error("Ad: singular group element");
  return {z.spec, g.mat * z.mat * lu.inverse()};
}

double invariant_inner(const AlgebraElement& x, const AlgebraElement& y) {
  check_same_algebra(x, y);
  const double c = x.spec.inner_normalization();
  return -c * (x.mat * y.mat).trace().real();
}

double algebra_norm(const AlgebraElement& z) {
  if (z.spec.kind == GroupKind::GLn) return z.mat.norm();
  double k = invariant_inner(z, z);
  return std::sqrt(std::max(0.0, k));
}

GroupElement reproject(const GroupElement& g) {
  if (!all_finite(g.mat)) throw std::domain_error("reproject: non-finite entries");
  switch (g.spec.kind) {
    case GroupKind::U1: {
      double r = std::abs(g.mat(0, 0));
      if (r < 1e-14) throw std::domain_error("reproject: rank-deficient input");
      CMat m(1, 1);
      m(0, 0) = g.mat(0, 0) / r;
      return {g.spec, m};
    }
    case GroupKind::SO3: {
      Mat a = g.mat.real();
      Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
      if (svd.singularValues()(2) < 1e-12) throw std::domain_error("reproject: rank-deficient input");
      Mat u = svd.matrixU(), v = svd.matrixV();
      Mat r = u * v.transpose();
      if (r.determinant() < 0) {
        u.col(2) *= -1.0;
        r = u * v.transpose();
      }
      return {g.spec, r.cast<Complex>()};
    }
    case GroupKind::SU2: {
      Eigen::JacobiSVD<CMat> svd(g.mat, Eigen::ComputeFullU | Eigen::ComputeFullV);
      if (svd.singularValues()(1) < 1e-12) throw std::domain_error("reproject: rank-deficient input");
      CMat w = svd.matrixU() * svd.matrixV().adjoint();
      // Unitary now; divide out the determinant phase to land in SU(2).
      Complex det = w.determinant();
      double phase = std::arg(det);
      w *= std::exp(Complex(0.0, -phase / 2.0));
      return {g.spec, w};
    }
    case GroupKind::GLn: {
      Mat a = g.mat.real();
      if (std::abs(a.determinant()) < 1e-14) throw std::domain_error("reproject: rank-deficient input");
      return {g.spec, a.cast<Complex>()};
    }
  }
  return g;
}

Eigen::VectorXd algebra_components(const AlgebraElement& z) {
  const auto basis = z.spec.algebra_basis();
  const int d = static_cast<int>(basis.size());
  Eigen::VectorXd c(d);
  if (z.spec.kind == GroupKind::GLn) {
    // Matrix units: components are just the entries.
    for (int k = 0; k < d; ++k) c(k) = z.mat(k / z.spec.n, k % z.spec.n).real();
  } else {
    for (int k = 0; k < d; ++k)
      c(k) = invariant_inner(z, AlgebraElement{z.spec, basis[k]});
  }
  return c;
}

AlgebraElement algebra_from_components(const LieGroupSpec& spec, const Eigen::VectorXd& c) {
  const auto basis = spec.algebra_basis();
  if (c.size() != static_cast<int>(basis.size()))
    throw std::invalid_argument("algebra_from_components: wrong component count");
  CMat m = CMat::Zero(spec.n, spec.n);
  for (int k = 0; k < c.size(); ++k) m += c(k) * basis[k];
  return {spec, m};
}

}  // namespace gaugekit

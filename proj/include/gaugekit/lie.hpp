#ifndef GAUGEKIT_LIE_HPP
#define GAUGEKIT_LIE_HPP

#include <string>
#include <vector>

#include "gaugekit/linalg.hpp"

namespace gaugekit {

enum class GroupKind { U1, SO3, SU2, GLn };

/// Matrix Lie group descriptor. Every group in the catalog is realized
/// concretely as a group of n x n matrices; U(1) is the 1x1 unit circle,
/// SO(3) real orthogonal, SU(2) complex unitary with det 1, GL(n,R) the
/// real invertible matrices.
struct LieGroupSpec {
  GroupKind kind = GroupKind::U1;
  int n = 1;

  static LieGroupSpec u1() { return {GroupKind::U1, 1}; }
  static LieGroupSpec so3() { return {GroupKind::SO3, 3}; }
  static LieGroupSpec su2() { return {GroupKind::SU2, 2}; }
  static LieGroupSpec gln(int n) { return {GroupKind::GLn, n}; }

  std::string name() const;
  bool operator==(const LieGroupSpec& o) const { return kind == o.kind && n == o.n; }

  /// Real dimension of the Lie algebra.
  int algebra_dim() const;

  /// Canonical basis of the algebra, orthonormal w.r.t. invariant_inner
  /// for the compact groups.  Conventions:
  ///   u(1):  { i }
  ///   so(3): { L_x, L_y, L_z } / sqrt(2)-free, (L_k)_{ij} = -eps_{kij}, normalized by c = 1/2
  ///   su(2): { i sigma_1/2, i sigma_2/2, i sigma_3/2 }, normalized by c = 2
  ///   gl(n): { E_{ij} } matrix units (not orthonormal; trace form is indefinite)
  std::vector<CMat> algebra_basis() const;

  /// Normalization constant c in k(X,Y) = -c Re tr(XY).
  double inner_normalization() const;

  /// Distance from the defining constraints of the group (unitarity,
  /// orthogonality, determinant); 0 for exact members.
  double membership_violation(const CMat& g) const;
  bool is_member(const CMat& g, double tol = 1e-10) const { return membership_violation(g) <= tol; }

  /// Distance from the linear constraints of the algebra
  /// (skew-Hermitian / skew-symmetric / traceless / real as applicable).
  double algebra_violation(const CMat& z) const;

  CMat identity() const { return CMat::Identity(n, n); }
};

struct AlgebraElement {
  LieGroupSpec spec;
  CMat mat;
  AlgebraElement() = default;
  AlgebraElement(LieGroupSpec s, CMat m) : spec(s), mat(std::move(m)) {}
};

struct GroupElement {
  LieGroupSpec spec;
  CMat mat;
  GroupElement() = default;
  GroupElement(LieGroupSpec s, CMat m) : spec(s), mat(std::move(m)) {}
};

/// Matrix exponential (scaling-and-squaring Pade). Throws on non-finite input.
GroupElement lie_exp(const AlgebraElement& z);

/// Principal matrix logarithm. Requires ||g - I||_op < 1.9 for matrix groups
/// (injectivity); U(1) accepts the full principal branch Arg in (-pi, pi].
AlgebraElement lie_log(const GroupElement& g);

/// [X, Y] = XY - YX.
AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y);

/// Adjoint action Ad_g Z = g Z g^{-1}.
AlgebraElement Ad(const GroupElement& g, const AlgebraElement& z);

/// Ad-invariant inner product k(X,Y) = -c Re tr(XY); c per group so the
/// canonical basis is orthonormal (k(i,i) = 1 on u(1)).
double invariant_inner(const AlgebraElement& x, const AlgebraElement& y);

/// sqrt(k(Z,Z)) on compact algebras, Frobenius norm on gl(n).
double algebra_norm(const AlgebraElement& z);

/// Nearest group element (polar decomposition / normalization). Idempotent.
GroupElement reproject(const GroupElement& g);

/// Components of z in the canonical basis (least squares for gl(n),
/// exact inner products for the compact groups).
Eigen::VectorXd algebra_components(const AlgebraElement& z);

AlgebraElement algebra_from_components(const LieGroupSpec& spec, const Eigen::VectorXd& c);

inline AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
  return {a.spec, a.mat + b.mat};
}
inline AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
  return {a.spec, a.mat - b.mat};
}
inline AlgebraElement operator*(double s, const AlgebraElement& a) { return {a.spec, s * a.mat}; }

}  // namespace gaugekit

#endif

#ifndef GAUGEKIT_FORMS_HPP
#define GAUGEKIT_FORMS_HPP

#include <functional>

#include "gaugekit/chart.hpp"
#include "gaugekit/lie.hpp"
#include "gaugekit/metric.hpp"

namespace gaugekit {

/// Value of a Lie-algebra-valued k-form at a point. Only the strictly
/// increasing index tuples are stored (antisymmetry by construction);
/// comps is ordered like combinations(dim, deg).
struct FormValue {
  LieGroupSpec algebra;
  int dim = 0;
  int deg = 0;
  std::vector<CMat> comps;

  static FormValue zero(const LieGroupSpec& alg, int dim, int deg);

  int n_comps() const { return static_cast<int>(comps.size()); }
  const CMat& comp(const std::vector<int>& sorted_combo) const;

  /// Component for an arbitrary index tuple, honoring antisymmetry.
  CMat at(std::vector<int> idx) const;
};

FormValue operator+(const FormValue& a, const FormValue& b);
FormValue operator-(const FormValue& a, const FormValue& b);
FormValue operator*(double s, const FormValue& a);

/// sqrt(sum over stored components of k(c_I, c_I)): plain coefficient norm,
/// no metric raising, so it is signature independent.
double form_norm(const FormValue& v);

/// Graded bracket of form values:
/// [a,b](X_1..X_{k+l}) = (1/k!l!) sum_sigma sign(sigma) [a(X_sig..), b(X_sig..)],
/// evaluated by the equivalent shuffle sum over index splits. Throws when
/// k + l exceeds the base dimension.
FormValue graded_bracket_value(const FormValue& a, const FormValue& b);

/// Lie-algebra-valued differential form as a chart-local field.
struct AlgebraValuedForm {
  LieGroupSpec algebra;
  Chart chart;
  int deg = 0;
  std::function<FormValue(const Vec&)> eval;
  /// Optional analytic partial derivative d(form)/d x_dir.
  std::function<FormValue(const Vec&, int)> analytic_partial;
  double fd_step = 1e-5;

  int dim() const { return chart.dim; }
  FormValue at(const Vec& x) const { return eval(x); }
};

AlgebraValuedForm zero_form(const LieGroupSpec& alg, const Chart& chart, int deg);
AlgebraValuedForm constant_form(const LieGroupSpec& alg, const Chart& chart, int deg,
                                std::vector<CMat> comps);

/// Partial derivative of all components along direction `dir` (analytic
/// hook or central differences with the form's fd_step).
FormValue form_partial(const AlgebraValuedForm& f, const Vec& x, int dir, double fd_step);

/// Exterior derivative at a point:
/// (d tau)_{i_0<..<i_k} = sum_j (-1)^j d_{i_j} tau_{i_0..^i_j..i_k}.
/// Returns the zero (k+1)-form when k + 1 > dim.
FormValue exterior_derivative_value(const AlgebraValuedForm& f, const Vec& x, double fd_step = 0);

/// Pointwise graded bracket of two form fields.
AlgebraValuedForm graded_bracket(const AlgebraValuedForm& a, const AlgebraValuedForm& b);

/// Componentwise scalar Hodge star with respect to the volume data:
/// (*t)_J = orientation * sqrt(|det g|) * eps(I,J) t^I over complementary
/// combos, indices raised by g at x. Satisfies ** = sign(g) (-1)^{k(n-k)}.
FormValue hodge_star_value(const VolumeData& v, const FormValue& t, const Vec& x);

}  // namespace gaugekit

#endif

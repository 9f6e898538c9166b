#include "gaugekit/forms.hpp"

#include <cmath>

namespace gaugekit {

FormValue FormValue::zero(const LieGroupSpec& alg, int dim, int deg) {
  FormValue v;
  v.algebra = alg;
  v.dim = dim;
  v.deg = deg;
  int n = (deg >= 0 && deg <= dim) ? static_cast<int>(combinations(dim, deg).size()) : 0;
  v.comps.assign(n, CMat::Zero(alg.n, alg.n));
  return v;
}

const CMat& FormValue::comp(const std::vector<int>& sorted_combo) const {
  return comps[combination_rank(sorted_combo, dim)];
}

CMat FormValue::at(std::vector<int> idx) const {
  int sign = sort_sign(idx);
  if (sign == 0) return CMat::Zero(algebra.n, algebra.n);
  return static_cast<double>(sign) * comp(idx);
}

static void check_compatible(const FormValue& a, const FormValue& b) {
  if (!(a.algebra == b.algebra) || a.dim != b.dim || a.deg != b.deg)
    throw std::invalid_argument("forms: incompatible form values");
}

FormValue operator+(const FormValue& a, const FormValue& b) {
  check_compatible(a, b);
  FormValue r = a;
  for (int i = 0; i < r.n_comps(); ++i) r.comps[i] += b.comps[i];
  return r;
}

FormValue operator-(const FormValue& a, const FormValue& b) {
  check_compatible(a, b);
  FormValue r = a;
  for (int i = 0; i < r.n_comps(); ++i) r.comps[i] -= b.comps[i];
  return r;
}

FormValue operator*(double s, const FormValue& a) {
  FormValue r = a;
  for (auto& c : r.comps) c *= s;
  return r;
}

double form_norm(const FormValue& v) {
  double s = 0;
  for (const auto& c : v.comps) {
    AlgebraElement z{v.algebra, c};
    double n = algebra_norm(z);
    s += n * n;
  }
  return std::sqrt(s);
}

FormValue graded_bracket_value(const FormValue& a, const FormValue& b) {
  if (!(a.algebra == b.algebra) || a.dim != b.dim)
    throw std::invalid_argument("graded_bracket: incompatible forms");
  const int k = a.deg, l = b.deg, n = a.dim;
  if (k + l > n) throw std::invalid_argument("graded_bracket: degree overflow (k + l > dim)");
  FormValue out = FormValue::zero(a.algebra, n, k + l);
  auto out_combos = combinations(n, k + l);
  auto splits = combinations(k + l, k);  // positions going to the first factor
  for (size_t ci = 0; ci < out_combos.size(); ++ci) {
    const auto& combo = out_combos[ci];
    CMat acc = CMat::Zero(a.algebra.n, a.algebra.n);
    for (const auto& split : splits) {
      std::vector<int> sidx(k), tidx;
      std::vector<bool> used(k + l, false);
      for (int p = 0; p < k; ++p) {
        sidx[p] = combo[split[p]];
        used[split[p]] = true;
      }
      for (int p = 0; p < k + l; ++p)
        if (!used[p]) tidx.push_back(combo[p]);
      // Shuffle sign: permutation taking (S, T) concatenation to the sorted combo.
      std::vector<int> perm(sidx);
      perm.insert(perm.end(), tidx.begin(), tidx.end());
      std::vector<int> tmp = perm;
      int sign = sort_sign(tmp);
      CMat av = a.comp(sidx), bv = b.comp(tidx);
      acc += static_cast<double>(sign) * (av * bv - bv * av);
    }
    out.comps[ci] = acc;
  }
  return out;
}

AlgebraValuedForm zero_form(const LieGroupSpec& alg, const Chart& chart, int deg) {
  AlgebraValuedForm f;
  f.algebra = alg;
  f.chart = chart;
  f.deg = deg;
  int dim = chart.dim;
  f.eval = [alg, dim, deg](const Vec&) { return FormValue::zero(alg, dim, deg); };
  f.analytic_partial = [alg, dim, deg](const Vec&, int) { return FormValue::zero(alg, dim, deg); };
  return f;
}

AlgebraValuedForm constant_form(const LieGroupSpec& alg, const Chart& chart, int deg,
                                std::vector<CMat> comps) {
  AlgebraValuedForm f;
  f.algebra = alg;
  f.chart = chart;
  f.deg = deg;
  int dim = chart.dim;
  int expect = static_cast<int>(combinations(dim, deg).size());
  if (static_cast<int>(comps.size()) != expect)
    throw std::invalid_argument("constant_form: wrong component count");
  f.eval = [alg, dim, deg, comps](const Vec&) {
    FormValue v = FormValue::zero(alg, dim, deg);
    v.comps = comps;
    return v;
  };
  f.analytic_partial = [alg, dim, deg](const Vec&, int) { return FormValue::zero(alg, dim, deg); };
  return f;
}

FormValue form_partial(const AlgebraValuedForm& f, const Vec& x, int dir, double fd_step) {
  if (f.analytic_partial) return f.analytic_partial(x, dir);
  double h = (fd_step > 0 ? fd_step : f.fd_step) * (1.0 + std::abs(x(dir)));
  Vec xp = x, xm = x;
  xp(dir) += h;
  xm(dir) -= h;
  FormValue p = f.eval(xp), m = f.eval(xm);
  FormValue r = p - m;
  return (1.0 / (2.0 * h)) * r;
}

FormValue exterior_derivative_value(const AlgebraValuedForm& f, const Vec& x, double fd_step) {
  const int n = f.dim(), k = f.deg;
  if (k + 1 > n) return FormValue::zero(f.algebra, n, k + 1);
  FormValue out = FormValue::zero(f.algebra, n, k + 1);
  auto combos = combinations(n, k + 1);
  // Cache partials per direction actually used.
  std::vector<FormValue> partial(n);
  std::vector<bool> have(n, false);
  for (size_t ci = 0; ci < combos.size(); ++ci) {
    const auto& combo = combos[ci];
    CMat acc = CMat::Zero(f.algebra.n, f.algebra.n);
    for (int j = 0; j <= k; ++j) {
      int dir = combo[j];
      if (!have[dir]) {
        partial[dir] = form_partial(f, x, dir, fd_step);
        have[dir] = true;
      }
      std::vector<int> rest;
      for (int p = 0; p <= k; ++p)
        if (p != j) rest.push_back(combo[p]);
      double sgn = (j % 2 == 0) ? 1.0 : -1.0;
      acc += sgn * partial[dir].comp(rest);
    }
    out.comps[ci] = acc;
  }
  return out;
}

AlgebraValuedForm graded_bracket(const AlgebraValuedForm& a, const AlgebraValuedForm& b) {
  AlgebraValuedForm f;
  f.algebra = a.algebra;
  f.chart = a.chart;
  f.deg = a.deg + b.deg;
  auto ae = a.eval, be = b.eval;
  f.eval = [ae, be](const Vec& x) { return graded_bracket_value(ae(x), be(x)); };
  return f;
}

FormValue hodge_star_value(const VolumeData& v, const FormValue& t, const Vec& x) {
  const int n = t.dim, k = t.deg;
  if (v.metric.dim() != n) throw std::invalid_argument("hodge_star: dimension mismatch");
  Mat g = metric_at(v.metric, x);
  Mat ginv = metric_inverse_at(v.metric, x);
  double det = g.determinant();
  // Convention: the metric-sign factor rides along with the volume factor,
  // so on Minkowski *(dx^dy) = -dt^dz. The ** identity and the
  // codifferential are unchanged by this choice (the two signs cancel).
  double vol = v.orientation * (det < 0 ? -1.0 : 1.0) * std::sqrt(std::abs(det));

  FormValue out = FormValue::zero(t.algebra, n, n - k);
  auto in_combos = combinations(n, k);
  auto out_combos = combinations(n, n - k);

  // Raise the input indices: t^{m_1..m_k} = g^{m_1 i_1}..g^{m_k i_k} t_{i_1..i_k}.
  // Stored over sorted combos; expand with antisymmetry.
  std::vector<CMat> raised(in_combos.size(), CMat::Zero(t.algebra.n, t.algebra.n));
  for (size_t mi = 0; mi < in_combos.size(); ++mi) {
    const auto& M = in_combos[mi];
    CMat acc = CMat::Zero(t.algebra.n, t.algebra.n);
    // Sum over all k-tuples I (unsorted), metric factors prod g^{M_p I_p}.
    std::vector<int> idx(k, 0);
    if (k == 0) {
      acc = t.comps[0];
    } else {
      while (true) {
        double w = 1.0;
        for (int p = 0; p < k; ++p) w *= ginv(M[p], idx[p]);
        if (w != 0.0) {
          std::vector<int> ii = idx;
          int sign = sort_sign(ii);
          if (sign != 0) acc += (w * sign) * t.comp(ii);
        }
        int p = k - 1;
        while (p >= 0 && idx[p] == n - 1) idx[p--] = 0;
        if (p < 0) break;
        ++idx[p];
      }
    }
    raised[mi] = acc;
  }

  // (*t)_J = (vol / 1) * sum_{sorted M} eps(M, J) t^M  -- the 1/k! of the
  // unrestricted sum cancels against summing sorted combos only.
  for (size_t ji = 0; ji < out_combos.size(); ++ji) {
    const auto& J = out_combos[ji];
    CMat acc = CMat::Zero(t.algebra.n, t.algebra.n);
    for (size_t mi = 0; mi < in_combos.size(); ++mi) {
      std::vector<int> full = in_combos[mi];
      full.insert(full.end(), J.begin(), J.end());
      std::vector<int> tmp = full;
      int eps = sort_sign(tmp);
      if (eps == 0) continue;
      acc += static_cast<double>(eps) * raised[mi];
    }
    out.comps[ji] = vol * acc;
  }
  return out;
}

}  // namespace gaugekit

#ifndef GAUGEKIT_LINALG_HPP
#define GAUGEKIT_LINALG_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace gaugekit {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using Complex = std::complex<double>;

// Dense rank-3 array, index order (k, i, j).
struct Tensor3 {
  int n0 = 0, n1 = 0, n2 = 0;
  std::vector<double> a;
  Tensor3() = default;
  Tensor3(int d0, int d1, int d2) : n0(d0), n1(d1), n2(d2), a(static_cast<size_t>(d0) * d1 * d2, 0.0) {}
  double& operator()(int k, int i, int j) { return a[(static_cast<size_t>(k) * n1 + i) * n2 + j]; }
  double operator()(int k, int i, int j) const { return a[(static_cast<size_t>(k) * n1 + i) * n2 + j]; }
  double max_abs() const {
    double m = 0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
  }
};

// Dense rank-4 array, index order (l, k, i, j).
struct Tensor4 {
  int n = 0;
  std::vector<double> a;
  Tensor4() = default;
  explicit Tensor4(int dim) : n(dim), a(static_cast<size_t>(dim) * dim * dim * dim, 0.0) {}
  double& operator()(int l, int k, int i, int j) {
    return a[((static_cast<size_t>(l) * n + k) * n + i) * n + j];
  }
  double operator()(int l, int k, int i, int j) const {
    return a[((static_cast<size_t>(l) * n + k) * n + i) * n + j];
  }
  double max_abs() const {
    double m = 0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
  }
};

// All strictly increasing index k-tuples from {0,...,n-1}, lexicographic.
std::vector<std::vector<int>> combinations(int n, int k);

// Rank of a sorted combination in the lexicographic enumeration.
int combination_rank(const std::vector<int>& combo, int n);

// Sorts `idx` in place; returns the sign of the sorting permutation, or 0 on repeats.
int sort_sign(std::vector<int>& idx);

// Sign of the permutation taking (0..n-1) to `perm`; 0 if not a permutation.
int permutation_sign(const std::vector<int>& perm);

inline double operator_norm(const CMat& m) { return m.jacobiSvd().singularValues()(0); }
inline double operator_norm(const Mat& m) { return m.jacobiSvd().singularValues()(0); }

// Condition number from the singular value spectrum.
double condition_number(const Mat& m);

inline bool all_finite(const CMat& m) { return m.allFinite(); }

}  // namespace gaugekit

#endif

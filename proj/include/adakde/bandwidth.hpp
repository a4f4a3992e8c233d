#pragma once
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace adakde {

inline constexpr double kLog2Pi = 1.8378770664093454836;
inline constexpr double kDiagFloor = 1e-8;

/// Lower-triangular Cholesky-style factor L of an SPD bandwidth matrix
/// H = L*L^T. Entries are stored row-major packed:
/// [L00, L10, L11, L20, L21, L22, ...]. Diagonal entries are floored at
/// kDiagFloor on construction, so any factor that exists is valid.
class BandwidthFactor {
public:
  BandwidthFactor() = default;

  BandwidthFactor(int dim, std::vector<double> packed)
      : dim_(dim), packed_(std::move(packed)) {
    if (dim_ < 1) throw std::invalid_argument("BandwidthFactor: dim must be >= 1");
    if (packed_.size() != static_cast<size_t>(packed_size(dim_)))
      throw std::invalid_argument("BandwidthFactor: packed size mismatch");
    for (double v : packed_)
      if (!std::isfinite(v))
        throw std::invalid_argument("BandwidthFactor: non-finite entry");
    for (int j = 0; j < dim_; ++j) {
      double& djj = packed_[diag_index(j)];
      if (djj < kDiagFloor) djj = kDiagFloor;
    }
  }

  /// Isotropic factor h * I.
  static BandwidthFactor isotropic(int dim, double h) {
    std::vector<double> p(packed_size(dim), 0.0);
    for (int j = 0; j < dim; ++j) p[diag_index(j)] = h;
    return BandwidthFactor(dim, std::move(p));
  }

  /// Diagonal factor diag(h_0..h_{d-1}).
  static BandwidthFactor diagonal(std::span<const double> h) {
    int d = static_cast<int>(h.size());
    std::vector<double> p(packed_size(d), 0.0);
    for (int j = 0; j < d; ++j) p[diag_index(j)] = h[j];
    return BandwidthFactor(d, std::move(p));
  }

  static int packed_size(int dim) { return dim * (dim + 1) / 2; }
  static int diag_index(int j) { return j * (j + 1) / 2 + j; }
  static int index(int i, int j) { return i * (i + 1) / 2 + j; }  // j <= i

  int dim() const { return dim_; }
  const std::vector<double>& packed() const { return packed_; }
  double operator()(int i, int j) const { return packed_[index(i, j)]; }
  double diag(int j) const { return packed_[diag_index(j)]; }

  double sum_log_diag() const {
    double s = 0.0;
    for (int j = 0; j < dim_; ++j) s += std::log(diag(j));
    return s;
  }

  /// Returns a copy with every entry scaled by c (H scales by c^2).
  BandwidthFactor scaled(double c) const {
    std::vector<double> p = packed_;
    for (double& v : p) v *= c;
    return BandwidthFactor(dim_, std::move(p));
  }

  /// y = L^{-1} z (forward substitution).
  void solve_lower(std::span<const double> z, std::span<double> y) const {
    for (int i = 0; i < dim_; ++i) {
      double s = z[i];
      const double* row = packed_.data() + i * (i + 1) / 2;
      for (int j = 0; j < i; ++j) s -= row[j] * y[j];
      y[i] = s / row[i];
    }
  }

  /// w = L^{-T} v (back substitution on the transpose).
  void solve_lower_transposed(std::span<const double> v, std::span<double> w) const {
    for (int i = dim_ - 1; i >= 0; --i) {
      double s = v[i];
      for (int j = i + 1; j < dim_; ++j) s -= packed_[index(j, i)] * w[j];
      w[i] = s / packed_[diag_index(i)];
    }
  }

  /// Dense d x d form of H = L L^T (test and reporting helper).
  std::vector<double> dense_h() const {
    std::vector<double> h(static_cast<size_t>(dim_) * dim_, 0.0);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) {
        double s = 0.0;
        int m = std::min(i, j);
        for (int k = 0; k <= m; ++k) s += packed_[index(i, k)] * packed_[index(j, k)];
        h[static_cast<size_t>(i) * dim_ + j] = s;
      }
    return h;
  }

private:
  int dim_ = 0;
  std::vector<double> packed_;
};

/// log K_H(z) for the Gaussian kernel K_H(z) = |H|^{-1/2} kappa(H^{-1/2} z),
/// evaluated through the factor: -d/2 log(2 pi) - sum_j log L_jj - |L^{-1}z|^2 / 2.
double log_gaussian_kernel(std::span<const double> z, const BandwidthFactor& L);

/// H^{-1} (-z) via two triangular solves; the gradient of log K_H at z.
std::vector<double> kernel_grad_premul(std::span<const double> z, const BandwidthFactor& L);

/// Stable log(sum_i exp(v_i)); -inf input rows are handled, empty input throws.
double log_sum_exp(std::span<const double> values);

namespace detail {
inline void check_vector(std::span<const double> z, int dim, const char* who) {
  if (static_cast<int>(z.size()) != dim)
    throw std::invalid_argument(std::string(who) + ": dimension mismatch");
  for (double v : z)
    if (!std::isfinite(v))
      throw std::invalid_argument(std::string(who) + ": non-finite input");
}
}  // namespace detail

}  // namespace adakde

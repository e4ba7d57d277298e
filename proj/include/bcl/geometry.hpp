#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace bcl {

/// Axis-aligned open box (lower, lower + extent) in R^d. Two-dimensional
/// rectangles are the common case; the sampler and graph builder accept any d.
class RectDomain {
 public:
  RectDomain(double width, double height);
  explicit RectDomain(std::vector<double> extent, std::vector<double> lower = {});

  std::size_t dim() const { return extent_.size(); }
  double width() const { return extent_[0]; }
  double height() const { return extent_.size() > 1 ? extent_[1] : 1.0; }
  std::span<const double> extent() const { return extent_; }
  std::span<const double> lower() const { return lower_; }

  double volume() const;
  /// Uniform probability density on the box.
  double rho() const { return 1.0 / volume(); }
  bool contains(std::span<const double> x) const;

  RectDomain shifted(std::span<const double> offset) const;

  /// "1x4" style label; lower corner is omitted.
  std::string label() const;
  /// Parses "WxH" (or "AxBxC" for higher dimensions).
  static RectDomain parse(const std::string& text);

 private:
  std::vector<double> extent_;
  std::vector<double> lower_;
};

/// n points in R^d stored row-major, with the seed that produced them.
class PointCloud {
 public:
  PointCloud() = default;
  PointCloud(std::size_t dim, std::vector<double> coords, std::uint64_t seed = 0);

  std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  std::size_t dim() const { return dim_; }
  std::uint64_t seed() const { return seed_; }
  bool empty() const { return size() == 0; }

  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  double coord(std::size_t i, std::size_t axis) const { return coords_[i * dim_ + axis]; }
  std::span<const double> coords() const { return coords_; }

  double distance(std::size_t i, std::size_t j) const;

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
  std::uint64_t seed_ = 0;
};

enum class KernelKind { Indicator, Gaussian };

/// Radial similarity profile eta: Indicator is 1 on [0,1] and 0 beyond,
/// Gaussian is exp(-r^2) truncated where it drops below kGaussianCutoff.
class Kernel {
 public:
  static constexpr double kGaussianCutoff = 1e-12;

  constexpr explicit Kernel(KernelKind kind = KernelKind::Indicator) : kind_(kind) {}
  static Kernel indicator() { return Kernel(KernelKind::Indicator); }
  static Kernel gaussian() { return Kernel(KernelKind::Gaussian); }

  KernelKind kind() const { return kind_; }
  double profile(double r) const;
  /// Radius (in units of epsilon) beyond which the stored weight is zero.
  double support() const;
  std::string name() const;
  static Kernel parse(const std::string& text);

  friend bool operator==(const Kernel&, const Kernel&) = default;

 private:
  KernelKind kind_;
};

/// sigma_eta = integral over R^d of eta(|x|) |x_1| dx.
double surface_tension(const Kernel& kernel, std::size_t dim);

/// Rule mapping the sample size to a connectivity radius.
class ScalingRegime {
 public:
  enum class Kind { Power, ConnectivityMultiple };

  /// eps_n = n^(-exponent).
  static ScalingRegime power(double exponent);
  /// eps_n = factor * sqrt(log n / (pi n)).
  static ScalingRegime connectivity_multiple(double factor);
  /// Parses "power:0.3" or "connectivity:2".
  static ScalingRegime parse(const std::string& text);

  Kind kind() const { return kind_; }
  double parameter() const { return parameter_; }
  std::string label() const;
  double epsilon(std::size_t n) const;

 private:
  ScalingRegime(Kind kind, double parameter) : kind_(kind), parameter_(parameter) {}
  Kind kind_;
  double parameter_;
};

double epsilon_for(const ScalingRegime& regime, std::size_t n);

/// Draws n i.i.d. uniform points in the box. Each coordinate is
/// lower + u * extent with u a 53-bit open-interval uniform from mt19937_64,
/// so clouds are bit-identical across platforms for a given seed.
PointCloud sample_uniform(const RectDomain& domain, std::size_t n, std::uint64_t seed);

/// m^d grid of cell centres covering the box.
PointCloud cell_center_grid(const RectDomain& domain, std::size_t per_axis);

/// Maps a raw 64-bit engine draw to a double in (0,1).
double unit_open_uniform(std::uint64_t bits);

/// SplitMix64 finaliser, used to derive independent seeds.
std::uint64_t mix_seed(std::uint64_t x);

}  // namespace bcl

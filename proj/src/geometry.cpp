#include "bcl/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "bcl/error.hpp"

namespace bcl {

RectDomain::RectDomain(double width, double height)
    : RectDomain(std::vector<double>{width, height}) {}

RectDomain::RectDomain(std::vector<double> extent, std::vector<double> lower)
    : extent_(std::move(extent)), lower_(std::move(lower)) {
  if (extent_.empty()) throw InvalidArgument("domain needs at least one axis");
  for (double e : extent_) {
    if (!(e > 0.0) || !std::isfinite(e)) throw InvalidArgument("domain extents must be positive");
  }
  if (lower_.empty()) lower_.assign(extent_.size(), 0.0);
  if (lower_.size() != extent_.size()) throw InvalidArgument("domain lower corner has wrong dimension");
}

double RectDomain::volume() const {
  double v = 1.0;
  for (double e : extent_) v *= e;
  return v;
}

bool RectDomain::contains(std::span<const double> x) const {
  if (x.size() != dim()) return false;
  for (std::size_t k = 0; k < dim(); ++k) {
    if (!(x[k] > lower_[k] && x[k] < lower_[k] + extent_[k])) return false;
  }
  return true;
}

RectDomain RectDomain::shifted(std::span<const double> offset) const {
  if (offset.size() != dim()) throw InvalidArgument("shift has wrong dimension");
  std::vector<double> lower = lower_;
  for (std::size_t k = 0; k < dim(); ++k) lower[k] += offset[k];
  return RectDomain(extent_, std::move(lower));
}

std::string RectDomain::label() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < dim(); ++k) {
    if (k) os << 'x';
    os << extent_[k];
  }
  return os.str();
}

RectDomain RectDomain::parse(const std::string& text) {
  std::vector<double> extent;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t stop = text.find('x', start);
    if (stop == std::string::npos) stop = text.size();
    const std::string part = text.substr(start, stop - start);
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(part, &used);
    } catch (const std::exception&) {
      throw InvalidArgument("bad domain '" + text + "', expected WxH");
    }
    if (used != part.size()) throw InvalidArgument("bad domain '" + text + "', expected WxH");
    extent.push_back(value);
    start = stop + 1;
  }
  if (extent.size() < 2) throw InvalidArgument("bad domain '" + text + "', expected WxH");
  return RectDomain(std::move(extent));
}

PointCloud::PointCloud(std::size_t dim, std::vector<double> coords, std::uint64_t seed)
    : dim_(dim), coords_(std::move(coords)), seed_(seed) {
  if (dim_ == 0) throw InvalidArgument("point cloud dimension must be positive");
  if (coords_.size() % dim_ != 0) throw InvalidArgument("coordinate count is not a multiple of dim");
}

double PointCloud::distance(std::size_t i, std::size_t j) const {
  double s = 0.0;
  for (std::size_t k = 0; k < dim_; ++k) {
    const double d = coords_[i * dim_ + k] - coords_[j * dim_ + k];
    s += d * d;
  }
  return std::sqrt(s);
}

double Kernel::profile(double r) const {
  switch (kind_) {
    case KernelKind::Indicator:
      return r <= 1.0 ? 1.0 : 0.0;
    case KernelKind::Gaussian: {
      const double w = std::exp(-r * r);
      return w < kGaussianCutoff ? 0.0 : w;
    }
  }
  return 0.0;
}

double Kernel::support() const {
  switch (kind_) {
    case KernelKind::Indicator:
      return 1.0;
    case KernelKind::Gaussian:
      return std::sqrt(-std::log(kGaussianCutoff));
  }
  return 1.0;
}

std::string Kernel::name() const {
  return kind_ == KernelKind::Indicator ? "indicator" : "gaussian";
}

Kernel Kernel::parse(const std::string& text) {
  if (text == "indicator") return indicator();
  if (text == "gaussian") return gaussian();
  throw InvalidArgument("unknown kernel '" + text + "' (indicator|gaussian)");
}

namespace {

// Volume of the unit ball in R^m.
double unit_ball_volume(std::size_t m) {
  const double half = 0.5 * static_cast<double>(m);
  return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

double integrate_half_line(auto f, double upper) {
  double error = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, upper, 15, 1e-14, &error);
  if (!(error < 1e-10) || !std::isfinite(value)) {
    throw ComputationError("surface tension quadrature did not converge");
  }
  return value;
}

}  // namespace

double surface_tension(const Kernel& kernel, std::size_t dim) {
  if (dim == 0) throw InvalidArgument("surface tension needs d >= 1");
  switch (kernel.kind()) {
    case KernelKind::Indicator:
      // Slicing the unit ball at x_1 = t leaves a (d-1)-ball of radius sqrt(1-t^2).
      return 2.0 * unit_ball_volume(dim - 1) / static_cast<double>(dim + 1);
    case KernelKind::Gaussian: {
      // exp(-|x|^2) factorises, so the tensor rule collapses to a product of
      // one-dimensional integrals over [-R, R].
      const double radius = std::sqrt(-std::log(1e-14)) + 1.0;
      const double first = 2.0 * integrate_half_line([](double t) { return t * std::exp(-t * t); }, radius);
      const double other = 2.0 * integrate_half_line([](double t) { return std::exp(-t * t); }, radius);
      return first * std::pow(other, static_cast<double>(dim - 1));
    }
  }
  throw ComputationError("unknown kernel");
}

ScalingRegime ScalingRegime::power(double exponent) {
  if (!(exponent > 0.0) || !std::isfinite(exponent)) throw InvalidArgument("power exponent must be positive");
  return ScalingRegime(Kind::Power, exponent);
}

ScalingRegime ScalingRegime::connectivity_multiple(double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor)) throw InvalidArgument("connectivity factor must be positive");
  return ScalingRegime(Kind::ConnectivityMultiple, factor);
}

ScalingRegime ScalingRegime::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InvalidArgument("bad regime '" + text + "' (power:P|connectivity:F)");
  const std::string head = text.substr(0, colon);
  const std::string tail = text.substr(colon + 1);
  double value = 0.0;
  std::size_t used = 0;
  try {
    value = std::stod(tail, &used);
  } catch (const std::exception&) {
    throw InvalidArgument("bad regime parameter in '" + text + "'");
  }
  if (used != tail.size()) throw InvalidArgument("bad regime parameter in '" + text + "'");
  if (head == "power") return power(value);
  if (head == "connectivity") return connectivity_multiple(value);
  throw InvalidArgument("bad regime '" + text + "' (power:P|connectivity:F)");
}

std::string ScalingRegime::label() const {
  std::ostringstream os;
  os << (kind_ == Kind::Power ? "power:" : "connectivity:") << parameter_;
  return os.str();
}

double ScalingRegime::epsilon(std::size_t n) const {
  if (n < 2) throw InvalidArgument("epsilon_n needs n >= 2");
  const double nd = static_cast<double>(n);
  switch (kind_) {
    case Kind::Power:
      return std::pow(nd, -parameter_);
    case Kind::ConnectivityMultiple:
      return parameter_ * std::sqrt(std::log(nd) / (std::numbers::pi * nd));
  }
  return 0.0;
}

double epsilon_for(const ScalingRegime& regime, std::size_t n) { return regime.epsilon(n); }

double unit_open_uniform(std::uint64_t bits) {
  // 52 bits so the midpoint offset keeps the result strictly below 1.
  return (static_cast<double>(bits >> 12) + 0.5) * 0x1p-52;
}

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

PointCloud sample_uniform(const RectDomain& domain, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("sample_uniform needs n >= 1");
  const std::size_t d = domain.dim();
  std::mt19937_64 engine(seed);
  std::vector<double> coords(n * d);
  const auto lower = domain.lower();
  const auto extent = domain.extent();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      coords[i * d + k] = lower[k] + unit_open_uniform(engine()) * extent[k];
    }
  }
  return PointCloud(d, std::move(coords), seed);
}

PointCloud cell_center_grid(const RectDomain& domain, std::size_t per_axis) {
  if (per_axis == 0) throw InvalidArgument("grid needs at least one cell per axis");
  const std::size_t d = domain.dim();
  std::size_t total = 1;
  for (std::size_t k = 0; k < d; ++k) total *= per_axis;
  std::vector<double> coords(total * d);
  const auto lower = domain.lower();
  const auto extent = domain.extent();
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    for (std::size_t k = 0; k < d; ++k) {
      const std::size_t cell = rest % per_axis;
      rest /= per_axis;
      coords[idx * d + k] =
          lower[k] + (static_cast<double>(cell) + 0.5) / static_cast<double>(per_axis) * extent[k];
    }
  }
  return PointCloud(d, std::move(coords));
}

}  // namespace bcl

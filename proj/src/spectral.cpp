#include "akhlab/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>

namespace akhlab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// FFTW planning is not thread-safe, execution with the new-array interface
// is. Plans are in-place and unaligned so any std::vector buffer can be used.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  std::pair<fftw_plan, fftw_plan> plans(std::size_t n) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    std::vector<Complex> scratch(n);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    const int len = static_cast<int>(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan fwd = fftw_plan_dft_1d(len, buf, buf, FFTW_FORWARD, flags);
    fftw_plan bwd = fftw_plan_dft_1d(len, buf, buf, FFTW_BACKWARD, flags);
    if (fwd == nullptr || bwd == nullptr) throw std::runtime_error("FFTW planning failed");
    return plans_.emplace(n, std::make_pair(fwd, bwd)).first->second;
  }

  ~PlanCache() {
    for (auto& [n, p] : plans_) {
      fftw_destroy_plan(p.first);
      fftw_destroy_plan(p.second);
    }
  }

 private:
  std::mutex mutex_;
  std::map<std::size_t, std::pair<fftw_plan, fftw_plan>> plans_;
};

void execute(std::span<Complex> data, bool forward) {
  auto [fwd, bwd] = PlanCache::instance().plans(data.size());
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(forward ? fwd : bwd, buf, buf);
}

void require_finite(std::span<const Complex> values, const char* what) {
  for (const auto& v : values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw std::invalid_argument(std::string(what) + ": non-finite sample");
    }
  }
}

}  // namespace

PeriodicGrid::PeriodicGrid(std::size_t n_points, double length)
    : n_(n_points), length_(length) {
  if (n_points < 8 || !is_power_of_two(n_points)) {
    throw std::invalid_argument("grid size must be a power of two >= 8, got " +
                                std::to_string(n_points));
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw std::invalid_argument("grid length must be positive and finite");
  }
}

std::vector<double> PeriodicGrid::nodes() const {
  std::vector<double> x(n_);
  for (std::size_t j = 0; j < n_; ++j) x[j] = node(j);
  return x;
}

int PeriodicGrid::frequency(std::size_t bin) const {
  const auto half = n_ / 2;
  return bin < half ? static_cast<int>(bin)
                    : static_cast<int>(bin) - static_cast<int>(n_);
}

std::size_t PeriodicGrid::bin(int frequency) const {
  const auto n = static_cast<int>(n_);
  if (frequency < -n / 2 || frequency >= n / 2) {
    throw std::out_of_range("frequency outside [-n/2, n/2)");
  }
  return static_cast<std::size_t>(frequency < 0 ? frequency + n : frequency);
}

double PeriodicGrid::wavenumber(int frequency) const {
  return kTwoPi * static_cast<double>(frequency) / length_;
}

SampledField::SampledField(PeriodicGrid grid, std::vector<Complex> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw std::invalid_argument("sample count does not match grid size");
  }
  require_finite(values_, "SampledField");
}

SampledField SampledField::sample(const PeriodicGrid& grid,
                                  const std::function<Complex(double)>& fn) {
  std::vector<Complex> v(grid.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = fn(grid.node(j));
  return {grid, std::move(v)};
}

SampledField SampledField::constant(const PeriodicGrid& grid, Complex value) {
  return {grid, std::vector<Complex>(grid.size(), value)};
}

SampledField SampledField::operator+(const SampledField& other) const {
  if (!(grid_ == other.grid_)) throw std::invalid_argument("grid mismatch");
  std::vector<Complex> v(values_);
  for (std::size_t j = 0; j < v.size(); ++j) v[j] += other.values_[j];
  return {grid_, std::move(v)};
}

SampledField SampledField::operator-(const SampledField& other) const {
  if (!(grid_ == other.grid_)) throw std::invalid_argument("grid mismatch");
  std::vector<Complex> v(values_);
  for (std::size_t j = 0; j < v.size(); ++j) v[j] -= other.values_[j];
  return {grid_, std::move(v)};
}

SampledField SampledField::operator*(Complex factor) const {
  std::vector<Complex> v(values_);
  for (auto& z : v) z *= factor;
  return {grid_, std::move(v)};
}

SampledField SampledField::rotated(std::ptrdiff_t shift) const {
  const auto n = static_cast<std::ptrdiff_t>(values_.size());
  std::vector<Complex> v(values_.size());
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    v[static_cast<std::size_t>(((j + shift) % n + n) % n)] = values_[static_cast<std::size_t>(j)];
  }
  return {grid_, std::move(v)};
}

double SampledField::max_abs() const {
  double m = 0.0;
  for (const auto& z : values_) m = std::max(m, std::abs(z));
  return m;
}

Spectrum::Spectrum(PeriodicGrid grid, std::vector<Complex> coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != grid_.size()) {
    throw std::invalid_argument("coefficient count does not match grid size");
  }
}

double Spectrum::peak() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

void fft_in_place(std::span<Complex> data, bool forward) { execute(data, forward); }

Spectrum transform(const SampledField& f) {
  std::vector<Complex> data(f.values().begin(), f.values().end());
  execute(data, true);
  const double scale = 1.0 / static_cast<double>(data.size());
  for (auto& c : data) c *= scale;
  return {f.grid(), std::move(data)};
}

SampledField inverse(const Spectrum& sp) {
  std::vector<Complex> data(sp.coeffs().begin(), sp.coeffs().end());
  execute(data, false);
  return {sp.grid(), std::move(data)};
}

Spectrum spectral_derivative(const Spectrum& sp, int order) {
  if (order < 1 || order > 4) {
    throw std::invalid_argument("derivative order must be in 1..4, got " +
                                std::to_string(order));
  }
  const auto& grid = sp.grid();
  std::vector<Complex> out(sp.coeffs().begin(), sp.coeffs().end());
  const std::size_t nyquist = grid.size() / 2;
  for (std::size_t j = 0; j < out.size(); ++j) {
    if (j == nyquist && order % 2 == 1) {
      out[j] = 0.0;
      continue;
    }
    const double k = grid.wavenumber(grid.frequency(j));
    Complex factor = 1.0;
    for (int r = 0; r < order; ++r) factor *= Complex(0.0, k);
    out[j] *= factor;
  }
  return {grid, std::move(out)};
}

SampledField spectral_derivative(const SampledField& f, int order) {
  return inverse(spectral_derivative(transform(f), order));
}

int truncate_noise_tail(Spectrum& sp, double relative_floor) {
  const auto& grid = sp.grid();
  const int half = static_cast<int>(grid.size() / 2);
  const double floor = relative_floor * sp.peak();
  const auto magnitude = [&](int m) {
    const double pos = m < half ? std::abs(sp.coeff(m)) : 0.0;
    return std::max(pos, std::abs(sp.coeff(-m)));
  };
  int start = 0;
  for (int m = 1; m <= half; ++m) {
    if (magnitude(m) > magnitude(start)) start = m;
  }
  int cutoff = half + 1;
  for (int m = start + 1; m <= half; ++m) {
    if (magnitude(m) < floor) {
      cutoff = m;
      break;
    }
  }
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (std::abs(grid.frequency(j)) >= cutoff) sp.coeffs()[j] = 0.0;
  }
  return cutoff;
}

double tail_ratio(const Spectrum& sp) {
  const auto& grid = sp.grid();
  const int quarter = static_cast<int>(grid.size() / 4);
  double tail = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (std::abs(grid.frequency(j)) > quarter) tail = std::max(tail, std::abs(sp.coeffs()[j]));
  }
  const double peak = sp.peak();
  return peak > 0.0 ? tail / peak : 0.0;
}

SampledField spectral_shift(const SampledField& f, double shift) {
  Spectrum sp = transform(f);
  const auto& grid = sp.grid();
  const std::size_t nyquist = grid.size() / 2;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double k = grid.wavenumber(grid.frequency(j));
    if (j == nyquist) {
      sp.coeffs()[j] *= std::cos(k * shift);
    } else {
      sp.coeffs()[j] *= std::polar(1.0, -k * shift);
    }
  }
  return inverse(sp);
}

Complex quadrature(const SampledField& f) {
  Complex sum = 0.0;
  for (const auto& v : f.values()) sum += v;
  return sum * f.grid().spacing();
}

double quadrature_real(std::span<const double> samples, const PeriodicGrid& grid) {
  if (samples.size() != grid.size()) throw std::invalid_argument("sample count mismatch");
  double sum = 0.0;
  for (double v : samples) sum += v;
  return sum * grid.spacing();
}

double SobolevConvention::weight(int frequency) const {
  const double n = std::abs(static_cast<double>(frequency));
  if (kind == SobolevKind::inhomogeneous) return std::pow(1.0 + n * n, order);
  if (frequency == 0) return order == 0.0 ? 1.0 : 0.0;
  return std::pow(n, 2.0 * order);
}

const char* to_string(SobolevKind kind) {
  return kind == SobolevKind::inhomogeneous ? "inhomogeneous" : "homogeneous";
}

double sobolev_norm(const Spectrum& sp, const SobolevConvention& conv) {
  if (!(conv.order >= 0.0)) throw std::invalid_argument("Sobolev order must be >= 0");
  const auto& grid = sp.grid();
  double sum = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    sum += conv.weight(grid.frequency(j)) * std::norm(sp.coeffs()[j]);
  }
  return std::sqrt(sum);
}

double sobolev_norm(const SampledField& f, const SobolevConvention& conv) {
  if (!(conv.order >= 0.0)) throw std::invalid_argument("Sobolev order must be >= 0");
  return sobolev_norm(transform(f), conv);
}

double l2_norm(const SampledField& f) {
  double sum = 0.0;
  for (const auto& v : f.values()) sum += std::norm(v);
  return std::sqrt(sum * f.grid().spacing());
}

double rms_norm(const SampledField& f) {
  return l2_norm(f) / std::sqrt(f.grid().length());
}

}  // namespace akhlab

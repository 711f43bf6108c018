#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace akhlab {

using Complex = std::complex<double>;

/// Uniform grid x_j = j L / n on [0, L); n is a power of two, at least 8.
class PeriodicGrid {
 public:
  PeriodicGrid(std::size_t n_points, double length);

  std::size_t size() const { return n_; }
  double length() const { return length_; }
  double spacing() const { return length_ / static_cast<double>(n_); }
  double node(std::size_t j) const { return spacing() * static_cast<double>(j); }
  std::vector<double> nodes() const;

  /// Integer frequency stored in FFT bin j: 0..n/2-1, then -n/2..-1.
  int frequency(std::size_t bin) const;
  std::size_t bin(int frequency) const;
  /// Physical wavenumber 2 pi n / L.
  double wavenumber(int frequency) const;

  bool operator==(const PeriodicGrid& other) const = default;

 private:
  std::size_t n_;
  double length_;
};

/// Complex samples of a periodic field, one per grid node. Always finite.
class SampledField {
 public:
  SampledField(PeriodicGrid grid, std::vector<Complex> values);

  static SampledField sample(const PeriodicGrid& grid,
                             const std::function<Complex(double)>& fn);
  static SampledField constant(const PeriodicGrid& grid, Complex value);

  const PeriodicGrid& grid() const { return grid_; }
  std::span<const Complex> values() const { return values_; }
  const Complex& operator[](std::size_t j) const { return values_[j]; }
  std::size_t size() const { return values_.size(); }

  SampledField operator+(const SampledField& other) const;
  SampledField operator-(const SampledField& other) const;
  SampledField operator*(Complex factor) const;

  /// Cyclic index rotation: result[j] = values[j - shift], i.e. f(x - shift*dx).
  SampledField rotated(std::ptrdiff_t shift) const;
  double max_abs() const;

 private:
  PeriodicGrid grid_;
  std::vector<Complex> values_;
};

/// Fourier coefficients u_hat(n) = (1/N) sum_j u_j e^{-2 pi i n j / N}, kept in
/// FFT bin order. A pure mode e^{i k_n x} has unit coefficient at n.
class Spectrum {
 public:
  Spectrum(PeriodicGrid grid, std::vector<Complex> coeffs);

  const PeriodicGrid& grid() const { return grid_; }
  std::span<const Complex> coeffs() const { return coeffs_; }
  std::span<Complex> coeffs() { return coeffs_; }
  Complex coeff(int frequency) const { return coeffs_[grid_.bin(frequency)]; }
  Complex& coeff(int frequency) { return coeffs_[grid_.bin(frequency)]; }

  double peak() const;

 private:
  PeriodicGrid grid_;
  std::vector<Complex> coeffs_;
};

/// Unnormalized in-place DFT (forward: e^{-i...}). Accepts any values,
/// including non-finite ones; the solver uses it on raw state.
void fft_in_place(std::span<Complex> data, bool forward);

Spectrum transform(const SampledField& f);
SampledField inverse(const Spectrum& sp);

/// Multiplies coefficient n by (i k_n)^order, order in 1..4. The unpaired
/// Nyquist mode is zeroed for odd orders. Throws std::invalid_argument for
/// other orders.
Spectrum spectral_derivative(const Spectrum& sp, int order);
SampledField spectral_derivative(const SampledField& f, int order);

/// Zeroes every mode with |n| >= n_c, where n_c is the first |n| beyond the
/// dominant mode whose combined coefficient magnitude max(|u(n)|, |u(-n)|)
/// falls below `relative_floor * peak`. Returns n_c (n/2 + 1 when nothing
/// was cut). Spectra with gaps above the dominant mode lose the modes past
/// the first gap.
/// Beyond n_c the coefficients are sampling roundoff, and high-order
/// derivatives amplify that roundoff by k^order.
int truncate_noise_tail(Spectrum& sp, double relative_floor);

/// Largest coefficient magnitude over |n| > n/4, relative to the peak.
double tail_ratio(const Spectrum& sp);

/// f(x - shift) realized as a phase ramp on the coefficients. The Nyquist
/// mode is multiplied by cos(k shift) so real fields stay real.
SampledField spectral_shift(const SampledField& f, double shift);

/// Trapezoid rule (L / n) sum_j f_j.
Complex quadrature(const SampledField& f);
double quadrature_real(std::span<const double> samples, const PeriodicGrid& grid);

enum class SobolevKind { homogeneous, inhomogeneous };

struct SobolevConvention {
  SobolevKind kind = SobolevKind::inhomogeneous;
  double order = 0.0;

  /// Weight applied to |u(n)|^2: |n|^{2s} (with 0^0 = 1) or (1 + n^2)^s.
  /// Uses the integer frequency, not the physical wavenumber.
  double weight(int frequency) const;
};

const char* to_string(SobolevKind kind);

/// (sum_n weight(n) |u(n)|^2)^{1/2}. Throws std::invalid_argument for s < 0.
double sobolev_norm(const Spectrum& sp, const SobolevConvention& conv);
double sobolev_norm(const SampledField& f, const SobolevConvention& conv);

/// sqrt((1/L) * quadrature |f|^2); equals the s = 0 inhomogeneous norm.
double rms_norm(const SampledField& f);
/// sqrt(quadrature |f|^2).
double l2_norm(const SampledField& f);

}  // namespace akhlab

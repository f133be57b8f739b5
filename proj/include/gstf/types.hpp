#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gstf {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class ErrorKind {
  InvalidArgument,
  GridMismatch,
  NotOnGrid,
  NotPowerOfTwo,
  NonFinite,
  BoundaryMass,
  MalformedSpec,
  DomainError,
  LexicalError,
  UnknownIdentifier,
  ArityMismatch,
  UnbalancedParen,
  SyntaxError,
  TwoParameterIndex,
  WindowNotInClass,
  TrivialSpace,
  UnsupportedRegion,
  IoError,
  UnknownFlag,
};

std::string_view to_string(ErrorKind kind);

/// Every failure in the library surfaces as this exception. `offset` is a
/// byte offset for parser errors and npos otherwise.
class Error : public std::runtime_error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  Error(ErrorKind kind, const std::string& message, std::size_t offset = npos);

  ErrorKind kind() const noexcept { return kind_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  ErrorKind kind_;
  std::size_t offset_;
};

/// Uniform sampling lattice. Sample j sits at center + (j - (count-1)/2) * step,
/// so the lattice is symmetric about its center. Even counts therefore do not
/// contain the center itself.
class Grid1D {
 public:
  Grid1D(double center, double step, std::size_t count);

  double center() const noexcept { return center_; }
  double step() const noexcept { return step_; }
  std::size_t count() const noexcept { return count_; }

  double at(std::size_t j) const noexcept {
    return center_ + (static_cast<double>(j) - 0.5 * static_cast<double>(count_ - 1)) * step_;
  }
  double half_width() const noexcept { return 0.5 * static_cast<double>(count_ - 1) * step_; }
  bool centered() const noexcept;
  std::vector<double> coordinates() const;

  /// Same lattice up to a relative tolerance on center and step.
  bool matches(const Grid1D& other, double rel_tol = 1e-9) const noexcept;

  friend bool operator==(const Grid1D&, const Grid1D&) = default;

 private:
  double center_;
  double step_;
  std::size_t count_;
};

/// Grid centered at 0 with 2^exponent samples spanning [-half_width, half_width].
Grid1D build_grid(double half_width, int exponent);

/// Odd-count lattice {-m*step, ..., 0, ..., m*step}.
Grid1D build_lattice(double step, std::size_t half_count);

/// Frequency grid dual to a centered grid: step 2*pi/(count*step), same count.
Grid1D dual_grid(const Grid1D& grid);

struct TFGrid {
  Grid1D x;
  Grid1D xi;
};

/// Complex samples on a Grid1D; values are finite.
class SampledFunction {
 public:
  SampledFunction(Grid1D grid, std::vector<cplx> values);
  static SampledFunction zeros(const Grid1D& grid);

  const Grid1D& grid() const noexcept { return grid_; }
  std::span<const cplx> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  const cplx& operator[](std::size_t j) const noexcept { return values_[j]; }

  std::vector<double> magnitudes() const;
  double sup_abs() const;
  /// Riemann-sum L2 norm.
  double l2_norm() const;

 private:
  Grid1D grid_;
  std::vector<cplx> values_;
};

/// Complex samples on a TFGrid, row-major: row i is x = tfgrid.x.at(i),
/// column k is xi = tfgrid.xi.at(k).
class TFR {
 public:
  TFR(TFGrid grid, std::vector<cplx> values);
  static TFR zeros(const TFGrid& grid);

  const TFGrid& grid() const noexcept { return grid_; }
  std::size_t rows() const noexcept { return grid_.x.count(); }
  std::size_t cols() const noexcept { return grid_.xi.count(); }
  std::span<const cplx> values() const noexcept { return values_; }

  const cplx& operator()(std::size_t i, std::size_t k) const noexcept { return values_[i * cols() + k]; }

  double sup_abs() const;
  /// max_k |a(i,k)| for each row i.
  std::vector<double> row_sup() const;
  /// max_i |a(i,k)| for each column k.
  std::vector<double> col_sup() const;

 private:
  TFGrid grid_;
  std::vector<cplx> values_;
};

enum class Regularity { Roumieu, Beurling };

/// (s, sigma, regularity). An infinite entry encodes the one-parameter
/// convention S_s^inf = S_s and S_inf^sigma = S^sigma.
struct GSIndex {
  double s = kInf;
  double sigma = kInf;
  Regularity regularity = Regularity::Roumieu;

  GSIndex() = default;
  GSIndex(double s_, double sigma_, Regularity reg);

  static GSIndex decay(double s, Regularity reg) { return {s, kInf, reg}; }
  static GSIndex fourier(double sigma, Regularity reg) { return {kInf, sigma, reg}; }

  bool has_s() const noexcept { return s != kInf; }
  bool has_sigma() const noexcept { return sigma != kInf; }
  bool one_parameter() const noexcept { return has_s() != has_sigma(); }
  std::string name() const;
};

std::string_view to_string(Regularity reg);

}  // namespace gstf

#include "gstf/types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gstf {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::NotOnGrid: return "NotOnGrid";
    case ErrorKind::NotPowerOfTwo: return "NotPowerOfTwo";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::BoundaryMass: return "BoundaryMass";
    case ErrorKind::MalformedSpec: return "MalformedSpec";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::LexicalError: return "LexicalError";
    case ErrorKind::UnknownIdentifier: return "UnknownIdentifier";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::UnbalancedParen: return "UnbalancedParen";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::TwoParameterIndex: return "TwoParameterIndex";
    case ErrorKind::WindowNotInClass: return "WindowNotInClass";
    case ErrorKind::TrivialSpace: return "TrivialSpace";
    case ErrorKind::UnsupportedRegion: return "UnsupportedRegion";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::UnknownFlag: return "UnknownFlag";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message, std::size_t offset)
    : std::runtime_error(message), kind_(kind), offset_(offset) {}

Grid1D::Grid1D(double center, double step, std::size_t count) : center_(center), step_(step), count_(count) {
  if (!std::isfinite(center) || !std::isfinite(step) || !(step > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "grid step must be finite and positive");
  }
  if (count < 2) throw Error(ErrorKind::InvalidArgument, "grid needs at least two samples");
}

bool Grid1D::centered() const noexcept { return std::abs(center_) <= 1e-12 * step_; }

std::vector<double> Grid1D::coordinates() const {
  std::vector<double> out(count_);
  for (std::size_t j = 0; j < count_; ++j) out[j] = at(j);
  return out;
}

bool Grid1D::matches(const Grid1D& other, double rel_tol) const noexcept {
  if (count_ != other.count_) return false;
  if (std::abs(step_ - other.step_) > rel_tol * step_) return false;
  return std::abs(center_ - other.center_) <= rel_tol * step_;
}

Grid1D build_grid(double half_width, int exponent) {
  if (!std::isfinite(half_width) || !(half_width > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "half_width must be finite and positive");
  }
  if (exponent < 1 || exponent > 24) throw Error(ErrorKind::InvalidArgument, "exponent must lie in [1, 24]");
  const std::size_t count = std::size_t{1} << exponent;
  return Grid1D(0.0, 2.0 * half_width / static_cast<double>(count - 1), count);
}

Grid1D build_lattice(double step, std::size_t half_count) {
  if (half_count == 0) throw Error(ErrorKind::InvalidArgument, "lattice needs half_count >= 1");
  return Grid1D(0.0, step, 2 * half_count + 1);
}

Grid1D dual_grid(const Grid1D& grid) {
  return Grid1D(0.0, 2.0 * kPi / (static_cast<double>(grid.count()) * grid.step()), grid.count());
}

namespace {

void require_finite(std::span<const cplx> values) {
  for (const auto& v : values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw Error(ErrorKind::NonFinite, "sample values must be finite");
    }
  }
}

}  // namespace

SampledFunction::SampledFunction(Grid1D grid, std::vector<cplx> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.count()) throw Error(ErrorKind::GridMismatch, "value count differs from grid count");
  require_finite(values_);
}

SampledFunction SampledFunction::zeros(const Grid1D& grid) {
  return SampledFunction(grid, std::vector<cplx>(grid.count()));
}

std::vector<double> SampledFunction::magnitudes() const {
  std::vector<double> out(values_.size());
  std::transform(values_.begin(), values_.end(), out.begin(), [](const cplx& v) { return std::abs(v); });
  return out;
}

double SampledFunction::sup_abs() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

double SampledFunction::l2_norm() const {
  double acc = 0.0;
  for (const auto& v : values_) acc += std::norm(v);
  return std::sqrt(acc * grid_.step());
}

TFR::TFR(TFGrid grid, std::vector<cplx> values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.x.count() * grid_.xi.count()) {
    throw Error(ErrorKind::GridMismatch, "TFR value count differs from grid dimensions");
  }
  require_finite(values_);
}

TFR TFR::zeros(const TFGrid& grid) { return TFR(grid, std::vector<cplx>(grid.x.count() * grid.xi.count())); }

double TFR::sup_abs() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

std::vector<double> TFR::row_sup() const {
  std::vector<double> out(rows(), 0.0);
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t k = 0; k < cols(); ++k) out[i] = std::max(out[i], std::abs((*this)(i, k)));
  return out;
}

std::vector<double> TFR::col_sup() const {
  std::vector<double> out(cols(), 0.0);
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t k = 0; k < cols(); ++k) out[k] = std::max(out[k], std::abs((*this)(i, k)));
  return out;
}

GSIndex::GSIndex(double s_, double sigma_, Regularity reg) : s(s_), sigma(sigma_), regularity(reg) {
  auto ok = [](double v) { return v == kInf || (std::isfinite(v) && v > 0.0); };
  if (!ok(s) || !ok(sigma)) throw Error(ErrorKind::InvalidArgument, "GS parameters must be positive or infinite");
  if (s == kInf && sigma == kInf) throw Error(ErrorKind::InvalidArgument, "at least one GS parameter must be finite");
}

std::string_view to_string(Regularity reg) { return reg == Regularity::Roumieu ? "roumieu" : "beurling"; }

std::string GSIndex::name() const {
  std::ostringstream os;
  os << (regularity == Regularity::Roumieu ? "S" : "Sigma");
  if (has_s()) os << "_{" << s << "}";
  if (has_sigma()) os << "^{" << sigma << "}";
  return os.str();
}

}  // namespace gstf

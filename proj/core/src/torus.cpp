#include "sphlab/torus.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include <fftw3.h>

#include "sphlab/error.hpp"
#include "sphlab/multiplier.hpp"

namespace sphlab {
namespace {

// The FFTW planner is not thread safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void require_same_torus(const FrequencyGrid& a, const FrequencyGrid& b, const char* what) {
  if (!(a == b)) throw DimensionMismatch(std::string(what) + ": torus shapes differ");
}

// In-place DFT of every plane of data; sign is FFTW_FORWARD or FFTW_BACKWARD.
void transform_planes(std::vector<Complex>& data, const FrequencyGrid& grid, int planes, int sign) {
  std::vector<int> dims(static_cast<std::size_t>(grid.dimension()), grid.side());
  auto* buffer = reinterpret_cast<fftw_complex*>(data.data());
  const int dist = static_cast<int>(grid.size());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_many_dft(grid.dimension(), dims.data(), planes, buffer, nullptr, 1, dist, buffer,
                              nullptr, 1, dist, sign, FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw std::runtime_error("fftw: planning failed");
  fftw_execute(plan);
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
}

}  // namespace

FrequencyGrid::FrequencyGrid(int dimension, int side) : dimension_(dimension), side_(side), size_(1) {
  if (dimension < 1) throw std::invalid_argument("FrequencyGrid: dimension must be positive");
  if (side < 1) throw std::invalid_argument("FrequencyGrid: side must be positive");
  for (int i = 0; i < dimension; ++i) {
    if (size_ > (std::size_t{1} << 40) / static_cast<std::size_t>(side)) {
      throw ResourceError("FrequencyGrid: too many sites");
    }
    size_ *= static_cast<std::size_t>(side);
  }
}

std::vector<int> FrequencyGrid::index(std::size_t flat) const {
  std::vector<int> j(static_cast<std::size_t>(dimension_));
  for (int c = dimension_ - 1; c >= 0; --c) {
    j[static_cast<std::size_t>(c)] = static_cast<int>(flat % static_cast<std::size_t>(side_));
    flat /= static_cast<std::size_t>(side_);
  }
  return j;
}

std::size_t FrequencyGrid::flat(std::span<const int> j) const {
  std::size_t f = 0;
  for (const int v : j) f = f * static_cast<std::size_t>(side_) + static_cast<std::size_t>(v);
  return f;
}

std::size_t FrequencyGrid::wrap(std::span<const std::int64_t> n) const {
  if (n.size() != static_cast<std::size_t>(dimension_)) {
    throw DimensionMismatch("FrequencyGrid::wrap: wrong dimension");
  }
  std::size_t f = 0;
  for (const std::int64_t v : n) {
    f = f * static_cast<std::size_t>(side_) + static_cast<std::size_t>(mod_floor(v, side_));
  }
  return f;
}

std::vector<double> FrequencyGrid::frequency(std::size_t flat) const {
  const auto j = index(flat);
  std::vector<double> xi(j.size());
  for (std::size_t c = 0; c < j.size(); ++c) xi[c] = static_cast<double>(j[c]) / side_;
  return xi;
}

MultiplierField sample_exact_multiplier(const FrequencyGrid& grid, const SphereShell& shell) {
  if (grid.dimension() != shell.dimension()) {
    throw DimensionMismatch("sample_exact_multiplier: dimension mismatch");
  }
  if (shell.empty()) throw std::domain_error("sample_exact_multiplier: empty shell");
  // At xi = j / L the phase e^{2 pi i m.xi} depends on m mod L only, so one
  // DFT of the shell histogram on the torus gives every grid value exactly.
  std::vector<Complex> values(grid.size(), Complex{});
  const double weight = 1.0 / static_cast<double>(shell.size());
  std::vector<std::int64_t> m(static_cast<std::size_t>(shell.dimension()));
  for (std::size_t i = 0; i < shell.size(); ++i) {
    const auto point = shell.point(i);
    std::copy(point.begin(), point.end(), m.begin());
    values[grid.wrap(m)] += weight;
  }
  transform_planes(values, grid, 1, FFTW_BACKWARD);
  return MultiplierField{grid, std::move(values),
                         "exact d=" + std::to_string(shell.dimension()) + " k=" + std::to_string(shell.radius_sq())};
}

LatticeFunction::LatticeFunction(int dimension, int side, int matrix_dim)
    : grid_(dimension, side), matrix_dim_(matrix_dim) {
  if (matrix_dim < 1) throw std::invalid_argument("LatticeFunction: matrix_dim must be positive");
  values_.assign(grid_.size() * static_cast<std::size_t>(matrix_dim) * matrix_dim, Complex{});
}

LatticeFunction LatticeFunction::delta(int dimension, int side) {
  LatticeFunction f(dimension, side);
  f.at(0) = 1.0;
  return f;
}

LatticeFunction LatticeFunction::constant(int dimension, int side, Complex value) {
  LatticeFunction f(dimension, side);
  std::fill(f.values_.begin(), f.values_.end(), value);
  return f;
}

Eigen::MatrixXcd LatticeFunction::matrix_at(std::size_t site) const {
  Eigen::MatrixXcd m(matrix_dim_, matrix_dim_);
  for (int r = 0; r < matrix_dim_; ++r) {
    for (int c = 0; c < matrix_dim_; ++c) m(r, c) = at(site, r, c);
  }
  return m;
}

void LatticeFunction::set_matrix(std::size_t site, const Eigen::MatrixXcd& value) {
  if (value.rows() != matrix_dim_ || value.cols() != matrix_dim_) {
    throw DimensionMismatch("LatticeFunction::set_matrix: wrong matrix size");
  }
  for (int r = 0; r < matrix_dim_; ++r) {
    for (int c = 0; c < matrix_dim_; ++c) at(site, r, c) = value(r, c);
  }
}

double LatticeFunction::max_abs_diff(const LatticeFunction& other) const {
  require_same_torus(grid_, other.grid_, "max_abs_diff");
  if (matrix_dim_ != other.matrix_dim_) throw DimensionMismatch("max_abs_diff: matrix sizes differ");
  double worst = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) worst = std::max(worst, std::abs(values_[i] - other.values_[i]));
  return worst;
}

LatticeFunction apply_multiplier(const MultiplierField& field, const LatticeFunction& f) {
  require_same_torus(field.grid, f.grid(), "apply_multiplier");
  if (field.values.size() != field.grid.size()) {
    throw DimensionMismatch("apply_multiplier: field has wrong number of values");
  }
  LatticeFunction out = f;
  const int planes = f.matrix_dim() * f.matrix_dim();
  auto& data = out.data();
  // With F(j) = sum_n f(n) e^{+2 pi i n.j/L}, convolution by K becomes
  // multiplication by sum_m K(m) e^{2 pi i m.xi}, the convention of the multipliers.
  transform_planes(data, f.grid(), planes, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(f.sites());
  for (int p = 0; p < planes; ++p) {
    Complex* plane = data.data() + static_cast<std::size_t>(p) * f.sites();
    for (std::size_t i = 0; i < f.sites(); ++i) plane[i] *= field.values[i] * scale;
  }
  transform_planes(data, f.grid(), planes, FFTW_FORWARD);
  return out;
}

bool shell_wraps(const SphereShell& shell, int side) {
  const double radius = std::sqrt(static_cast<double>(shell.radius_sq()));
  return !(static_cast<double>(side) > 2.0 * radius);
}

LatticeFunction spherical_convolve(const SphereShell& shell, const LatticeFunction& f,
                                   std::vector<std::string>* warnings) {
  if (shell.dimension() != f.dimension()) {
    throw DimensionMismatch("spherical_convolve: dimension mismatch");
  }
  if (shell.empty()) throw std::domain_error("spherical_convolve: empty shell");
  if (warnings != nullptr && shell_wraps(shell, f.side())) {
    warnings->push_back("spherical_convolve: side " + std::to_string(f.side()) +
                        " <= 2 sqrt(" + std::to_string(shell.radius_sq()) +
                        "), shell wraps around the torus");
  }
  const int d = f.dimension();
  const auto side = static_cast<std::size_t>(f.side());
  const std::size_t rows = f.sites() / side;  // sites grouped by all but the last coordinate
  const int planes = f.matrix_dim() * f.matrix_dim();
  LatticeFunction out(d, f.side(), f.matrix_dim());
  std::vector<std::size_t> row_source(rows);
  for (std::size_t s = 0; s < shell.size(); ++s) {
    const auto m = shell.point(s);
    // Source row of every output row: shift the leading coordinates by -m.
    for (std::size_t r = 0; r < rows; ++r) {
      std::size_t rem = r;
      std::size_t src = 0;
      std::size_t stride = 1;
      for (int c = d - 2; c >= 0; --c) {
        const auto coord = static_cast<std::int64_t>(rem % side);
        rem /= side;
        src += static_cast<std::size_t>(mod_floor(coord - m[static_cast<std::size_t>(c)],
                                                  static_cast<std::int64_t>(side))) *
               stride;
        stride *= side;
      }
      row_source[r] = src;
    }
    const auto shift = static_cast<std::size_t>(
        mod_floor(m[static_cast<std::size_t>(d - 1)], static_cast<std::int64_t>(side)));
    for (int p = 0; p < planes; ++p) {
      const Complex* in = f.data().data() + static_cast<std::size_t>(p) * f.sites();
      Complex* dst = out.data().data() + static_cast<std::size_t>(p) * f.sites();
      for (std::size_t r = 0; r < rows; ++r) {
        const Complex* src = in + row_source[r] * side;
        Complex* row = dst + r * side;
        // row[x] += src[(x - shift) mod side]
        for (std::size_t x = 0; x < shift; ++x) row[x] += src[x + side - shift];
        for (std::size_t x = shift; x < side; ++x) row[x] += src[x - shift];
      }
    }
  }
  // Divide once at the end, the same rounding as a plain sum-then-average.
  const auto count = static_cast<double>(shell.size());
  for (Complex& v : out.data()) v /= count;
  return out;
}

}  // namespace sphlab

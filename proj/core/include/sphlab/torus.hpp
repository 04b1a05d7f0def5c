#pragma once

// Lattice functions on the cyclic torus (Z/L)^d and the operators acting on
// them: Fourier multipliers through the DFT and direct spherical averages.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sphlab/gauss.hpp"
#include "sphlab/lattice.hpp"

namespace sphlab {

/// Sites and DFT frequencies j / L of (Z/L)^d. Flat indices are row-major with
/// the last coordinate fastest.
class FrequencyGrid {
 public:
  FrequencyGrid(int dimension, int side);

  int dimension() const noexcept { return dimension_; }
  int side() const noexcept { return side_; }
  std::size_t size() const noexcept { return size_; }

  std::vector<int> index(std::size_t flat) const;
  std::size_t flat(std::span<const int> j) const;
  /// Flat index of n reduced mod L coordinatewise.
  std::size_t wrap(std::span<const std::int64_t> n) const;
  /// xi = j / L with every coordinate in [0, 1).
  std::vector<double> frequency(std::size_t flat) const;

  friend bool operator==(const FrequencyGrid&, const FrequencyGrid&) = default;

 private:
  int dimension_;
  int side_;
  std::size_t size_;
};

struct MultiplierField {
  FrequencyGrid grid;
  std::vector<Complex> values;  // indexed by flat grid index
  std::string label;
};

template <class F>
MultiplierField sample_field(const FrequencyGrid& grid, F&& multiplier, std::string label) {
  MultiplierField field{grid, {}, std::move(label)};
  field.values.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto xi = grid.frequency(i);
    field.values.push_back(multiplier(std::span<const double>(xi)));
  }
  return field;
}

/// m_lambda on the grid using exact integer phases.
MultiplierField sample_exact_multiplier(const FrequencyGrid& grid, const SphereShell& shell);

/// Scalar (matrix_dim 1) or n x n matrix valued function on the torus. Each
/// matrix entry is stored as its own contiguous plane of sites.
class LatticeFunction {
 public:
  LatticeFunction(int dimension, int side, int matrix_dim = 1);

  static LatticeFunction delta(int dimension, int side);
  static LatticeFunction constant(int dimension, int side, Complex value);

  int dimension() const noexcept { return grid_.dimension(); }
  int side() const noexcept { return grid_.side(); }
  int matrix_dim() const noexcept { return matrix_dim_; }
  std::size_t sites() const noexcept { return grid_.size(); }
  const FrequencyGrid& grid() const noexcept { return grid_; }

  Complex& at(std::size_t site, int row = 0, int col = 0) {
    return values_[plane_offset(row, col) + site];
  }
  const Complex& at(std::size_t site, int row = 0, int col = 0) const {
    return values_[plane_offset(row, col) + site];
  }
  std::span<Complex> plane(int row, int col) { return {values_.data() + plane_offset(row, col), sites()}; }
  std::span<const Complex> plane(int row, int col) const {
    return {values_.data() + plane_offset(row, col), sites()};
  }
  std::vector<Complex>& data() noexcept { return values_; }
  const std::vector<Complex>& data() const noexcept { return values_; }

  Eigen::MatrixXcd matrix_at(std::size_t site) const;
  void set_matrix(std::size_t site, const Eigen::MatrixXcd& value);

  /// Largest |entry| difference; throws DimensionMismatch on shape mismatch.
  double max_abs_diff(const LatticeFunction& other) const;

 private:
  std::size_t plane_offset(int row, int col) const {
    return (static_cast<std::size_t>(row) * matrix_dim_ + col) * sites();
  }

  FrequencyGrid grid_;
  int matrix_dim_;
  std::vector<Complex> values_;
};

/// DFT^{-1}(field * DFT(f)), entrywise for matrix-valued f.
LatticeFunction apply_multiplier(const MultiplierField& field, const LatticeFunction& f);

/// True when the side is too small to hold the shell without wrap-around.
bool shell_wraps(const SphereShell& shell, int side);

/// r_d(k)^{-1} sum_{|m|^2 = k} f(n - m) on the torus. Appends a message to
/// warnings (when given) if the shell wraps around.
LatticeFunction spherical_convolve(const SphereShell& shell, const LatticeFunction& f,
                                   std::vector<std::string>* warnings = nullptr);

}  // namespace sphlab

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ecb {

// A positive Hamiltonian represented by its eigenvalue sequence. Either a
// multi-mode harmonic oscillator (mode energies hw_i > 0, levels are
// sum_i hw_i*(n_i - 1/2) with n_i = 1,2,...) or an explicit nondecreasing
// level list that is guaranteed complete up to `complete_below`.
class SpectrumModel {
 public:
  static SpectrumModel oscillator(std::vector<double> mode_energies);
  static SpectrumModel explicit_levels(std::vector<double> levels,
                                       double complete_below);

  // Text format: optional blank/comment lines, a mandatory header line
  //   # complete_below=<value>   (value may be "inf")
  // then one eigenvalue per line in nondecreasing order.
  static SpectrumModel load(std::istream& in);
  static SpectrumModel load_file(const std::string& path);

  bool is_oscillator() const noexcept { return oscillator_; }
  const std::vector<double>& mode_energies() const;
  const std::vector<double>& levels() const;
  double complete_below() const;

  double ground_energy() const noexcept { return e0_; }        // E_0
  std::size_t ground_multiplicity() const noexcept { return ground_mult_; }
  std::size_t mode_count() const;
  double unit_energy() const;  // E_* = (prod hw_i)^(1/l), oscillator only

  // E_k (0-indexed, nondecreasing). Oscillator levels are found by binary
  // search on the counting function, exact on degeneracy plateaus; the
  // one-mode case uses the closed form (k + 1/2)*hw.
  double nth_level(std::uint64_t k) const;

 private:
  SpectrumModel() = default;
  bool oscillator_ = false;
  std::vector<double> modes_;       // oscillator
  std::vector<double> levels_;      // explicit
  double complete_below_ = 0.0;     // explicit
  double e0_ = 0.0;
  std::size_t ground_mult_ = 1;
};

// The m smallest oscillator levels, with multiplicity, nondecreasing.
// Refuses m beyond a fixed memory cap (use SpectrumModel::nth_level there).
std::vector<double> oscillator_levels(const std::vector<double>& energies,
                                      std::size_t m);

// #{(n_1..n_l) : sum_i hw_i*(n_i - 1/2) <= x}; 0 for x below the ground level.
std::uint64_t count_levels(const std::vector<double>& energies, double x);

// Datta-Becker diagnostic sums over ordered level pairs with E_k + E_j <= E:
// n_up = sum E_k^2, n_down = sum E_k E_j. Their ratio tends to a = 1 + 1/l
// for oscillator spectra.
struct BdSums {
  double n_up;
  double n_down;
};
BdSums bd_sums(const SpectrumModel& model, double energy);

}  // namespace ecb

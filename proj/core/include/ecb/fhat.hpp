#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "ecb/spectrum.hpp"

namespace ecb {

// Monotone envelope of the shifted max-entropy function f_bar: strictly
// increasing, eval(E)/sqrt(E) nonincreasing, eval >= f_bar pointwise.
// Implementations are immutable after construction and safe to share
// between threads.
class FHatFunction {
 public:
  virtual ~FHatFunction() = default;

  virtual double eval(double energy) const = 0;  // E >= 0

  // Inverse of eval on [eval(0), +inf): bisection on the strictly increasing
  // eval, |eval(x) - y| <= 1e-10 * max(1, |y|).
  virtual double inverse(double y) const;

  // Additive constant of the continuity bound built on this envelope.
  virtual double delta() const = 0;

  // Energy scale capping the free parameter t: gamma(d0) generically, E_0
  // for the oscillator closed form.
  virtual double t_cap_energy() const = 0;

  // Minimal natural d with ln d > eval(0), strictly.
  std::int64_t d0() const;
};

// Closed-form oscillator envelope l*ln((E+2E_0)/(l E_*)) + l with
// delta = e^{-l} + ln 2.
class OscillatorBar final : public FHatFunction {
 public:
  explicit OscillatorBar(std::vector<double> mode_energies);

  double eval(double energy) const override;
  double inverse(double y) const override;  // closed form
  double delta() const override;
  double t_cap_energy() const override { return e0_; }

  const std::vector<double>& mode_energies() const { return modes_; }

 private:
  std::vector<double> modes_;
  double e0_;
  double log_lestar_;  // ln(l * E_*)
};

// Minimal envelope: eval(E) = sqrt(E) * sup_{E' >= E} f_bar(E')/sqrt(E').
// The sup is located by a doubling scan (declared bracketed after 8
// consecutive decreasing doublings) followed by golden-section refinement;
// scans that hit `scan_ceiling` without turnover raise PrecisionError.
class StarEnvelope final : public FHatFunction {
 public:
  explicit StarEnvelope(SpectrumModel model, double scan_ceiling = 1e15);

  double eval(double energy) const override;
  double delta() const override;
  double t_cap_energy() const override { return gamma_d0_; }

  const SpectrumModel& model() const { return model_; }

 private:
  double sup_ratio_from(double energy) const;  // sup_{E' >= E} f_bar/sqrt
  SpectrumModel model_;
  double scan_ceiling_;
  double f0_;        // f_bar(0) = ln m(E_0)
  double gamma_d0_;  // inverse(ln d0), cached eagerly
};

}  // namespace ecb

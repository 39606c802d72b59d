#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "ecb/fhat.hpp"

namespace ecb {

double g_fun(double x);  // (x+1)ln(x+1) - x ln x, g(0) = 0
double h2(double p);     // binary entropy on [0,1], nats
double eta(double x);    // -x ln x, eta(0) = 0

// Constants of a continuity bound: C = c_f^+ + c_f^-, D = a_f + b_f, and the
// additive delta of the envelope in use.
struct BoundParams {
  double C;
  double D;
  double delta;
};

// Coefficient presets for the entropic quantities covered by the bound.
enum class QuantityPreset {
  Entropy,              // (1,1)
  CondEntropy,          // (2,1)
  Qcmi,                 // (2,2)
  ChannelMi,            // (2,2)
  ChannelCi,            // (2,2)
  ChannelMiAntideg,     // (1,2)
  ChannelCiDeg,         // (1,2)
  Holevo,               // (2,2)
  Privacy,              // (4,2)
  PrivacyDegOrAntideg,  // (2,2)
};

std::pair<double, double> preset_cd(QuantityPreset);
BoundParams preset_params(QuantityPreset, const FHatFunction& fhat);
BoundParams make_params(double C, double D, const FHatFunction& fhat);
std::optional<QuantityPreset> preset_from_string(std::string_view);
const std::vector<std::pair<std::string_view, QuantityPreset>>& preset_names();

// Finite-dimensional bound C*eps*ln(d) + D*g(eps).
double afw_finite(int d, double eps, const BoundParams& params);

// eps*ln(d-1) + h2(eps), valid for 0 <= eps <= 1 - 1/d.
double audenaert(int d, double eps);

// Upper end T of the admissible t-range: (1/eps)*min{1, sqrt(ebar/cap)} with
// cap = gamma(d0) generically and cap = E_0 for the oscillator closed form.
double t_max(const FHatFunction& fhat, double ebar, double eps);

// The energy-constrained continuity bound at parameter t in (0, T]:
//   C*eps*(1+4t)*(fhat(ebar/(eps t)^2) + delta) + D*(2g(eps t) + g(eps(1+2t)))
double cb(const FHatFunction& fhat, double ebar, double eps, double t,
          const BoundParams& params);

// Closed-form multimode-oscillator version (delta fixed to e^{-l} + ln 2).
double cb_osc(const std::vector<double>& energies, double energy, double eps,
              double t, const BoundParams& params);

// Minimize cb over t in (0, T]: log grid of `grid` points on [T*1e-6, T],
// golden-section refinement around the grid argmin.
struct OptResult {
  double t;
  double value;
};
OptResult cb_opt(const FHatFunction& fhat, double ebar, double eps,
                 const BoundParams& params, int grid = 256);

}  // namespace ecb

#pragma once

#include <vector>

#include "ecb/spectrum.hpp"

namespace ecb {

// One point of the Gibbs-state curve. For E > E_0 the identity
// F = lambda*E + lnZ holds; at E = E_0 lambda is reported as +inf and
// F = ln(ground multiplicity).
struct GibbsPoint {
  double E;
  double lambda;
  double lnZ;
  double F;  // maximal entropy F_H(E), nats
};

// ln Tr e^{-lambda H}. Oscillator: closed form. Explicit: direct sum; refuses
// (PrecisionError) when the geometric tail majorant built from the last level
// gap is not negligible relative to the listed sum.
double ln_partition(const SpectrumModel& model, double lambda);

// -d lnZ / d lambda.
double mean_energy(const SpectrumModel& model, double lambda);

// Inverse of mean_energy: |mean_energy(lambda) - E| <= rtol*(E - E_0),
// rtol = 1e-12. Values of E at (or numerically below) the lambda -> 0 plateau
// of an explicit spectrum are reported as lambda <= rtol.
double solve_lambda(const SpectrumModel& model, double energy);

GibbsPoint f_max(const SpectrumModel& model, double energy);   // E >= E_0
double f_bar(const SpectrumModel& model, double energy);       // E >= 0, = F(E+E_0)

// Closed-form oscillator envelopes: f_osc(E) = l*ln((E+E_0)/(l E_*)) + l for
// E >= E_0, and its shift f_osc_bar(E) = f_osc(E + E_0) for E >= 0.
double f_osc(const std::vector<double>& energies, double energy);
double f_osc_bar(const std::vector<double>& energies, double energy);

}  // namespace ecb

#include "ecb/thermo.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "ecb/errors.hpp"
#include "ecb/numerics.hpp"

namespace ecb {

namespace {

constexpr double kLambdaRtol = 1e-12;
constexpr double kTailTol = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Largest gap-based geometric majorant of the un-listed tail, in units of the
// shifted sum S = sum_k e^{-lambda(E_k - E_0)}. weight_energy=true majorizes
// sum E e^{-lambda E} instead (for the mean-energy sum).
void check_explicit_tail(const SpectrumModel& model, double lambda, double sum_shifted,
                         bool weight_energy) {
  const double b = model.complete_below();
  if (b == kInf) return;  // list declared complete: finite-dimensional operator
  const auto& lev = model.levels();
  double gap = 0.0;
  for (std::size_t i = lev.size(); i-- > 1;) {
    if (lev[i] > lev[i - 1]) {
      gap = lev[i] - lev[i - 1];
      break;
    }
  }
  if (gap <= 0.0)
    throw PrecisionError("explicit spectrum: no level gap to bound the tail; "
                         "use complete_below=inf for a complete list");
  const double e0 = model.ground_energy();
  const double r = std::exp(-lambda * gap);
  // levels assumed no denser than one per `gap` above complete_below
  double tail = std::exp(-lambda * (b - e0)) * r / (1.0 - r);
  if (weight_energy)
    tail *= (b - e0) + gap / (1.0 - r);
  if (tail > kTailTol * sum_shifted)
    throw PrecisionError("explicit spectrum: partition tail exceeds tolerance at this lambda");
}

}  // namespace

double ln_partition(const SpectrumModel& model, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("ln_partition: need lambda > 0");
  if (model.is_oscillator()) {
    double s = 0.0;
    for (double w : model.mode_energies())
      s += -0.5 * lambda * w - std::log(-std::expm1(-lambda * w));
    return s;
  }
  const double e0 = model.ground_energy();
  double sum = 0.0;
  for (double e : model.levels()) sum += std::exp(-lambda * (e - e0));
  check_explicit_tail(model, lambda, sum, false);
  return -lambda * e0 + std::log(sum);
}

double mean_energy(const SpectrumModel& model, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("mean_energy: need lambda > 0");
  if (model.is_oscillator()) {
    double s = 0.0;
    for (double w : model.mode_energies()) s += w * (1.0 / std::expm1(lambda * w) + 0.5);
    return s;
  }
  const double e0 = model.ground_energy();
  double z = 0.0, ez = 0.0;
  for (double e : model.levels()) {
    const double p = std::exp(-lambda * (e - e0));
    z += p;
    ez += (e - e0) * p;
  }
  check_explicit_tail(model, lambda, z, true);
  return e0 + ez / z;
}

double solve_lambda(const SpectrumModel& model, double energy) {
  const double e0 = model.ground_energy();
  if (!(energy > e0)) throw DomainError("solve_lambda: need E > E_0");
  if (!model.is_oscillator() && !(energy < model.levels().back()))
    throw DomainError("solve_lambda: E beyond the explicit spectrum range");

  const double ebar = energy - e0;
  double lo = 1.0 / ebar, hi = lo;
  if (mean_energy(model, lo) > energy) {
    // mean is decreasing in lambda: move up until it drops below E
    for (int it = 0; mean_energy(model, hi) > energy; ++it) {
      lo = hi;
      hi *= 2.0;
      if (it > 1100) throw PrecisionError("solve_lambda: failed to bracket");
    }
  } else {
    for (int it = 0; mean_energy(model, lo) <= energy; ++it) {
      hi = lo;
      lo *= 0.5;
      // explicit spectra plateau at the uniform mean as lambda -> 0+
      if (lo < kLambdaRtol) return lo;
      if (it > 1100) throw PrecisionError("solve_lambda: failed to bracket");
    }
  }
  return brent_root(
      [&](double l) { return mean_energy(model, l) - energy; }, lo, hi,
      0.0, kLambdaRtol * ebar, 300);
}

GibbsPoint f_max(const SpectrumModel& model, double energy) {
  const double e0 = model.ground_energy();
  if (!(energy >= e0)) throw DomainError("f_max: need E >= E_0");
  if (energy == e0) {
    const double f = std::log(static_cast<double>(model.ground_multiplicity()));
    return {energy, kInf, -kInf, f};
  }
  const double lambda = solve_lambda(model, energy);
  const double lnz = ln_partition(model, lambda);
  return {energy, lambda, lnz, lambda * energy + lnz};
}

double f_bar(const SpectrumModel& model, double energy) {
  if (!(energy >= 0.0)) throw DomainError("f_bar: need E >= 0");
  return f_max(model, energy + model.ground_energy()).F;
}

double f_osc(const std::vector<double>& energies, double energy) {
  const double l = static_cast<double>(energies.size());
  const double e0 = 0.5 * std::accumulate(energies.begin(), energies.end(), 0.0);
  if (!(energy >= e0)) throw DomainError("f_osc: need E >= E_0");
  double estar_log = 0.0;
  for (double w : energies) estar_log += std::log(w);
  return l * (std::log(energy + e0) - std::log(l) - estar_log / l) + l;
}

double f_osc_bar(const std::vector<double>& energies, double energy) {
  if (!(energy >= 0.0)) throw DomainError("f_osc_bar: need E >= 0");
  const double e0 = 0.5 * std::accumulate(energies.begin(), energies.end(), 0.0);
  return f_osc(energies, energy + e0);
}

}  // namespace ecb

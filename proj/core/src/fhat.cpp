#include "ecb/fhat.hpp"

#include <cmath>
#include <numeric>

#include "ecb/errors.hpp"
#include "ecb/numerics.hpp"
#include "ecb/thermo.hpp"

namespace ecb {

double FHatFunction::inverse(double y) const {
  const double f0 = eval(0.0);
  if (y < f0) throw DomainError("fhat inverse: y below eval(0)");
  const double tol = 1e-10 * std::max(1.0, std::fabs(y));
  if (y - f0 <= tol) return 0.0;
  double lo = 0.0, hi = 1.0;
  while (eval(hi) < y) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) throw DomainError("fhat inverse: y unreachable");
  }
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double v = eval(mid);
    if (std::fabs(v - y) <= tol) return mid;
    if (v < y)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-15 * std::max(1.0, hi)) break;
  }
  return 0.5 * (lo + hi);
}

std::int64_t FHatFunction::d0() const {
  const double f0 = eval(0.0);
  if (!(f0 < 42.0)) throw ResourceError("d0: eval(0) too large for an integer dimension");
  auto d = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(std::exp(f0))));
  while (std::log(static_cast<double>(d)) <= f0) ++d;
  return d;
}

OscillatorBar::OscillatorBar(std::vector<double> mode_energies)
    : modes_(std::move(mode_energies)) {
  if (modes_.empty()) throw DomainError("OscillatorBar: need at least one mode");
  for (double w : modes_)
    if (!(w > 0.0)) throw DomainError("OscillatorBar: mode energies must be positive");
  e0_ = 0.5 * std::accumulate(modes_.begin(), modes_.end(), 0.0);
  double s = 0.0;
  for (double w : modes_) s += std::log(w);
  const double l = static_cast<double>(modes_.size());
  log_lestar_ = std::log(l) + s / l;
}

double OscillatorBar::eval(double energy) const {
  if (!(energy >= 0.0)) throw DomainError("OscillatorBar: need E >= 0");
  const double l = static_cast<double>(modes_.size());
  return l * (std::log(energy + 2.0 * e0_) - log_lestar_) + l;
}

double OscillatorBar::inverse(double y) const {
  if (y < eval(0.0)) throw DomainError("OscillatorBar inverse: y below eval(0)");
  const double l = static_cast<double>(modes_.size());
  return std::exp(y / l - 1.0 + log_lestar_) - 2.0 * e0_;
}

double OscillatorBar::delta() const {
  return std::exp(-static_cast<double>(modes_.size())) + std::log(2.0);
}

StarEnvelope::StarEnvelope(SpectrumModel model, double scan_ceiling)
    : model_(std::move(model)), scan_ceiling_(scan_ceiling) {
  f0_ = f_bar(model_, 0.0);
  gamma_d0_ = inverse(std::log(static_cast<double>(d0())));
}

double StarEnvelope::sup_ratio_from(double energy) const {
  const auto ratio = [this](double e) { return f_bar(model_, e) / std::sqrt(e); };

  double best_x = energy;
  double best_v = ratio(energy);
  int decreasing = 0;
  double x = energy;
  while (decreasing < 8) {
    x *= 2.0;
    if (x > scan_ceiling_)
      throw PrecisionError("StarEnvelope: no turnover of f_bar/sqrt below the scan ceiling");
    const double v = ratio(x);
    if (v > best_v) {
      best_v = v;
      best_x = x;
      decreasing = 0;
    } else {
      ++decreasing;
    }
  }
  // refine inside the doubling bracket around the best sample (log scale)
  const double la = std::log(std::max(energy, best_x / 2.0));
  const double lb = std::log(best_x * 2.0);
  const auto m = golden_min([&](double lx) { return -ratio(std::exp(lx)); }, la, lb, 1e-12, 1e-12);
  return std::max(best_v, -m.value);
}

double StarEnvelope::eval(double energy) const {
  if (!(energy >= 0.0)) throw DomainError("StarEnvelope: need E >= 0");
  if (energy == 0.0) return f0_;
  return std::sqrt(energy) * sup_ratio_from(energy);
}

double StarEnvelope::delta() const {
  return 1.0 / static_cast<double>(d0()) + std::log(2.0);
}

}  // namespace ecb

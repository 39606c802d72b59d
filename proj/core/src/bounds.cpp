#include "ecb/bounds.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "ecb/errors.hpp"
#include "ecb/numerics.hpp"

namespace ecb {

namespace {
// fp slack for the t <= T boundary check
constexpr double kTSlack = 1.0 + 1e-12;
}  // namespace

double g_fun(double x) {
  if (!(x >= 0.0)) throw DomainError("g: need x >= 0");
  if (x == 0.0) return 0.0;
  return (x + 1.0) * std::log1p(x) - x * std::log(x);
}

double h2(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("h2: need p in [0,1]");
  return eta(p) + eta(1.0 - p);
}

double eta(double x) {
  if (!(x >= 0.0)) throw DomainError("eta: need x >= 0");
  return x == 0.0 ? 0.0 : -x * std::log(x);
}

std::pair<double, double> preset_cd(QuantityPreset q) {
  switch (q) {
    case QuantityPreset::Entropy: return {1.0, 1.0};
    case QuantityPreset::CondEntropy: return {2.0, 1.0};
    case QuantityPreset::Qcmi: return {2.0, 2.0};
    case QuantityPreset::ChannelMi: return {2.0, 2.0};
    case QuantityPreset::ChannelCi: return {2.0, 2.0};
    case QuantityPreset::ChannelMiAntideg: return {1.0, 2.0};
    case QuantityPreset::ChannelCiDeg: return {1.0, 2.0};
    case QuantityPreset::Holevo: return {2.0, 2.0};
    case QuantityPreset::Privacy: return {4.0, 2.0};
    case QuantityPreset::PrivacyDegOrAntideg: return {2.0, 2.0};
  }
  throw DomainError("unknown quantity preset");
}

BoundParams make_params(double C, double D, const FHatFunction& fhat) {
  if (C < 0.0 || D < 0.0) throw DomainError("BoundParams: need C, D >= 0");
  return {C, D, fhat.delta()};
}

BoundParams preset_params(QuantityPreset q, const FHatFunction& fhat) {
  const auto [c, d] = preset_cd(q);
  return make_params(c, d, fhat);
}

const std::vector<std::pair<std::string_view, QuantityPreset>>& preset_names() {
  static const std::vector<std::pair<std::string_view, QuantityPreset>> names = {
      {"entropy", QuantityPreset::Entropy},
      {"cond_entropy", QuantityPreset::CondEntropy},
      {"qcmi", QuantityPreset::Qcmi},
      {"channel_mi", QuantityPreset::ChannelMi},
      {"channel_ci", QuantityPreset::ChannelCi},
      {"channel_mi_antideg", QuantityPreset::ChannelMiAntideg},
      {"channel_ci_deg", QuantityPreset::ChannelCiDeg},
      {"holevo", QuantityPreset::Holevo},
      {"privacy", QuantityPreset::Privacy},
      {"privacy_deg", QuantityPreset::PrivacyDegOrAntideg},
  };
  return names;
}

std::optional<QuantityPreset> preset_from_string(std::string_view s) {
  for (const auto& [name, q] : preset_names())
    if (name == s) return q;
  return std::nullopt;
}

double afw_finite(int d, double eps, const BoundParams& params) {
  if (d < 2) throw DomainError("afw_finite: need d >= 2");
  if (!(eps >= 0.0 && eps <= 1.0)) throw DomainError("afw_finite: need eps in [0,1]");
  return params.C * eps * std::log(static_cast<double>(d)) + params.D * g_fun(eps);
}

double audenaert(int d, double eps) {
  if (d < 2) throw DomainError("audenaert: need d >= 2");
  if (!(eps >= 0.0) || eps > 1.0 - 1.0 / static_cast<double>(d))
    throw DomainError("audenaert: need 0 <= eps <= 1 - 1/d");
  return eps * std::log(static_cast<double>(d - 1)) + h2(eps);
}

double t_max(const FHatFunction& fhat, double ebar, double eps) {
  if (!(ebar > 0.0)) throw DomainError("t_max: need ebar > 0");
  if (!(eps > 0.0)) throw DomainError("t_max: need eps > 0");
  return std::min(1.0, std::sqrt(ebar / fhat.t_cap_energy())) / eps;
}

double cb(const FHatFunction& fhat, double ebar, double eps, double t,
          const BoundParams& params) {
  if (!(ebar > 0.0)) throw DomainError("cb: need ebar > 0");
  if (!(eps > 0.0)) throw DomainError("cb: need eps > 0");
  if (!(t > 0.0) || t > t_max(fhat, ebar, eps) * kTSlack)
    throw DomainError("cb: t outside (0, T]");
  const double et = eps * t;
  return params.C * eps * (1.0 + 4.0 * t) * (fhat.eval(ebar / (et * et)) + params.delta) +
         params.D * (2.0 * g_fun(et) + g_fun(eps * (1.0 + 2.0 * t)));
}

double cb_osc(const std::vector<double>& energies, double energy, double eps,
              double t, const BoundParams& params) {
  if (energies.empty()) throw DomainError("cb_osc: need at least one mode");
  const double l = static_cast<double>(energies.size());
  const double e0 = 0.5 * std::accumulate(energies.begin(), energies.end(), 0.0);
  const double ebar = energy - e0;
  if (!(ebar > 0.0)) throw DomainError("cb_osc: need E > E_0");
  if (!(eps > 0.0)) throw DomainError("cb_osc: need eps > 0");
  if (!(t > 0.0) || t > std::min(1.0, std::sqrt(ebar / e0)) / eps * kTSlack)
    throw DomainError("cb_osc: t outside (0, T*]");
  double log_estar = 0.0;
  for (double w : energies) log_estar += std::log(w);
  log_estar /= l;
  const double et = eps * t;
  const double delta_star = std::exp(-l) + std::log(2.0);
  const double fhat = l * (std::log(ebar / (et * et) + 2.0 * e0) - std::log(l) - log_estar) + l;
  return params.C * eps * (1.0 + 4.0 * t) * (fhat + delta_star) +
         params.D * (2.0 * g_fun(et) + g_fun(eps * (1.0 + 2.0 * t)));
}

OptResult cb_opt(const FHatFunction& fhat, double ebar, double eps,
                 const BoundParams& params, int grid) {
  if (grid < 8) throw DomainError("cb_opt: grid too small");
  const double T = t_max(fhat, ebar, eps);
  const auto ts = log_grid(T * 1e-6, T, static_cast<std::size_t>(grid));
  const auto f = [&](double t) { return cb(fhat, ebar, eps, t, params); };

  std::size_t best = 0;
  double best_v = std::numeric_limits<double>::infinity();
  std::vector<double> vals(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    vals[i] = f(ts[i]);
    if (vals[i] < best_v) {
      best_v = vals[i];
      best = i;
    }
  }
  const double lo = ts[best == 0 ? 0 : best - 1];
  const double hi = ts[std::min(ts.size() - 1, best + 1)];
  const auto m = golden_min([&](double lt) { return f(std::exp(lt)); },
                            std::log(lo), std::log(hi), 0.0, 1e-6);
  if (m.value < best_v) return {std::exp(m.x), m.value};
  return {ts[best], best_v};
}

}  // namespace ecb

#include "ecb/ufa.hpp"

#include <atomic>
#include <cmath>
#include <future>
#include <limits>
#include <thread>

#include "ecb/errors.hpp"
#include "ecb/jsonout.hpp"
#include "ecb/numerics.hpp"
#include "ecb/thermo.hpp"

namespace ecb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool oscillator_preset(const FHatFunction& fhat) {
  return dynamic_cast<const OscillatorBar*>(&fhat) != nullptr;
}

// f_{C*} with E_m precomputed; ebar = E - E_0, ebar_m = E_m - E_0.
double f_at(CapacityKind kind, const FHatFunction& fhat, double ebar,
            double ebar_m, double t, bool m_ok) {
  if (!(t > 0.0) || t > 1.0) throw DomainError("f_capacity: need t in (0,1]");
  switch (kind) {
    case CapacityKind::Cchi:
    case CapacityKind::Qbar:
    case CapacityKind::Cpbar: {
      if (!(ebar_m > 0.0)) return kInf;
      const double r = ebar / ebar_m;
      const double sm = r + std::sqrt(r);
      if (sm > 2.0) return kInf;
      if (t / 2.0 > t_max(fhat, ebar, sm) * (1.0 + 1e-12)) return kInf;
      const double v =
          cb(fhat, ebar, sm, t / 2.0, make_params(2.0, 2.0, fhat));
      return kind == CapacityKind::Cpbar ? 2.0 * v : v;
    }
    case CapacityKind::C:
    case CapacityKind::Q:
    case CapacityKind::Cp: {
      if (!m_ok || !(ebar_m > 0.0)) return kInf;
      const double u = std::sqrt(ebar / ebar_m);
      const int s = kind == CapacityKind::C ? 0 : 1;
      const double v = big_f(fhat, u, ebar_m, t, s);
      return kind == CapacityKind::Cp ? 2.0 * v : v;
    }
  }
  throw DomainError("unknown capacity kind");
}

struct Context {
  const SpectrumModel& model;
  const FHatFunction& fhat;
  double energy;
  double ebar;
  std::uint64_t m0;
  bool one_mode;
  double hw;  // one-mode closed form E_m = E_0 + m*hw

  double ebar_m(std::uint64_t m) const {
    if (one_mode) return static_cast<double>(m) * hw;
    return model.nth_level(m) - model.ground_energy();
  }
};

Context make_context(const SpectrumModel& model, const FHatFunction& fhat,
                     double energy) {
  if (!(energy > model.ground_energy()))
    throw DomainError("ufa: need E > E_0");
  Context c{model, fhat, energy, energy - model.ground_energy(),
            m_zero(model, fhat),
            model.is_oscillator() && model.mode_count() == 1,
            model.is_oscillator() && model.mode_count() == 1
                ? model.mode_energies()[0]
                : 0.0};
  return c;
}

TMin min_over_t_at(CapacityKind kind, const Context& c, std::uint64_t m,
                   int grid) {
  const double ebm = c.ebar_m(m);
  const bool m_ok = m >= c.m0;
  const auto f = [&](double t) { return f_at(kind, c.fhat, c.ebar, ebm, t, m_ok); };

  const auto ts = log_grid(1e-6, 1.0, static_cast<std::size_t>(grid));
  std::size_t best = 0;
  double best_v = kInf;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double v = f(ts[i]);
    if (v < best_v) {
      best_v = v;
      best = i;
    }
  }
  if (!std::isfinite(best_v)) return {std::numeric_limits<double>::quiet_NaN(), kInf};
  const double lo = ts[best == 0 ? 0 : best - 1];
  const double hi = ts[std::min(ts.size() - 1, best + 1)];
  const auto mres = golden_min([&](double lt) { return f(std::exp(lt)); },
                               std::log(lo), std::log(hi), 0.0, 1e-6);
  if (mres.value < best_v) return {std::exp(mres.x), mres.value};
  return {ts[best], best_v};
}

// smallest m with E_m >= E (binary search on the 0-indexed levels)
std::uint64_t first_level_at_least(const Context& c, double energy,
                                   std::uint64_t cap) {
  std::uint64_t lo = 0, hi = 1;
  const auto level = [&](std::uint64_t m) {
    return c.one_mode ? c.model.ground_energy() + static_cast<double>(m) * c.hw
                      : c.model.nth_level(m);
  };
  if (level(0) >= energy) return 0;
  while (level(hi) < energy) {
    lo = hi;
    hi *= 2;
    if (hi > cap) throw ResourceError("ufa: E beyond the m cap");
  }
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (level(mid) >= energy)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

}  // namespace

std::string_view to_string(CapacityKind k) {
  switch (k) {
    case CapacityKind::Cchi: return "Cchi";
    case CapacityKind::C: return "C";
    case CapacityKind::Qbar: return "Qbar";
    case CapacityKind::Q: return "Q";
    case CapacityKind::Cpbar: return "Cpbar";
    case CapacityKind::Cp: return "Cp";
  }
  return "?";
}

std::optional<CapacityKind> capacity_from_string(std::string_view s) {
  for (auto k : {CapacityKind::Cchi, CapacityKind::C, CapacityKind::Qbar,
                 CapacityKind::Q, CapacityKind::Cpbar, CapacityKind::Cp})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

std::uint64_t m_zero(const SpectrumModel& model, const FHatFunction& fhat) {
  const double target = oscillator_preset(fhat)
                            ? model.ground_energy()  // E_m >= 2 E_0
                            : fhat.inverse(std::log(static_cast<double>(fhat.d0())));
  const double e0 = model.ground_energy();
  std::uint64_t m = 1;
  while (model.nth_level(m) - e0 < target) {
    ++m;
    if (m > 1'000'000) throw ResourceError("m_zero: not reached within 1e6 levels");
  }
  return m;
}

double big_f(const FHatFunction& fhat, double u, double ebar_m, double t, int s) {
  if (!(t > 0.0) || t > 1.0) throw DomainError("big_f: need t in (0,1]");
  if (!(u > 0.0) || u > 1.0) throw DomainError("big_f: need u in (0,1]");
  if (!(ebar_m > 0.0)) throw DomainError("big_f: need ebar_m > 0");
  if (s != 0 && s != 1) throw DomainError("big_f: s must be 0 or 1");
  const double fh = fhat.eval(ebar_m / (t * t));
  return ((4.0 + 8.0 * t) * u + 2.0 * s * u * u * t * t) * fh +
         (4.0 + 8.0 * t) * fhat.delta() * u + 4.0 * g_fun(t * u) +
         2.0 * g_fun((2.0 + 2.0 * t) * u);
}

double f_capacity(CapacityKind kind, const SpectrumModel& model,
                  const FHatFunction& fhat, double energy, std::uint64_t m,
                  double t) {
  const auto c = make_context(model, fhat, energy);
  return f_at(kind, fhat, c.ebar, c.ebar_m(m), t, m >= c.m0);
}

TMin min_over_t(CapacityKind kind, const SpectrumModel& model,
                const FHatFunction& fhat, double energy, std::uint64_t m,
                int grid) {
  const auto c = make_context(model, fhat, energy);
  return min_over_t_at(kind, c, m, grid);
}

UfaResult sufficient_dim(CapacityKind kind, const SpectrumModel& model,
                         const FHatFunction& fhat, double energy, double eps,
                         std::uint64_t m_cap, int grid) {
  if (!(eps > 0.0)) throw DomainError("sufficient_dim: need eps > 0");
  const auto c = make_context(model, fhat, energy);

  const std::uint64_t m_start =
      std::max<std::uint64_t>(c.m0, first_level_at_least(c, energy, m_cap));
  const auto pass = [&](std::uint64_t m) {
    return min_over_t_at(kind, c, m, grid).value <= eps;
  };

  std::uint64_t m = m_start;
  if (!pass(m)) {
    std::uint64_t lo = m_start, hi = m_start;
    do {
      lo = hi;
      hi = hi > m_cap / 2 ? m_cap : hi * 2;
      if (lo == hi) throw ResourceError("sufficient_dim: predicate not satisfied below the m cap");
    } while (!pass(hi));
    while (hi - lo > 1) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      if (pass(mid))
        hi = mid;
      else
        lo = mid;
    }
    m = hi;
    // local non-monotonicity guard: walk back over any passing neighbours
    int steps = 0;
    while (m > m_start && steps < 4096 && pass(m - 1)) {
      --m;
      ++steps;
    }
  }

  const auto t = min_over_t_at(kind, c, m, grid);
  const double em = c.one_mode
                        ? model.ground_energy() + static_cast<double>(m) * c.hw
                        : model.nth_level(m);
  return {m, t.t_star, t.value, em};
}

std::vector<TableRow> reproduce_tables(int grid) {
  const auto model = SpectrumModel::oscillator({1.0});
  const OscillatorBar fhat({1.0});
  const CapacityKind kinds[] = {CapacityKind::Cchi, CapacityKind::C,
                                CapacityKind::Q, CapacityKind::Cpbar,
                                CapacityKind::Cp};
  struct Cell {
    double e;
    double r;
    CapacityKind kind;
  };
  std::vector<Cell> cells;
  for (double r : {0.1, 0.01})
    for (double e : {3.0, 10.0, 100.0})
      for (auto k : kinds) cells.push_back({e, r, k});

  std::vector<TableRow> rows(cells.size());
  const auto work = [&](std::size_t i) {
    const auto& cell = cells[i];
    const double eps = cell.r * f_max(model, cell.e).F;
    const auto res = sufficient_dim(cell.kind, model, fhat, cell.e, eps,
                                    1'000'000'000'000ULL, grid);
    rows[i] = {cell.e, cell.r, cell.kind, res.m, res.t_star, res.f_value};
  };

  const unsigned n_threads =
      std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                         static_cast<unsigned>(cells.size()));
  std::vector<std::future<void>> futs;
  std::atomic<std::size_t> next{0};
  for (unsigned w = 0; w < n_threads; ++w) {
    futs.push_back(std::async(std::launch::async, [&] {
      for (std::size_t i = next.fetch_add(1); i < cells.size();
           i = next.fetch_add(1))
        work(i);
    }));
  }
  for (auto& f : futs) f.get();
  return rows;
}

std::string tables_csv(const std::vector<TableRow>& rows) {
  std::string out = "E_over_hw,rel_err,kind,m,t_star,f_value\n";
  for (const auto& r : rows) {
    out += fmt_sig(r.e_over_hw);
    out += ',';
    out += fmt_sig(r.rel_err);
    out += ',';
    out += to_string(r.kind);
    out += ',';
    out += std::to_string(r.m);
    out += ',';
    out += fmt_sig(r.t_star);
    out += ',';
    out += fmt_sig(r.f_value);
    out += '\n';
  }
  return out;
}

std::string tables_json(const std::vector<TableRow>& rows) {
  JsonWriter w;
  w.begin_array();
  for (const auto& r : rows) {
    w.begin_object();
    w.field("E_over_hw", r.e_over_hw);
    w.field("rel_err", r.rel_err);
    w.field("kind", to_string(r.kind));
    w.field("m", r.m);
    w.field("t_star", r.t_star);
    w.field("f_value", r.f_value);
    w.end_object();
  }
  w.end_array();
  return w.str();
}

std::string ufa_result_csv(const UfaResult& r, double e_over_hw, double rel_err,
                           CapacityKind kind) {
  std::string out = "E_over_hw,rel_err,kind,m,t_star,f_value\n";
  out += fmt_sig(e_over_hw);
  out += ',';
  out += fmt_sig(rel_err);
  out += ',';
  out += to_string(kind);
  out += ',';
  out += std::to_string(r.m);
  out += ',';
  out += fmt_sig(r.t_star);
  out += ',';
  out += fmt_sig(r.f_value);
  out += '\n';
  return out;
}

std::string ufa_result_json(const UfaResult& r, double e_over_hw, double rel_err,
                            CapacityKind kind) {
  JsonWriter w;
  w.begin_object();
  w.field("E_over_hw", e_over_hw);
  w.field("rel_err", rel_err);
  w.field("kind", to_string(kind));
  w.field("m", r.m);
  w.field("t_star", r.t_star);
  w.field("f_value", r.f_value);
  w.field("E_m", r.E_m);
  w.end_object();
  return w.str();
}

}  // namespace ecb

#include "ecb/suite.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <thread>

#include "ecb/bounds.hpp"
#include "ecb/channel.hpp"
#include "ecb/density.hpp"
#include "ecb/ensemble.hpp"
#include "ecb/errors.hpp"
#include "ecb/jsonout.hpp"
#include "ecb/numerics.hpp"
#include "ecb/thermo.hpp"

namespace ecb {

namespace {

constexpr double kSlack = 1e-8;  // absorbs eigensolver noise

struct Trial {
  bool violated = false;
  double ratio = 0.0;
};

using TrialFn = std::function<Trial(std::uint64_t, const SuiteConfig&)>;

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

double unit(std::uint64_t& s) {
  s = mix_seed(s + 0x9e3779b97f4a7c15ULL);
  return (static_cast<double>(s >> 11) + 0.5) * 0x1.0p-53;
}

double in_range(std::uint64_t& s, double a, double b) { return a + (b - a) * unit(s); }

Eigen::Index pick_rank(std::uint64_t& s, Eigen::Index d) {
  const Eigen::Index choices[4] = {1, 2, std::max<Eigen::Index>(1, d / 2), d};
  return choices[static_cast<std::size_t>(unit(s) * 4.0) & 3];
}

// Minimum of the preset bound over a feasible log grid of t values.
double min_bound_osc(double energy, double eps, QuantityPreset preset) {
  static const std::vector<double> one_mode{1.0};
  const OscillatorBar fhat(one_mode);
  const auto params = preset_params(preset, fhat);
  const double T = t_max(fhat, energy - 0.5, eps);
  double best = std::numeric_limits<double>::infinity();
  for (double t : log_grid(T * 1e-3, T, 12))
    best = std::min(best, cb_osc(one_mode, energy, eps, t, params));
  return best;
}

Trial check_bound(double diff, double bound) {
  Trial t;
  t.ratio = bound > 0.0 ? std::fabs(diff) / bound : 0.0;
  t.violated = std::fabs(diff) > bound + kSlack;
  return t;
}

Trial merge(std::initializer_list<Trial> ts) {
  Trial out;
  for (const auto& t : ts) {
    out.violated = out.violated || t.violated;
    out.ratio = std::max(out.ratio, t.ratio);
  }
  return out;
}

// Energy-capped pair (rho, sigma) on the truncated oscillator factor of a
// multi-factor space; h must be the embedded diagonal.
struct Pair {
  DensityMatrix rho, sigma;
  double eps;     // exact trace distance
  double energy;  // max marginal energy, > E_0
};

Pair capped_pair(std::uint64_t& s, Eigen::Index total_dim,
                 const std::vector<double>& h, double e_cap) {
  DensityMatrix rho = random_state(total_dim, pick_rank(s, total_dim), mix_seed(s ^ 1));
  rho = energy_cap(rho, h, e_cap);
  const double eps_target = in_range(s, 0.02, 0.6);
  DensityMatrix sigma = perturb(rho, eps_target, mix_seed(s ^ 2), &h, e_cap);
  Pair p;
  p.eps = trace_distance(rho, sigma);
  p.energy = std::max(state_energy(rho, h), state_energy(sigma, h));
  p.rho = std::move(rho);
  p.sigma = std::move(sigma);
  return p;
}

DiscreteEnsemble random_ensemble(std::uint64_t& s, Eigen::Index dim, int k,
                                 const std::vector<double>& h, double e_cap) {
  DiscreteEnsemble mu;
  double norm = 0.0;
  for (int i = 0; i < k; ++i) {
    const double w = 0.1 + unit(s);
    mu.probs.push_back(w);
    norm += w;
    mu.states.push_back(
        energy_cap(random_state(dim, pick_rank(s, dim), mix_seed(s ^ (100 + i))), h, e_cap));
  }
  for (auto& p : mu.probs) p /= norm;
  return mu;
}

DiscreteEnsemble jitter_ensemble(std::uint64_t& s, const DiscreteEnsemble& mu,
                                 const std::vector<double>& h, double e_cap) {
  DiscreteEnsemble nu = mu;
  double norm = 0.0;
  for (std::size_t i = 0; i < nu.states.size(); ++i) {
    nu.states[i] = perturb(nu.states[i], in_range(s, 0.0, 0.25),
                           mix_seed(s ^ (200 + i)), &h, e_cap);
    nu.probs[i] = std::max(1e-9, nu.probs[i] * in_range(s, 0.8, 1.2));
    norm += nu.probs[i];
  }
  for (auto& p : nu.probs) p /= norm;
  return nu;
}

// ---- individual suites ------------------------------------------------

Trial wk_concavity(std::uint64_t s, const SuiteConfig& cfg) {
  const auto d = cfg.dim;
  const auto rho = random_state(d, pick_rank(s, d), mix_seed(s ^ 11));
  const auto sigma = random_state(d, pick_rank(s, d), mix_seed(s ^ 12));
  const double p = in_range(s, 1e-3, 1.0 - 1e-3);
  const double defect =
      entropy(p * rho + (1.0 - p) * sigma) - p * entropy(rho) - (1.0 - p) * entropy(sigma);
  const double cap = h2(p);
  Trial t;
  t.ratio = cap > 0 ? defect / cap : 0.0;
  t.violated = defect < -kSlack || defect > cap + kSlack;
  return t;
}

Trial audenaert_suite(std::uint64_t s, const SuiteConfig& cfg) {
  const auto d = cfg.dim;
  const auto rho = random_state(d, pick_rank(s, d), mix_seed(s ^ 21));
  const auto sigma = random_state(d, pick_rank(s, d), mix_seed(s ^ 22));
  const double eps = trace_distance(rho, sigma);
  if (eps > 1.0 - 1.0 / static_cast<double>(d)) return {};  // outside the proviso
  return check_bound(entropy(rho) - entropy(sigma), audenaert(static_cast<int>(d), eps));
}

Trial afw_finite_suite(std::uint64_t s, const SuiteConfig& cfg) {
  const OscillatorBar fhat({1.0});
  // entropy on a single system
  const auto d = cfg.dim;
  const auto r1 = random_state(d, pick_rank(s, d), mix_seed(s ^ 31));
  const auto s1 = random_state(d, pick_rank(s, d), mix_seed(s ^ 32));
  const double e1 = trace_distance(r1, s1);
  const Trial ta = check_bound(entropy(r1) - entropy(s1),
                               afw_finite(static_cast<int>(d), e1, make_params(1, 1, fhat)));
  // conditional entropy on A x Y, constrained factor A
  const auto r2 = random_state(32, pick_rank(s, 32), mix_seed(s ^ 33));
  const auto s2 = random_state(32, pick_rank(s, 32), mix_seed(s ^ 34));
  const double e2 = trace_distance(r2, s2);
  const Trial tb = check_bound(cond_entropy(r2, 8, 4) - cond_entropy(s2, 8, 4),
                               afw_finite(8, e2, make_params(2, 1, fhat)));
  // QCMI on X x Y x Z, constrained factor X
  const auto r3 = random_state(16, pick_rank(s, 16), mix_seed(s ^ 35));
  const auto s3 = random_state(16, pick_rank(s, 16), mix_seed(s ^ 36));
  const double e3 = trace_distance(r3, s3);
  const Trial tc = check_bound(qcmi(r3, 4, 2, 2) - qcmi(s3, 4, 2, 2),
                               afw_finite(4, e3, make_params(2, 2, fhat)));
  return merge({ta, tb, tc});
}

Trial thm1_entropy(std::uint64_t s, const SuiteConfig& cfg) {
  const auto h = truncated_oscillator(cfg.dim);
  const double e_cap = in_range(s, 1.2, 0.5 + static_cast<double>(cfg.dim) / 4.0);
  const auto pair = capped_pair(s, cfg.dim, h, e_cap);
  if (pair.eps < 1e-12 || pair.energy <= 0.5 + 1e-9) return {};
  const double diff = entropy(pair.rho) - entropy(pair.sigma);
  return check_bound(diff, min_bound_osc(pair.energy, pair.eps, QuantityPreset::Entropy));
}

Trial thm1_cond_entropy(std::uint64_t s, const SuiteConfig& cfg) {
  (void)cfg;
  const std::vector<Eigen::Index> dims{8, 4};
  const auto h = embed_levels(truncated_oscillator(8), dims, 0);
  const auto pair = capped_pair(s, 32, h, in_range(s, 1.2, 4.0));
  if (pair.eps < 1e-12 || pair.energy <= 0.5 + 1e-9) return {};
  const double diff = cond_entropy(pair.rho, 8, 4) - cond_entropy(pair.sigma, 8, 4);
  return check_bound(diff, min_bound_osc(pair.energy, pair.eps, QuantityPreset::CondEntropy));
}

Trial thm1_qcmi(std::uint64_t s, const SuiteConfig& cfg) {
  (void)cfg;
  const std::vector<Eigen::Index> dims{8, 2, 2, 2};  // X Y Z R, constraint on X
  const auto h = embed_levels(truncated_oscillator(8), dims, 0);
  const auto pair = capped_pair(s, 64, h, in_range(s, 1.2, 4.0));
  if (pair.eps < 1e-12 || pair.energy <= 0.5 + 1e-9) return {};
  const double diff = qcmi_general(pair.rho, dims, {0}, {1}, {2}) -
                      qcmi_general(pair.sigma, dims, {0}, {1}, {2});
  return check_bound(diff, min_bound_osc(pair.energy, pair.eps, QuantityPreset::Qcmi));
}

Trial prop2_channel_qcmi(std::uint64_t s, const SuiteConfig& cfg) {
  (void)cfg;
  const std::vector<Eigen::Index> dims{8, 2, 2};  // A C D
  const auto h = embed_levels(truncated_oscillator(8), dims, 0);
  const auto pair = capped_pair(s, 32, h, in_range(s, 1.2, 4.0));
  if (pair.eps < 1e-12 || pair.energy <= 0.5 + 1e-9) return {};
  const auto ch = random_channel(8, 4, 3, mix_seed(s ^ 41));
  const std::vector<Eigen::Index> out_dims{4, 2, 2};  // B C D
  const double diff =
      qcmi_general(apply_to_factor(ch, pair.rho, dims, 0), out_dims, {0}, {2}, {1}) -
      qcmi_general(apply_to_factor(ch, pair.sigma, dims, 0), out_dims, {0}, {2}, {1});
  return check_bound(diff, min_bound_osc(pair.energy, pair.eps, QuantityPreset::Qcmi));
}

Trial prop3_channel_mi_ci(std::uint64_t s, const SuiteConfig& cfg) {
  const auto h = truncated_oscillator(cfg.dim);
  const auto pair = capped_pair(s, cfg.dim, h, in_range(s, 1.2, 6.0));
  if (pair.eps < 1e-12 || pair.energy <= 0.5 + 1e-9) return {};
  const auto ch = random_channel(cfg.dim, 6, kraus_count(cfg.dim, 6), mix_seed(s ^ 51));
  const double bound = min_bound_osc(pair.energy, pair.eps, QuantityPreset::ChannelMi);
  const Trial tmi = check_bound(channel_mi(ch, pair.rho) - channel_mi(ch, pair.sigma), bound);
  const Trial tci = check_bound(channel_ci(ch, pair.rho) - channel_ci(ch, pair.sigma), bound);
  return merge({tmi, tci});
}

Trial lemma3_affinity(std::uint64_t s, const SuiteConfig& cfg) {
  (void)cfg;
  const auto rho = random_state(8, pick_rank(s, 8), mix_seed(s ^ 61));
  const auto sigma = random_state(8, pick_rank(s, 8), mix_seed(s ^ 62));
  const auto ch = random_channel(8, 4, 3, mix_seed(s ^ 63));
  const double p = in_range(s, 1e-3, 1.0 - 1e-3);
  const DensityMatrix mix = p * rho + (1.0 - p) * sigma;
  const double dmi =
      channel_mi(ch, mix) - p * channel_mi(ch, rho) - (1.0 - p) * channel_mi(ch, sigma);
  const double dci =
      channel_ci(ch, mix) - p * channel_ci(ch, rho) - (1.0 - p) * channel_ci(ch, sigma);
  const double cap = h2(p);
  Trial t;
  t.violated = dmi < -kSlack || dmi > 2.0 * cap + kSlack || dci < -cap - kSlack ||
               dci > cap + kSlack;
  t.ratio = cap > 0 ? std::max(dmi / (2.0 * cap), std::fabs(dci) / cap) : 0.0;
  return t;
}

Trial prop4_holevo(std::uint64_t s, const SuiteConfig& cfg) {
  const auto h = truncated_oscillator(cfg.dim);
  const double e_cap = in_range(s, 1.2, 5.0);
  const auto mu = random_ensemble(s, cfg.dim, 4, h, e_cap);
  const auto nu = jitter_ensemble(s, mu, h, e_cap);
  const auto ch = random_channel(cfg.dim, 6, kraus_count(cfg.dim, 6), mix_seed(s ^ 71));
  const double diff = holevo(ch, mu) - holevo(ch, nu);
  const double energy = std::max(average_energy(mu, h), average_energy(nu, h));
  if (energy <= 0.5 + 1e-9) return {};
  Trial out;
  for (const double eps : {d0_distance(mu, nu), kantorovich(mu, nu)}) {
    if (eps < 1e-12) continue;
    out = merge({out, check_bound(diff, min_bound_osc(energy, eps, QuantityPreset::Holevo))});
  }
  return out;
}

Trial prop5_privacy(std::uint64_t s, const SuiteConfig& cfg) {
  const auto h = truncated_oscillator(cfg.dim);
  const double e_cap = in_range(s, 1.2, 5.0);
  const auto mu = random_ensemble(s, cfg.dim, 4, h, e_cap);
  const auto nu = jitter_ensemble(s, mu, h, e_cap);
  const auto ch = random_channel(cfg.dim, 6, kraus_count(cfg.dim, 6), mix_seed(s ^ 81));
  const double diff = privacy(ch, mu) - privacy(ch, nu);
  const double energy = std::max(average_energy(mu, h), average_energy(nu, h));
  if (energy <= 0.5 + 1e-9) return {};
  Trial out;
  for (const double eps : {d0_distance(mu, nu), kantorovich(mu, nu)}) {
    if (eps < 1e-12) continue;
    out = merge({out, check_bound(diff, min_bound_osc(energy, eps, QuantityPreset::Privacy))});
  }
  return out;
}

Trial cmi_upper(std::uint64_t s, const SuiteConfig& cfg) {
  (void)cfg;
  const std::vector<Eigen::Index> dims{4, 4, 4};
  const auto rho = random_state(64, pick_rank(s, 64), mix_seed(s ^ 91));
  const double q = qcmi_general(rho, dims, {0}, {1}, {2});
  const double cap =
      2.0 * std::min({subsystem_entropy(rho, dims, {0}), subsystem_entropy(rho, dims, {1}),
                      subsystem_entropy(rho, dims, {0, 2}),
                      subsystem_entropy(rho, dims, {1, 2})});
  Trial t;
  t.ratio = cap > 0 ? q / cap : 0.0;
  t.violated = q > cap + kSlack;
  return t;
}

Trial cmi_monotone(std::uint64_t s, const SuiteConfig& cfg) {
  (void)cfg;
  const std::vector<Eigen::Index> dims{2, 2, 2, 2};  // X R Y Z
  const auto rho = random_state(16, pick_rank(s, 16), mix_seed(s ^ 101));
  const double big = qcmi_general(rho, dims, {0, 1}, {2}, {3});
  const double small = qcmi_general(rho, dims, {0}, {2}, {3});
  Trial t;
  t.ratio = big > 0 ? std::max(0.0, small) / big : 0.0;
  t.violated = big < small - kSlack;
  return t;
}

Trial ssa(std::uint64_t s, const SuiteConfig& cfg) {
  (void)cfg;
  const auto rho = random_state(32, pick_rank(s, 32), mix_seed(s ^ 111));
  const double q = qcmi(rho, 4, 4, 2);
  Trial t;
  t.violated = q < -1e-9;
  t.ratio = std::max(0.0, -q) / 1e-9;
  return t;
}

Trial metric_axioms(std::uint64_t s, const SuiteConfig& cfg) {
  (void)cfg;
  const auto h = truncated_oscillator(4);
  std::vector<DiscreteEnsemble> e;
  for (int i = 0; i < 3; ++i) e.push_back(random_ensemble(s, 4, 3, h, 2.0));
  Trial t;
  for (int metric = 0; metric < 2; ++metric) {
    const auto dist = [&](const DiscreteEnsemble& a, const DiscreteEnsemble& b) {
      return metric == 0 ? d0_distance(a, b) : kantorovich(a, b);
    };
    const double ab = dist(e[0], e[1]), ba = dist(e[1], e[0]);
    const double bc = dist(e[1], e[2]), ac = dist(e[0], e[2]);
    if (std::fabs(ab - ba) > 1e-9) t.violated = true;
    if (dist(e[0], e[0]) > 1e-9) t.violated = true;
    if (ac > ab + bc + 1e-9) t.violated = true;
    if (ab + bc > 0) t.ratio = std::max(t.ratio, ac / (ab + bc));
  }
  return t;
}

// Report-only probe of how much of the bound the entropy difference between
// the Gibbs state and a pure state fills at E = 100.
Trial tightness_report(std::uint64_t, const SuiteConfig&) {
  const auto model = SpectrumModel::oscillator({1.0});
  const double E = 100.0;
  const double diff = f_max(model, E).F;        // H(Gibbs) - H(pure)
  const double eps = (E - 0.5) / (E + 0.5);     // trace distance to the ground state
  const double bound = min_bound_osc(E, eps, QuantityPreset::Entropy);
  Trial t;
  t.ratio = diff / bound;
  t.violated = !(t.ratio > 0.0 && t.ratio <= 1.0);
  return t;
}

Trial harness_selftest(std::uint64_t, const SuiteConfig&) {
  Trial t;
  t.violated = true;  // deliberately broken check: verifies the harness fails red
  t.ratio = 2.0;
  return t;
}

const std::vector<std::pair<std::string, TrialFn>>& registry() {
  static const std::vector<std::pair<std::string, TrialFn>> suites = {
      {"wk_concavity", wk_concavity},
      {"audenaert", audenaert_suite},
      {"afw_finite", afw_finite_suite},
      {"thm1_entropy", thm1_entropy},
      {"thm1_cond_entropy", thm1_cond_entropy},
      {"thm1_qcmi", thm1_qcmi},
      {"prop2_channel_qcmi", prop2_channel_qcmi},
      {"prop3_channel_mi_ci", prop3_channel_mi_ci},
      {"lemma3_affinity", lemma3_affinity},
      {"prop4_holevo", prop4_holevo},
      {"prop5_privacy", prop5_privacy},
      {"cmi_upper", cmi_upper},
      {"cmi_monotone", cmi_monotone},
      {"ssa", ssa},
      {"metric_axioms", metric_axioms},
      {"tightness_report", tightness_report},
  };
  return suites;
}

SuiteReport run_one(const std::string& name, const TrialFn& fn,
                    const SuiteConfig& cfg) {
  const std::uint64_t base = mix_seed(cfg.seed ^ fnv1a(name));
  const int trials = name == "tightness_report" ? std::min(cfg.trials, 1) : cfg.trials;

  const unsigned n_threads = cfg.threads > 0
                                 ? static_cast<unsigned>(cfg.threads)
                                 : std::max(1u, std::thread::hardware_concurrency());
  std::atomic<int> next{0};
  std::vector<std::future<std::pair<int, double>>> futs;
  for (unsigned w = 0; w < std::min<unsigned>(n_threads, std::max(trials, 1)); ++w) {
    futs.push_back(std::async(std::launch::async, [&]() {
      int violations = 0;
      double ratio = 0.0;
      for (int i = next.fetch_add(1); i < trials; i = next.fetch_add(1)) {
        const Trial t = fn(mix_seed(base + static_cast<std::uint64_t>(i)), cfg);
        violations += t.violated ? 1 : 0;
        ratio = std::max(ratio, t.ratio);
      }
      return std::pair{violations, ratio};
    }));
  }
  SuiteReport rep{name, trials, 0, 0.0, cfg.seed};
  for (auto& f : futs) {
    const auto [v, r] = f.get();
    rep.violations += v;
    rep.max_ratio = std::max(rep.max_ratio, r);
  }
  return rep;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

std::vector<SuiteReport> run_suite(const SuiteConfig& config) {
  if (config.trials < 0) throw DomainError("run_suite: negative trial count");
  if (config.dim < 4) throw DomainError("run_suite: need dim >= 4");
  std::vector<SuiteReport> out;
  if (config.suite == "harness_selftest") {
    out.push_back(run_one("harness_selftest", harness_selftest, config));
    return out;
  }
  bool found = false;
  for (const auto& [name, fn] : registry()) {
    if (config.suite == "all" || config.suite == name) {
      out.push_back(run_one(name, fn, config));
      found = true;
    }
  }
  if (!found) throw DomainError("run_suite: unknown suite '" + config.suite + "'");
  return out;
}

int total_violations(const std::vector<SuiteReport>& reports) {
  int v = 0;
  for (const auto& r : reports) v += r.violations;
  return v;
}

std::string report_json(const std::vector<SuiteReport>& reports) {
  JsonWriter w;
  w.begin_array();
  for (const auto& r : reports) {
    w.begin_object();
    w.field("suite", r.suite);
    w.field("trials", r.trials);
    w.field("violations", r.violations);
    w.field("max_ratio", r.max_ratio);
    w.field("seed", r.seed);
    w.end_object();
  }
  w.end_array();
  return w.str();
}

}  // namespace ecb

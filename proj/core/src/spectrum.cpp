#include "ecb/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>

#include "ecb/errors.hpp"

namespace ecb {

namespace {

constexpr std::size_t kLevelListCap = 50'000'000;  // ~400 MB of doubles

// Index slack when converting an energy budget into a mode occupation count;
// absorbs roundoff so that levels sitting exactly on the threshold count.
constexpr double kIndexSlack = 1e-9;

std::uint64_t count_rec(const std::vector<double>& w, std::size_t i, double budget) {
  if (budget < -kIndexSlack * w.back()) return 0;
  if (i + 1 == w.size()) {
    const double k = std::floor(budget / w[i] + kIndexSlack);
    return k < 0 ? 0 : static_cast<std::uint64_t>(k) + 1;
  }
  std::uint64_t total = 0;
  const double kmax = std::floor(budget / w[i] + kIndexSlack);
  for (double k = 0; k <= kmax; ++k)
    total += count_rec(w, i + 1, budget - k * w[i]);
  return total;
}

void check_mode_energies(const std::vector<double>& energies) {
  if (energies.empty()) throw DomainError("oscillator: need at least one mode");
  for (double w : energies)
    if (!(w > 0.0) || !std::isfinite(w))
      throw DomainError("oscillator: mode energies must be positive and finite");
}

}  // namespace

SpectrumModel SpectrumModel::oscillator(std::vector<double> mode_energies) {
  check_mode_energies(mode_energies);
  SpectrumModel m;
  m.oscillator_ = true;
  m.modes_ = std::move(mode_energies);
  m.e0_ = 0.5 * std::accumulate(m.modes_.begin(), m.modes_.end(), 0.0);
  m.ground_mult_ = 1;
  return m;
}

SpectrumModel SpectrumModel::explicit_levels(std::vector<double> levels,
                                             double complete_below) {
  if (levels.empty()) throw DomainError("explicit spectrum: empty level list");
  if (levels.front() < 0.0)
    throw DomainError("explicit spectrum: ground level must be nonnegative");
  if (!std::is_sorted(levels.begin(), levels.end()))
    throw DomainError("explicit spectrum: levels must be nondecreasing");
  if (!(levels.back() <= complete_below))
    throw DomainError("explicit spectrum: levels exceed complete_below");
  SpectrumModel m;
  m.oscillator_ = false;
  m.levels_ = std::move(levels);
  m.complete_below_ = complete_below;
  m.e0_ = m.levels_.front();
  m.ground_mult_ = static_cast<std::size_t>(
      std::count(m.levels_.begin(), m.levels_.end(), m.e0_));
  return m;
}

SpectrumModel SpectrumModel::load(std::istream& in) {
  std::string line;
  bool have_header = false;
  double complete_below = 0.0;
  std::vector<double> levels;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      const auto pos = line.find("complete_below=");
      if (pos != std::string::npos) {
        std::string v = line.substr(pos + 15);
        if (v.find("inf") != std::string::npos) {
          complete_below = std::numeric_limits<double>::infinity();
        } else {
          try {
            complete_below = std::stod(v);
          } catch (const std::exception&) {
            throw DomainError("spectrum file: bad complete_below value");
          }
        }
        have_header = true;
      }
      continue;
    }
    double x;
    std::istringstream ss(line.substr(first));
    if (!(ss >> x))
      throw DomainError("spectrum file: unparsable level at line " + std::to_string(lineno));
    if (!levels.empty() && x < levels.back())
      throw DomainError("spectrum file: levels must be nondecreasing (line " +
                        std::to_string(lineno) + ")");
    levels.push_back(x);
  }
  if (!have_header)
    throw DomainError("spectrum file: missing '# complete_below=<value>' header");
  return explicit_levels(std::move(levels), complete_below);
}

SpectrumModel SpectrumModel::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open spectrum file: " + path);
  return load(in);
}

const std::vector<double>& SpectrumModel::mode_energies() const {
  if (!oscillator_) throw DomainError("not an oscillator model");
  return modes_;
}

const std::vector<double>& SpectrumModel::levels() const {
  if (oscillator_) throw DomainError("not an explicit model");
  return levels_;
}

double SpectrumModel::complete_below() const {
  if (oscillator_) return std::numeric_limits<double>::infinity();
  return complete_below_;
}

std::size_t SpectrumModel::mode_count() const {
  if (!oscillator_) throw DomainError("not an oscillator model");
  return modes_.size();
}

double SpectrumModel::unit_energy() const {
  if (!oscillator_) throw DomainError("not an oscillator model");
  double s = 0.0;
  for (double w : modes_) s += std::log(w);
  return std::exp(s / static_cast<double>(modes_.size()));
}

double SpectrumModel::nth_level(std::uint64_t k) const {
  if (!oscillator_) {
    if (k >= levels_.size())
      throw DomainError("explicit spectrum: level index out of range");
    return levels_[k];
  }
  if (modes_.size() == 1) return e0_ + static_cast<double>(k) * modes_[0];

  // Bisect on the counting function until the bracket collapses to the
  // machine-precision plateau edge; count(hi) >= k+1 is a loop invariant.
  double lo = e0_ - modes_[0];
  double hi = e0_ + modes_[0];
  while (count_levels(modes_, hi) < k + 1) {
    lo = hi;
    hi = e0_ + 2.0 * (hi - e0_);
    if (!std::isfinite(hi)) throw ResourceError("nth_level: index too large");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, std::fabs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (count_levels(modes_, mid) >= k + 1)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

std::vector<double> oscillator_levels(const std::vector<double>& energies,
                                      std::size_t m) {
  check_mode_energies(energies);
  if (m == 0) throw DomainError("oscillator_levels: m must be positive");
  if (m > kLevelListCap)
    throw ResourceError("oscillator_levels: m exceeds the level-list cap");

  // Fold modes in one at a time: given the m smallest sums A of the first
  // modes, the m smallest of {a + k*w} are produced by a heap over (a_j, k).
  std::vector<double> acc{0.0};
  for (double w : energies) {
    using Entry = std::pair<double, std::pair<std::size_t, std::uint64_t>>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    const std::size_t take = std::min(m, acc.size());
    for (std::size_t j = 0; j < take; ++j) heap.push({acc[j], {j, 0}});
    std::vector<double> next;
    next.reserve(m);
    while (next.size() < m && !heap.empty()) {
      auto [v, jk] = heap.top();
      heap.pop();
      next.push_back(v);
      heap.push({acc[jk.first] + static_cast<double>(jk.second + 1) * w,
                 {jk.first, jk.second + 1}});
    }
    acc = std::move(next);
  }
  const double e0 = 0.5 * std::accumulate(energies.begin(), energies.end(), 0.0);
  for (double& v : acc) v += e0;
  std::sort(acc.begin(), acc.end());  // heap merge is already sorted; cheap guard
  return acc;
}

std::uint64_t count_levels(const std::vector<double>& energies, double x) {
  check_mode_energies(energies);
  const double e0 = 0.5 * std::accumulate(energies.begin(), energies.end(), 0.0);
  return count_rec(energies, 0, x - e0);
}

BdSums bd_sums(const SpectrumModel& model, double energy) {
  const double e0 = model.ground_energy();
  if (!(energy > e0)) throw DomainError("bd_sums: need E > E_0");

  std::vector<double> lev;
  if (model.is_oscillator()) {
    // Only levels with a partner (E_k + E_0 <= E) can contribute.
    const auto n = count_levels(model.mode_energies(), energy - e0);
    if (n == 0) return {0.0, 0.0};
    lev = oscillator_levels(model.mode_energies(), n);
  } else {
    if (!(energy <= 2.0 * model.complete_below()))
      throw DomainError("bd_sums: explicit list incomplete for requested E");
    const auto& all = model.levels();
    lev.assign(all.begin(),
               std::upper_bound(all.begin(), all.end(), energy - e0));
    if (lev.empty()) return {0.0, 0.0};
  }

  std::vector<double> prefix(lev.size() + 1, 0.0);
  for (std::size_t i = 0; i < lev.size(); ++i) prefix[i + 1] = prefix[i] + lev[i];

  double n_up = 0.0, n_down = 0.0;
  for (double ek : lev) {
    const auto it = std::upper_bound(lev.begin(), lev.end(), energy - ek);
    const auto cnt = static_cast<std::size_t>(it - lev.begin());
    if (cnt == 0) continue;
    n_up += ek * ek * static_cast<double>(cnt);
    n_down += ek * prefix[cnt];
  }
  return {n_up, n_down};
}

}  // namespace ecb

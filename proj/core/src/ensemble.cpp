#include "ecb/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ecb/errors.hpp"

namespace ecb {

namespace {

constexpr int kMaxSupport = 16;
constexpr double kOptTol = 1e-12;

// Transportation simplex on the bipartite spanning-tree basis. Rows are
// nodes 0..m-1, columns m..m+n-1.
class TransportSimplex {
 public:
  TransportSimplex(const std::vector<double>& p, const std::vector<double>& q,
                   const std::vector<std::vector<double>>& cost)
      : m_(static_cast<int>(p.size())), n_(static_cast<int>(q.size())), c_(cost) {
    flow_.assign(m_, std::vector<double>(n_, 0.0));
    basic_.assign(m_, std::vector<char>(n_, 0));
    northwest(p, q);
  }

  double solve() {
    for (int iter = 0; iter < 4000; ++iter) {
      compute_potentials();
      int ei = -1, ej = -1;
      double best = -kOptTol;
      for (int i = 0; i < m_; ++i)
        for (int j = 0; j < n_; ++j)
          if (!basic_[i][j]) {
            const double red = c_[i][j] - u_[i] - v_[j];
            if (red < best) {
              best = red;
              ei = i;
              ej = j;
            }
          }
      if (ei < 0) {
        double total = 0.0;
        for (int i = 0; i < m_; ++i)
          for (int j = 0; j < n_; ++j)
            if (basic_[i][j]) total += flow_[i][j] * c_[i][j];
        return total;
      }
      pivot(ei, ej);
    }
    throw PrecisionError("transport: simplex iteration cap reached");
  }

 private:
  void northwest(std::vector<double> a, std::vector<double> b) {
    int i = 0, j = 0;
    while (true) {
      basic_[i][j] = 1;
      const double x = std::min(a[i], b[j]);
      flow_[i][j] = x;
      a[i] -= x;
      b[j] -= x;
      if (i == m_ - 1 && j == n_ - 1) break;
      if (a[i] <= b[j] && i < m_ - 1)
        ++i;
      else if (j < n_ - 1)
        ++j;
      else
        ++i;
    }
  }

  void compute_potentials() {
    u_.assign(m_, 0.0);
    v_.assign(n_, 0.0);
    std::vector<char> ku(m_, 0), kv(n_, 0);
    ku[0] = 1;
    for (int sweep = 0; sweep < m_ + n_; ++sweep) {
      bool progress = false;
      for (int i = 0; i < m_; ++i)
        for (int j = 0; j < n_; ++j)
          if (basic_[i][j]) {
            if (ku[i] && !kv[j]) {
              v_[j] = c_[i][j] - u_[i];
              kv[j] = 1;
              progress = true;
            } else if (kv[j] && !ku[i]) {
              u_[i] = c_[i][j] - v_[j];
              ku[i] = 1;
              progress = true;
            }
          }
      if (!progress) break;
    }
    for (int i = 0; i < m_; ++i)
      if (!ku[i]) throw PrecisionError("transport: basis tree disconnected");
    for (int j = 0; j < n_; ++j)
      if (!kv[j]) throw PrecisionError("transport: basis tree disconnected");
  }

  // unique tree path from column node ej to row node ei
  std::vector<std::pair<int, int>> tree_path(int ei, int ej) const {
    const int nodes = m_ + n_;
    std::vector<int> parent(nodes, -2);
    std::vector<int> stack{m_ + ej};
    parent[m_ + ej] = -1;
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      if (x == ei) break;
      if (x < m_) {
        for (int j = 0; j < n_; ++j)
          if (basic_[x][j] && parent[m_ + j] == -2) {
            parent[m_ + j] = x;
            stack.push_back(m_ + j);
          }
      } else {
        const int j = x - m_;
        for (int i = 0; i < m_; ++i)
          if (basic_[i][j] && parent[i] == -2) {
            parent[i] = x;
            stack.push_back(i);
          }
      }
    }
    std::vector<std::pair<int, int>> path;  // cells along ej -> ... -> ei
    int x = ei;
    while (parent[x] != -1) {
      const int px = parent[x];
      path.push_back(x < m_ ? std::pair{x, px - m_} : std::pair{px, x - m_});
      x = px;
    }
    return path;  // ordered from the ei end toward ej
  }

  void pivot(int ei, int ej) {
    auto path = tree_path(ei, ej);
    if (path.empty()) throw PrecisionError("transport: lost basis cycle");
    // cycle = entering cell (+) then path cells with alternating -,+,...
    // starting from the cell adjacent to row ei.
    double theta = std::numeric_limits<double>::infinity();
    int leave = -1;
    for (std::size_t k = 0; k < path.size(); k += 2) {
      const auto [i, j] = path[k];
      if (flow_[i][j] < theta) {
        theta = flow_[i][j];
        leave = static_cast<int>(k);
      }
    }
    for (std::size_t k = 0; k < path.size(); ++k) {
      const auto [i, j] = path[k];
      flow_[i][j] += (k % 2 == 0) ? -theta : theta;
      if (flow_[i][j] < 0.0) flow_[i][j] = 0.0;
    }
    flow_[ei][ej] = theta;
    basic_[ei][ej] = 1;
    const auto [li, lj] = path[static_cast<std::size_t>(leave)];
    basic_[li][lj] = 0;
    flow_[li][lj] = 0.0;
  }

  int m_, n_;
  std::vector<std::vector<double>> c_;
  std::vector<std::vector<double>> flow_;
  std::vector<std::vector<char>> basic_;
  std::vector<double> u_, v_;
};

DiscreteEnsemble padded(const DiscreteEnsemble& mu, std::size_t len,
                        Eigen::Index dim) {
  DiscreteEnsemble out = mu;
  while (out.states.size() < len) {
    out.probs.push_back(0.0);
    out.states.push_back(basis_state(dim, 0));
  }
  return out;
}

}  // namespace

void validate_ensemble(const DiscreteEnsemble& mu, double tol) {
  if (mu.probs.size() != mu.states.size() || mu.states.empty())
    throw ValidationError("ensemble: probs/states size mismatch");
  double sum = 0.0;
  for (double p : mu.probs) {
    if (p < -tol) throw ValidationError("ensemble: negative probability");
    sum += p;
  }
  if (std::fabs(sum - 1.0) > tol)
    throw ValidationError("ensemble: probabilities do not sum to 1");
  const auto dim = mu.states.front().rows();
  for (const auto& s : mu.states)
    if (s.rows() != dim || s.cols() != dim)
      throw ValidationError("ensemble: states of unequal dimension");
}

DensityMatrix average_state(const DiscreteEnsemble& mu) {
  validate_ensemble(mu);
  DensityMatrix avg = DensityMatrix::Zero(mu.states.front().rows(),
                                          mu.states.front().cols());
  for (std::size_t i = 0; i < mu.states.size(); ++i)
    avg += mu.probs[i] * mu.states[i];
  return avg;
}

double average_energy(const DiscreteEnsemble& mu, const std::vector<double>& h) {
  return state_energy(average_state(mu), h);
}

double holevo_quantity(const DiscreteEnsemble& mu) {
  double h = entropy(average_state(mu));
  for (std::size_t i = 0; i < mu.states.size(); ++i)
    if (mu.probs[i] > 0.0) h -= mu.probs[i] * entropy(mu.states[i]);
  return h;
}

double holevo(const KrausChannel& ch, const DiscreteEnsemble& mu) {
  validate_ensemble(mu);
  DiscreteEnsemble out;
  out.probs = mu.probs;
  out.states.reserve(mu.states.size());
  for (const auto& s : mu.states) out.states.push_back(apply(ch, s));
  return holevo_quantity(out);
}

double privacy(const KrausChannel& ch, const DiscreteEnsemble& mu) {
  return holevo(ch, mu) - holevo(complementary(ch), mu);
}

double d0_distance(const DiscreteEnsemble& mu, const DiscreteEnsemble& nu) {
  validate_ensemble(mu);
  validate_ensemble(nu);
  if (mu.states.front().rows() != nu.states.front().rows())
    throw DomainError("d0_distance: state dimension mismatch");
  const std::size_t len = std::max(mu.states.size(), nu.states.size());
  const auto a = padded(mu, len, mu.states.front().rows());
  const auto b = padded(nu, len, nu.states.front().rows());
  double total = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    const auto ev =
        hermitian_eigenvalues(a.probs[i] * a.states[i] - b.probs[i] * b.states[i]);
    total += 0.5 * ev.cwiseAbs().sum();
  }
  return total;
}

double transport_optimum(const std::vector<double>& p,
                         const std::vector<double>& q,
                         const std::vector<std::vector<double>>& cost) {
  if (p.empty() || q.empty()) throw DomainError("transport: empty marginals");
  if (cost.size() != p.size()) throw DomainError("transport: cost shape mismatch");
  for (const auto& row : cost)
    if (row.size() != q.size()) throw DomainError("transport: cost shape mismatch");
  double sp = 0.0, sq = 0.0;
  for (double x : p) sp += x;
  for (double x : q) sq += x;
  if (std::fabs(sp - sq) > 1e-10)
    throw DomainError("transport: marginal totals differ");
  return TransportSimplex(p, q, cost).solve();
}

double kantorovich(const DiscreteEnsemble& mu, const DiscreteEnsemble& nu) {
  validate_ensemble(mu);
  validate_ensemble(nu);
  if (mu.states.size() > kMaxSupport || nu.states.size() > kMaxSupport)
    throw ResourceError("kantorovich: support size above the exact-solver cap");
  std::vector<std::vector<double>> cost(mu.states.size(),
                                        std::vector<double>(nu.states.size()));
  for (std::size_t i = 0; i < mu.states.size(); ++i)
    for (std::size_t j = 0; j < nu.states.size(); ++j)
      cost[i][j] = trace_distance(mu.states[i], nu.states[j]);
  return transport_optimum(mu.probs, nu.probs, cost);
}

}  // namespace ecb

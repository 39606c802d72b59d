#pragma once

#include <vector>

#include "ecb/channel.hpp"
#include "ecb/density.hpp"

namespace ecb {

// Probability-weighted list of equal-dimension states.
struct DiscreteEnsemble {
  std::vector<double> probs;
  std::vector<DensityMatrix> states;
};

void validate_ensemble(const DiscreteEnsemble& mu, double tol = 1e-10);

DensityMatrix average_state(const DiscreteEnsemble& mu);
double average_energy(const DiscreteEnsemble& mu, const std::vector<double>& h);

// chi of the ensemble itself: H(rho_bar) - sum p_i H(rho_i).
double holevo_quantity(const DiscreteEnsemble& mu);

// Output Holevo quantity chi({p_i, Phi(rho_i)}).
double holevo(const KrausChannel& ch, const DiscreteEnsemble& mu);

// pi_Phi(mu) = chi(Phi(mu)) - chi(Phihat(mu)).
double privacy(const KrausChannel& ch, const DiscreteEnsemble& mu);

// Index-aligned ensemble metric (1/2) sum_i |p_i rho_i - q_i sigma_i|_1; the
// shorter ensemble is padded with zero-probability ground states.
double d0_distance(const DiscreteEnsemble& mu, const DiscreteEnsemble& nu);

// Kantorovich distance: exact optimum of the transportation problem with
// cost (1/2)|rho_i - sigma_j|_1. Supports of more than 16 states each are
// refused (the solver is an exact network simplex for small instances).
double kantorovich(const DiscreteEnsemble& mu, const DiscreteEnsemble& nu);

// Exact transportation optimum for given marginals and cost matrix
// (network simplex, 1e-12 optimality tolerance). Exposed for direct use and
// oracle cross-checks.
double transport_optimum(const std::vector<double>& p,
                         const std::vector<double>& q,
                         const std::vector<std::vector<double>>& cost);

}  // namespace ecb

#pragma once

#include <cstdint>
#include <vector>

#include "ecb/density.hpp"

namespace ecb {

// Trace-preserving channel in Kraus form: sum_i K_i^* K_i = I.
struct KrausChannel {
  Eigen::Index in_dim = 0;
  Eigen::Index out_dim = 0;
  std::vector<Eigen::MatrixXcd> kraus;  // out_dim x in_dim each
};

void validate_channel(const KrausChannel& ch, double tol = 1e-10);

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho);

// Apply to one factor of a multi-factor state (K_i tensor I elsewhere).
DensityMatrix apply_to_factor(const KrausChannel& ch, const DensityMatrix& rho,
                              const std::vector<Eigen::Index>& dims, int which);

// Environment output of the Stinespring isometry V psi = sum_i K_i psi (x) |i>:
// Kraus operators of the complement map to an environment of dimension
// #kraus, (Khat_r)_{i,c} = (K_i)_{r,c}.
KrausChannel complementary(const KrausChannel& ch);

// Isometry completion of a Ginibre block via QR; trace preserving by
// construction, deterministic under the seed.
KrausChannel random_channel(Eigen::Index in_dim, Eigen::Index out_dim,
                            int n_kraus, std::uint64_t seed);

KrausChannel identity_channel(Eigen::Index dim);

// I(Phi, rho) = H(rho) + H(Phi(rho)) - H(Phihat(rho)) and
// I_c(Phi, rho) = H(Phi(rho)) - H(Phihat(rho)); the complement-output entropy
// is the entropy exchange.
double channel_mi(const KrausChannel& ch, const DensityMatrix& rho);
double channel_ci(const KrausChannel& ch, const DensityMatrix& rho);

}  // namespace ecb

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace ecb {

// Finite-dimensional states are plain dense complex matrices; the operations
// below validate the Hermitian / unit-trace / PSD invariants where they
// matter and clamp eigenvalue noise at zero before taking logs.
using DensityMatrix = Eigen::MatrixXcd;

void validate_state(const DensityMatrix& rho, double tol = 1e-10);

// Eigenvalues of a Hermitian matrix, ascending.
Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& m);

double entropy(const DensityMatrix& rho);                          // nats
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

// Marginal over the factors listed in `keep` (ascending order kept).
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<Eigen::Index>& dims,
                            const std::vector<int>& keep);
double subsystem_entropy(const DensityMatrix& rho,
                         const std::vector<Eigen::Index>& dims,
                         const std::vector<int>& keep);

// H(A|B) = H(rho_AB) - H(rho_B).
double cond_entropy(const DensityMatrix& rho_ab, Eigen::Index dim_a,
                    Eigen::Index dim_b);

// I(X:Y|Z) = H(XZ) + H(YZ) - H(XYZ) - H(Z) for a state on factors X,Y,Z.
double qcmi(const DensityMatrix& rho_xyz, Eigen::Index dx, Eigen::Index dy,
            Eigen::Index dz);

// General grouping on a multi-factor state: factors not in X,Y,Z are traced
// out first.
double qcmi_general(const DensityMatrix& rho,
                    const std::vector<Eigen::Index>& dims,
                    const std::vector<int>& x, const std::vector<int>& y,
                    const std::vector<int>& z);

// Ginibre state: G is dim x rank with iid standard complex normals,
// rho = GG*/tr(GG*). Deterministic for a given seed.
DensityMatrix random_state(Eigen::Index dim, Eigen::Index rank,
                           std::uint64_t seed);

// Pure state from a deterministic unit vector (testing convenience).
DensityMatrix basis_state(Eigen::Index dim, Eigen::Index k);

// Diagonal truncated-oscillator Hamiltonian 0.5, 1.5, ..., d - 0.5.
std::vector<double> truncated_oscillator(Eigen::Index dim);

// Diagonal of H_X x I on a multi-factor space (energy of the marginal).
std::vector<double> embed_levels(const std::vector<double>& h_factor,
                                 const std::vector<Eigen::Index>& dims,
                                 int which);

double state_energy(const DensityMatrix& rho, const std::vector<double>& h);

// Mix with the ground projector until the mean energy is exactly `energy`;
// states already inside the energy ball are returned unchanged.
DensityMatrix energy_cap(const DensityMatrix& rho, const std::vector<double>& h,
                         double energy);

// (1-eps) rho + eps pi with pi random (energy-capped when h is given), so the
// trace distance to rho is at most eps.
DensityMatrix perturb(const DensityMatrix& rho, double eps, std::uint64_t seed,
                      const std::vector<double>* h = nullptr,
                      double energy = 0.0);

}  // namespace ecb

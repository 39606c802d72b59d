#include "ecb/density.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "ecb/errors.hpp"
#include "ecb/numerics.hpp"

namespace ecb {

namespace {

constexpr double kEigClamp = -1e-10;

// Box-Muller over splitmix64 output: identical streams on every platform.
class Gauss {
 public:
  explicit Gauss(std::uint64_t seed) : state_(seed) {}
  double operator()() {
    if (have_) {
      have_ = false;
      return spare_;
    }
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * M_PI * u2);
    have_ = true;
    return r * std::cos(2.0 * M_PI * u2);
  }

 private:
  double next_unit() {
    state_ = mix_seed(state_ + 0x632be59bd9b4e019ULL);
    // (0,1]: never zero, so log() is safe
    return (static_cast<double>(state_ >> 11) + 1.0) * 0x1.0p-53;
  }
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_ = false;
};

}  // namespace

void validate_state(const DensityMatrix& rho, double tol) {
  if (rho.rows() != rho.cols() || rho.rows() == 0)
    throw ValidationError("state: not a square matrix");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol)
    throw ValidationError("state: not Hermitian within tolerance");
  if (std::fabs(rho.trace().real() - 1.0) > tol ||
      std::fabs(rho.trace().imag()) > tol)
    throw ValidationError("state: trace differs from 1");
}

Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double entropy(const DensityMatrix& rho) {
  validate_state(rho, 1e-10);
  const auto ev = hermitian_eigenvalues(rho);
  double h = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const double x = ev[i];
    if (x < kEigClamp)
      throw ValidationError("entropy: eigenvalue below the PSD clamp");
    if (x > 0.0) h -= x * std::log(x);
  }
  return h;
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DomainError("trace_distance: dimension mismatch");
  const auto ev = hermitian_eigenvalues(a - b);
  return 0.5 * ev.cwiseAbs().sum();
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<Eigen::Index>& dims,
                            const std::vector<int>& keep) {
  Eigen::Index total = 1;
  for (auto d : dims) {
    if (d <= 0) throw DomainError("partial_trace: bad factor dimension");
    total *= d;
  }
  if (total != rho.rows() || rho.rows() != rho.cols())
    throw DomainError("partial_trace: dims do not factor the matrix");
  if (!std::is_sorted(keep.begin(), keep.end()) ||
      std::adjacent_find(keep.begin(), keep.end()) != keep.end())
    throw DomainError("partial_trace: keep set must be sorted and unique");
  for (int k : keep)
    if (k < 0 || k >= static_cast<int>(dims.size()))
      throw DomainError("partial_trace: keep index out of range");

  const int n = static_cast<int>(dims.size());
  std::vector<int> traced;
  for (int i = 0; i < n; ++i)
    if (!std::binary_search(keep.begin(), keep.end(), i)) traced.push_back(i);

  Eigen::Index dim_keep = 1, dim_tr = 1;
  for (int k : keep) dim_keep *= dims[k];
  for (int k : traced) dim_tr *= dims[k];

  // strides of each factor in the row-major multi-index
  std::vector<Eigen::Index> stride(n, 1);
  for (int i = n - 2; i >= 0; --i) stride[i] = stride[i + 1] * dims[i + 1];

  const auto offset = [&](const std::vector<int>& factors, Eigen::Index flat) {
    Eigen::Index off = 0;
    for (int i = static_cast<int>(factors.size()) - 1; i >= 0; --i) {
      const Eigen::Index d = dims[factors[i]];
      off += (flat % d) * stride[factors[i]];
      flat /= d;
    }
    return off;
  };

  DensityMatrix out = DensityMatrix::Zero(dim_keep, dim_keep);
  for (Eigen::Index r = 0; r < dim_keep; ++r) {
    const Eigen::Index ro = offset(keep, r);
    for (Eigen::Index c = 0; c < dim_keep; ++c) {
      const Eigen::Index co = offset(keep, c);
      std::complex<double> s = 0.0;
      for (Eigen::Index t = 0; t < dim_tr; ++t) {
        const Eigen::Index to = offset(traced, t);
        s += rho(ro + to, co + to);
      }
      out(r, c) = s;
    }
  }
  return out;
}

double subsystem_entropy(const DensityMatrix& rho,
                         const std::vector<Eigen::Index>& dims,
                         const std::vector<int>& keep) {
  return entropy(partial_trace(rho, dims, keep));
}

double cond_entropy(const DensityMatrix& rho_ab, Eigen::Index dim_a,
                    Eigen::Index dim_b) {
  return entropy(rho_ab) - subsystem_entropy(rho_ab, {dim_a, dim_b}, {1});
}

double qcmi(const DensityMatrix& rho_xyz, Eigen::Index dx, Eigen::Index dy,
            Eigen::Index dz) {
  return qcmi_general(rho_xyz, {dx, dy, dz}, {0}, {1}, {2});
}

double qcmi_general(const DensityMatrix& rho,
                    const std::vector<Eigen::Index>& dims,
                    const std::vector<int>& x, const std::vector<int>& y,
                    const std::vector<int>& z) {
  auto join = [](std::vector<int> a, const std::vector<int>& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    return a;
  };
  const auto xz = join(x, z);
  const auto yz = join(y, z);
  const auto xyz = join(join(x, y), z);
  const double h_xz = subsystem_entropy(rho, dims, xz);
  const double h_yz = subsystem_entropy(rho, dims, yz);
  const double h_xyz = subsystem_entropy(rho, dims, xyz);
  // trivial Z: H(Z) = 0 and the expression reduces to mutual information
  const double h_z =
      z.empty() ? 0.0 : subsystem_entropy(rho, dims, join({}, z));
  return h_xz + h_yz - h_xyz - h_z;
}

DensityMatrix random_state(Eigen::Index dim, Eigen::Index rank,
                           std::uint64_t seed) {
  if (dim <= 0 || rank <= 0 || rank > dim)
    throw DomainError("random_state: need 1 <= rank <= dim");
  Gauss gauss(mix_seed(seed));
  Eigen::MatrixXcd G(dim, rank);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < rank; ++j)
      G(i, j) = std::complex<double>(gauss(), gauss());
  DensityMatrix rho = G * G.adjoint();
  rho /= rho.trace().real();
  // symmetrize away the last-ulp noise so validate_state is exact
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return rho;
}

DensityMatrix basis_state(Eigen::Index dim, Eigen::Index k) {
  if (k < 0 || k >= dim) throw DomainError("basis_state: index out of range");
  DensityMatrix rho = DensityMatrix::Zero(dim, dim);
  rho(k, k) = 1.0;
  return rho;
}

std::vector<double> truncated_oscillator(Eigen::Index dim) {
  std::vector<double> h(static_cast<std::size_t>(dim));
  for (Eigen::Index i = 0; i < dim; ++i) h[i] = 0.5 + static_cast<double>(i);
  return h;
}

std::vector<double> embed_levels(const std::vector<double>& h_factor,
                                 const std::vector<Eigen::Index>& dims,
                                 int which) {
  if (which < 0 || which >= static_cast<int>(dims.size()))
    throw DomainError("embed_levels: bad factor index");
  if (static_cast<Eigen::Index>(h_factor.size()) != dims[which])
    throw DomainError("embed_levels: level count does not match factor dim");
  Eigen::Index total = 1;
  for (auto d : dims) total *= d;
  Eigen::Index inner = 1;
  for (int i = which + 1; i < static_cast<int>(dims.size()); ++i) inner *= dims[i];
  std::vector<double> h(static_cast<std::size_t>(total));
  for (Eigen::Index i = 0; i < total; ++i)
    h[i] = h_factor[(i / inner) % dims[which]];
  return h;
}

double state_energy(const DensityMatrix& rho, const std::vector<double>& h) {
  if (static_cast<Eigen::Index>(h.size()) != rho.rows())
    throw DomainError("state_energy: dimension mismatch");
  double e = 0.0;
  for (Eigen::Index i = 0; i < rho.rows(); ++i) e += h[i] * rho(i, i).real();
  return e;
}

DensityMatrix energy_cap(const DensityMatrix& rho, const std::vector<double>& h,
                         double energy) {
  const double e = state_energy(rho, h);
  if (e <= energy) return rho;
  const auto ground =
      std::min_element(h.begin(), h.end()) - h.begin();
  const double e0 = h[ground];
  if (!(energy >= e0)) throw DomainError("energy_cap: E below the ground energy");
  const double q = (energy - e0) / (e - e0);
  DensityMatrix out = q * rho;
  out(ground, ground) += 1.0 - q;
  return out;
}

DensityMatrix perturb(const DensityMatrix& rho, double eps, std::uint64_t seed,
                      const std::vector<double>* h, double energy) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw DomainError("perturb: need eps in [0,1]");
  if (eps == 0.0) return rho;
  DensityMatrix pi = random_state(rho.rows(), rho.rows(), seed);
  if (h != nullptr) pi = energy_cap(pi, *h, energy);
  return (1.0 - eps) * rho + eps * pi;
}

}  // namespace ecb

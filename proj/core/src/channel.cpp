#include "ecb/channel.hpp"

#include <cmath>

#include "ecb/errors.hpp"
#include "ecb/numerics.hpp"

namespace ecb {

namespace {

// Box-Muller over splitmix64, matching density.cpp's stream construction.
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
    return (static_cast<double>(state_ >> 11) + 1.0) * 0x1.0p-53;
  }
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_ = false;
};

}  // namespace

void validate_channel(const KrausChannel& ch, double tol) {
  if (ch.kraus.empty()) throw ValidationError("channel: no Kraus operators");
  if (ch.in_dim <= 0 || ch.out_dim <= 0)
    throw ValidationError("channel: bad dimensions");
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(ch.in_dim, ch.in_dim);
  for (const auto& k : ch.kraus) {
    if (k.rows() != ch.out_dim || k.cols() != ch.in_dim)
      throw ValidationError("channel: Kraus operator shape mismatch");
    s += k.adjoint() * k;
  }
  if ((s - Eigen::MatrixXcd::Identity(ch.in_dim, ch.in_dim)).cwiseAbs().maxCoeff() > tol)
    throw ValidationError("channel: Kraus family is not trace preserving");
}

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho) {
  if (rho.rows() != ch.in_dim || rho.cols() != ch.in_dim)
    throw DomainError("apply: state dimension mismatch");
  DensityMatrix out = DensityMatrix::Zero(ch.out_dim, ch.out_dim);
  for (const auto& k : ch.kraus) out += k * rho * k.adjoint();
  return out;
}

DensityMatrix apply_to_factor(const KrausChannel& ch, const DensityMatrix& rho,
                              const std::vector<Eigen::Index>& dims, int which) {
  if (which < 0 || which >= static_cast<int>(dims.size()))
    throw DomainError("apply_to_factor: bad factor index");
  if (dims[which] != ch.in_dim)
    throw DomainError("apply_to_factor: factor dim does not match channel input");

  Eigen::Index left = 1, right = 1;
  for (int i = 0; i < which; ++i) left *= dims[i];
  for (int i = which + 1; i < static_cast<int>(dims.size()); ++i) right *= dims[i];

  const Eigen::Index out_rows = left * ch.out_dim * right;
  DensityMatrix out = DensityMatrix::Zero(out_rows, out_rows);
  const Eigen::MatrixXcd il = Eigen::MatrixXcd::Identity(left, left);
  const Eigen::MatrixXcd ir = Eigen::MatrixXcd::Identity(right, right);
  for (const auto& k : ch.kraus) {
    // kron(I_left, k, I_right) assembled blockwise
    Eigen::MatrixXcd kk = Eigen::MatrixXcd::Zero(out_rows, left * ch.in_dim * right);
    for (Eigen::Index a = 0; a < left; ++a)
      for (Eigen::Index r = 0; r < ch.out_dim; ++r)
        for (Eigen::Index c = 0; c < ch.in_dim; ++c)
          if (k(r, c) != std::complex<double>(0.0)) {
            for (Eigen::Index b = 0; b < right; ++b)
              kk((a * ch.out_dim + r) * right + b, (a * ch.in_dim + c) * right + b) =
                  k(r, c);
          }
    out += kk * rho * kk.adjoint();
  }
  return out;
}

KrausChannel complementary(const KrausChannel& ch) {
  validate_channel(ch);
  const auto env = static_cast<Eigen::Index>(ch.kraus.size());
  KrausChannel out;
  out.in_dim = ch.in_dim;
  out.out_dim = env;
  out.kraus.reserve(static_cast<std::size_t>(ch.out_dim));
  for (Eigen::Index r = 0; r < ch.out_dim; ++r) {
    Eigen::MatrixXcd k(env, ch.in_dim);
    for (Eigen::Index i = 0; i < env; ++i) k.row(i) = ch.kraus[static_cast<std::size_t>(i)].row(r);
    out.kraus.push_back(std::move(k));
  }
  return out;
}

KrausChannel random_channel(Eigen::Index in_dim, Eigen::Index out_dim,
                            int n_kraus, std::uint64_t seed) {
  if (in_dim <= 0 || out_dim <= 0 || n_kraus <= 0)
    throw DomainError("random_channel: bad dimensions");
  if (out_dim * n_kraus < in_dim)
    throw DomainError("random_channel: out_dim * n_kraus must be >= in_dim");
  Gauss gauss(mix_seed(seed ^ 0x5bf03635d3c1d9cbULL));
  Eigen::MatrixXcd G(out_dim * n_kraus, in_dim);
  for (Eigen::Index i = 0; i < G.rows(); ++i)
    for (Eigen::Index j = 0; j < G.cols(); ++j)
      G(i, j) = std::complex<double>(gauss(), gauss());
  const Eigen::MatrixXcd V =
      Eigen::HouseholderQR<Eigen::MatrixXcd>(G).householderQ() *
      Eigen::MatrixXcd::Identity(out_dim * n_kraus, in_dim);
  KrausChannel ch;
  ch.in_dim = in_dim;
  ch.out_dim = out_dim;
  for (int e = 0; e < n_kraus; ++e) {
    Eigen::MatrixXcd k(out_dim, in_dim);
    for (Eigen::Index b = 0; b < out_dim; ++b) k.row(b) = V.row(b * n_kraus + e);
    ch.kraus.push_back(std::move(k));
  }
  return ch;
}

KrausChannel identity_channel(Eigen::Index dim) {
  KrausChannel ch;
  ch.in_dim = ch.out_dim = dim;
  ch.kraus.push_back(Eigen::MatrixXcd::Identity(dim, dim));
  return ch;
}

double channel_mi(const KrausChannel& ch, const DensityMatrix& rho) {
  return entropy(rho) + channel_ci(ch, rho);
}

double channel_ci(const KrausChannel& ch, const DensityMatrix& rho) {
  const auto comp = complementary(ch);
  return entropy(apply(ch, rho)) - entropy(apply(comp, rho));
}

}  // namespace ecb

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ecb/bounds.hpp"
#include "ecb/fhat.hpp"
#include "ecb/spectrum.hpp"

namespace ecb {

// Capacity selector for the sufficient-dimension estimate. The dispatch
// identities f_Cchi = f_Qbar, f_Cpbar = 2 f_Cchi and f_Cp = 2 f_Q hold
// exactly by construction.
enum class CapacityKind { Cchi, C, Qbar, Q, Cpbar, Cp };

std::string_view to_string(CapacityKind);
std::optional<CapacityKind> capacity_from_string(std::string_view);

struct UfaResult {
  std::uint64_t m;   // epsilon-sufficient input dimension
  double t_star;     // minimizing t
  double f_value;    // min over t of f_kind(E, m, t)
  double E_m;        // eigenvalue E_m of the model
};

// Minimal m with ebar_m >= gamma(d0); the oscillator closed form uses
// E_m >= 2 E_0 instead.
std::uint64_t m_zero(const SpectrumModel& model, const FHatFunction& fhat);

// Dimension-truncation remainder ((4+8t)u + 2s u^2 t^2) fhat(ebar_m/t^2)
//   + (4+8t) delta u + 4 g(t u) + 2 g((2+2t) u),  s in {0,1},
// with delta taken from the envelope.
double big_f(const FHatFunction& fhat, double u, double ebar_m, double t, int s);

// f_{C*}(E, m, t); +inf marks infeasible (m below m_0 for the big_f kinds,
// s_m > 2 or t/2 beyond the admissible range for the Cchi/Qbar kinds).
double f_capacity(CapacityKind kind, const SpectrumModel& model,
                  const FHatFunction& fhat, double energy, std::uint64_t m,
                  double t);

struct TMin {
  double t_star;
  double value;  // +inf when no t in (0,1] is feasible
};
TMin min_over_t(CapacityKind kind, const SpectrumModel& model,
                const FHatFunction& fhat, double energy, std::uint64_t m,
                int grid = 256);

// Minimal m with E_m >= E and min_over_t <= eps. Doubling scan from
// max(m_0, first m with E_m >= E), then binary search; a short backward walk
// guards the boundary against local non-monotonicity.
UfaResult sufficient_dim(CapacityKind kind, const SpectrumModel& model,
                         const FHatFunction& fhat, double energy, double eps,
                         std::uint64_t m_cap = 1'000'000'000'000ULL,
                         int grid = 256);

// One-mode oscillator (hw = 1) sufficient dimensions for
// E/hw in {3, 10, 100}, relative errors {0.1, 0.01} and the five reported
// capacity kinds (Cchi stands for the identical Qbar column).
struct TableRow {
  double e_over_hw;
  double rel_err;
  CapacityKind kind;
  std::uint64_t m;
  double t_star;
  double f_value;
};
std::vector<TableRow> reproduce_tables(int grid = 256);

std::string tables_csv(const std::vector<TableRow>& rows);
std::string tables_json(const std::vector<TableRow>& rows);
std::string ufa_result_csv(const UfaResult& r, double e_over_hw, double rel_err,
                           CapacityKind kind);
std::string ufa_result_json(const UfaResult& r, double e_over_hw, double rel_err,
                            CapacityKind kind);

}  // namespace ecb

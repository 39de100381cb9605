#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mlsw {

/// Physical parameters of the N-layer system.
///
/// Layers are numbered from the surface (n=1) down to the bottom (n=N).
/// The density ratios gamma_n are reconstructed from the reduced density
/// jumps r_n and the contrast parameter rho:
///   gamma_1 = 1 - rho^2,   gamma_i = 1 - rho^2 * sum_{j>i} r_j,  gamma_N = 1.
/// The jumps must satisfy sum_{j=2}^N r_j = 1 (they telescope to
/// (gamma_N - gamma_1)/(1 - gamma_1)).
struct Params {
  int N = 1;                    ///< layer count
  int d = 1;                    ///< spatial dimension, 1 or 2
  std::vector<double> delta;    ///< rest depths delta_1..delta_N, all > 0
  std::vector<double> r;        ///< density jumps r_2..r_N (r[i] = r_{i+2})
  double rho = 0.1;             ///< contrast parameter, in (0,1)
  std::vector<double> gamma;    ///< derived ratios gamma_1..gamma_N
  double m_bound = 0.0;         ///< max of delta_i, 1/delta_i, r_i, 1/r_i (i>=2)
  double total_depth = 0.0;     ///< sum of rest depths

  int state_size() const { return N * (1 + d); }

  double gamma_of(int n) const { return gamma[n - 1]; }   // 1-based
  double delta_of(int n) const { return delta[n - 1]; }   // 1-based
  double r_of(int n) const { return r[n - 2]; }           // 1-based, n >= 2
};

class ParamError : public std::runtime_error {
 public:
  explicit ParamError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Validates inputs and derives gamma, m_bound, total_depth.
/// Throws ParamError on non-positive depths/jumps, rho outside (0,1),
/// or |sum r_j - 1| >= 1e-12.
Params derive_params(int N, int d, const std::vector<double>& delta,
                     const std::vector<double>& r, double rho);

/// Rescales the r_j to sum to one. Opt-in helper; derive_params never
/// normalizes silently.
std::vector<double> normalize_density_jumps(const std::vector<double>& r);

}  // namespace mlsw

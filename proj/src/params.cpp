#include "mlsw/params.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace mlsw {

Params derive_params(int N, int d, const std::vector<double>& delta,
                     const std::vector<double>& r, double rho) {
  if (N < 1) throw ParamError("layer count N must be >= 1");
  if (d != 1 && d != 2) throw ParamError("spatial dimension d must be 1 or 2");
  if (static_cast<int>(delta.size()) != N)
    throw ParamError("expected " + std::to_string(N) + " rest depths, got " +
                     std::to_string(delta.size()));
  if (static_cast<int>(r.size()) != N - 1)
    throw ParamError("expected " + std::to_string(N - 1) +
                     " density jumps r_2..r_N, got " + std::to_string(r.size()));
  if (!(rho > 0.0 && rho < 1.0))
    throw ParamError("contrast parameter rho must lie in (0,1)");
  for (double dn : delta)
    if (!(dn > 0.0)) throw ParamError("rest depths must be positive");
  for (double rn : r)
    if (!(rn > 0.0)) throw ParamError("density jumps must be positive");

  if (N >= 2) {
    const double rsum = std::accumulate(r.begin(), r.end(), 0.0);
    if (std::abs(rsum - 1.0) >= 1e-12) {
      std::ostringstream msg;
      msg << "density jumps must satisfy sum_{j=2}^N r_j = 1 (got " << rsum
          << "): the r_j telescope to (gamma_N - gamma_1)/(1 - gamma_1) with "
             "gamma_N = 1 and gamma_1 = 1 - rho^2";
      throw ParamError(msg.str());
    }
  }

  Params p;
  p.N = N;
  p.d = d;
  p.delta = delta;
  p.r = r;
  p.rho = rho;

  p.gamma.resize(N);
  p.gamma[N - 1] = 1.0;
  // gamma_i = 1 - rho^2 * sum_{j=i+1}^N r_j; accumulate the tail sum.
  double tail = 0.0;
  for (int i = N - 1; i >= 1; --i) {
    tail += r[i - 1];  // r_{i+1}
    p.gamma[i - 1] = 1.0 - rho * rho * tail;
  }
  if (N == 1) p.gamma[0] = 1.0 - rho * rho;  // single layer plays both roles

  // m_bound deliberately excludes r_1 = gamma_1/(1-gamma_1), which diverges
  // as rho -> 0 and would make the constant rho-dependent.
  double m = 0.0;
  for (double dn : delta) m = std::max({m, dn, 1.0 / dn});
  for (double rn : r) m = std::max({m, rn, 1.0 / rn});
  p.m_bound = m;
  p.total_depth = std::accumulate(delta.begin(), delta.end(), 0.0);
  return p;
}

std::vector<double> normalize_density_jumps(const std::vector<double>& r) {
  const double rsum = std::accumulate(r.begin(), r.end(), 0.0);
  if (!(rsum > 0.0)) throw ParamError("cannot normalize non-positive jump sum");
  std::vector<double> out(r);
  for (double& x : out) x /= rsum;
  return out;
}

}  // namespace mlsw

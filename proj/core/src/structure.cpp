#include "kahlerq/structure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kahlerq/errors.hpp"
#include "kahlerq/oracle.hpp"
#include "kahlerq/rng.hpp"
#include "kahlerq/sampling.hpp"

namespace kahlerq {

bool StructureReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.pass; });
}

const AxiomCheck& StructureReport::check(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw KahlerError("StructureReport: no check named '" + name + "'");
}

StructureReport validate_structure(Index n, double tol, std::uint64_t seed, int samples) {
  return detail::validate_structure_with(n, tol, symplectic_omega, seed, samples);
}

namespace detail {

StructureReport validate_structure_with(Index n, double tol, const BilinearForm& omega_fn,
                                        std::uint64_t seed, int samples) {
  if (n < 1) throw DimensionMismatch("validate_structure: n must be >= 1");
  if (samples < 1) throw KahlerError("validate_structure: samples must be >= 1");

  Rng rng(seed);

  double r_g_sym = 0.0;        // g(u,v) - g(v,u)
  double r_omega_antisym = 0;  // omega(u,v) + omega(v,u)
  double r_omega_J = 0.0;      // omega(Ju, Jv) - omega(u,v)
  double r_J_squared = 0.0;    // J^2 u + u
  double r_compat = 0.0;       // g(u,v) - omega(u, Jv)
  double r_inner = 0.0;        // <gamma u, gamma v> - (g + i omega)
  double min_g_uu = std::numeric_limits<double>::infinity();

  for (int s = 0; s < samples; ++s) {
    const KahlerState u = random_state(rng, n, /*normalize=*/false);
    const KahlerState v = random_state(rng, n, /*normalize=*/false);

    const double g_uv = metric_g(u, v);
    const double w_uv = omega_fn(u, v);

    r_g_sym = std::max(r_g_sym, std::abs(g_uv - metric_g(v, u)));
    r_omega_antisym = std::max(r_omega_antisym, std::abs(w_uv + omega_fn(v, u)));
    r_omega_J = std::max(r_omega_J, std::abs(omega_fn(apply_J(u), apply_J(v)) - w_uv));

    const KahlerState jju = apply_J(apply_J(u));
    r_J_squared = std::max(r_J_squared, max_abs(Vec((jju + u).stacked())));

    r_compat = std::max(r_compat, std::abs(g_uv - omega_fn(u, apply_J(v))));

    const std::complex<double> lhs = oracle::hermitian_inner(complexify(u), complexify(v));
    r_inner = std::max(r_inner, std::abs(lhs - std::complex<double>(g_uv, w_uv)));

    min_g_uu = std::min(min_g_uu, metric_g(u, u));
  }

  StructureReport report;
  report.n = n;
  report.seed = seed;
  report.samples = samples;
  auto add = [&](const std::string& name, double residual) {
    report.checks.push_back({name, residual, tol, residual <= tol});
  };
  add("g_symmetric", r_g_sym);
  // Positive definiteness on nonzero samples: residual is how far below zero
  // the smallest sampled g(u,u) falls.
  add("g_positive", std::max(0.0, -min_g_uu) + (min_g_uu > 0.0 ? 0.0 : 1.0));
  add("omega_antisymmetric", r_omega_antisym);
  add("omega_J_invariant", r_omega_J);
  add("J_squared_minus_one", r_J_squared);
  add("compatibility_g_omega_J", r_compat);
  add("complexification_inner_product", r_inner);
  return report;
}

}  // namespace detail

}  // namespace kahlerq

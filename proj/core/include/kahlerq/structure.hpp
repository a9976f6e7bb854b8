#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "kahlerq/state.hpp"
#include "kahlerq/types.hpp"

namespace kahlerq {

struct AxiomCheck {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct StructureReport {
  Index n = 0;
  std::uint64_t seed = 0;
  int samples = 0;
  std::vector<AxiomCheck> checks;

  bool pass() const;
  const AxiomCheck& check(const std::string& name) const;  // throws KahlerError if absent
};

inline constexpr std::uint64_t kStructureSeed = 0x6b61686c65727173ull;

// Verify on random vector pairs that (g, omega, J) actually form a compatible
// triple on R^{2N}: g symmetric positive, omega antisymmetric and J-invariant,
// J^2 = -1, g(u, v) = omega(u, Jv), and that gamma turns the pair (g, omega)
// into the Hermitian inner product.
StructureReport validate_structure(Index n, double tol = 1e-12,
                                   std::uint64_t seed = kStructureSeed, int samples = 128);

namespace detail {

using BilinearForm = std::function<double(const KahlerState&, const KahlerState&)>;

// Same checks, but with a caller-supplied omega.  Exists so tests can inject a
// corrupted form and confirm the checker notices (the public entry point wires
// in symplectic_omega).
StructureReport validate_structure_with(Index n, double tol, const BilinearForm& omega_fn,
                                        std::uint64_t seed, int samples);

}  // namespace detail

}  // namespace kahlerq

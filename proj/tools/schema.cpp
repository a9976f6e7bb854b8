#include "schema.hpp"

namespace kahlerq::cli {

std::string schema_text() {
  return R"SCHEMA({
  "$comment": "kahlerq experiment config. Top-level fields:",
  "kind": "Validate | Lift | Evolve | Ergodic | Tensor | Grid | Commutator",
  "seed": "uint64, fixes all pseudo-randomness (default 1)",
  "output_dir": "optional path for report.json and CSVs; --out overrides",
  "params": "object, kind-specific (see below). Unknown fields are rejected.",

  "Validate": {
    "n": "int >= 1 (required). Space dimension N.",
    "tol": "number, axiom tolerance (default 1e-12)",
    "samples": "int >= 1, random vector pairs per axiom (default 128)"
  },

  "Lift": {
    "n": "int >= 1 (required). Operator dimension N.",
    "cases": "int >= 1, random instances (default 100)",
    "tol": "number, residual tolerance (default 1e-12)"
  },

  "Evolve": {
    "n": "int >= 1 (required unless hamiltonian fixes it)",
    "scheme": "'midpoint' | 'exact' (default 'midpoint')",
    "t_final": "number > 0 (default 100.0)",
    "steps": "int >= 1 (default 10000)",
    "store_every": "int >= 1, trajectory decimation (default steps/1000)",
    "hamiltonian": "{'kind':'random'} | {'kind':'diagonal','lambdas':[..]} | {'kind':'matrix','x':[[..]],'y':[[..]]}",
    "initial": "{'kind':'random'} | {'kind':'components','q':[..],'p':[..]}",
    "hsym_drift_tol": "number (default 1e-9)",
    "gnorm_drift_tol": "number (default 1e-10)",
    "omega_defect_tol": "number (default 1e-10)",
    "onestep_tol": "number, one-step symplectic/orthogonal defect (default 1e-10)"
  },

  "Ergodic": {
    "hamiltonian": "{'kind':'diagonal','lambdas':[..]} | {'kind':'matrix','x':[[..]],'y':[[..]]}",
    "actions": "array of numbers >= 0 (required), per-mode F_a",
    "phases": "array of numbers, per-mode initial angles (default all 0)",
    "observable": "{'terms':[{'coeff':c,'q_exp':[..],'p_exp':[..]}, ..]} in mode coordinates",
    "t_final": "number > 0 (default 1e4)",
    "steps": "int >= 1 (default 200000)",
    "torus_grid": "int >= 8 (default 64)",
    "bound": "int >= 1, integer-relation search bound (default 50)",
    "independence_tol": "number (default 1e-9)",
    "gap_tol": "number (default 1e-2)",
    "expect_independent": "optional bool: assert the independence verdict",
    "expect_time_avg": "optional number: assert the time average",
    "expect_time_avg_tol": "number (default 5e-3, used with expect_time_avg)",
    "expect_gap": "optional number: assert the |time-torus| gap",
    "expect_gap_tol": "number (default 1e-2, used with expect_gap)"
  },

  "Tensor": {
    "m": "int >= 1 (required), first factor dimension",
    "n": "int >= 1 (required), second factor dimension",
    "cases": "int >= 1, random factorization instances (default 50)",
    "tol": "number (default 1e-12)"
  },

  "Grid": {
    "x_min": "number (default -10)",
    "x_max": "number (default 10)",
    "n": "int >= 16 (default 512)",
    "hbar": "number > 0 (default 1)",
    "mass": "number > 0 (default 1)",
    "potential": "{'kind':'harmonic','omega':w} | {'kind':'free'} | {'kind':'table','values':[..n..]}",
    "eigen_count": "int >= 1, eigenvalues checked vs (k+1/2)*hbar*omega (default 5, harmonic only)",
    "eigen_tol": "number (default 1e-2)",
    "hsym_cases": "int >= 1, random states for the H_sym identity (default 50)",
    "hsym_tol": "number (default 1e-12)"
  },

  "Commutator": {
    "x_min": "number (default -10)",
    "x_max": "number (default 10)",
    "n": "int >= 16, coarse resolution; the check also runs at 2n (default 256)",
    "hbar": "number > 0 (default 1)",
    "center": "number, Gaussian center (default 0)",
    "sigma": "number > 0, Gaussian width (default 1)",
    "wavenumber": "number, plane-wave factor exp(ikx) (default 0)",
    "stencil": "'central2' | 'central4' (default 'central2')",
    "residual_tol": "number, bound on the fine-grid relative residual (default 1e-3)",
    "ratio_low": "number (default 3.2)",
    "ratio_high": "number (default 4.8)"
  },

  "$exit_codes": "0 all checks pass; 1 check failure (report still written); 2 config error; 3 budget exceeded",
  "$environment": "KAHLERQ_BUDGET caps quadrature/search sizes (default 20000000)"
}
)SCHEMA";
}

}  // namespace kahlerq::cli

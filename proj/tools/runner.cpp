#include "runner.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "kahlerq/composite.hpp"
#include "kahlerq/dynamics.hpp"
#include "kahlerq/ergodicity.hpp"
#include "kahlerq/grid.hpp"
#include "kahlerq/oracle.hpp"
#include "kahlerq/parallel.hpp"
#include "kahlerq/rng.hpp"
#include "kahlerq/sampling.hpp"
#include "kahlerq/structure.hpp"

#include "json_util.hpp"
#include "report.hpp"

namespace kahlerq::cli {

namespace {

namespace fs = std::filesystem;

struct RunContext {
  std::uint64_t seed = 1;
  int threads = 1;
  std::uint64_t budget = kDefaultBudget;
  fs::path out_dir;
};

struct KindOutcome {
  std::vector<CheckResult> checks;
  json results = json::object();
};

// ---------------------------------------------------------------- Validate

KindOutcome run_validate(const json& params, const RunContext& ctx) {
  check_keys(params, "params", {"n", "tol", "samples"});
  const Index n = static_cast<Index>(get_positive_int(params, "params", "n"));
  const double tol = get_num(params, "params", "tol", 1e-12);
  if (!(tol > 0.0)) throw ConfigError("field 'tol' in params must be > 0");
  const int samples = static_cast<int>(get_positive_int(params, "params", "samples", 128));

  const StructureReport report = validate_structure(n, tol, ctx.seed, samples);

  KindOutcome out;
  for (const AxiomCheck& axiom : report.checks) {
    out.checks.push_back({axiom.name, axiom.max_residual, axiom.tolerance, axiom.pass});
  }
  out.results = {{"n", n}, {"samples", samples}};
  return out;
}

// -------------------------------------------------------------------- Lift

KindOutcome run_lift(const json& params, const RunContext& ctx) {
  check_keys(params, "params", {"n", "cases", "tol"});
  const Index n = static_cast<Index>(get_positive_int(params, "params", "n"));
  const int cases = static_cast<int>(get_positive_int(params, "params", "cases", 100));
  const double tol = get_num(params, "params", "tol", 1e-12);

  const Rng root(ctx.seed);
  std::vector<std::array<double, 3>> slots(static_cast<std::size_t>(cases));
  parallel_for(cases, ctx.threads, [&](int i) {
    Rng rng = root.split(static_cast<std::uint64_t>(i));
    const ComplexOperator l1 = from_complex(random_cmat(rng, n));
    const ComplexOperator l2 = from_complex(random_cmat(rng, n));

    const ComplexOperator back = gamma_lower(gamma_lift(l1), 1e-8);
    const double roundtrip =
        std::max(max_abs(Mat(back.x - l1.x)), max_abs(Mat(back.y - l1.y)));

    const Mat product = compose(gamma_lift(l1), gamma_lift(l2)).block;
    const Mat lifted = gamma_lift(from_complex(CMat(l1.to_complex() * l2.to_complex()))).block;
    const double homomorphism = max_abs(Mat(product - lifted));

    const Mat adj = k_adjoint(gamma_lift(l1)).block;
    const Mat dagger = gamma_lift(from_complex(CMat(l1.to_complex().adjoint()))).block;
    const double adjoint = max_abs(Mat(adj - dagger));

    slots[static_cast<std::size_t>(i)] = {roundtrip, homomorphism, adjoint};
  });

  std::array<double, 3> worst{0.0, 0.0, 0.0};
  for (const auto& s : slots) {
    for (int k = 0; k < 3; ++k) worst[static_cast<std::size_t>(k)] =
        std::max(worst[static_cast<std::size_t>(k)], s[static_cast<std::size_t>(k)]);
  }

  KindOutcome out;
  out.checks.push_back(make_check("lift_lower_roundtrip", worst[0], tol));
  out.checks.push_back(make_check("compose_homomorphism", worst[1], tol));
  out.checks.push_back(make_check("adjoint_is_block_transpose", worst[2], tol));
  out.results = {{"n", n}, {"cases", cases}};
  return out;
}

// ------------------------------------------------------------------ Evolve

ComplexOperator parse_hamiltonian(const json& params, Rng& rng, Index n_hint) {
  const json& ham = require_field(params, "params", "hamiltonian");
  check_keys(ham, "params.hamiltonian", {"kind", "lambdas", "x", "y"});
  const std::string kind = get_str(ham, "params.hamiltonian", "kind");
  if (kind == "random") {
    if (n_hint < 1) throw ConfigError("field 'n' in params is required for a random hamiltonian");
    return from_complex(random_hermitian(rng, n_hint));
  }
  if (kind == "diagonal") {
    const Vec lambdas = get_vec(ham, "params.hamiltonian", "lambdas");
    return {Mat(lambdas.asDiagonal()), Mat::Zero(lambdas.size(), lambdas.size())};
  }
  if (kind == "matrix") {
    const Mat x = get_mat(ham, "params.hamiltonian", "x");
    const Mat y = get_mat(ham, "params.hamiltonian", "y");
    if (x.rows() != x.cols() || y.rows() != y.cols() || x.rows() != y.rows()) {
      throw ConfigError("fields 'x' and 'y' in params.hamiltonian must be square, equal-sized");
    }
    return {x, y};
  }
  throw ConfigError("field 'kind' in params.hamiltonian must be 'random', 'diagonal' or 'matrix'");
}

KahlerState parse_initial(const json& params, Rng& rng, Index n) {
  json init = json{{"kind", "random"}};
  if (params.contains("initial")) init = params.at("initial");
  check_keys(init, "params.initial", {"kind", "q", "p"});
  const std::string kind = get_str(init, "params.initial", "kind");
  if (kind == "random") return random_state(rng, n, /*normalize=*/true);
  if (kind == "components") {
    const Vec q = get_vec(init, "params.initial", "q");
    const Vec p = get_vec(init, "params.initial", "p");
    if (q.size() != n || p.size() != n) {
      throw ConfigError("fields 'q'/'p' in params.initial must have length " + std::to_string(n));
    }
    return {q, p};
  }
  throw ConfigError("field 'kind' in params.initial must be 'random' or 'components'");
}

void write_trajectory_csv(const fs::path& path, const HamiltonianSplit& hs,
                          const Trajectory& traj) {
  const Index n = hs.dim();
  std::string header = "t";
  for (Index a = 1; a <= n; ++a) header += ",q_" + std::to_string(a);
  for (Index a = 1; a <= n; ++a) header += ",p_" + std::to_string(a);
  header += ",hsym,gnorm";

  std::vector<std::vector<double>> rows;
  rows.reserve(traj.states.size());
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const KahlerState& u = traj.states[i];
    std::vector<double> row;
    row.reserve(static_cast<std::size_t>(2 * n + 3));
    row.push_back(traj.times[i]);
    for (Index a = 0; a < n; ++a) row.push_back(u.q(a));
    for (Index a = 0; a < n; ++a) row.push_back(u.p(a));
    row.push_back(hsym_value(hs, u));
    row.push_back(g_norm(u));
    rows.push_back(std::move(row));
  }
  write_csv(path, header, rows);
}

KindOutcome run_evolve(const json& params, const RunContext& ctx) {
  check_keys(params, "params",
             {"n", "scheme", "t_final", "steps", "store_every", "hamiltonian", "initial",
              "hsym_drift_tol", "gnorm_drift_tol", "omega_defect_tol", "onestep_tol"});
  const Index n_hint =
      params.contains("n") ? static_cast<Index>(get_positive_int(params, "params", "n")) : 0;
  const std::string scheme = get_str(params, "params", "scheme", "midpoint");
  const double t_final = get_num(params, "params", "t_final", 100.0);
  if (!(t_final > 0.0)) throw ConfigError("field 't_final' in params must be > 0");
  const int steps = static_cast<int>(get_positive_int(params, "params", "steps", 10'000));
  const int store_every = static_cast<int>(
      get_positive_int(params, "params", "store_every", std::max<std::int64_t>(1, steps / 1000)));
  const double hsym_tol = get_num(params, "params", "hsym_drift_tol", 1e-9);
  const double gnorm_tol = get_num(params, "params", "gnorm_drift_tol", 1e-10);
  const double omega_tol = get_num(params, "params", "omega_defect_tol", 1e-10);
  const double onestep_tol = get_num(params, "params", "onestep_tol", 1e-10);

  const Rng root(ctx.seed);
  Rng ham_rng = root.split(0);
  Rng init_rng = root.split(1);
  const ComplexOperator h = parse_hamiltonian(params, ham_rng, n_hint);
  const Index n = h.dim();
  if (n_hint >= 1 && n != n_hint) {
    throw ConfigError("field 'n' in params disagrees with the hamiltonian dimension");
  }
  const KahlerState u0 = parse_initial(params, init_rng, n);

  const HamiltonianSplit hs = split_hamiltonian(h);
  Trajectory traj;
  Mat one_step;
  if (scheme == "midpoint") {
    traj = evolve_midpoint(hs, u0, t_final, steps, store_every);
    one_step = midpoint_step_map(hs, traj.step);
  } else if (scheme == "exact") {
    traj = evolve_exact_trajectory(h, u0, t_final, steps, store_every);
    one_step = exact_propagator(h, traj.step).block;
  } else {
    throw ConfigError("field 'scheme' in params must be 'midpoint' or 'exact'");
  }

  const ConservationReport cons = conservation_report(hs, traj, ctx.seed + 2);
  const KahlerOperator step_op{one_step};

  KindOutcome out;
  out.checks.push_back(make_check("hsym_drift", cons.hsym_drift, hsym_tol));
  out.checks.push_back(make_check("gnorm_drift", cons.gnorm_drift, gnorm_tol));
  out.checks.push_back(make_check("omega_pair_defect", cons.omega_defect, omega_tol));
  out.checks.push_back(make_check("onestep_symplectic", symplectic_defect(step_op), onestep_tol));
  out.checks.push_back(
      make_check("onestep_orthogonal", orthogonality_defect(step_op), onestep_tol));

  write_trajectory_csv(ctx.out_dir / "trajectory.csv", hs, traj);

  out.results = {{"n", n},
                 {"scheme", scheme},
                 {"t_final", t_final},
                 {"steps", steps},
                 {"step", traj.step},
                 {"stored_states", traj.states.size()},
                 {"hsym_initial", hsym_value(hs, u0)},
                 {"gnorm_initial", g_norm(u0)}};
  return out;
}

// ----------------------------------------------------------------- Ergodic

Observable parse_observable(const json& params, Index n) {
  const json& obs = require_field(params, "params", "observable");
  check_keys(obs, "params.observable", {"terms"});
  const json& terms = require_field(obs, "params.observable", "terms");
  if (!terms.is_array() || terms.empty()) {
    throw ConfigError("field 'terms' in params.observable must be a non-empty array");
  }
  Observable observable;
  for (const json& term : terms) {
    check_keys(term, "params.observable.terms[]", {"coeff", "q_exp", "p_exp"});
    Observable::Term parsed;
    parsed.coeff = get_num(term, "params.observable.terms[]", "coeff");
    for (const char* key : {"q_exp", "p_exp"}) {
      const json& arr = require_field(term, "params.observable.terms[]", key);
      if (!arr.is_array() || arr.size() != static_cast<std::size_t>(n)) {
        throw ConfigError("field '" + std::string(key) +
                          "' in params.observable.terms[] must be an array of length " +
                          std::to_string(n));
      }
      auto& exps = (std::string(key) == "q_exp") ? parsed.q_exp : parsed.p_exp;
      for (const json& e : arr) {
        if (!e.is_number_integer() || e.get<std::int64_t>() < 0) {
          throw ConfigError("exponents in params.observable.terms[] must be integers >= 0");
        }
        exps.push_back(static_cast<int>(e.get<std::int64_t>()));
      }
    }
    observable.terms.push_back(std::move(parsed));
  }
  return observable;
}

KindOutcome run_ergodic(const json& params, const RunContext& ctx) {
  check_keys(params, "params",
             {"hamiltonian", "actions", "phases", "observable", "t_final", "steps", "torus_grid",
              "bound", "independence_tol", "gap_tol", "expect_independent", "expect_time_avg",
              "expect_time_avg_tol", "expect_gap", "expect_gap_tol"});

  Rng unused(0);
  const ComplexOperator h = parse_hamiltonian(params, unused, 0);
  const Index n = h.dim();

  const Vec actions = get_vec(params, "params", "actions");
  if (actions.size() != n) {
    throw ConfigError("field 'actions' in params must have length " + std::to_string(n));
  }
  for (Index a = 0; a < n; ++a) {
    if (actions(a) < 0.0) throw ConfigError("field 'actions' in params must be >= 0");
  }
  Vec phases = Vec::Zero(n);
  if (params.contains("phases")) {
    phases = get_vec(params, "params", "phases");
    if (phases.size() != n) {
      throw ConfigError("field 'phases' in params must have length " + std::to_string(n));
    }
  }
  const Observable observable = parse_observable(params, n);

  ErgodicityOptions opt;
  opt.t_final = get_num(params, "params", "t_final", 1e4);
  if (!(opt.t_final > 0.0)) throw ConfigError("field 't_final' in params must be > 0");
  opt.steps = static_cast<int>(get_positive_int(params, "params", "steps", 200'000));
  opt.torus_grid = static_cast<int>(get_positive_int(params, "params", "torus_grid", 64));
  if (opt.torus_grid < 8) throw ConfigError("field 'torus_grid' in params must be >= 8");
  opt.bound = static_cast<int>(get_positive_int(params, "params", "bound", 50));
  opt.independence_tol = get_num(params, "params", "independence_tol", 1e-9);
  opt.gap_tol = get_num(params, "params", "gap_tol", 1e-2);
  opt.budget = ctx.budget;
  opt.threads = ctx.threads;

  // Initial state specified in mode coordinates; map back through the frame.
  KahlerState mode0 = KahlerState::zero(n);
  for (Index a = 0; a < n; ++a) {
    mode0.q(a) = std::sqrt(actions(a)) * std::cos(phases(a));
    mode0.p(a) = std::sqrt(actions(a)) * std::sin(phases(a));
  }
  const NormalModeFrame frame = normal_modes(h);
  const KahlerState u0 = k_adjoint(frame.transform).apply(mode0);

  const ObservableFn fn = [&observable](const KahlerState& s) { return observable(s); };
  const ErgodicityReport rep = ergodicity_experiment(h, u0, fn, opt);

  KindOutcome out;
  bool expect_independent_false = false;
  if (params.contains("expect_independent")) {
    const bool expected = get_bool(params, "params", "expect_independent");
    expect_independent_false = !expected;
    out.checks.push_back(make_check("independence_verdict",
                                    rep.verdict.independent == expected ? 0.0 : 1.0, 0.5));
  }
  if (params.contains("expect_time_avg")) {
    const double expected = get_num(params, "params", "expect_time_avg");
    const double tol = get_num(params, "params", "expect_time_avg_tol", 5e-3);
    out.checks.push_back(make_check("time_average", std::abs(rep.time_avg - expected), tol));
  }
  if (params.contains("expect_gap")) {
    const double expected = get_num(params, "params", "expect_gap");
    const double tol = get_num(params, "params", "expect_gap_tol", 1e-2);
    out.checks.push_back(make_check("gap_value", std::abs(rep.gap - expected), tol));
  }
  if (!expect_independent_false) {
    out.checks.push_back(make_check("ergodic_gap", rep.gap, opt.gap_tol));
  }

  std::vector<std::vector<double>> rows;
  rows.reserve(rep.running.size());
  for (const auto& [t, avg] : rep.running) rows.push_back({t, avg});
  write_csv(ctx.out_dir / "running_average.csv", "T,avg", rows);

  json results = {{"lambdas", vec_to_json(rep.lambdas)},
                  {"independent", rep.verdict.independent},
                  {"min_combo", rep.verdict.min_combo},
                  {"time_avg", rep.time_avg},
                  {"torus_avg", rep.torus_avg},
                  {"torus_avg_analytic", observable.analytic_torus_average(rep.initial.actions)},
                  {"gap", rep.gap},
                  {"actions", vec_to_json(rep.initial.actions)},
                  {"degenerate_spectrum", frame.degenerate}};
  if (rep.verdict.relation) {
    json relation = json::array();
    for (Index a = 0; a < rep.verdict.relation->size(); ++a) {
      relation.push_back((*rep.verdict.relation)(a));
    }
    results["relation"] = relation;
  }
  out.results = std::move(results);
  return out;
}

// ------------------------------------------------------------------ Tensor

KindOutcome run_tensor(const json& params, const RunContext& ctx) {
  check_keys(params, "params", {"m", "n", "cases", "tol"});
  const Index m = static_cast<Index>(get_positive_int(params, "params", "m"));
  const Index n = static_cast<Index>(get_positive_int(params, "params", "n"));
  const int cases = static_cast<int>(get_positive_int(params, "params", "cases", 50));
  const double tol = get_num(params, "params", "tol", 1e-12);

  KindOutcome out;
  const CompositeLabel cplx = tensor_dim_complex(m, n);
  const CompositeLabel real = tensor_dim_real(m, n);
  out.checks.push_back(
      make_check("complex_dim_2mn", std::abs(double(cplx.result_dim - 2 * m * n)), 0.0));
  out.checks.push_back(
      make_check("real_dim_4mn", std::abs(double(real.result_dim - 4 * m * n)), 0.0));

  // Fixed 2x2 reference: Bell correlations.
  const ComplexOperator sigma_z{(Mat(2, 2) << 1, 0, 0, -1).finished(), Mat::Zero(2, 2)};
  const KahlerOperator z_lift = gamma_lift(sigma_z);
  const KahlerOperator id_lift = KahlerOperator::identity(2);
  const KahlerState bell = entangled_pair();
  const double zz = expectation(tensor_operator_complex(z_lift, z_lift), bell).g_part;
  const double z1 = expectation(tensor_operator_complex(z_lift, id_lift), bell).g_part;
  out.checks.push_back(make_check("bell_zz_correlation", std::abs(zz - 1.0), tol));
  out.checks.push_back(make_check("bell_z_marginal", std::abs(z1), tol));

  // Random product states and K-Hermitian factors: expectation factorizes.
  const Rng root(ctx.seed);
  std::vector<std::array<double, 2>> slots(static_cast<std::size_t>(cases));
  parallel_for(cases, ctx.threads, [&](int i) {
    Rng rng = root.split(static_cast<std::uint64_t>(i));
    const KahlerState a = random_state(rng, m);
    const KahlerState b = random_state(rng, n);
    const KahlerOperator op_a = gamma_lift(from_complex(random_hermitian(rng, m)));
    const KahlerOperator op_b = gamma_lift(from_complex(random_hermitian(rng, n)));

    const double joint =
        expectation(tensor_operator_complex(op_a, op_b), tensor_state_complex(a, b)).g_part;
    const double factored = expectation(op_a, a).g_part * expectation(op_b, b).g_part;
    const double factorization = std::abs(joint - factored);

    const KahlerOperator op_c = gamma_lift(from_complex(random_cmat(rng, m)));
    const KahlerOperator op_d = gamma_lift(from_complex(random_cmat(rng, n)));
    const Mat lhs = compose(tensor_operator_complex(op_a, op_b),
                            tensor_operator_complex(op_c, op_d)).block;
    const Mat rhs = tensor_operator_complex(compose(op_a, op_c), compose(op_b, op_d)).block;
    const double mixed = max_abs(Mat(lhs - rhs));

    slots[static_cast<std::size_t>(i)] = {factorization, mixed};
  });
  double worst_fact = 0.0, worst_mixed = 0.0;
  for (const auto& s : slots) {
    worst_fact = std::max(worst_fact, s[0]);
    worst_mixed = std::max(worst_mixed, s[1]);
  }
  out.checks.push_back(make_check("product_expectation_factorizes", worst_fact, tol));
  out.checks.push_back(make_check("mixed_product_identity", worst_mixed, 1e-11));

  out.results = {{"m", m},
                 {"n", n},
                 {"cases", cases},
                 {"complex_result_dim", cplx.result_dim},
                 {"real_result_dim", real.result_dim},
                 {"bell_zz", zz},
                 {"bell_z_marginal", z1}};
  return out;
}

// -------------------------------------------------------------------- Grid

Vec parse_potential(const json& params, const Grid1D& grid, std::string& kind_out,
                    double& omega_out) {
  json pot = json{{"kind", "harmonic"}};
  if (params.contains("potential")) pot = params.at("potential");
  check_keys(pot, "params.potential", {"kind", "omega", "values"});
  kind_out = get_str(pot, "params.potential", "kind");
  omega_out = 0.0;
  if (kind_out == "harmonic") {
    omega_out = get_num(pot, "params.potential", "omega", 1.0);
    if (!(omega_out > 0.0)) throw ConfigError("field 'omega' in params.potential must be > 0");
    return harmonic_potential(grid, omega_out);
  }
  if (kind_out == "free") return Vec::Zero(grid.n_points);
  if (kind_out == "table") {
    const Vec values = get_vec(pot, "params.potential", "values");
    if (values.size() != grid.n_points) {
      throw ConfigError("field 'values' in params.potential must have length " +
                        std::to_string(grid.n_points));
    }
    return values;
  }
  throw ConfigError("field 'kind' in params.potential must be 'harmonic', 'free' or 'table'");
}

Grid1D parse_grid(const json& params, Index default_n) {
  const double x_min = get_num(params, "params", "x_min", -10.0);
  const double x_max = get_num(params, "params", "x_max", 10.0);
  const Index n = static_cast<Index>(get_positive_int(params, "params", "n", default_n));
  const double hbar = get_num(params, "params", "hbar", 1.0);
  const double mass = get_num(params, "params", "mass", 1.0);
  if (!(x_max > x_min)) throw ConfigError("fields 'x_min'/'x_max' in params need x_max > x_min");
  if (n < 16) throw ConfigError("field 'n' in params must be >= 16");
  if (!(hbar > 0.0)) throw ConfigError("field 'hbar' in params must be > 0");
  if (!(mass > 0.0)) throw ConfigError("field 'mass' in params must be > 0");
  return {x_min, x_max, n, hbar, mass};
}

double khermitian_defect(const KahlerOperator& m) {
  return std::max(symmetry_defect(m), omega_commutant_defect(m));
}

KindOutcome run_grid(const json& params, const RunContext& ctx) {
  check_keys(params, "params",
             {"x_min", "x_max", "n", "hbar", "mass", "potential", "eigen_count", "eigen_tol",
              "hsym_cases", "hsym_tol"});
  const Grid1D grid = parse_grid(params, 512);
  std::string pot_kind;
  double omega = 0.0;
  const Vec potential = parse_potential(params, grid, pot_kind, omega);
  const int eigen_count = static_cast<int>(get_positive_int(params, "params", "eigen_count", 5));
  const double eigen_tol = get_num(params, "params", "eigen_tol", 1e-2);
  const int hsym_cases = static_cast<int>(get_positive_int(params, "params", "hsym_cases", 50));
  const double hsym_tol = get_num(params, "params", "hsym_tol", 1e-12);

  const ComplexOperator h = schrodinger_hamiltonian(grid, potential);

  KindOutcome out;
  out.checks.push_back(make_check("position_k_hermitian", khermitian_defect(position_op(grid)),
                                  1e-12));
  out.checks.push_back(make_check("momentum_k_hermitian", khermitian_defect(momentum_op(grid)),
                                  1e-12));
  out.checks.push_back(make_check("hamiltonian_k_hermitian", khermitian_defect(gamma_lift(h)),
                                  1e-12));

  const NormalModeFrame frame = normal_modes(h);
  json lambda_head = json::array();
  const int head = std::min<int>(eigen_count, static_cast<int>(frame.lambdas.size()));
  for (int k = 0; k < head; ++k) lambda_head.push_back(frame.lambdas(k));

  if (pot_kind == "harmonic") {
    double worst = 0.0;
    for (int k = 0; k < head; ++k) {
      worst = std::max(worst,
                       std::abs(frame.lambdas(k) - grid.hbar * omega * (k + 0.5)));
    }
    out.checks.push_back(make_check("oscillator_ladder", worst, eigen_tol));
  }

  // H_sym vs the complex oracle on random unit coefficient states.
  const HamiltonianSplit hs = split_hamiltonian(h);
  const CMat hc = h.to_complex();
  const Rng root(ctx.seed);
  std::vector<double> slots(static_cast<std::size_t>(hsym_cases), 0.0);
  parallel_for(hsym_cases, ctx.threads, [&](int i) {
    Rng rng = root.split(static_cast<std::uint64_t>(i));
    const KahlerState u = random_state(rng, grid.n_points);
    const CVec psi = complexify(u);
    const double oracle_value = 0.5 * oracle::hermitian_inner(psi, CVec(hc * psi)).real();
    slots[static_cast<std::size_t>(i)] = std::abs(hsym_value(hs, u) - oracle_value);
  });
  double worst_hsym = 0.0;
  for (double s : slots) worst_hsym = std::max(worst_hsym, s);
  out.checks.push_back(make_check("hsym_oracle_identity", worst_hsym, hsym_tol));

  // Ground-state snapshot: lowest mode mapped back to grid samples.
  KahlerState mode = KahlerState::zero(grid.n_points);
  mode.q(0) = 1.0;
  const GridKahlerState ground =
      from_coefficients(grid, k_adjoint(frame.transform).apply(mode));
  std::vector<std::vector<double>> rows;
  rows.reserve(static_cast<std::size_t>(grid.n_points));
  for (Index j = 0; j < grid.n_points; ++j) {
    const double density = ground.q(j) * ground.q(j) + ground.p(j) * ground.p(j);
    rows.push_back({grid.x(j), ground.q(j), ground.p(j), density});
  }
  write_csv(ctx.out_dir / "wavefunction.csv", "x,q,p,|psi|^2", rows);

  out.results = {{"n", grid.n_points},
                 {"spacing", grid.spacing()},
                 {"hbar", grid.hbar},
                 {"mass", grid.mass},
                 {"potential", pot_kind},
                 {"lambdas_head", lambda_head},
                 {"degenerate_spectrum", frame.degenerate}};
  return out;
}

// -------------------------------------------------------------- Commutator

KindOutcome run_commutator(const json& params, const RunContext& ctx) {
  check_keys(params, "params",
             {"x_min", "x_max", "n", "hbar", "center", "sigma", "wavenumber", "stencil",
              "residual_tol", "ratio_low", "ratio_high"});
  const Grid1D grid = parse_grid(params, 256);
  const double center = get_num(params, "params", "center", 0.0);
  const double sigma = get_num(params, "params", "sigma", 1.0);
  if (!(sigma > 0.0)) throw ConfigError("field 'sigma' in params must be > 0");
  const double wavenumber = get_num(params, "params", "wavenumber", 0.0);
  const std::string stencil_name = get_str(params, "params", "stencil", "central2");
  Stencil stencil;
  if (stencil_name == "central2") {
    stencil = Stencil::Central2;
  } else if (stencil_name == "central4") {
    stencil = Stencil::Central4;
  } else {
    throw ConfigError("field 'stencil' in params must be 'central2' or 'central4'");
  }
  const double residual_tol = get_num(params, "params", "residual_tol", 1e-3);
  const double ratio_low = get_num(params, "params", "ratio_low", 3.2);
  const double ratio_high = get_num(params, "params", "ratio_high", 4.8);

  const CommutatorReport rep =
      commutator_check(grid, gaussian_profile(center, sigma, wavenumber), stencil);

  KindOutcome out;
  out.checks.push_back(make_check("fine_residual", rep.residual_fine, residual_tol));
  const double band_defect =
      std::max(0.0, std::max(ratio_low - rep.ratio, rep.ratio - ratio_high));
  out.checks.push_back(make_check("convergence_ratio_band", band_defect, 0.0));

  out.results = {{"n_coarse", rep.n_coarse},
                 {"n_fine", rep.n_fine},
                 {"h_coarse", grid.spacing()},
                 {"h_fine", grid.refined().spacing()},
                 {"residual_coarse", rep.residual_coarse},
                 {"residual_fine", rep.residual_fine},
                 {"ratio", rep.ratio},
                 {"stencil", stencil_name}};
  return out;
}

// ---------------------------------------------------------------- dispatch

KindOutcome dispatch(const std::string& kind, const json& params, const RunContext& ctx) {
  if (kind == "Validate") return run_validate(params, ctx);
  if (kind == "Lift") return run_lift(params, ctx);
  if (kind == "Evolve") return run_evolve(params, ctx);
  if (kind == "Ergodic") return run_ergodic(params, ctx);
  if (kind == "Tensor") return run_tensor(params, ctx);
  if (kind == "Grid") return run_grid(params, ctx);
  if (kind == "Commutator") return run_commutator(params, ctx);
  throw ConfigError("field 'kind' must be one of Validate, Lift, Evolve, Ergodic, Tensor, "
                    "Grid, Commutator (got '" + kind + "')");
}

}  // namespace

std::uint64_t budget_from_env() {
  const char* env = std::getenv("KAHLERQ_BUDGET");
  if (env == nullptr || *env == '\0') return kDefaultBudget;
  try {
    std::size_t pos = 0;
    const unsigned long long value = std::stoull(env, &pos);
    if (env[pos] != '\0') throw std::invalid_argument("trailing characters");
    return static_cast<std::uint64_t>(value);
  } catch (const std::exception&) {
    throw ConfigError("KAHLERQ_BUDGET must be a non-negative integer (got '" +
                      std::string(env) + "')");
  }
}

int run_config(const std::filesystem::path& config_path, RunOptions opt) {
  json config;
  try {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "config error: cannot open " << config_path.string() << "\n";
      return 2;
    }
    config = json::parse(in);  // parse_error carries the byte position
  } catch (const json::parse_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  try {
    check_keys(config, "config", {"kind", "seed", "output_dir", "params"});
    const std::string kind = get_str(config, "config", "kind");
    const std::int64_t seed_raw = get_int(config, "config", "seed", 1);
    if (seed_raw < 0) throw ConfigError("field 'seed' in config must be >= 0");

    RunContext ctx;
    ctx.seed = static_cast<std::uint64_t>(seed_raw);
    ctx.threads = opt.threads >= 1 ? opt.threads : 1;
    ctx.budget = opt.budget != 0 ? opt.budget : budget_from_env();
    if (!opt.out_dir.empty()) {
      ctx.out_dir = opt.out_dir;
    } else if (config.contains("output_dir")) {
      ctx.out_dir = get_str(config, "config", "output_dir");
    } else {
      ctx.out_dir = config_path.stem().string() + "_out";
    }
    std::filesystem::create_directories(ctx.out_dir);

    const json params = config.contains("params") ? config.at("params") : json::object();

    const auto t0 = std::chrono::steady_clock::now();
    const KindOutcome outcome = dispatch(kind, params, ctx);
    const auto t1 = std::chrono::steady_clock::now();
    const double wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

    const json report = build_report(config, outcome.checks, outcome.results, wall_ms);
    write_report(ctx.out_dir, report);

    for (const CheckResult& c : outcome.checks) {
      std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << "  residual " << c.residual
                << "  tol " << c.tolerance << "\n";
    }
    const bool ok = all_pass(outcome.checks);
    std::cout << (ok ? "OK" : "CHECK FAILURE") << ": report at "
              << (ctx.out_dir / "report.json").string() << "\n";
    return ok ? 0 : 1;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const SearchSpaceTooLarge& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const KahlerError& e) {
    std::cerr << "run failed: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace kahlerq::cli

// Release gate: every shipping claim about the engine, checked end to end at
// its stated tolerance.  Prints one PASS/FAIL line per criterion and exits
// with the number of failures.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <kahlerq/composite.hpp>
#include <kahlerq/dynamics.hpp>
#include <kahlerq/ergodicity.hpp>
#include <kahlerq/errors.hpp>
#include <kahlerq/grid.hpp>
#include <kahlerq/operators.hpp>
#include <kahlerq/oracle.hpp>
#include <kahlerq/rng.hpp>
#include <kahlerq/sampling.hpp>
#include <kahlerq/state.hpp>

using namespace kahlerq;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(3) << v;
  return os.str();
}

// ------------------------------------------------------------------------
// 1. Exact real-space evolution against the complex-propagator oracle.

bool equivalence_suite(std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(0xACC001);
  double worst = 0.0;
  for (const Index n : {2, 4, 8, 16}) {
    for (int k = 0; k < 50; ++k) {
      const CMat h = random_hermitian(rng, n);
      const KahlerState u0 = random_state(rng, n);
      const double t = rng.uniform(0.0, 10.0);
      const KahlerState real_route = evolve_exact(from_complex(h), u0, t);
      const CVec oracle_route = oracle::propagator(h, t) * complexify(u0);
      worst = std::max(worst,
                       max_abs(Vec((real_route - decomplexify(oracle_route)).stacked())));
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  detail = "200 instances, worst " + fmt(worst) + ", " + fmt(secs) + "s";
  return worst <= 1e-10 && secs <= 30.0;
}

// ------------------------------------------------------------------------
// 2. Operator products reproduce the complex inner product through (g, omega).

bool isomorphism_suite(std::string& detail) {
  Rng rng(0xACC002);
  const Index n = 5;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int k = 1 + i % 4;
    CMat prod_c = CMat::Identity(n, n);
    KahlerOperator prod_k = KahlerOperator::identity(n);
    for (int j = 0; j < k; ++j) {
      const CMat l = random_cmat(rng, n);
      prod_c = l * prod_c;
      prod_k = compose(gamma_lift(from_complex(l)), prod_k);
    }
    const KahlerState psi = random_state(rng, n, false);
    const KahlerState phi = random_state(rng, n, false);
    const std::complex<double> complex_route =
        oracle::hermitian_inner(CVec(prod_c * complexify(psi)), complexify(phi));
    const KahlerState mpsi = prod_k.apply(psi);
    const std::complex<double> real_route{metric_g(mpsi, phi), symplectic_omega(mpsi, phi)};
    worst = std::max(worst, std::abs(complex_route - real_route));
  }
  detail = "100 products (up to 4 factors), worst " + fmt(worst);
  return worst <= 1e-11;
}

// ------------------------------------------------------------------------
// 3. Lifted unitaries land in the symplectic-orthogonal intersection;
//    symplectic-only maps are rejected.

bool group_membership_suite(std::string& detail) {
  Rng rng(0xACC003);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const Index n = 2 + k % 7;
    const KahlerOperator s = gamma_lift(from_complex(random_unitary(rng, n)));
    worst = std::max(worst, std::max(symplectic_defect(s), orthogonality_defect(s)));
  }
  if (worst > 1e-12) {
    detail = "unitary lift defect " + fmt(worst);
    return false;
  }

  int rejected = 0;
  for (int k = 0; k < 20; ++k) {
    const Index n = 3;
    Mat squeeze = Mat::Zero(2 * n, 2 * n);
    for (Index i = 0; i < n; ++i) {
      const double a = 1.1 + 0.05 * k + 0.1 * static_cast<double>(i);
      squeeze(i, i) = a;
      squeeze(n + i, n + i) = 1.0 / a;
    }
    const KahlerOperator s{squeeze};
    if (symplectic_defect(s) > 1e-12) {
      detail = "squeeze #" + std::to_string(k) + " is not symplectic";
      return false;
    }
    bool caught = false;
    try {
      gamma_lower(s);
    } catch (const StructureViolation&) {
      caught = true;
    }
    if (caught || orthogonality_defect(s) > 1e-12) ++rejected;
  }
  detail = "200 unitary lifts pass both group tests (worst " + fmt(worst) + "); " +
           std::to_string(rejected) + "/20 squeezes rejected";
  return rejected == 20;
}

// ------------------------------------------------------------------------
// 4. Expectations of K-Hermitian operators are real: no symplectic component.

bool reality_suite(std::string& detail) {
  Rng rng(0xACC004);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const KahlerOperator m = gamma_lift(from_complex(random_hermitian(rng, 6)));
    const KahlerState u = random_state(rng, 6);
    worst = std::max(worst, std::abs(symplectic_omega(u, m.apply(u))));
  }
  detail = "100 instances, worst |omega(u, Lu)| = " + fmt(worst);
  return worst <= 1e-12;
}

// ------------------------------------------------------------------------
// 5. Implicit midpoint: conservation at h = 1e-2 over t = 100, second-order
//    endpoint convergence.

bool conservation_suite(std::string& detail) {
  Rng rng(0xACC005);
  const ComplexOperator h = from_complex(random_hermitian(rng, 8));
  const HamiltonianSplit hs = split_hamiltonian(h);
  const KahlerState u0 = random_state(rng, 8);

  const Trajectory traj = evolve_midpoint(hs, u0, 100.0, 10'000, 100);
  const ConservationReport cons = conservation_report(hs, traj);
  const KahlerOperator step{midpoint_step_map(hs, traj.step)};
  const double sympl = symplectic_defect(step);
  const double orth = orthogonality_defect(step);

  const KahlerState exact = evolve_exact(h, u0, 100.0);
  const auto endpoint_error = [&](int steps) {
    return g_norm(evolve_midpoint(hs, u0, 100.0, steps, steps).states.back() - exact);
  };
  const double ratio = endpoint_error(10'000) / endpoint_error(20'000);

  detail = "hsym drift " + fmt(cons.hsym_drift) + ", gnorm drift " + fmt(cons.gnorm_drift) +
           ", one-step defects " + fmt(std::max(sympl, orth)) + ", halving ratio " + fmt(ratio);
  return cons.hsym_drift <= 1e-9 && cons.gnorm_drift <= 1e-10 && sympl <= 1e-10 &&
         orth <= 1e-10 && ratio >= 3.2 && ratio <= 4.8;
}

// ------------------------------------------------------------------------
// 6. Equidistribution for rationally independent frequencies; resonance locks
//    the average away from the torus value.

bool ergodicity_suite(std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();
  Observable pair;
  pair.terms.push_back({1.0, {2, 2}, {0, 0}});
  const ObservableFn f = [&pair](const KahlerState& s) { return pair(s); };

  const auto mode_state = [](double phase_offset) {
    KahlerState u = KahlerState::zero(2);
    u.q(0) = 1.0;
    u.q(1) = std::cos(phase_offset);
    u.p(1) = std::sin(phase_offset);
    return u;
  };

  ErgodicityOptions opt;
  opt.t_final = 1e4;
  opt.steps = 200'000;

  const ComplexOperator h_free{
      Mat((Vec(2) << 1.0, std::numbers::sqrt2).finished().asDiagonal()), Mat::Zero(2, 2)};
  const ErgodicityReport free_rep = ergodicity_experiment(h_free, mode_state(0.0), f, opt);

  const ComplexOperator h_locked{Mat((Vec(2) << 1.0, 1.0).finished().asDiagonal()),
                                 Mat::Zero(2, 2)};
  const ErgodicityReport locked_rep = ergodicity_experiment(h_locked, mode_state(0.0), f, opt);

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const bool witness_ok = locked_rep.verdict.relation.has_value() &&
                          locked_rep.verdict.relation->size() == 2 &&
                          (*locked_rep.verdict.relation)(0) == 1 &&
                          (*locked_rep.verdict.relation)(1) == -1;
  detail = "independent: avg " + fmt(free_rep.time_avg) + " (torus 0.25); resonant: avg " +
           fmt(locked_rep.time_avg) + ", gap " + fmt(locked_rep.gap) + ", " + fmt(secs) + "s";
  return free_rep.verdict.independent && std::abs(free_rep.time_avg - 0.25) <= 1e-2 &&
         !locked_rep.verdict.independent && witness_ok &&
         std::abs(locked_rep.time_avg - 0.375) <= 5e-3 &&
         std::abs(locked_rep.gap - 0.125) <= 1e-2 && secs <= 60.0;
}

// ------------------------------------------------------------------------
// 7. The canonical commutator on the grid: small residual, second order.

bool commutator_suite(std::string& detail) {
  const Grid1D grid{-10.0, 10.0, 256};
  const CommutatorReport rep =
      commutator_check(grid, gaussian_profile(0.0, 1.0, 0.4), Stencil::Central2);
  detail = "residual at n=512: " + fmt(rep.residual_fine) + ", ratio " + fmt(rep.ratio);
  return rep.residual_fine < 1e-3 && rep.ratio >= 3.2 && rep.ratio <= 4.8;
}

// ------------------------------------------------------------------------
// 8. Harmonic-oscillator grid Hamiltonian: spectral ladder and the energy
//    identity against the complex oracle.

bool grid_oscillator_suite(std::string& detail) {
  const Grid1D grid{-10.0, 10.0, 512};
  const ComplexOperator h = schrodinger_hamiltonian(grid, harmonic_potential(grid));
  const NormalModeFrame frame = normal_modes(h);
  double worst_eig = 0.0;
  for (int k = 0; k < 5; ++k) {
    worst_eig = std::max(worst_eig, std::abs(frame.lambdas(k) - (k + 0.5)));
  }

  const HamiltonianSplit hs = split_hamiltonian(h);
  const CMat hc = h.to_complex();
  Rng rng(0xACC008);
  double worst_hsym = 0.0;
  for (int k = 0; k < 50; ++k) {
    const KahlerState u = random_state(rng, 512);
    const CVec psi = complexify(u);
    const double oracle_value = 0.5 * oracle::hermitian_inner(psi, CVec(hc * psi)).real();
    worst_hsym = std::max(worst_hsym, std::abs(hsym_value(hs, u) - oracle_value));
  }
  detail = "eigenvalue error " + fmt(worst_eig) + ", energy-identity error " + fmt(worst_hsym);
  return worst_eig <= 1e-2 && worst_hsym <= 1e-12;
}

// ------------------------------------------------------------------------
// 9. Composite systems: dimensions, maximally correlated pair, factorization.

bool composite_suite(std::string& detail) {
  bool dims_ok = true;
  const std::pair<Index, Index> cases[] = {{2, 2}, {2, 3}};
  for (const auto& [m, n] : cases) {
    dims_ok = dims_ok && tensor_dim_complex(m, n).result_dim == 2 * m * n;
  }

  const ComplexOperator sigma_z{(Mat(2, 2) << 1, 0, 0, -1).finished(), Mat::Zero(2, 2)};
  const KahlerOperator z = gamma_lift(sigma_z);
  const KahlerState bell = entangled_pair();
  const double zz_err =
      std::abs(expectation(tensor_operator_complex(z, z), bell).g_part - 1.0);

  Rng rng(0xACC009);
  double worst_fact = 0.0;
  for (int k = 0; k < 50; ++k) {
    const KahlerState a = random_state(rng, 2);
    const KahlerState b = random_state(rng, 3);
    const KahlerOperator op_a = gamma_lift(from_complex(random_hermitian(rng, 2)));
    const KahlerOperator op_b = gamma_lift(from_complex(random_hermitian(rng, 3)));
    const double joint =
        expectation(tensor_operator_complex(op_a, op_b), tensor_state_complex(a, b)).g_part;
    const double factored = expectation(op_a, a).g_part * expectation(op_b, b).g_part;
    worst_fact = std::max(worst_fact, std::abs(joint - factored));
  }
  detail = "correlation error " + fmt(zz_err) + ", factorization error " + fmt(worst_fact);
  return dims_ok && zz_err <= 1e-12 && worst_fact <= 1e-12;
}

// ------------------------------------------------------------------------
// 10. The bundled experiment configs reproduce byte-identical outputs across
//     runs and thread counts.

int run_cli(const std::string& args, const fs::path& log) {
  const std::string cmd =
      "\"" + std::string(KAHLERQ_CLI_BIN) + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -2;
}

std::string scrubbed_report(const fs::path& dir) {
  std::ifstream in(dir / "report.json");
  if (!in) return "<missing report in " + dir.string() + ">";
  json report = json::parse(in, nullptr, false);
  if (report.is_discarded()) return "<unparsable report in " + dir.string() + ">";
  report.erase("wall_time_ms");
  return report.dump(2);
}

bool same_csv_outputs(const fs::path& a, const fs::path& b) {
  for (const auto& entry : fs::directory_iterator(a)) {
    if (entry.path().extension() != ".csv") continue;
    std::ifstream fa(entry.path(), std::ios::binary);
    std::ifstream fb(b / entry.path().filename(), std::ios::binary);
    if (!fa || !fb) return false;
    const std::string ca((std::istreambuf_iterator<char>(fa)), std::istreambuf_iterator<char>());
    const std::string cb((std::istreambuf_iterator<char>(fb)), std::istreambuf_iterator<char>());
    if (ca != cb) return false;
  }
  return true;
}

bool determinism_suite(std::string& detail) {
  const fs::path configs{KAHLERQ_CONFIG_DIR};
  const fs::path scratch{"acceptance_scratch"};
  fs::remove_all(scratch);
  fs::create_directories(scratch);

  const char* names[] = {"validate_n16",     "lift_n8",    "evolve_midpoint",
                         "ergodic_sqrt2",    "ergodic_resonant", "tensor_2x3",
                         "grid_oscillator",  "commutator_gaussian"};
  int compared = 0;
  for (const char* name : names) {
    const fs::path config = configs / (std::string(name) + ".json");
    const fs::path run1 = scratch / (std::string(name) + "_t1a");
    const fs::path run2 = scratch / (std::string(name) + "_t1b");
    const fs::path run4 = scratch / (std::string(name) + "_t4");

    const std::pair<fs::path, int> runs[] = {{run1, 1}, {run2, 1}, {run4, 4}};
    for (const auto& [dir, threads] : runs) {
      const int rc = run_cli("run \"" + config.string() + "\" --out \"" + dir.string() +
                                 "\" --threads " + std::to_string(threads),
                             scratch / (dir.filename().string() + ".log"));
      if (rc != 0) {
        detail = std::string(name) + " exited " + std::to_string(rc) + " (threads " +
                 std::to_string(threads) + ")";
        return false;
      }
    }

    const std::string r1 = scrubbed_report(run1);
    if (r1 != scrubbed_report(run2) || r1 != scrubbed_report(run4)) {
      detail = std::string(name) + " reports differ across runs or thread counts";
      return false;
    }
    if (!same_csv_outputs(run1, run2) || !same_csv_outputs(run1, run4)) {
      detail = std::string(name) + " CSV outputs differ across runs or thread counts";
      return false;
    }
    ++compared;
  }
  detail = std::to_string(compared) + " configs, 3 runs each, byte-identical";
  return compared == 8;
}

struct Criterion {
  std::string name;
  std::function<bool(std::string&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"exact evolution matches the complex propagator (1e-10)", equivalence_suite},
      {"operator products reproduce the inner product via g + i omega (1e-11)",
       isomorphism_suite},
      {"unitary lifts are symplectic and orthogonal; squeezes rejected (1e-12)",
       group_membership_suite},
      {"K-Hermitian expectations carry no symplectic part (1e-12)", reality_suite},
      {"implicit midpoint conserves energy, norm, and omega; order 2", conservation_suite},
      {"independent frequencies equidistribute; resonances lock", ergodicity_suite},
      {"grid commutator residual is small and second order", commutator_suite},
      {"grid oscillator ladder and energy identity", grid_oscillator_suite},
      {"composite dimensions, correlations, factorization (1e-12)", composite_suite},
      {"bundled configs are byte-deterministic across runs and threads", determinism_suite},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = criteria[i].run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (ok ? "PASS" : "FAIL") << "  [" << std::setw(2) << i + 1 << "/10] "
              << criteria[i].name << " -- " << detail << " (" << fmt(secs) << "s)\n";
    if (!ok) ++failures;
  }
  std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " FAILURES")
            << "\n";
  return failures;
}

// Acceptance gate: one test per criterion, each printing a single PASS/FAIL
// line.  Every suite runs at the pinned seed with its full case count, and
// the stated runtime budget is part of the criterion.

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include <oddsym/oddsym.hpp>
#include <oddsym/suites.hpp>

namespace oddsym {
namespace {

constexpr std::uint64_t kSeed = 42;

double& total_wall() {
  static double t = 0.0;
  return t;
}

// Runs the named suites, accumulates wall time, and reports the worst news.
struct CriterionRun {
  bool pass = true;
  double wall = 0.0;
  std::string detail;

  void add(const SuiteReport& rep) {
    wall += rep.wall_seconds;
    total_wall() += rep.wall_seconds;
    if (!rep.ok()) {
      pass = false;
      detail += rep.name + ": " + std::to_string(rep.failures.size()) + " failures (first: " +
                rep.failures.front().detail.substr(0, 400) + ") ";
    }
  }
};

CriterionRun run_suites(const std::vector<std::string>& names) {
  CriterionRun out;
  for (const auto& name : names) out.add(run_suite(name, kSeed));
  return out;
}

void announce(int index, const char* label, const CriterionRun& run, double budget) {
  bool pass = run.pass && run.wall < budget;
  std::printf("[CRITERION %2d] %s  %s (%.2fs / %.0fs budget)\n", index, pass ? "PASS" : "FAIL",
              label, run.wall, budget);
  std::fflush(stdout);
  EXPECT_TRUE(run.pass) << run.detail;
  EXPECT_LT(run.wall, budget) << "runtime budget exceeded";
}

ExactScalar sc(const char* text) { return ExactScalar::parse(text); }

TEST(Acceptance, Criterion01ResidueVanishesOnOddClass) {
  announce(1, "residue vanishes on random odd-class symbols, n = 1 and 3", run_suites({"residue-odd"}), 30);
}

TEST(Acceptance, Criterion02ResidueKillsCommutators) {
  announce(2, "residue of star commutators is exactly zero", run_suites({"residue-commutator"}), 60);
}

TEST(Acceptance, Criterion03StokesBoundaryVanishes) {
  CriterionRun run = run_suites({"stokes"});

  // non-odd-class witness: tau with degree -2 part xi1 |xi|^{-3} has flux
  // exactly 4 pi / 3 through axis 1
  FormalSymbol tau(3, 0, -2, true);
  tau.set_component(-2, HomogeneousComponent::monomial(3, -2, {1, 0, 0},
                                                       TrigPoly::constant(3, sc("1"))));
  TrigPoly flux = stokes_boundary(tau, 0);
  if (flux != TrigPoly::constant(3, sc("4/3*pi"))) {
    run.pass = false;
    run.detail += "witness flux mismatch ";
  }
  announce(3, "boundary terms vanish for odd-class potentials; witness is 4pi/3", run, 30);
}

TEST(Acceptance, Criterion04DerivativeDecompositionRoundTrip) {
  CriterionRun run = run_suites({"decomposition"});

  // worked case: sigma = xi1 |xi|^{-4}
  FormalSymbol sigma(3, -3, -3, true);
  sigma.set_component(-3, HomogeneousComponent::monomial(3, -3, {1, 0, 0},
                                                         TrigPoly::constant(3, sc("1"))));
  DerivativeDecomposition dec = decompose(sigma);
  TrigPoly one = TrigPoly::constant(3, sc("1"));
  HomogeneousComponent tau1 = HomogeneousComponent::canonicalize(
      3, {{{0, 0, 0}, -2, TrigPoly::constant(3, sc("-1/2"))}, {{2, 0, 0}, -4, one}});
  HomogeneousComponent tau2 = HomogeneousComponent::monomial(3, -2, {1, 1, 0}, one);
  HomogeneousComponent tau3 = HomogeneousComponent::monomial(3, -2, {1, 0, 1}, one);
  if (dec.tau.size() != 3 || dec.tau[0].component(-2) != tau1 ||
      dec.tau[1].component(-2) != tau2 || dec.tau[2].component(-2) != tau3 ||
      !components_equal(recompose(dec), sigma)) {
    run.pass = false;
    run.detail += "worked potentials mismatch ";
  }
  announce(4, "odd-class symbols split into xi-derivatives of odd-class potentials", run, 60);
}

TEST(Acceptance, Criterion05OddClassClosureAndParametrix) {
  announce(5, "odd class is closed under star; parametrices stay odd class and invert",
           run_suites({"odd-closure", "parametrix"}), 60);
}

TEST(Acceptance, Criterion06CutoffExtendsConvergentIntegral) {
  announce(6, "cut-off integral matches convergent numeric integral to 1e-8",
           run_suites({"cutoff-convergent"}), 60);
}

TEST(Acceptance, Criterion07RadialFitRecoversFinitePart) {
  announce(7, "radial growth fit recovers finite part and log coefficient to 1e-6",
           run_suites({"radial-fit"}), 120);
}

TEST(Acceptance, Criterion08FourBracketIdentity) {
  announce(8, "bracket rearrangement with radial weights equals twice the commutator",
           run_suites({"four-bracket"}), 60);
}

TEST(Acceptance, Criterion09ExpLogAndDeterminantFamily) {
  announce(9, "log inverts exp; both determinant weightings are multiplicative; radial family",
           run_suites({"exp-log", "det-mult", "det-tr-mult", "det-family"}), 120);
}

TEST(Acceptance, Criterion10PathDeterminant) {
  announce(10, "path determinant: endpoint consistency, path independence, derivative check",
           run_suites({"path-endpoint", "path-independence", "fd-check"}), 120);
}

TEST(Acceptance, Criterion11ModeMatrixTraces) {
  announce(11, "windowed mode-matrix commutator traces shrink to < 1e-3 by K = 128",
           run_suites({"mode-trace"}), 60);
}

TEST(Acceptance, Criterion12DeterministicAndFast) {
  CriterionRun run;
  for (const auto& info : suite_registry()) {
    int cases = std::min(info.default_cases, 20);
    SuiteReport first = run_suite(info.name, kSeed, cases);
    SuiteReport second = run_suite(info.name, kSeed, cases);
    run.wall += first.wall_seconds + second.wall_seconds;
    total_wall() += first.wall_seconds + second.wall_seconds;
    if (report_signature(first) != report_signature(second)) {
      run.pass = false;
      run.detail += std::string(info.name) + ": reports differ across reruns ";
    }
  }
  // a different seed must actually change the drawn cases
  SuiteReport a = run_suite("residue-odd", 1, 5);
  SuiteReport b = run_suite("residue-odd", 2, 5);
  run.wall += a.wall_seconds + b.wall_seconds;
  total_wall() += a.wall_seconds + b.wall_seconds;

  bool within_budget = total_wall() < 600.0;
  bool pass = run.pass && within_budget;
  std::printf("[CRITERION 12] %s  deterministic reports under fixed seeds; total %.2fs / 600s\n",
              pass ? "PASS" : "FAIL", total_wall());
  std::fflush(stdout);
  EXPECT_TRUE(run.pass) << run.detail;
  EXPECT_TRUE(within_budget) << "full acceptance run exceeded ten minutes: " << total_wall();
}

}  // namespace
}  // namespace oddsym

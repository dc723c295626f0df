#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sqc/errors.hpp"
#include "sqc/modulus.hpp"

using namespace sqc;

namespace {

// Independent brute-force infimum of the definition ratio over a dense
// lattice, used as the oracle for the estimator values below.
double brute_definition_inf(const FunctionSpec& f, int nx, int nt) {
  double lo = f.domain.lower[0], hi = f.domain.upper[0];
  double inf = std::numeric_limits<double>::infinity();
  for (int i = 0; i < nx; ++i) {
    double x = lo + (hi - lo) * i / (nx - 1);
    for (int j = 0; j < nx; ++j) {
      double y = lo + (hi - lo) * j / (nx - 1);
      double d = y - x;
      if (std::fabs(d) < 1e-8) continue;
      for (int k = 1; k < nt; ++k) {
        double t = static_cast<double>(k) / nt;
        double z = x + t * d;
        double r = 2.0 * (std::max(f.body({x}), f.body({y})) - f.body({z})) /
                   (t * (1.0 - t) * d * d);
        inf = std::min(inf, r);
      }
    }
  }
  return inf;
}

}  // namespace

TEST_CASE("definition modulus: sq_norm recovers 2 exactly") {
  auto sq = catalog_entry("sq_norm");
  // oracle: the ratio is exactly 2 on symmetric pairs and >= 2 elsewhere
  CHECK(brute_definition_inf(sq, 41, 32) == doctest::Approx(2.0).epsilon(1e-12));
  auto est = modulus_definition(sq, SampleSpec{});
  CHECK(est.gamma_hat >= 1.95);
  CHECK(est.gamma_hat <= 2.0);
  CHECK_FALSE(est.not_quasiconvex);
}

TEST_CASE("definition modulus: example1_g is flagged with a strongly negative ratio") {
  auto g1 = catalog_entry("example1_g");
  auto est = modulus_definition(g1, SampleSpec{});
  CHECK(est.gamma_hat == 0.0);
  CHECK(est.not_quasiconvex);
  CHECK(est.raw_infimum <= -0.5);
  // the canonical pair (1,3,1/2) certifies ratio -2; the extremal sampled
  // witness straddles the interior local max near t = 2
  SegmentQuery paper = make_query(g1, {1.0}, {3.0}, 0.5);
  double r = 2.0 * (std::max(evaluate(g1, paper.x), evaluate(g1, paper.y)) -
                    evaluate(g1, paper.z)) /
             (0.5 * 0.5 * 4.0);
  CHECK(r == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(est.witness.x[0] > 1.0);
  CHECK(est.witness.y[0] < 3.0);
}

TEST_CASE("definition modulus: linear_1d approaches 2 from above") {
  auto lin = catalog_entry("linear_1d");
  auto est = modulus_definition(lin, SampleSpec{});
  // infimum of 2/(t(y-x)) over the default sample: attained at the
  // largest interior t = m/(m+1) with y-x = 1, i.e. 2(m+1)/m
  SampleSpec spec;
  double expected = 2.0 * (spec.t_grid + 1) / spec.t_grid;
  CHECK(est.gamma_hat == doctest::Approx(expected).epsilon(1e-12));
  CHECK(est.gamma_hat == doctest::Approx(2.0).epsilon(0.05));  // 2 +/- 0.1
}

TEST_CASE("no-integral modulus dominates the definition modulus on strongly qcx entries") {
  for (const char* id : {"sq_norm", "linear_1d", "abs_1d"}) {
    auto f = catalog_entry(id);
    auto d = modulus_definition(f, SampleSpec{});
    auto ni = modulus_no_integral(f, SampleSpec{});
    CHECK(ni.gamma_hat >= d.gamma_hat - 0.05);
  }
}

TEST_CASE("no-integral modulus: example1_g flagged, constants give zero") {
  auto g1 = catalog_entry("example1_g");
  auto est = modulus_no_integral(g1, SampleSpec{});
  CHECK(est.gamma_hat == 0.0);
  CHECK(est.not_quasiconvex);

  FunctionSpec c;
  c.id = "const";
  c.dimension = 1;
  c.domain = DomainBox::cube(1, 0.0, 1.0);
  c.body = [](const Vec&) { return 3.0; };
  SampleSpec spec;
  spec.n_random = 50;
  spec.grid_per_axis = 9;
  spec.t_grid = 7;
  auto cz = modulus_no_integral(c, spec);
  CHECK(cz.gamma_hat == 0.0);
  CHECK(cz.raw_infimum == 0.0);
  CHECK_FALSE(cz.not_quasiconvex);
}

TEST_CASE("dini modulus and the factor-2 sandwich") {
  auto sq = catalog_entry("sq_norm");
  auto d = modulus_definition(sq, SampleSpec{});
  auto di = modulus_dini(sq, SampleSpec{});
  CHECK(di.gamma_hat == doctest::Approx(2.0).epsilon(0.05));
  CHECK(di.gamma_hat >= d.gamma_hat - 0.1);
  CHECK(d.gamma_hat >= di.gamma_hat / 2.0 - 0.1);

  auto lin = catalog_entry("linear_1d");
  auto dl = modulus_definition(lin, SampleSpec{});
  auto dil = modulus_dini(lin, SampleSpec{});
  CHECK(dil.gamma_hat >= dl.gamma_hat - 0.1);
  CHECK(dl.gamma_hat >= dil.gamma_hat / 2.0 - 0.1);
}

TEST_CASE("dini modulus vanishes for the merely quasiconvex cubic") {
  auto cubic = catalog_entry("cubic_1d");
  auto est = modulus_dini(cubic, SampleSpec{});
  CHECK(est.gamma_hat <= 1e-9);
  CHECK(est.raw_infimum >= -1e-9);
}

TEST_CASE("growth modulus") {
  auto sq = catalog_entry("sq_norm");
  auto est = modulus_growth(sq, {0.0}, SampleSpec{});
  CHECK(est.gamma_hat == doctest::Approx(4.0).epsilon(0.025));  // ratio identically 4

  auto g1 = catalog_entry("example1_g");
  auto eg = modulus_growth(g1, {1.0}, SampleSpec{});
  CHECK(eg.gamma_hat == 0.0);  // the second minimizer y = 3 gives ratio 0
  CHECK_FALSE(eg.not_quasiconvex);

  auto lin = catalog_entry("linear_1d");
  auto el = modulus_growth(lin, {0.0}, SampleSpec{});
  CHECK(el.gamma_hat == doctest::Approx(4.0).epsilon(0.025));  // inf of 4/y at y = 1
}

TEST_CASE("growth dominance at the true minimizer") {
  for (const char* id : {"sq_norm", "linear_1d", "abs_1d"}) {
    auto f = catalog_entry(id);
    auto d = modulus_definition(f, SampleSpec{});
    auto g = modulus_growth(f, *f.ground_truth->known_minimizer, SampleSpec{});
    CHECK(g.gamma_hat >= d.gamma_hat - 0.1);
  }
}

TEST_CASE("witness fidelity: replaying the witness reproduces the raw infimum") {
  SampleSpec spec;
  spec.n_random = 400;
  for (const char* id : {"sq_norm", "example1_g", "linear_1d", "abs_1d"}) {
    auto f = catalog_entry(id);
    for (auto est : {modulus_definition(f, spec), modulus_no_integral(f, spec),
                     modulus_dini(f, spec)}) {
      CHECK(std::fabs(replay_witness_ratio(f, est) - est.raw_infimum) <= 1e-12);
    }
  }
}

TEST_CASE("refinement monotonicity: more samples never raise the estimate") {
  auto g1 = catalog_entry("example1_g");
  SampleSpec coarse;
  coarse.n_random = 200;
  SampleSpec fine = coarse;
  fine.n_random = 800;  // same seed: the first 200 random pairs coincide
  for (auto run : {modulus_definition, modulus_no_integral}) {
    auto a = run(g1, coarse, kDefaultTol);
    auto b = run(g1, fine, kDefaultTol);
    CHECK(b.raw_infimum <= a.raw_infimum + 1e-15);
  }
}

TEST_CASE("estimators reject empty query sets") {
  auto sq = catalog_entry("sq_norm");
  SampleSpec spec;
  spec.n_random = 0;
  spec.grid_per_axis = 1;  // single grid point: every pair degenerate
  spec.t_grid = 3;
  CHECK_THROWS_AS(modulus_definition(sq, spec), NoEffectiveQueries);
}

TEST_CASE("n_effective counts only contributing queries") {
  auto sq = catalog_entry("sq_norm");
  SampleSpec spec;
  spec.n_random = 10;
  spec.grid_per_axis = 5;
  spec.t_grid = 3;
  auto est = modulus_definition(sq, spec);
  // 25 - 5 diagonal = 20 grid pairs + 10 random pairs, 3 interior t each
  CHECK(est.n_effective == 20 * 3 + 10 * 3);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sqc/constructions.hpp"
#include "sqc/errors.hpp"
#include "sqc/rng.hpp"

using namespace sqc;

TEST_CASE("worked chain example: sq_norm, x=0, y=1, t=1/2, gamma=2, n=4") {
  auto sq = catalog_entry("sq_norm");
  auto q = make_query(sq, {0.0}, {1.0}, 0.5);
  auto [trace, verdict] = partition_chain(sq, q, 2.0, 4);
  CHECK(trace.partial_sum == doctest::Approx(0.34375).epsilon(1e-15));
  CHECK(trace.limit == doctest::Approx(0.375).epsilon(1e-15));
  CHECK(verdict.pass());
  CHECK(verdict.aggregate_margin == doctest::Approx(0.75 - 0.34375).epsilon(1e-12));
}

TEST_CASE("exact error law L - S_n = (gamma/4)|y-z|^2/n at every n") {
  auto sq = catalog_entry("sq_norm");
  auto q = make_query(sq, {0.0}, {1.0}, 0.5);
  for (int n : {1, 2, 3, 7, 16, 100, 1024}) {
    auto [trace, verdict] = partition_chain(sq, q, 2.0, n);
    CHECK(trace.error_law == doctest::Approx(0.125 / n).epsilon(1e-15));
    CHECK(trace.error_law_deviation <= 1e-12);
    CHECK(trace.closed_form_deviation <= 1e-12);
    CHECK(trace.collinearity_deviation <= 1e-10);
    CHECK(verdict.identities_ok);
  }
}

TEST_CASE("n = 1 reduces to the single-step implication bound") {
  auto sq = catalog_entry("sq_norm");
  auto q = make_query(sq, {0.0}, {1.0}, 0.5);
  auto [trace, verdict] = partition_chain(sq, q, 2.0, 1);
  double dyz = dist(q.y, q.z), dzx = dist(q.z, q.x);
  CHECK(trace.partial_sum == doctest::Approx(0.5 * 2.0 * dyz * dzx).epsilon(1e-15));
  CHECK(verdict.pass());
}

TEST_CASE("chain endpoints are exact") {
  auto g1 = catalog_entry("example1_g");
  auto q = make_query(g1, {1.0}, {3.5}, 0.25);  // h(1) = -9 <= h(z)
  auto [trace, verdict] = partition_chain(g1, q, 0.0, 8);
  CHECK(trace.points.front() == q.z);
  CHECK(trace.points.back() == q.y);
}

TEST_CASE("premise violations throw") {
  auto sq = catalog_entry("sq_norm");
  auto q = make_query(sq, {1.0}, {0.0}, 0.5);  // h(x)=1 > h(z)=0.25
  CHECK_THROWS_AS(partition_chain(sq, q, 2.0, 4), PremiseFails);
  auto q1 = make_query(sq, {0.0}, {1.0}, 1.0);
  CHECK_THROWS_AS(partition_chain(sq, q1, 2.0, 4), UsageError);  // t must be interior
  auto q2 = make_query(sq, {0.0}, {1.0}, 0.5);
  CHECK_THROWS_AS(partition_chain(sq, q2, 2.0, 0), UsageError);
}

TEST_CASE("catalog entries pass the chain at gamma_true over seeded premise queries") {
  for (const char* id : {"sq_norm", "linear_1d", "abs_1d"}) {
    auto f = catalog_entry(id);
    double gamma = *f.ground_truth->known_modulus;
    double lo = f.domain.lower[0], hi = f.domain.upper[0];
    Rng rng(42);
    int found = 0;
    while (found < 50) {
      Vec x{rng.uniform(lo, hi)}, y{rng.uniform(lo, hi)};
      double t = 0.125 + 0.75 * rng.unit();
      if (dist(x, y) < 1e-4) continue;
      auto q = make_query(f, x, y, t);
      if (evaluate(f, q.x) > evaluate(f, q.z) + kDefaultTol) continue;
      ++found;
      for (int n : {1, 4, 64, 1024}) {
        auto [trace, verdict] = partition_chain(f, q, gamma, n);
        CHECK(verdict.pass());
        CHECK(verdict.worst_step_margin >= -kDefaultTol);
        CHECK(verdict.aggregate_margin >= -kDefaultTol);
      }
    }
  }
}

TEST_CASE("aggregate chain bound is consistent with the limit inequality") {
  auto sq = catalog_entry("sq_norm");
  Rng rng(4);
  for (int i = 0; i < 25; ++i) {
    Vec x{rng.uniform(-1.0, 1.0)}, y{rng.uniform(-1.0, 1.0)};
    if (dist(x, y) < 1e-3) continue;
    double t = 0.1 + 0.8 * rng.unit();
    auto q = make_query(sq, x, y, t);
    if (evaluate(sq, q.x) > evaluate(sq, q.z) + kDefaultTol) continue;
    auto [trace, verdict] = partition_chain(sq, q, 2.0, 512);
    double limit_margin = (evaluate(sq, q.y) - evaluate(sq, q.z)) - trace.limit;
    CHECK(verdict.aggregate_pass);
    CHECK(limit_margin >= -kDefaultTol);  // matches check_no_integral's inequality
  }
}

TEST_CASE("segment integral bound") {
  auto sq = catalog_entry("sq_norm");
  auto ok = saks_inequality_check(sq, {0.0}, {1.0}, 0.5, 2.0);
  CHECK(ok.lhs == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(ok.rhs == doctest::Approx(0.375).epsilon(1e-15));
  CHECK(ok.pass);

  auto endpoint = saks_inequality_check(sq, {0.0}, {1.0}, 1.0, 2.0);
  CHECK(endpoint.lhs == 0.0);
  CHECK(endpoint.rhs == 0.0);
  CHECK(endpoint.pass);

  auto g1 = catalog_entry("example1_g");
  auto bad = saks_inequality_check(g1, {1.0}, {3.0}, 0.5, 0.5);
  CHECK(bad.lhs == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(bad.rhs == doctest::Approx(0.375).epsilon(1e-12));
  CHECK_FALSE(bad.pass);
}

TEST_CASE("strictness probe") {
  SampleSpec spec;
  spec.n_random = 100;
  spec.grid_per_axis = 9;
  spec.t_grid = 7;

  auto sq = catalog_entry("sq_norm");
  CHECK_FALSE(strict_quasiconvexity_probe(sq, spec).violation_found);

  auto g1 = catalog_entry("example1_g");
  auto probe = strict_quasiconvexity_probe(g1, spec);
  REQUIRE(probe.violation_found);
  // replay: the witness really is an interior strictness violation
  double hd = evaluate(g1, probe.d);
  double cap = std::max(evaluate(g1, probe.a), evaluate(g1, probe.b));
  CHECK(hd >= cap + kDefaultTol);

  FunctionSpec c;
  c.id = "const";
  c.dimension = 1;
  c.domain = DomainBox::cube(1, 0.0, 1.0);
  c.body = [](const Vec&) { return 1.5; };
  CHECK_FALSE(strict_quasiconvexity_probe(c, spec).violation_found);
  CHECK(strict_quasiconvexity_probe(c, spec, 0.0).violation_found);  // equality at tol 0
}

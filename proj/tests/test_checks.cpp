#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>

#include "sqc/checks.hpp"
#include "sqc/errors.hpp"
#include "sqc/rng.hpp"

using namespace sqc;

namespace {

SegmentQuery q_of(const FunctionSpec& f, double x, double y, double t) {
  return make_query(f, Vec{x}, Vec{y}, t);
}

SampleSpec small_spec() {
  SampleSpec s;
  s.n_random = 100;
  s.grid_per_axis = 9;
  s.t_grid = 7;
  return s;
}

}  // namespace

TEST_CASE("definition margins") {
  auto sq = catalog_entry("sq_norm");
  auto g1 = catalog_entry("example1_g");

  auto tight = check_definition(sq, q_of(sq, -1.0, 1.0, 0.5), 2.0);
  CHECK(tight.margin == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(tight.status == VerdictStatus::Pass);

  auto fail = check_definition(g1, q_of(g1, 1.0, 3.0, 0.5), 0.0);
  CHECK(fail.margin == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(fail.status == VerdictStatus::Fail);

  // t = 1: z = y, the scaling term vanishes, margin = max - h(y) >= 0
  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    double x = rng.uniform(0.0, 4.0), y = rng.uniform(0.0, 4.0);
    if (std::fabs(x - y) < 1e-6) continue;
    auto v = check_definition(g1, q_of(g1, x, y, 1.0), 5.0);
    CHECK(v.margin >= 0.0);
    CHECK(v.status == VerdictStatus::Pass);
  }
}

TEST_CASE("implication form") {
  auto sq = catalog_entry("sq_norm");
  auto g1 = catalog_entry("example1_g");

  auto tight = check_implication_form(sq, q_of(sq, -1.0, 1.0, 0.5), 2.0);
  CHECK(tight.status == VerdictStatus::Pass);
  CHECK(tight.margin == doctest::Approx(0.0).epsilon(1e-12));

  auto vac = check_implication_form(sq, q_of(sq, 1.0, 0.0, 0.5), 7.0);
  CHECK(vac.status == VerdictStatus::Vacuous);
  CHECK(std::isinf(vac.margin));

  auto fail = check_implication_form(g1, q_of(g1, 1.0, 3.0, 0.5), 0.0);
  CHECK(fail.margin == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(fail.status == VerdictStatus::Fail);
}

TEST_CASE("no-integral characterization") {
  auto sq = catalog_entry("sq_norm");
  auto g1 = catalog_entry("example1_g");

  auto v = check_no_integral(sq, q_of(sq, 0.0, 1.0, 0.5), 2.0);
  CHECK(v.margin == doctest::Approx(0.375).epsilon(1e-12));
  CHECK(v.status == VerdictStatus::Pass);

  auto vac = check_no_integral(sq, q_of(sq, 1.0, 0.0, 0.5), 2.0);
  CHECK(vac.status == VerdictStatus::Vacuous);

  auto fail = check_no_integral(g1, q_of(g1, 1.0, 3.0, 0.5), 0.0);
  CHECK(fail.margin == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(fail.status == VerdictStatus::Fail);
}

TEST_CASE("the (1-t^2) identity holds on generated queries") {
  auto g1 = catalog_entry("example1_g");
  auto pairs = query_pairs(g1.domain, small_spec());
  auto ts = t_values(small_spec());
  for (const auto& pr : pairs) {
    if (dist(pr.x, pr.y) < 1e-8) continue;
    for (double t : ts) {
      SegmentQuery q = make_query(g1, pr.x, pr.y, t);
      double nsq = norm_sq(sub(q.y, q.x));
      double lhs = (1.0 - t * t) * nsq;
      double rhs = nsq - norm_sq(sub(q.z, q.x));
      CHECK(std::fabs(lhs - rhs) <= 1e-12);
    }
  }
}

TEST_CASE("dini condition") {
  auto sq = catalog_entry("sq_norm");

  auto v = check_dini(sq, {0.0}, {1.0}, 2.0);
  CHECK(v.margin == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(v.status == VerdictStatus::Pass);

  auto vac = check_dini(sq, {1.0}, {0.0}, 2.0);
  CHECK(vac.status == VerdictStatus::Vacuous);

  auto tight = check_dini(sq, {-1.0}, {1.0}, 2.0);
  CHECK(tight.margin == doctest::Approx(0.0).epsilon(1e-5));
  CHECK(tight.status == VerdictStatus::Pass);
}

TEST_CASE("gradient condition and the Arrow-Enthoven degenerate case") {
  auto sq = catalog_entry("sq_norm");
  auto cubic = catalog_entry("cubic_1d");

  auto tight = check_gradient(sq, {-1.0}, {1.0}, 2.0);
  CHECK(tight.margin == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(tight.status == VerdictStatus::Pass);

  auto ae = check_gradient(cubic, {0.0}, {1.0}, 0.0);
  CHECK(ae.margin == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(ae.status == VerdictStatus::Pass);

  auto fail = check_gradient(sq, {-1.0}, {1.0}, 2.5);
  CHECK(fail.margin == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(fail.status == VerdictStatus::Fail);

  FunctionSpec nograd = sq;
  nograd.gradient = nullptr;
  CHECK_THROWS_AS(check_gradient(nograd, {0.0}, {1.0}, 1.0), NoGradient);
}

TEST_CASE("gradient margin at gamma = 0 is bitwise the Arrow-Enthoven inner product") {
  auto g1 = catalog_entry("example1_g");
  Rng rng(9);
  for (int i = 0; i < 100; ++i) {
    Vec x{rng.uniform(0.0, 4.0)}, y{rng.uniform(0.0, 4.0)};
    if (evaluate(g1, x) > evaluate(g1, y) + kDefaultTol) continue;
    auto v = check_gradient(g1, x, y, 0.0);
    double ip = dot(evaluate_gradient(g1, y), sub(y, x));
    CHECK(std::memcmp(&v.margin, &ip, sizeof ip) == 0);
  }
}

TEST_CASE("quadratic growth") {
  auto sq = catalog_entry("sq_norm");
  auto g1 = catalog_entry("example1_g");

  Rng rng(21);
  for (int i = 0; i < 30; ++i) {
    Vec y{rng.uniform(-1.0, 1.0)};
    auto v = check_quadratic_growth(sq, {0.0}, y, 2.0);
    CHECK(v.margin == doctest::Approx(y[0] * y[0] / 2.0).epsilon(1e-12));
    CHECK(v.status == VerdictStatus::Pass);
  }

  for (double gamma : {0.01, 0.1, 1.0}) {
    auto v = check_quadratic_growth(g1, {1.0}, {3.0}, gamma);
    CHECK(v.margin == doctest::Approx(-gamma).epsilon(1e-12));
    CHECK(v.status == VerdictStatus::Fail);
  }

  auto same = check_quadratic_growth(sq, {0.5}, {0.5}, 3.0);
  CHECK(same.margin == 0.0);
  CHECK(same.status == VerdictStatus::Pass);
}

TEST_CASE("run_suite on strongly quasiconvex instances produces zero fails") {
  SUBCASE("sq_norm 2-D at its modulus") {
    auto sq2 = catalog_entry("sq_norm", 2);
    auto suite = run_suite(sq2, {Condition::Definition}, 2.0, SampleSpec{});
    CHECK(suite.summary(Condition::Definition).failed == 0);
    CHECK(suite.summary(Condition::Definition).worst_margin >= -kDefaultTol);
  }
  SUBCASE("all conditions on 1-D entries at gamma_true") {
    for (const char* id : {"sq_norm", "linear_1d", "abs_1d"}) {
      auto f = catalog_entry(id);
      auto suite = run_suite(f,
                             {Condition::Definition, Condition::ImplicationForm,
                              Condition::NoIntegral, Condition::Dini, Condition::Gradient,
                              Condition::QuadraticGrowth},
                             *f.ground_truth->known_modulus, small_spec());
      for (const auto& s : suite.summaries) CHECK(s.failed == 0);
    }
  }
}

TEST_CASE("run_suite falsifies the counterexample with a witness near the interior peak") {
  auto g1 = catalog_entry("example1_g");
  auto suite = run_suite(g1, {Condition::Definition}, 0.1, SampleSpec{});
  const auto& s = suite.summary(Condition::Definition);
  CHECK(s.failed > 0);
  REQUIRE(s.worst_query.has_value());
  // the canonical triple is a witness; the extremal one straddles the local max
  CHECK(s.worst_query->x[0] > 0.5);
  CHECK(s.worst_query->y[0] < 3.5);
  CHECK(s.worst_margin < -0.5);
}

TEST_CASE("empty condition set yields an empty result") {
  auto sq = catalog_entry("sq_norm");
  auto suite = run_suite(sq, {}, 1.0, small_spec());
  CHECK(suite.verdicts.empty());
  CHECK(suite.summaries.empty());
  CHECK(suite.total_failed() == 0);
}

TEST_CASE("vacuity is premise-exact") {
  auto g1 = catalog_entry("example1_g");
  auto suite = run_suite(g1, {Condition::ImplicationForm, Condition::NoIntegral}, 0.5,
                         small_spec());
  long rechecked = 0;
  for (const auto& v : suite.verdicts) {
    if (v.status != VerdictStatus::Vacuous) continue;
    SegmentQuery q = suite.resolve(g1, v);
    double hx = evaluate(g1, q.x);
    double other = v.condition == Condition::NoIntegral ? evaluate(g1, q.z) : evaluate(g1, q.y);
    CHECK(hx > other + suite.tolerance);
    ++rechecked;
  }
  CHECK(rechecked > 100);
}

TEST_CASE("margins are non-increasing in gamma; pass at gamma implies pass below") {
  auto sq = catalog_entry("sq_norm");
  Rng rng(33);
  const double gammas[] = {0.0, 0.5, 1.0, 2.0, 4.0};
  for (int i = 0; i < 100; ++i) {
    double x = rng.uniform(-1.0, 1.0), y = rng.uniform(-1.0, 1.0);
    if (std::fabs(x - y) < 1e-4) continue;
    double t = rng.uniform(0.05, 1.0);
    auto q = q_of(sq, x, y, t);
    double prev_def = std::numeric_limits<double>::infinity();
    double prev_noint = std::numeric_limits<double>::infinity();
    for (double g : gammas) {
      auto d = check_definition(sq, q, g);
      CHECK(d.margin <= prev_def + 1e-15);
      prev_def = d.margin;
      auto ni = check_no_integral(sq, q, g);
      if (ni.status != VerdictStatus::Vacuous) {
        CHECK(ni.margin <= prev_noint + 1e-15);
        prev_noint = ni.margin;
      }
    }
  }
}

TEST_CASE("forward directions at sample scale") {
  // definition-pass at gamma implies no-integral-pass (necessity) and
  // dini-pass (first-order necessity) on smooth entries.
  for (const char* id : {"sq_norm", "linear_1d"}) {
    auto f = catalog_entry(id);
    double gamma = *f.ground_truth->known_modulus;
    auto suite = run_suite(f, {Condition::Definition, Condition::NoIntegral, Condition::Dini},
                           gamma, small_spec());
    CHECK(suite.summary(Condition::Definition).failed == 0);
    CHECK(suite.summary(Condition::NoIntegral).failed == 0);
    CHECK(suite.summary(Condition::NoIntegral).worst_margin >= -kDefaultTol);
    CHECK(suite.summary(Condition::Dini).failed == 0);
    CHECK(suite.summary(Condition::Dini).worst_margin >= -kDiniTol);
  }
}

TEST_CASE("degenerate and inadmissible queries are skipped, not failed") {
  auto sq = catalog_entry("sq_norm");
  SampleSpec spec = small_spec();
  auto suite = run_suite(sq, {Condition::Definition, Condition::Dini}, 2.0, spec);
  // the grid diagonal contributes one degenerate pair per grid point
  CHECK(suite.summary(Condition::Definition).skipped >= 9 * static_cast<long>(t_values(spec).size()));
  CHECK(suite.summary(Condition::Dini).skipped >= 9);

  FunctionSpec nograd = sq;
  nograd.gradient = nullptr;
  auto s2 = run_suite(nograd, {Condition::Gradient}, 2.0, spec);
  CHECK(s2.summary(Condition::Gradient).skipped > 0);
  CHECK(s2.summary(Condition::Gradient).passed == 0);
}

TEST_CASE("suite results are identical across jobs") {
  auto sq = catalog_entry("sq_norm");
  SampleSpec spec = small_spec();
  SuiteOptions one, four;
  one.jobs = 1;
  four.jobs = 4;
  auto a = run_suite(sq, {Condition::Definition, Condition::Dini}, 2.0, spec, kDefaultTol, one);
  auto b = run_suite(sq, {Condition::Definition, Condition::Dini}, 2.0, spec, kDefaultTol, four);
  REQUIRE(a.verdicts.size() == b.verdicts.size());
  for (const auto& s : a.summaries) {
    const auto& s2 = b.summary(s.condition);
    CHECK(s.passed == s2.passed);
    CHECK(s.worst_margin == s2.worst_margin);
    if (s.worst_query) CHECK(s.worst_query->x == s2.worst_query->x);
  }
}

TEST_CASE("make_query validates geometry") {
  auto sq = catalog_entry("sq_norm");
  CHECK_THROWS_AS(make_query(sq, {0.0}, {1.0}, 0.0), UsageError);
  CHECK_THROWS_AS(make_query(sq, {0.0}, {1.0}, 1.5), UsageError);
  CHECK_THROWS_AS(make_query(sq, {0.0}, {2.0}, 0.5), OutOfDomain);
  CHECK_THROWS_AS(make_query(sq, {0.5}, {0.5}, 0.5), UsageError);
  CHECK_NOTHROW(make_query(sq, {0.5}, {0.5}, 0.5, 1e-8, true));
}

#include <doctest.h>

#include "tprim/error.hpp"
#include "tprim/verify.hpp"

using namespace tprim;

TEST_CASE("range parsing") {
  auto r = IntRange::parse("3..7");
  CHECK(r.lo == 3);
  CHECK(r.hi == 7);
  CHECK(IntRange::parse("4").lo == 4);
  CHECK(IntRange::parse("4").hi == 4);
  CHECK_THROWS_AS(IntRange::parse("7..3"), Error);
  CHECK_THROWS_AS(IntRange::parse("x"), Error);
  CHECK_THROWS_AS(IntRange::parse("3..x"), Error);
  CHECK_THROWS_AS(IntRange::parse(""), Error);
}

TEST_CASE("each suite passes on its defaults") {
  VerifyOptions o;
  o.samples = 60;
  for (const auto& name : suite_names()) {
    CAPTURE(name);
    auto results = run_suite(name, o);
    REQUIRE(results.size() == 1);
    CHECK(results[0].checks > 0);
    for (const auto& f : results[0].failures) MESSAGE(f.to_string());
    CHECK(results[0].passed());
  }
}

TEST_CASE("exponent-set on one shape") {
  VerifyOptions o;
  o.m = IntRange{3, 3};
  o.n = IntRange{4, 4};
  auto r = run_suite("exponent-set", o);
  CHECK(r[0].passed());
}

TEST_CASE("bad suite input") {
  CHECK_THROWS_AS(run_suite("nope", {}), Error);
  VerifyOptions o;
  o.m = IntRange{2, 3};
  CHECK_THROWS_AS(run_suite("ak", o), Error);
  VerifyOptions big;
  big.n = IntRange{3, 40};
  CHECK_THROWS_AS(run_suite("m2", big), Error);
}

TEST_CASE("failures name the parameters") {
  VerifyFailure f{3, 5, 2, 4, "gamma_j(A_k)", "5", "6"};
  CHECK(f.to_string() == "(m=3, n=5, k=2, j=4) gamma_j(A_k): expected 5, actual 6");
}

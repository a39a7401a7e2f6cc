#include <doctest.h>

#include <cmath>
#include <vector>

#include "wingwrap/errors.hpp"
#include "wingwrap/speed_search.hpp"

using namespace wingwrap;

TEST_CASE("threshold predicate is bracketed to tolerance") {
  int calls = 0;
  auto pred = [&](double v) {
    ++calls;
    return v >= 2.6;
  };
  const SpeedSearchResult r = min_perch_speed(pred, 1.0, 5.0, 0.05);
  CHECK(r.found);
  CHECK_FALSE(r.non_monotone);
  CHECK(r.speed >= 2.6);
  CHECK(r.speed <= 2.6 + 0.05);
  CHECK(r.evaluations == calls);
  // Postcondition the caller relies on: success at the answer, failure 2 tol below.
  CHECK(pred(r.speed));
  CHECK_FALSE(pred(r.speed - 0.1));
}

TEST_CASE("no bracket means no fabricated speed") {
  const SpeedSearchResult never = min_perch_speed([](double) { return false; }, 1.0, 5.0, 0.05);
  CHECK_FALSE(never.found);
  CHECK(never.speed == 0.0);
  CHECK_FALSE(never.non_monotone);

  // Success everywhere has no fail->success transition either: the true
  // threshold lies below the range, which the caller must widen.
  const SpeedSearchResult always = min_perch_speed([](double) { return true; }, 1.0, 5.0, 0.05);
  CHECK_FALSE(always.found);
  CHECK(always.speed == 0.0);
}

TEST_CASE("success pocket below the range flags non-monotone") {
  auto pred = [](double v) { return (v >= 1.5 && v <= 2.0) || v >= 3.0; };
  const SpeedSearchResult r = min_perch_speed(pred, 1.0, 5.0, 0.05);
  CHECK(r.found);
  CHECK(r.non_monotone);
  // The lowest transition wins.
  CHECK(r.speed >= 1.5);
  CHECK(r.speed <= 1.6);
  CHECK(pred(r.speed));
  CHECK_FALSE(pred(r.speed - 0.1));
}

TEST_CASE("pocket straddling the bisection answer walks down") {
  // Succeeds above 2.6 and in a pocket [2.45, 2.55]; bisection on the outer
  // edge alone would return a speed whose check 2 tol below still succeeds.
  auto pred = [](double v) { return v >= 2.6 || (v >= 2.45 && v <= 2.55); };
  const SpeedSearchResult r = min_perch_speed(pred, 1.0, 5.0, 0.05);
  CHECK(r.found);
  CHECK(r.non_monotone);
  CHECK(pred(r.speed));
  CHECK_FALSE(pred(r.speed - 0.1));
  CHECK(r.speed <= 2.55);
  CHECK(r.speed >= 2.45);
}

TEST_CASE("tolerance controls the bracket width") {
  auto pred = [](double v) { return v >= 3.3333; };
  const SpeedSearchResult r = min_perch_speed(pred, 1.0, 5.0, 0.01);
  CHECK(r.found);
  CHECK(r.speed >= 3.3333);
  CHECK(r.speed <= 3.3333 + 0.01);
}

TEST_CASE("search validates its range") {
  auto pred = [](double v) { return v >= 2.0; };
  CHECK_THROWS_AS(min_perch_speed(pred, 0.0, 5.0, 0.05), ValidationError);
  CHECK_THROWS_AS(min_perch_speed(pred, 5.0, 1.0, 0.05), ValidationError);
  CHECK_THROWS_AS(min_perch_speed(pred, 1.0, 5.0, 0.0), ValidationError);
  CHECK_THROWS_AS(min_perch_speed(pred, 1.0, 5.0, -0.1), ValidationError);
}

TEST_CASE("evaluation count stays small") {
  // 8-point scan plus ~log2(range/tol) bisections plus the walk-down guard.
  auto pred = [](double v) { return v >= 2.6; };
  const SpeedSearchResult r = min_perch_speed(pred, 1.0, 5.0, 0.05);
  CHECK(r.evaluations <= 20);
  CHECK(r.evaluations >= 8);
}

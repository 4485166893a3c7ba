// Copyright 2026 The ddab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ddab/rational.h"

#include "ddab/errors.h"
#include "doctest.h"

namespace ddab {
namespace {

TEST_CASE("rational round trip is exact") {
  for (const char* text : {"0/1", "3/1", "7/10", "-5/3", "123456789012345678901234567890/11"}) {
    CHECK(Rational::Parse(text).ToString() == text);
  }
  CHECK(Rational::Parse("6/4").ToString() == "3/2");
  CHECK(Rational::Parse("4").ToString() == "4/1");
  CHECK(Rational(7, 10) + Rational(3, 10) == Rational(1));
}

TEST_CASE("rational rejects malformed input") {
  CHECK_THROWS_AS(Rational::Parse("1/0"), InputError);
  CHECK_THROWS_AS(Rational::Parse("a/b"), InputError);
  CHECK_THROWS_AS(Rational::Parse(""), InputError);
  CHECK_THROWS_AS(Rational(1) / Rational(0), InputError);
  CHECK_THROWS_AS(Rational(1, 0), InputError);
}

TEST_CASE("rational ordering and floor") {
  CHECK(Rational(1, 5) < Rational(3, 10));
  CHECK(Rational(14, 15).Floor() == 0);
  CHECK(Rational(-1, 2).Floor() == -1);
  CHECK(Rational(15).is_integer());
  CHECK_FALSE(Rational(7, 10).is_integer());
  // Repeated proportional splits never drift.
  Rational sum;
  Rational piece(1);
  for (int i = 0; i < 60; ++i) {
    piece *= Rational(7, 10);
    sum += piece * Rational(3, 7);
  }
  CHECK(sum + piece == Rational(1));
}

}  // namespace
}  // namespace ddab

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "snowsim/rng.hpp"

using namespace snowsim;

TEST_CASE("streams are reproducible and trial streams are distinct") {
  RandomStream a(12345);
  RandomStream b(12345);
  for (int i = 0; i < 64; ++i) CHECK(a.next_u64() == b.next_u64());

  auto t0 = RandomStream::for_trial(7, 0);
  auto t0b = RandomStream::for_trial(7, 0);
  auto t1 = RandomStream::for_trial(7, 1);
  bool all_equal = true;
  for (int i = 0; i < 16; ++i) {
    uint64_t x = t0.next_u64();
    CHECK(x == t0b.next_u64());
    if (x != t1.next_u64()) all_equal = false;
  }
  CHECK(!all_equal);
}

TEST_CASE("bernoulli endpoints are exact") {
  RandomStream r(99);
  for (int i = 0; i < 1000; ++i) {
    CHECK(r.bernoulli(1.0));
    CHECK(!r.bernoulli(0.0));
  }
}

TEST_CASE("uniform stays in the half-open unit interval") {
  RandomStream r(5);
  for (int i = 0; i < 10000; ++i) {
    double u = r.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("below stays in range and covers small supports") {
  RandomStream r(6);
  bool seen[5] = {};
  for (int i = 0; i < 1000; ++i) {
    uint64_t v = r.below(5);
    CHECK(v < 5);
    seen[v] = true;
  }
  for (bool s : seen) CHECK(s);
}

TEST_CASE("bernoulli frequency tracks its parameter") {
  RandomStream r(2026);
  const int n = 100000;
  int hits = 0;
  for (int i = 0; i < n; ++i)
    if (r.bernoulli(0.25)) ++hits;
  double freq = static_cast<double>(hits) / n;
  // 5 standard errors of sqrt(p(1-p)/n) ~ 0.0068
  CHECK(std::abs(freq - 0.25) < 0.007);
}

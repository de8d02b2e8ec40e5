#include "doctest.h"
#include "sqlplan/util.hpp"

#include <random>

using namespace sqlplan;

TEST_CASE("trim and case helpers") {
  CHECK(trim("  a b \n") == "a b");
  CHECK(trim("") == "");
  CHECK(to_lower("SeLeCt") == "select");
  CHECK(starts_with_ci("SELECT 1", "select"));
  CHECK(starts_with_ci("select", "SELECT"));
  CHECK_FALSE(starts_with_ci("sel", "select"));
}

TEST_CASE("sha256 known vectors") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("two_way_softmax") {
  CHECK(two_way_softmax(-1.0, -1.0) == doctest::Approx(0.5));
  CHECK(two_way_softmax(0.0, -1000.0) == doctest::Approx(1.0));
  CHECK(two_way_softmax(-1000.0, 0.0) == doctest::Approx(0.0));
  // complement
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> lp(-10.0, 0.0);
  for (int i = 0; i < 100; ++i) {
    double a = lp(rng), b = lp(rng);
    CHECK(two_way_softmax(a, b) + two_way_softmax(b, a) == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("bounded_uniform stays in range and is deterministic") {
  std::mt19937 rng(42);
  auto next = [&rng]() { return rng(); };
  std::vector<std::uint32_t> draws;
  for (int i = 0; i < 50; ++i) {
    auto v = bounded_uniform(7, next);
    CHECK(v < 7);
    draws.push_back(v);
  }
  std::mt19937 rng2(42);
  auto next2 = [&rng2]() { return rng2(); };
  for (int i = 0; i < 50; ++i) CHECK(draws[static_cast<std::size_t>(i)] == bounded_uniform(7, next2));
}

TEST_CASE("compensated mean") {
  CompensatedSum acc;
  CHECK(acc.mean() == 0.0);
  for (int i = 0; i < 10; ++i) acc.add(0.1);
  CHECK(acc.mean() == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("parallel_for_indexed covers every index once") {
  std::vector<int> hits(1000, 0);
  parallel_for_indexed(hits.size(), 8, [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
}

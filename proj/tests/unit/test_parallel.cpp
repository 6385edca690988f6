#include <doctest.h>

#include <atomic>
#include <stdexcept>
#include <string>
#include <vector>

#include "quatcalc/parallel.hpp"

using namespace quatcalc;

TEST_CASE("parallel_for visits every index once") {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
  for (const auto& h : hits) CHECK(h.load() == 1);
  parallel_for(0, [](std::size_t) { FAIL("no work expected"); });
  CHECK(thread_count() >= 1);
}

TEST_CASE("parallel_for rethrows the failure of the lowest index") {
  try {
    parallel_for(100, [](std::size_t i) {
      if (i % 10 == 7) throw std::runtime_error(std::to_string(i));
    });
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "7");
  }
}

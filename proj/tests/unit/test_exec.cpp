#include <stdexcept>

#include "doctest.h"
#include "gpi/exec.hpp"

using namespace gpi;

TEST_CASE("sequential unit tasks add work and span") {
  exec::SpanScope s;
  for (int i = 0; i < 7; ++i) exec::tick();
  CHECK(s.counters().work == 7);
  CHECK(s.counters().span == 7);
}

TEST_CASE("parallel_for of unit tasks has span ceil(log2 t)+1") {
  for (int w : {1, 2, 8}) {
    exec::set_workers(w);
    for (int t : {1, 2, 3, 8, 13}) {
      exec::SpanScope s;
      exec::parallel_for(t, [](std::int64_t) { exec::tick(); });
      CHECK(s.counters().span == exec::ceil_log2(t) + 1);
      CHECK(s.counters().work == std::uint64_t(2 * t - 1));
      CHECK(s.counters().span <= s.counters().work);
    }
  }
  exec::set_workers(1);
}

TEST_CASE("nested composition obeys the laws") {
  exec::set_workers(4);
  exec::SpanScope s;
  exec::parallel_for(4, [](std::int64_t i) {
    exec::parallel_for(i + 1, [](std::int64_t) { exec::tick(2); });
  });
  // slowest branch: i=3, inner t=4 -> 2 + 2 = 4; outer adds log2(4) = 2
  CHECK(s.counters().span == 6);
  exec::set_workers(1);
}

TEST_CASE("exceptions propagate from branches") {
  exec::set_workers(2);
  CHECK_THROWS(exec::parallel_for(5, [](std::int64_t i) {
    if (i == 3) throw std::runtime_error("x");
  }));
  exec::set_workers(1);
}

TEST_CASE("find_first is schedule independent") {
  std::uint64_t w1 = 0;
  for (int w : {1, 2, 8}) {
    exec::set_workers(w);
    exec::SpanScope s;
    auto r = exec::parallel_find_first(100, [](std::int64_t i) {
      exec::tick();
      return i % 37 == 36;
    });
    CHECK(r == 36);
    if (w == 1) w1 = s.counters().work;
    CHECK(s.counters().work == w1);
  }
  exec::set_workers(1);
}

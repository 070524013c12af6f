#pragma once
// Fork-join execution layer with semantic work/span counters.
//
// Counters describe the task DAG, not the schedule: a unit task adds 1 to
// both work and span, sequential composition adds, and parallel_for over t
// branches adds the branch work plus t-1 join nodes while span grows by the
// slowest branch plus ceil(log2 t) for the balanced combine tree.

#include <cstdint>
#include <functional>
#include <optional>

namespace gpi::exec {

struct Counters {
  std::uint64_t work = 0;
  std::uint64_t span = 0;
};

// Number of OpenMP workers used by parallel_for. 1 selects the serial
// reference path.
void set_workers(int n);
int workers();

// Record n sequential unit tasks in the current frame.
void tick(std::uint64_t n = 1);

// Counters of the innermost active scope.
Counters current();

// Opens a fresh counting frame; on destruction the frame's counters are
// folded into the enclosing frame as a sequential step.
class SpanScope {
 public:
  SpanScope();
  ~SpanScope();
  SpanScope(const SpanScope&) = delete;
  SpanScope& operator=(const SpanScope&) = delete;
  Counters counters() const;

 private:
  Counters* saved_;
  Counters frame_;
};

std::uint64_t ceil_log2(std::uint64_t t);

// Runs body(i) for i in [0, t). Each branch counts in its own frame.
// Exceptions thrown by a branch are rethrown (lowest index first) after all
// branches finish.
void parallel_for(std::int64_t t, const std::function<void(std::int64_t)>& body);

// Same contract and counters as parallel_for, always executed in order on
// the calling thread.
void serial_for(std::int64_t t, const std::function<void(std::int64_t)>& body);

// Smallest i in [0, t) with pred(i) true. Work proceeds in fixed-size chunks
// so the amount of evaluated work (and the counters) does not depend on the
// number of workers.
std::optional<std::int64_t> parallel_find_first(
    std::int64_t t, const std::function<bool(std::int64_t)>& pred,
    std::int64_t chunk = 16);

}  // namespace gpi::exec

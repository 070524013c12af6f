#include "gpi/exec.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <exception>
#include <vector>

namespace gpi::exec {

namespace {

std::atomic<int> g_workers{1};
thread_local Counters t_root;
thread_local Counters* t_frame = nullptr;

Counters& frame() { return t_frame ? *t_frame : t_root; }

void fold_parallel(const std::vector<Counters>& parts) {
  std::uint64_t w = 0, s = 0;
  for (const auto& c : parts) {
    w += c.work;
    s = std::max(s, c.span);
  }
  std::uint64_t t = parts.size();
  if (t > 1) w += t - 1;
  Counters& f = frame();
  f.work += w;
  f.span += s + ceil_log2(t);
}

void run_branch(const std::function<void(std::int64_t)>& body, std::int64_t i,
                Counters& out, std::exception_ptr& err) {
  Counters* saved = t_frame;
  t_frame = &out;
  try {
    body(i);
  } catch (...) {
    err = std::current_exception();
  }
  t_frame = saved;
}

void rethrow_first(const std::vector<std::exception_ptr>& errs) {
  for (const auto& e : errs)
    if (e) std::rethrow_exception(e);
}

}  // namespace

void set_workers(int n) { g_workers = std::max(1, n); }
int workers() { return g_workers; }

void tick(std::uint64_t n) {
  Counters& f = frame();
  f.work += n;
  f.span += n;
}

Counters current() { return frame(); }

SpanScope::SpanScope() : saved_(t_frame) { t_frame = &frame_; }

SpanScope::~SpanScope() {
  t_frame = saved_;
  Counters& f = frame();
  f.work += frame_.work;
  f.span += frame_.span;
}

Counters SpanScope::counters() const { return frame_; }

std::uint64_t ceil_log2(std::uint64_t t) {
  std::uint64_t r = 0;
  while ((std::uint64_t(1) << r) < t) ++r;
  return r;
}

void serial_for(std::int64_t t, const std::function<void(std::int64_t)>& body) {
  if (t <= 0) return;
  std::vector<Counters> parts(t);
  std::vector<std::exception_ptr> errs(t);
  for (std::int64_t i = 0; i < t; ++i) run_branch(body, i, parts[i], errs[i]);
  fold_parallel(parts);
  rethrow_first(errs);
}

void parallel_for(std::int64_t t, const std::function<void(std::int64_t)>& body) {
  if (t <= 0) return;
  int nw = workers();
  if (nw <= 1 || t == 1 || omp_in_parallel()) {
    serial_for(t, body);
    return;
  }
  std::vector<Counters> parts(t);
  std::vector<std::exception_ptr> errs(t);
#pragma omp parallel for num_threads(nw) schedule(dynamic, 1)
  for (std::int64_t i = 0; i < t; ++i) run_branch(body, i, parts[i], errs[i]);
  fold_parallel(parts);
  rethrow_first(errs);
}

std::optional<std::int64_t> parallel_find_first(
    std::int64_t t, const std::function<bool(std::int64_t)>& pred,
    std::int64_t chunk) {
  if (chunk < 1) chunk = 1;
  for (std::int64_t lo = 0; lo < t; lo += chunk) {
    std::int64_t len = std::min(chunk, t - lo);
    std::vector<char> hit(len, 0);
    parallel_for(len, [&](std::int64_t j) { hit[j] = pred(lo + j) ? 1 : 0; });
    for (std::int64_t j = 0; j < len; ++j)
      if (hit[j]) return lo + j;
  }
  return std::nullopt;
}

}  // namespace gpi::exec

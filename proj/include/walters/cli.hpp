#pragma once

#include <exception>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "walters/report.hpp"

namespace walters {

struct TGrid {
  double start = 1.0;
  double stop = 1.0;
  int count = 1;
  bool log_spacing = false;

  std::vector<double> values() const;
};

/// "A:B:N" or "A:B:N:log".
TGrid parse_t_grid(const std::string& text);

struct RunConfig {
  std::string command;
  std::optional<std::string> spec_path;
  std::optional<std::string> builtin;
  std::optional<double> t;
  std::optional<TGrid> grid;
  std::vector<std::string> words;
  int depth = 12;
  double tol = 1e-12;
  int q_max = 30;
  bool periodic_extension = false;
  std::string format = "csv";
  std::optional<std::string> out;
};

/// Validates and dispatches one command. Returns 0, 2 (validation) or 3 (numerical).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command-line entry point (argument parsing included).
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Worker cap from WALTERS_THERMO_THREADS (default: hardware concurrency).
unsigned thread_cap();

/// Applies fn to every index in [0, n) on up to thread_cap() threads; results
/// keep index order and the first failing index's exception is rethrown.
template <class R>
std::vector<R> parallel_map(std::size_t n, const std::function<R(std::size_t)>& fn);

/// The example1 instance checked end to end as a pass/fail list.
Checklist example1_checklist(double b1 = -1.0);

}  // namespace walters

#include <atomic>
#include <thread>

namespace walters {

template <class R>
std::vector<R> parallel_map(std::size_t n, const std::function<R(std::size_t)>& fn) {
  std::vector<std::optional<R>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::min<std::size_t>(thread_cap(), n);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  std::vector<R> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

}  // namespace walters

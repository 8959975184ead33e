#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace aoe {

struct BenchRow {
  int tasks = 0;
  double density = 0.0;
  int vertices_in = 0;   // canonical expansion
  int edges_in = 0;
  int vertices_out = 0;  // after simplification
  int unlabeled_out = 0;
  double naive_ms = 0.0;
  double optimized_ms = 0.0;
};

// Expands and simplifies one random project per size (50, 100, 200, ...
// doubling up to max_tasks; just {max_tasks} when that is below 50), timing
// both drivers. Deterministic per seed.
std::vector<BenchRow> run_bench(int max_tasks, double density, std::uint64_t seed);

std::string format_bench_table(const std::vector<BenchRow>& rows);

// Least-squares slope of log(optimized time) against log(task count); rows
// with nonpositive times are ignored. Returns 0 with fewer than two points.
double fitted_exponent(const std::vector<BenchRow>& rows);

}  // namespace aoe

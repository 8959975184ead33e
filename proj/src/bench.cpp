#include "aoe/bench.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "aoe/canonicalize.hpp"
#include "aoe/oracle.hpp"
#include "aoe/simplify.hpp"

namespace aoe {

namespace {

double time_ms(const std::function<void()>& body) {
  const auto start = std::chrono::steady_clock::now();
  body();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count();
}

}  // namespace

std::vector<BenchRow> run_bench(int max_tasks, double density, std::uint64_t seed) {
  if (max_tasks <= 0) throw std::invalid_argument("max_tasks must be positive");
  std::vector<int> sizes;
  for (int n = 50; n <= max_tasks; n *= 2) sizes.push_back(n);
  if (sizes.empty()) sizes.push_back(max_tasks);

  std::vector<BenchRow> rows;
  for (int n : sizes) {
    const PosetSpec poset =
        random_poset(n, density, seed ^ static_cast<std::uint64_t>(n));
    const AoeGraph canonical = expand_aon(poset.to_aon());

    BenchRow row;
    row.tasks = n;
    row.density = density;
    row.vertices_in = static_cast<int>(canonical.vertex_count());
    row.edges_in = static_cast<int>(canonical.edge_count());

    SimplifyResult naive, optimized;
    row.naive_ms = time_ms([&] { naive = simplify_naive(canonical); });
    row.optimized_ms = time_ms([&] { optimized = simplify_optimized(canonical); });
    if (naive.graph.vertex_count() != optimized.graph.vertex_count())
      throw std::logic_error("drivers disagree on output size");

    row.vertices_out = static_cast<int>(optimized.graph.vertex_count());
    row.unlabeled_out = static_cast<int>(optimized.graph.unlabeled_edge_count());
    rows.push_back(row);
  }
  return rows;
}

std::string format_bench_table(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  os << std::left << std::setw(8) << "tasks" << std::setw(9) << "density"
     << std::setw(8) << "v_in" << std::setw(8) << "e_in" << std::setw(8)
     << "v_out" << std::setw(10) << "unl_out" << std::setw(12) << "naive_ms"
     << std::setw(14) << "optimized_ms" << "\n";
  os << std::fixed;
  for (const BenchRow& r : rows) {
    os << std::setprecision(2);
    os << std::setw(8) << r.tasks << std::setw(9) << r.density << std::setw(8)
       << r.vertices_in << std::setw(8) << r.edges_in << std::setw(8)
       << r.vertices_out << std::setw(10) << r.unlabeled_out;
    os << std::setprecision(3);
    os << std::setw(12) << r.naive_ms << std::setw(14) << r.optimized_ms << "\n";
  }
  if (rows.size() >= 2) {
    os << std::setprecision(2)
       << "fitted exponent (optimized vs tasks): " << fitted_exponent(rows)
       << "\n";
  }
  return os.str();
}

double fitted_exponent(const std::vector<BenchRow>& rows) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int k = 0;
  for (const BenchRow& r : rows) {
    if (r.optimized_ms <= 0.0 || r.tasks <= 0) continue;
    const double x = std::log(static_cast<double>(r.tasks));
    const double y = std::log(r.optimized_ms);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++k;
  }
  if (k < 2) return 0.0;
  const double denom = k * sxx - sx * sx;
  if (denom == 0.0) return 0.0;
  return (k * sxy - sx * sy) / denom;
}

}  // namespace aoe

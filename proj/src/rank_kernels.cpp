#include "ratdg/rank_kernels.hpp"

#include <algorithm>
#include <limits>

#ifdef RATDG_HAVE_OPENMP
#include <omp.h>
#endif

namespace ratdg {

int max_threads() {
#ifdef RATDG_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

int rank_serial(const Matrix& m) { return rank(m); }

int rank_parallel(const Matrix& m) {
  std::vector<Vec> active;
  for (auto& r : m.transpose().col)
    if (!r.empty()) active.push_back(std::move(r));
  int r = 0;
  while (!active.empty()) {
    int pivot_col = std::numeric_limits<int>::max();
    size_t pivot_row = 0;
    for (size_t i = 0; i < active.size(); ++i) {
      if (active[i].front().first < pivot_col) {
        pivot_col = active[i].front().first;
        pivot_row = i;
      }
    }
    Vec prow = std::move(active[pivot_row]);
    active.erase(active.begin() + static_cast<long>(pivot_row));
    Q inv = 1 / prow.front().second;
    for (auto& t : prow) t.second *= inv;
    ++r;

    const long n = static_cast<long>(active.size());
#ifdef RATDG_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 4)
#endif
    for (long i = 0; i < n; ++i) {
      Vec& row = active[i];
      if (row.front().first != pivot_col) continue;
      Q f = row.front().second;
      axpy(row, -f, prow);
    }
    active.erase(std::remove_if(active.begin(), active.end(),
                                [](const Vec& v) { return v.empty(); }),
                 active.end());
  }
  return r;
}

std::vector<int> block_ranks_serial(const std::vector<Matrix>& blocks) {
  std::vector<int> out(blocks.size());
  for (size_t i = 0; i < blocks.size(); ++i) out[i] = rank_serial(blocks[i]);
  return out;
}

std::vector<int> block_ranks_parallel(const std::vector<Matrix>& blocks) {
  std::vector<int> out(blocks.size());
  const long n = static_cast<long>(blocks.size());
#ifdef RATDG_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
  for (long i = 0; i < n; ++i) out[i] = rank_serial(blocks[i]);
  return out;
}

}  // namespace ratdg

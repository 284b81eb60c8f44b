#pragma once

#include <vector>

#include "ratdg/sparse.hpp"

namespace ratdg {

// Reference implementation: incremental echelon over the columns.
int rank_serial(const Matrix& m);

// Row-oriented sparse elimination. Rows sharing the current pivot column are
// updated concurrently. Falls back to a serial loop without OpenMP.
int rank_parallel(const Matrix& m);

// Ranks of independent blocks (e.g. one differential block per degree).
std::vector<int> block_ranks_serial(const std::vector<Matrix>& blocks);
std::vector<int> block_ranks_parallel(const std::vector<Matrix>& blocks);

int max_threads();

}  // namespace ratdg

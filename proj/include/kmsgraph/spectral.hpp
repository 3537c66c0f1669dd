#pragma once

#include <vector>

#include "kmsgraph/graph.hpp"
#include "kmsgraph/types.hpp"

namespace kmsgraph {

/**
 * Dense nonnegative matrix indexed by vertex subsets. Entry (v, w) of
 * a_beta aggregates exp(-beta * weight) over all edges v -> w; dense
 * storage is fine at the supported graph sizes.
 */
struct WeightMatrix {
  std::vector<int> rows;  // vertex indices, ascending
  std::vector<int> cols;
  std::vector<double> a;  // row-major, rows.size() x cols.size()

  int row_count() const { return static_cast<int>(rows.size()); }
  int col_count() const { return static_cast<int>(cols.size()); }
  bool is_square() const { return rows == cols; }

  double at(int i, int j) const { return a[static_cast<size_t>(i) * cols.size() + j]; }
  double& at(int i, int j) { return a[static_cast<size_t>(i) * cols.size() + j]; }

  int row_pos(int vertex) const;  // -1 when absent
  int col_pos(int vertex) const;
};

/** Full transfer matrix at inverse temperature beta. */
WeightMatrix a_beta(const Graph& g, double beta);

/** Submatrix on the given vertex subsets (each sorted ascending). */
WeightMatrix restrict_matrix(const WeightMatrix& m, const std::vector<int>& rows,
                             const std::vector<int>& cols);

/**
 * Spectral radius of a square nonnegative matrix. Block-decomposes along
 * strongly connected classes of the support; cyclic blocks use the closed
 * form, general irreducible blocks use certified Collatz-Wielandt bounds
 * driven by power iteration on (block + I).
 */
double spectral_radius(const WeightMatrix& m, const Tolerances& tol = {});

/**
 * Perron eigenvector of an irreducible matrix with spectral radius 1
 * (within tol.classification), normalized so the largest entry is 1.
 */
std::vector<double> perron_vector(const WeightMatrix& m, const Tolerances& tol = {});

/**
 * (I - B)^-1 for spectral radius strictly below 1. Verifies the residual
 * and clamps the tiny negative entries Gaussian elimination can leave on
 * what is mathematically a nonnegative matrix.
 */
WeightMatrix neumann_inverse(const WeightMatrix& m, const Tolerances& tol = {});

/**
 * Splitting of a superharmonic vector (B psi <= psi entrywise) into a
 * harmonic part and the accumulated defect series sum_n B^n (psi - B psi).
 */
struct RieszParts {
  std::vector<int> index;
  std::vector<double> harmonic;
  std::vector<double> defect_series;
};

RieszParts riesz_decompose(const WeightMatrix& m, const std::vector<double>& psi,
                           const Tolerances& tol = {});

}  // namespace kmsgraph

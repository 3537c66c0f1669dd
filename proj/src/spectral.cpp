#include "kmsgraph/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kmsgraph/detail/scc.hpp"

namespace kmsgraph {

namespace {

int pos_in(const std::vector<int>& index, int vertex) {
  auto it = std::lower_bound(index.begin(), index.end(), vertex);
  if (it == index.end() || *it != vertex) return -1;
  return static_cast<int>(it - index.begin());
}

void require_square(const WeightMatrix& m, const char* what) {
  if (!m.is_square())
    throw Error(Error::Kind::InvalidInput,
                std::string(what) + " requires a square matrix");
}

}  // namespace

int WeightMatrix::row_pos(int vertex) const { return pos_in(rows, vertex); }
int WeightMatrix::col_pos(int vertex) const { return pos_in(cols, vertex); }

WeightMatrix a_beta(const Graph& g, double beta) {
  WeightMatrix m;
  m.rows.resize(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) m.rows[v] = v;
  m.cols = m.rows;
  m.a.assign(static_cast<size_t>(g.vertex_count()) * g.vertex_count(), 0.0);
  for (const auto& e : g.edges()) {
    double t = std::exp(-beta * e.weight);
    if (!std::isfinite(t))
      throw Error(Error::Kind::Numerical, "transfer weight overflow on edge " + e.id);
    m.at(e.src, e.dst) += t;
  }
  return m;
}

WeightMatrix restrict_matrix(const WeightMatrix& m, const std::vector<int>& rows,
                             const std::vector<int>& cols) {
  if (!std::is_sorted(rows.begin(), rows.end()) ||
      !std::is_sorted(cols.begin(), cols.end()))
    throw Error(Error::Kind::InvalidInput, "restriction index sets must be ascending");
  WeightMatrix out;
  out.rows = rows;
  out.cols = cols;
  out.a.assign(rows.size() * cols.size(), 0.0);
  for (size_t i = 0; i < rows.size(); ++i) {
    int ri = m.row_pos(rows[i]);
    if (ri < 0)
      throw Error(Error::Kind::InvalidInput, "restriction row outside matrix index");
    for (size_t j = 0; j < cols.size(); ++j) {
      int cj = m.col_pos(cols[j]);
      if (cj < 0)
        throw Error(Error::Kind::InvalidInput, "restriction column outside matrix index");
      out.a[i * cols.size() + j] = m.at(ri, cj);
    }
  }
  return out;
}

namespace {

// Dense block held with plain indices 0..n-1.
struct Block {
  int n = 0;
  std::vector<double> a;
  double at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
};

Block take_block(const WeightMatrix& m, const std::vector<int>& verts) {
  Block b;
  b.n = static_cast<int>(verts.size());
  b.a.resize(static_cast<size_t>(b.n) * b.n);
  for (int i = 0; i < b.n; ++i)
    for (int j = 0; j < b.n; ++j)
      b.a[static_cast<size_t>(i) * b.n + j] =
          m.at(m.row_pos(verts[i]), m.col_pos(verts[j]));
  return b;
}

// Single permutation cycle support: exact closed form via log-sum.
bool cyclic_radius(const Block& b, double* rho) {
  std::vector<int> succ(b.n, -1);
  std::vector<int> pred_count(b.n, 0);
  for (int i = 0; i < b.n; ++i) {
    for (int j = 0; j < b.n; ++j) {
      if (b.at(i, j) > 0.0) {
        if (succ[i] != -1) return false;
        succ[i] = j;
        ++pred_count[j];
      }
    }
    if (succ[i] == -1) return false;
  }
  for (int j = 0; j < b.n; ++j)
    if (pred_count[j] != 1) return false;
  // One orbit only.
  int at = 0, steps = 0;
  double log_sum = 0.0;
  do {
    log_sum += std::log(b.at(at, succ[at]));
    at = succ[at];
    ++steps;
  } while (at != 0 && steps <= b.n);
  if (steps != b.n) return false;
  *rho = std::exp(log_sum / b.n);
  return true;
}

// Certified Collatz-Wielandt bracket for an irreducible nonnegative block,
// iterating with (B + I) so periodic supports still converge.
double irreducible_radius(const Block& b, const Tolerances& tol) {
  std::vector<double> x(b.n, 1.0), y(b.n, 0.0);
  for (int iter = 0; iter < tol.power_iteration_cap; ++iter) {
    double norm = 0.0;
    for (int i = 0; i < b.n; ++i) {
      double acc = x[i];
      for (int j = 0; j < b.n; ++j) acc += b.at(i, j) * x[j];
      y[i] = acc;
      norm = std::max(norm, acc);
    }
    if (!std::isfinite(norm))
      throw Error(Error::Kind::Numerical, "spectral radius iteration overflow");
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (int i = 0; i < b.n; ++i) {
      double r = y[i] / x[i];
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    double scale = std::max(1.0, hi);
    if (hi - lo <= tol.eig * scale) return 0.5 * (lo + hi) - 1.0;
    for (int i = 0; i < b.n; ++i) x[i] = y[i] / norm;
  }
  throw Error(Error::Kind::Numerical,
              "spectral radius iteration did not converge within the cap");
}

}  // namespace

double spectral_radius(const WeightMatrix& m, const Tolerances& tol) {
  require_square(m, "spectral_radius");
  int n = m.row_count();
  if (n == 0) return 0.0;
  for (double v : m.a)
    if (v < 0.0)
      throw Error(Error::Kind::InvalidInput, "spectral_radius expects a nonnegative matrix");

  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (m.at(i, j) > 0.0) adj[i].push_back(j);

  double best = 0.0;
  for (const auto& cls : detail::strongly_connected(adj)) {
    if (cls.size() == 1) {
      double self = m.at(cls[0], cls[0]);
      best = std::max(best, self);
      continue;
    }
    std::vector<int> verts(cls.size());
    for (size_t i = 0; i < cls.size(); ++i) verts[i] = m.rows[cls[i]];
    Block b = take_block(m, verts);
    double rho = 0.0;
    if (!cyclic_radius(b, &rho)) rho = irreducible_radius(b, tol);
    best = std::max(best, rho);
  }
  return best;
}

std::vector<double> perron_vector(const WeightMatrix& m, const Tolerances& tol) {
  require_square(m, "perron_vector");
  int n = m.row_count();
  if (n == 0)
    throw Error(Error::Kind::InvalidInput, "perron_vector of an empty matrix");

  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (m.at(i, j) > 0.0) adj[i].push_back(j);
  auto classes = detail::strongly_connected(adj);
  bool irreducible = classes.size() == 1 && (n > 1 || m.at(0, 0) > 0.0);
  if (!irreducible)
    throw Error(Error::Kind::InvalidInput, "perron_vector requires an irreducible matrix");

  double rho = spectral_radius(m, tol);
  if (std::abs(rho - 1.0) > tol.classification)
    throw Error(Error::Kind::NotApplicable,
                "perron_vector requires spectral radius 1, got " + std::to_string(rho));

  std::vector<double> x(n, 1.0 / n), y(n, 0.0);
  for (int iter = 0; iter < tol.power_iteration_cap; ++iter) {
    for (int i = 0; i < n; ++i) {
      double acc = x[i];
      for (int j = 0; j < n; ++j) acc += m.at(i, j) * x[j];
      y[i] = acc;
    }
    double top = *std::max_element(y.begin(), y.end());
    double drift = 0.0;
    for (int i = 0; i < n; ++i) {
      y[i] /= top;
      drift = std::max(drift, std::abs(y[i] - x[i]));
    }
    x = y;
    if (drift <= 1e-15) break;
  }
  double residual = 0.0;
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += m.at(i, j) * x[j];
    residual = std::max(residual, std::abs(acc - x[i]));
  }
  if (residual > tol.harmonicity)
    throw Error(Error::Kind::Numerical,
                "perron_vector residual " + std::to_string(residual) + " too large");
  return x;
}

WeightMatrix neumann_inverse(const WeightMatrix& m, const Tolerances& tol) {
  require_square(m, "neumann_inverse");
  double rho = spectral_radius(m, tol);
  if (rho >= 1.0 - tol.classification)
    throw Error(Error::Kind::NotApplicable,
                "neumann_inverse requires spectral radius below 1, got " +
                    std::to_string(rho));
  int n = m.row_count();
  WeightMatrix out;
  out.rows = m.rows;
  out.cols = m.cols;
  out.a.assign(static_cast<size_t>(n) * n, 0.0);
  if (n == 0) return out;

  // LU with partial pivoting on (I - B), solving for the identity block.
  std::vector<double> lu(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      lu[static_cast<size_t>(i) * n + j] = (i == j ? 1.0 : 0.0) - m.at(i, j);
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int k = 0; k < n; ++k) {
    int pivot = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(lu[static_cast<size_t>(i) * n + k]) >
          std::abs(lu[static_cast<size_t>(pivot) * n + k]))
        pivot = i;
    if (std::abs(lu[static_cast<size_t>(pivot) * n + k]) < 1e-300)
      throw Error(Error::Kind::Numerical, "neumann_inverse pivot vanished");
    if (pivot != k) {
      for (int j = 0; j < n; ++j)
        std::swap(lu[static_cast<size_t>(k) * n + j], lu[static_cast<size_t>(pivot) * n + j]);
      std::swap(perm[k], perm[pivot]);
    }
    for (int i = k + 1; i < n; ++i) {
      double f = lu[static_cast<size_t>(i) * n + k] / lu[static_cast<size_t>(k) * n + k];
      lu[static_cast<size_t>(i) * n + k] = f;
      for (int j = k + 1; j < n; ++j)
        lu[static_cast<size_t>(i) * n + j] -= f * lu[static_cast<size_t>(k) * n + j];
    }
  }
  std::vector<double> col(n);
  for (int rhs = 0; rhs < n; ++rhs) {
    for (int i = 0; i < n; ++i) col[i] = perm[i] == rhs ? 1.0 : 0.0;
    for (int i = 1; i < n; ++i)
      for (int j = 0; j < i; ++j) col[i] -= lu[static_cast<size_t>(i) * n + j] * col[j];
    for (int i = n - 1; i >= 0; --i) {
      for (int j = i + 1; j < n; ++j) col[i] -= lu[static_cast<size_t>(i) * n + j] * col[j];
      col[i] /= lu[static_cast<size_t>(i) * n + i];
    }
    for (int i = 0; i < n; ++i) out.at(i, rhs) = col[i];
  }

  double residual = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double acc = out.at(i, j);
      for (int k = 0; k < n; ++k) acc -= m.at(i, k) * out.at(k, j);
      residual = std::max(residual, std::abs(acc - (i == j ? 1.0 : 0.0)));
    }
  if (residual > tol.harmonicity)
    throw Error(Error::Kind::Numerical,
                "neumann_inverse residual " + std::to_string(residual) + " too large");
  // The series representation makes the true inverse nonnegative with unit
  // diagonal minorant; clamp roundoff fuzz so callers can rely on it.
  for (double& v : out.a)
    if (v < 0.0) v = 0.0;
  return out;
}

RieszParts riesz_decompose(const WeightMatrix& m, const std::vector<double>& psi,
                           const Tolerances& tol) {
  require_square(m, "riesz_decompose");
  int n = m.row_count();
  if (static_cast<int>(psi.size()) != n)
    throw Error(Error::Kind::InvalidInput, "riesz_decompose vector length mismatch");

  auto apply = [&](const std::vector<double>& v) {
    std::vector<double> out(n, 0.0);
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j) acc += m.at(i, j) * v[j];
      out[i] = acc;
    }
    return out;
  };

  std::vector<double> bpsi = apply(psi);
  for (int i = 0; i < n; ++i)
    if (bpsi[i] > psi[i] + tol.harmonicity)
      throw Error(Error::Kind::InvalidInput,
                  "riesz_decompose requires a superharmonic vector");

  // Defect, clamped to the nonnegative cone.
  std::vector<double> k(n);
  for (int i = 0; i < n; ++i) k[i] = std::max(0.0, psi[i] - bpsi[i]);

  // Harmonic part: iterate psi_{t+1} = B psi_t; the sequence decreases to
  // the harmonic minorant. Stop when a window of 5 steps is Cauchy.
  RieszParts parts;
  parts.index = m.rows;
  std::vector<double> h = psi;
  int stable = 0;
  for (int iter = 0; iter < tol.series_cap; ++iter) {
    std::vector<double> next = apply(h);
    double diff = 0.0;
    for (int i = 0; i < n; ++i) diff = std::max(diff, std::abs(next[i] - h[i]));
    h = std::move(next);
    stable = diff < 1e-12 ? stable + 1 : 0;
    if (stable >= 5) break;
  }
  if (stable < 5)
    throw Error(Error::Kind::Numerical, "riesz_decompose harmonic limit did not settle");

  // Defect series by direct accumulation; bounded above by psi.
  std::vector<double> series = k, term = k;
  for (int iter = 0; iter < tol.series_cap; ++iter) {
    term = apply(term);
    double top = 0.0;
    for (int i = 0; i < n; ++i) {
      series[i] += term[i];
      top = std::max(top, term[i]);
    }
    if (top < 1e-16) break;
  }

  double residual = 0.0;
  for (int i = 0; i < n; ++i)
    residual = std::max(residual, std::abs(psi[i] - h[i] - series[i]));
  if (residual > tol.simplex)
    throw Error(Error::Kind::Numerical,
                "riesz_decompose reconstruction residual " + std::to_string(residual));

  parts.harmonic = std::move(h);
  parts.defect_series = std::move(series);
  return parts;
}

}  // namespace kmsgraph

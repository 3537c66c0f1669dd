#include "kmsgraph/states.hpp"

#include <algorithm>
#include <cmath>

#include "kmsgraph/spectral.hpp"

namespace kmsgraph {

Word word_multiply(const Graph& g, const Word& lhs, const Word& rhs) {
  if (lhs.zero || rhs.zero) return Word::zero_word();
  if (!lhs.valid(g) || !rhs.valid(g))
    throw Error(Error::Kind::InvalidInput, "word_multiply on invalid words");
  // S_mu S_nu^* S_gamma S_rho^*: one of nu, gamma must extend the other.
  const Path& nu = lhs.nu;
  const Path& gamma = rhs.mu;
  if (is_prefix(g, nu, gamma)) {
    Path tail{std::vector<int>(gamma.edges.begin() + nu.length(), gamma.edges.end()),
              nu.range(g)};
    return Word{concat(g, lhs.mu, tail), rhs.nu, false};
  }
  if (is_prefix(g, gamma, nu)) {
    Path tail{std::vector<int>(nu.edges.begin() + gamma.length(), nu.edges.end()),
              gamma.range(g)};
    return Word{lhs.mu, concat(g, rhs.nu, tail), false};
  }
  return Word::zero_word();
}

double eval_gauge_invariant(const Graph& g, const HarmonicVector& psi, double beta,
                            const Word& w) {
  if (w.zero) return 0.0;
  if (!w.valid(g)) throw Error(Error::Kind::InvalidInput, "invalid word");
  if (!(w.mu == w.nu)) return 0.0;
  return std::exp(-beta * w.mu.weight(g)) * psi.at(w.mu.range(g));
}

CircularData CircularData::from_component(const Graph& g, const Component& c) {
  if (!c.circular || !c.loop)
    throw Error(Error::Kind::InvalidInput,
                "circle states require a circular component");
  CircularData d;
  d.component = c;
  d.base = c.least();
  d.loop = *c.loop;
  d.period = d.loop.length();
  (void)g;
  return d;
}

CircularStateContext::CircularStateContext(const Graph& g, double beta,
                                           const CircularData& data,
                                           const Tolerances& tol)
    : g_(&g), data_(data), beta_(beta) {
  if (data_.period <= 0 || data_.loop.source() != data_.base)
    throw Error(Error::Kind::InvalidInput, "malformed circular data");
  if (std::abs(data_.loop.weight(g)) > tol.weight_zero)
    throw Error(Error::Kind::NotApplicable,
                "circle states require zero loop weight");

  std::vector<int> cls = closure(g, data_.component.members);
  // Cut the base open: zero its row so walks stop on first arrival.
  WeightMatrix m = restrict_matrix(a_beta(g, beta), cls, cls);
  int base_pos = m.row_pos(data_.base);
  for (int j = 0; j < m.col_count(); ++j) m.at(base_pos, j) = 0.0;
  if (spectral_radius(m, tol) >= 1.0 - tol.classification)
    throw Error(Error::Kind::NotApplicable,
                "first-passage series diverges at beta = " + std::to_string(beta));
  WeightMatrix inv = neumann_inverse(m, tol);

  zcol_.assign(g.vertex_count(), 0.0);
  z_ = 0.0;
  for (int i = 0; i < inv.row_count(); ++i) {
    double v = inv.at(i, base_pos);
    zcol_[inv.rows[i]] = v;
    z_ += v;
  }
}

namespace {

/**
 * Eventually periodic edge stream: the edges of `head` followed by the
 * loop edges repeated forever. Positions are 1-based.
 */
struct EdgeStream {
  const Path* head;
  const Path* cycle;

  int edge_at(int pos) const {
    int hl = head->length();
    if (pos <= hl) return head->edges[pos - 1];
    return cycle->edges[(pos - hl - 1) % cycle->length()];
  }
  int vertex_at(const Graph& g, int pos) const {
    if (pos == 0) return head->source();
    return g.edge(edge_at(pos)).dst;
  }
};

}  // namespace

std::complex<double> CircularStateContext::evaluate(std::complex<double> lambda,
                                                    const Word& w) const {
  const Graph& g = *g_;
  if (std::abs(std::abs(lambda) - 1.0) > 1e-9)
    throw Error(Error::Kind::InvalidInput, "circle parameter must have modulus 1");
  lambda /= std::abs(lambda);
  if (w.zero) return 0.0;
  if (!w.valid(g)) throw Error(Error::Kind::InvalidInput, "invalid word");

  const Path& mu = w.mu;
  const Path& nu = w.nu;
  if (mu.length() < nu.length()) return std::conj(evaluate(lambda, w.adjoint()));

  int v0 = data_.base;
  int p = data_.period;

  if (mu == nu) {
    // Diagonal word: sum first-passage prefixes of mu that continue along
    // the loop through the rest of mu, plus the bulk term in which the
    // first passage happens at or beyond the end of mu.
    double total = 0.0;
    for (int cut = 0; cut < mu.length(); ++cut) {
      if (mu.vertex_at(g, cut) != v0) continue;
      bool fp = true;
      for (int t = 0; t < cut; ++t)
        if (mu.vertex_at(g, t) == v0) fp = false;
      if (!fp) continue;
      bool on_loop = true;
      for (int j = cut + 1; j <= mu.length(); ++j)
        if (mu.edges[j - 1] != data_.loop.edges[(j - cut - 1) % p]) on_loop = false;
      if (!on_loop) continue;
      Path prefix{std::vector<int>(mu.edges.begin(), mu.edges.begin() + cut), mu.base};
      total += std::exp(-beta_ * prefix.weight(g));
    }
    bool interior_visit = false;
    for (int t = 0; t < mu.length(); ++t)
      if (mu.vertex_at(g, t) == v0) interior_visit = true;
    if (!interior_visit)
      total += std::exp(-beta_ * mu.weight(g)) * zcol_[mu.range(g)];
    return total / z_;
  }

  // Off-diagonal: mu must extend nu by a whole number of loop periods.
  if (!is_prefix(g, nu, mu)) return 0.0;
  int excess = mu.length() - nu.length();
  if (excess % p != 0) return 0.0;
  int k = excess / p;
  Path gamma_prime{std::vector<int>(mu.edges.begin() + nu.length(), mu.edges.end()),
                   nu.range(g)};
  EdgeStream stream{&nu, &gamma_prime};

  // First base visit along nu followed by gamma_prime repeated.
  int horizon = nu.length() + gamma_prime.length();
  int first = -1;
  for (int t = 0; t <= horizon - 1; ++t) {
    if (stream.vertex_at(g, t) == v0) {
      first = t;
      break;
    }
  }
  if (first < 0) return 0.0;

  // Beyond the first visit the stream must follow the loop; the window
  // covers the head remainder plus a full period of each cycle involved.
  int window = std::max(nu.length() - first, 0) + gamma_prime.length() + p;
  for (int j = 1; j <= window; ++j)
    if (stream.edge_at(first + j) != data_.loop.edges[(j - 1) % p]) return 0.0;

  Path alpha{{}, nu.source()};
  for (int t = 1; t <= first; ++t) alpha.edges.push_back(stream.edge_at(t));
  double weight = std::exp(-beta_ * alpha.weight(g));
  return std::pow(lambda, k) * weight / z_;
}

HarmonicVector CircularStateContext::fourier_zero_vector() const {
  const Graph& g = *g_;
  HarmonicVector out;
  out.values.assign(g.vertex_count(), 0.0);
  for (int v = 0; v < g.vertex_count(); ++v) out.values[v] = zcol_[v] / z_;
  return out;
}

double circular_normalizer(const Graph& g, double beta, const CircularData& data,
                           const Tolerances& tol) {
  return CircularStateContext(g, beta, data, tol).normalizer();
}

std::complex<double> eval_omega_lambda(const Graph& g, double beta,
                                       const CircularData& data,
                                       std::complex<double> lambda, const Word& w,
                                       const Tolerances& tol) {
  return CircularStateContext(g, beta, data, tol).evaluate(lambda, w);
}

StateEvaluator::StateEvaluator(const Graph& g, KmsStateSpec spec, const Tolerances& tol)
    : g_(&g), spec_(std::move(spec)) {
  for (const auto& term : spec_.sinks)
    sink_vectors_.push_back(phi_sink(g, spec_.beta, term.sink, tol).vector);
  for (const auto& term : spec_.point_components)
    component_vectors_.push_back(phi_component(g, spec_.beta, term.component, tol).vector);
  for (const auto& term : spec_.circles) {
    if (term.measure.kind == CircleMeasure::Kind::Atoms) {
      double mass = 0.0;
      for (const auto& atom : term.measure.atoms) {
        if (atom.mass < -1e-12)
          throw Error(Error::Kind::InvalidInput, "negative atom mass");
        mass += atom.mass;
      }
      if (std::abs(mass - 1.0) > 1e-9)
        throw Error(Error::Kind::InvalidInput, "circle measure must have total mass 1");
    }
    circle_contexts_.emplace_back(g, spec_.beta,
                                  CircularData::from_component(g, term.component), tol);
  }
}

std::complex<double> StateEvaluator::operator()(const Word& w) const {
  const Graph& g = *g_;
  if (w.zero) return 0.0;
  std::complex<double> total = 0.0;
  for (size_t i = 0; i < spec_.sinks.size(); ++i)
    total += spec_.sinks[i].weight *
             eval_gauge_invariant(g, sink_vectors_[i], spec_.beta, w);
  for (size_t i = 0; i < spec_.point_components.size(); ++i)
    total += spec_.point_components[i].weight *
             eval_gauge_invariant(g, component_vectors_[i], spec_.beta, w);
  for (size_t i = 0; i < spec_.circles.size(); ++i) {
    const auto& term = spec_.circles[i];
    const auto& ctx = circle_contexts_[i];
    if (term.measure.kind == CircleMeasure::Kind::Lebesgue) {
      // Averaging kills every nonzero winding layer; what survives is the
      // gauge-invariant state of the zero layer.
      HarmonicVector layer = ctx.fourier_zero_vector();
      total += term.weight * eval_gauge_invariant(g, layer, spec_.beta, w);
    } else {
      std::complex<double> acc = 0.0;
      for (const auto& atom : term.measure.atoms)
        acc += atom.mass * ctx.evaluate(atom.lambda, w);
      total += term.weight * acc;
    }
  }
  return total;
}

std::complex<double> eval_state(const Graph& g, const KmsStateSpec& spec, const Word& w,
                                const Tolerances& tol) {
  return StateEvaluator(g, spec, tol)(w);
}

double kms_check(const Graph& g, const StateFn& omega, double beta, const Word& w1,
                 const Word& w2) {
  if (w1.zero || w2.zero) return 0.0;
  if (!w1.valid(g) || !w2.valid(g))
    throw Error(Error::Kind::InvalidInput, "kms_check on invalid words");
  std::complex<double> forward = omega(word_multiply(g, w1, w2));
  std::complex<double> reverse = omega(word_multiply(g, w2, w1));
  double scale = std::exp(-beta * (w1.mu.weight(g) - w1.nu.weight(g)));
  return std::abs(forward - scale * reverse);
}

}  // namespace kmsgraph

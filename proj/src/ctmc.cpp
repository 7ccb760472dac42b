#include "lounge/ctmc.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <Eigen/SparseLU>

#include "lounge/analytic.hpp"

namespace lounge {

StateSpace::StateSpace(SpaceKind kind, int q_max, int l_max) : kind_(kind), q_max_(q_max), l_max_(l_max) {
  if (q_max < 1 || l_max < 0) throw std::invalid_argument("StateSpace: empty truncation box");
  states_.push_back({0, 0});
  for (int q = 1; q <= q_max; ++q) {
    for (int l = 0; l <= l_max; ++l) states_.push_back({q, l});
  }
}

int StateSpace::index_of(int q, int l) const {
  if (q < 0 || l < 0 || q > q_max_ || l > l_max_) return -1;
  if (q == 0) return l == 0 ? 0 : -1;
  return 1 + (q - 1) * (l_max_ + 1) + l;
}

namespace {

struct RateBuilder {
  const StateSpace& space;
  std::vector<Eigen::Triplet<double>> triplets;
  std::vector<double> exit;
  int dropped = 0;

  explicit RateBuilder(const StateSpace& s) : space(s), exit(static_cast<std::size_t>(s.size()), 0.0) {}

  void add(int from, State to, double rate) {
    if (rate <= 0.0) return;
    const int j = space.index_of(to.q, to.l);
    if (j < 0) {
      ++dropped;
      return;
    }
    triplets.emplace_back(from, j, rate);
    exit[static_cast<std::size_t>(from)] += rate;
  }

  RateMatrix finish() {
    for (int i = 0; i < space.size(); ++i) triplets.emplace_back(i, i, -exit[static_cast<std::size_t>(i)]);
    RateMatrix m(space.size(), space.size());
    m.setFromTriplets(triplets.begin(), triplets.end());
    m.makeCompressed();
    return m;
  }
};

// Service completion, including the zero-time lounge-to-queue move when
// the last queued customer leaves.
State after_service(State s) {
  if (s.q >= 2) return {s.q - 1, s.l};
  if (s.l > 0) return {1, s.l - 1};
  return {0, 0};
}

}  // namespace

Generator build_generator(double lambda, double mu, double nu, int a_int, int b_int, int q_max) {
  if (a_int < 0 || b_int < 0) throw std::invalid_argument("build_generator: negative threshold");
  if (q_max <= a_int + b_int + 2) throw std::invalid_argument("build_generator: q_max too small");
  StateSpace space(SpaceKind::original, q_max, b_int);
  RateBuilder b(space);
  for (int i = 0; i < space.size(); ++i) {
    const State s = space.state(i);
    const bool to_lounge = s.q > a_int && s.l < b_int;
    b.add(i, to_lounge ? State{s.q, s.l + 1} : State{s.q + 1, s.l}, lambda);
    if (s.q >= 1) b.add(i, after_service(s), mu);
    if (s.q >= 1 && s.l > 0) b.add(i, {s.q + 1, s.l - 1}, s.l * nu);
  }
  const double rho = lambda / mu;
  Generator g{b.finish(), space, {}, rho, std::pow(rho, q_max + 1), mm1_second_moment_tail(rho, q_max)};
  g.truncation_note = "transitions leaving q <= " + std::to_string(q_max) + " dropped (" +
                      std::to_string(b.dropped) + " rates)";
  return g;
}

Generator build_generator(const SystemParams& p, const DerivedThresholds& t, int q_max) {
  return build_generator(p.lambda(), p.mu(), p.nu(), t.a_int, t.b_int, q_max);
}

Generator build_generator_approx(double rho, int a_int, int l_max) {
  if (a_int < 0) throw std::invalid_argument("build_generator_approx: negative threshold");
  if (l_max < 2) throw std::invalid_argument("build_generator_approx: l_max must be >= 2");
  StateSpace space(SpaceKind::approximating, a_int + 1, l_max);
  RateBuilder b(space);
  for (int i = 0; i < space.size(); ++i) {
    const State s = space.state(i);
    b.add(i, s.q == a_int + 1 ? State{s.q, s.l + 1} : State{s.q + 1, s.l}, rho);
    if (s.q >= 1) b.add(i, after_service(s), 1.0);
  }
  Generator g{b.finish(), space, {}, rho, std::pow(rho, l_max + 1), mm1_second_moment_tail(rho, l_max)};
  g.truncation_note = "lounge arrivals at l = " + std::to_string(l_max) + " dropped";
  return g;
}

double max_row_sum(const Generator& gen) {
  double worst = 0.0;
  for (int i = 0; i < gen.rates.outerSize(); ++i) {
    double s = 0.0;
    for (RateMatrix::InnerIterator it(gen.rates, i); it; ++it) s += it.value();
    worst = std::max(worst, std::abs(s));
  }
  return worst;
}

namespace {

double residual_of(const RateMatrix& rates, const Eigen::VectorXd& pi) {
  const Eigen::VectorXd r = rates.transpose() * pi;
  return r.lpNorm<Eigen::Infinity>();
}

Eigen::VectorXd solve_direct(const RateMatrix& rates) {
  const int n = static_cast<int>(rates.rows());
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(static_cast<std::size_t>(rates.nonZeros()) + static_cast<std::size_t>(n));
  // Transposed balance equations; the last one is replaced by sum(pi) = 1.
  for (int i = 0; i < n; ++i) {
    for (RateMatrix::InnerIterator it(rates, i); it; ++it) {
      if (it.col() != n - 1) t.emplace_back(static_cast<int>(it.col()), i, it.value());
    }
    t.emplace_back(n - 1, i, 1.0);
  }
  Eigen::SparseMatrix<double> m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  m.makeCompressed();

  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.analyzePattern(m);
  lu.factorize(m);
  if (lu.info() != Eigen::Success) throw SolverError("sparse LU factorisation failed: " + lu.lastErrorMessage(), NAN);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs(n - 1) = 1.0;
  Eigen::VectorXd pi = lu.solve(rhs);
  if (lu.info() != Eigen::Success) throw SolverError("sparse LU solve failed", NAN);
  return pi;
}

Eigen::VectorXd solve_power(const RateMatrix& rates, const SolveOptions& options) {
  const int n = static_cast<int>(rates.rows());
  double uniform_rate = 0.0;
  for (int i = 0; i < n; ++i) uniform_rate = std::max(uniform_rate, -rates.coeff(i, i));
  const RateMatrix transposed = rates.transpose();
  Eigen::VectorXd pi = Eigen::VectorXd::Constant(n, 1.0 / n);
  const double stop = options.iterative_tol / uniform_rate;
  double change = 0.0;
  for (long long it = 0; it < options.max_iterations; ++it) {
    const Eigen::VectorXd step = (transposed * pi) / uniform_rate;
    pi += step;
    change = step.lpNorm<Eigen::Infinity>();
    if (it % 1024 == 0) pi /= pi.sum();
    if (change < stop) {
      pi /= pi.sum();
      return pi;
    }
  }
  throw SolverError("power iteration did not converge", change * uniform_rate);
}

}  // namespace

StationaryDistribution solve_stationary(const Generator& gen, const SolveOptions& options) {
  const int n = gen.space.size();
  const bool direct = !options.force_iterative && n <= options.direct_limit;
  Eigen::VectorXd pi = direct ? solve_direct(gen.rates) : solve_power(gen.rates, options);
  pi = pi.cwiseMax(0.0);  // round-off below zero
  pi /= pi.sum();

  const double tol = direct ? options.direct_tol : options.iterative_tol;
  const double res = residual_of(gen.rates, pi);
  if (!(res < tol)) throw SolverError("stationary residual " + std::to_string(res) + " above tolerance", res);

  StationaryDistribution d;
  d.source = SourceTag::oracle;
  d.q_max = gen.space.q_max();
  d.l_max = gen.space.l_max();
  d.tail_mass_bound = gen.tail_mass_bound;
  d.tail_moment_bound = gen.tail_moment_bound;
  d.note = gen.truncation_note;
  for (int i = 0; i < n; ++i) d.entries[gen.space.state(i)] = pi(i);
  return d;
}

double residual(const Generator& gen, const StationaryDistribution& d) {
  Eigen::VectorXd pi(gen.space.size());
  for (int i = 0; i < gen.space.size(); ++i) {
    const State s = gen.space.state(i);
    pi(i) = d.at(s.q, s.l);
  }
  return residual_of(gen.rates, pi);
}

void write_triplets_csv(const Generator& gen, std::ostream& os) {
  const auto old_precision = os.precision(17);
  os << "row,col,rate\n";
  for (int i = 0; i < gen.rates.outerSize(); ++i) {
    for (RateMatrix::InnerIterator it(gen.rates, i); it; ++it) {
      os << it.row() << ',' << it.col() << ',' << it.value() << '\n';
    }
  }
  os.precision(old_precision);
}

}  // namespace lounge

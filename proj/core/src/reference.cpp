#include "trotter/reference.hpp"

#include "trotter/csv.hpp"
#include "trotter/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace trotter {

namespace {

constexpr double kMinTolerance = 1e-13;

// Converges `block` (n x m, overwritten with the result) over [t0, t1].
// Distances are Frobenius norms multiplied by `scale`.
void converge(const ControlPair& pair, const KineticOperator& kinetic,
              const PotentialOperator& potential, double t0, double t1,
              Eigen::MatrixXcd& block, const ReferenceOptions& opt, double scale,
              ReferenceReport& report) {
  if (!(opt.tol >= kMinTolerance)) {
    throw DomainError("reference tolerance must be at least 1e-13");
  }
  if (opt.initial_steps < 1 || opt.extrapolation_depth < 0) {
    throw DomainError("invalid reference options");
  }
  require_same_grid(kinetic.grid(), potential.grid());
  if (block.rows() != kinetic.grid().size()) {
    throw GridMismatch("reference block rows do not match the grid");
  }

  const Eigen::MatrixXcd start = block;
  auto run = [&](long L) {
    Eigen::MatrixXcd out = start;
    propagate_block(Scheme::G2, pair, kinetic, potential, t0, t1, L,
                    {out.data(), static_cast<std::size_t>(out.size())});
    return out;
  };

  report = {};
  // row[j] holds the level-k estimate extrapolated j times.
  std::vector<Eigen::MatrixXcd> row{run(opt.initial_steps)};
  Eigen::MatrixXcd best;
  double best_diff = std::numeric_limits<double>::infinity();
  long best_steps = 0;
  int rising = 0;
  for (long L = 2 * opt.initial_steps;; L *= 2) {
    if (L > opt.max_steps) {
      throw AccuracyError("reference did not converge to tol " + format_double(opt.tol) +
                              " within " + std::to_string(opt.max_steps) + " steps",
                          best_diff);
    }
    std::vector<Eigen::MatrixXcd> next{run(L)};
    const int depth = std::min<int>(opt.extrapolation_depth, static_cast<int>(row.size()));
    double factor = 1.0;
    for (int j = 1; j <= depth; ++j) {
      factor *= 4.0;
      next.push_back(next[j - 1] + (next[j - 1] - row[j - 1]) / (factor - 1.0));
    }
    const double raw = scale * (next.front() - row.front()).norm();
    const double diff = scale * (next.back() - row.back()).norm();
    report.levels.push_back({L, raw, diff});
    row = std::move(next);

    if (diff <= 0.1 * opt.tol) {
      report.steps = L;
      report.achieved = diff;
      block = std::move(row.back());
      return;
    }
    if (diff < best_diff) {
      best_diff = diff;
      best_steps = L;
      best = row.back();
      rising = 0;
    } else if (++rising == 2) {
      // Roundoff grows with the step count; once the differences rise
      // twice in a row the truncation error is already below that floor.
      if (best_diff > opt.tol) {
        throw AccuracyError("reference stalled at " + format_double(best_diff) +
                                " above tol " + format_double(opt.tol),
                            best_diff);
      }
      report.steps = best_steps;
      report.achieved = best_diff;
      block = std::move(best);
      return;
    }
  }
}

} // namespace

StateVector reference_evolve(const ControlPair& pair, const KineticOperator& kinetic,
                             const PotentialOperator& potential, double t0, double t1,
                             const StateVector& psi0, const ReferenceOptions& options,
                             ReferenceReport* report) {
  require_same_grid(kinetic.grid(), psi0.grid());
  Eigen::MatrixXcd block = psi0.amplitudes();
  ReferenceReport local;
  converge(pair, kinetic, potential, t0, t1, block, options,
           1.0 / std::sqrt(static_cast<double>(psi0.size())), report ? *report : local);
  return StateVector(psi0.grid(), block.col(0));
}

StateVector reference_evolve(const ControlPair& pair, const KineticOperator& kinetic,
                             const PotentialOperator& potential, double T, double tol,
                             const StateVector& psi0) {
  ReferenceOptions options;
  options.tol = tol;
  return reference_evolve(pair, kinetic, potential, 0.0, T, psi0, options);
}

Eigen::MatrixXcd dense_reference_propagator(const ControlPair& pair,
                                            const KineticOperator& kinetic,
                                            const PotentialOperator& potential,
                                            double t0, double t1,
                                            const ReferenceOptions& options,
                                            ReferenceReport* report) {
  const int n = kinetic.grid().size();
  require_dense_cap(n);
  Eigen::MatrixXcd U = Eigen::MatrixXcd::Identity(n, n);
  ReferenceReport local;
  converge(pair, kinetic, potential, t0, t1, U, options, 1.0, report ? *report : local);
  return U;
}

Eigen::MatrixXcd dense_reference_propagator(const ControlPair& pair,
                                            const KineticOperator& kinetic,
                                            const PotentialOperator& potential,
                                            double T, double tol) {
  ReferenceOptions options;
  options.tol = tol;
  return dense_reference_propagator(pair, kinetic, potential, 0.0, T, options);
}

std::vector<Snapshot> reference_trajectory(const ControlPair& pair,
                                           const KineticOperator& kinetic,
                                           const PotentialOperator& potential,
                                           double T, double tol,
                                           const StateVector& psi0, int segments) {
  if (segments < 1) throw DomainError("trajectory needs at least one segment");
  ReferenceOptions options;
  options.tol = std::max(tol / segments, kMinTolerance);
  options.initial_steps = std::max<long>(2, options.initial_steps / segments);
  std::vector<Snapshot> out{{0.0, psi0}};
  StateVector psi = psi0;
  for (int k = 0; k < segments; ++k) {
    const double ta = T * (static_cast<double>(k) / segments);
    const double tb = (k + 1 == segments) ? T : T * (static_cast<double>(k + 1) / segments);
    psi = reference_evolve(pair, kinetic, potential, ta, tb, psi, options);
    out.push_back({tb, psi});
  }
  return out;
}

} // namespace trotter

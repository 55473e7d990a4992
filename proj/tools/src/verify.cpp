#include "trotter_cli/cli.hpp"

#include <trotter/analysis.hpp>
#include <trotter/linalg.hpp>
#include <trotter/preconstants.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace trotter::cli {

namespace {

std::string suffix(const std::string& key, double value) {
  std::ostringstream s;
  s << key << '=' << value;
  return s.str();
}

double max_abs(const Eigen::MatrixXcd& M) { return M.cwiseAbs().maxCoeff(); }

// V(x) = 1 + sum_k (a_k cos kx + b_k sin kx) with small seeded coefficients.
Eigen::VectorXd random_smooth_potential(const SpatialGrid& grid, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  double a[3], b[3];
  for (int k = 0; k < 3; ++k) {
    a[k] = u(rng);
    b[k] = u(rng);
  }
  Eigen::VectorXd v(grid.size());
  for (int j = 0; j < grid.size(); ++j) {
    const double x = 2.0 * std::numbers::pi * (grid.node(j) - grid.x_lo()) / grid.length();
    v[j] = 1.0;
    for (int k = 0; k < 3; ++k) v[j] += a[k] * std::cos((k + 1) * x) + b[k] * std::sin((k + 1) * x);
  }
  return v;
}

} // namespace

std::vector<CheckResult> run_verify_suite(const VerifyConfig& cfg) {
  std::vector<CheckResult> out;
  auto check = [&](std::string name, double value, double limit) {
    out.push_back({std::move(name), value <= limit, value, limit});
  };

  // Every factor is unitary, so every scheme is.
  const ControlPair pair1 = make_control_preset("modulated-mass", {}, 1e-3);
  for (auto kind : {Discretization::FiniteDifference, Discretization::FourierSpectral}) {
    const Problem pb = make_problem(cfg.unitarity_n, kind);
    for (Scheme s : kAllSchemes) {
      const auto U = dense_propagator(s, pair1, pb.kinetic, pb.potential, 1e-3, cfg.unitarity_L);
      check("unitarity." + to_string(kind) + "." + to_string(s), unitarity_defect(U), 1e-9);
    }
  }

  for (int n : cfg.structure_sizes) {
    const SpatialGrid grid(n, 0.0, 1.0);
    const KineticOperator K = build_laplacian_fd(grid);
    const DifferenceOperator D = build_difference_d1(grid);
    const Eigen::MatrixXcd H1 = dense_h1(K);
    check("structure.d1_factor." + suffix("n", n),
          max_abs(D.dense().adjoint() * D.dense() - H1) / max_abs(H1), 1e-12);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K.dense(), Eigen::EigenvaluesOnly);
    std::vector<double> expected(n);
    const double s = grid.scale();
    for (int j = 0; j < n; ++j) {
      expected[j] = 2.0 * s * s * (1.0 - std::cos(2.0 * std::numbers::pi * j / n));
    }
    std::sort(expected.begin(), expected.end());
    double worst = 0.0;
    for (int j = 0; j < n; ++j) worst = std::max(worst, std::abs(es.eigenvalues()[j] - expected[j]));
    check("structure.fd_spectrum." + suffix("n", n), worst / expected.back(), 1e-10);
  }

  {
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> g;
    for (auto kind : {Discretization::FiniteDifference, Discretization::FourierSpectral}) {
      const Problem pb = make_problem(8, kind);
      Eigen::VectorXcd v(8);
      for (auto& z : v) z = {g(rng), g(rng)};
      const StateVector psi(pb.grid, v);
      const Eigen::MatrixXd& H = pb.kinetic.dense();
      check("fft.apply." + to_string(kind),
            (pb.kinetic.apply(psi).amplitudes() - H.cast<Complex>() * v).norm() / v.norm(), 1e-10);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
      const double theta = 0.01;
      const Eigen::VectorXcd phases =
          (-Complex(0, theta) * es.eigenvalues().cast<Complex>()).array().exp();
      const Eigen::MatrixXcd Q = es.eigenvectors().cast<Complex>();
      const Eigen::VectorXcd dense = Q * phases.asDiagonal() * Q.adjoint() * v;
      check("fft.exp_kinetic." + to_string(kind),
            (apply_exp_kinetic(theta, pb.kinetic, psi).amplitudes() - dense).norm() / v.norm(),
            1e-10);
    }
  }

  {
    std::mt19937_64 rng(cfg.seed);
    for (int n : cfg.commutator_sizes) {
      const SpatialGrid grid = periodic_pi_grid(n);
      const KineticOperator K = build_laplacian_fd(grid);
      std::vector<Eigen::VectorXd> potentials{make_potential("one-minus-cos", grid).values()};
      for (int r = 0; r < 3; ++r) potentials.push_back(random_smooth_potential(grid, rng));
      double worst12 = 0.0, worst112 = 0.0;
      for (const auto& v : potentials) {
        const Eigen::MatrixXcd H1 = dense_h1(K);
        const Eigen::MatrixXcd H2 = v.cast<Complex>().asDiagonal();
        const Eigen::MatrixXcd C = commutator(H1, H2);
        const Eigen::MatrixXcd CC = commutator(H1, C);
        worst12 = std::max(worst12, max_abs(C - commutator_h1h2_fd(grid, v)) / max_abs(C));
        worst112 = std::max(worst112, max_abs(CC - nested_h1h1h2_fd(grid, v)) / max_abs(CC));
      }
      check("commutator.h1h2." + suffix("n", n), worst12, 1e-9);
      check("commutator.h1h1h2." + suffix("n", n), worst112, 1e-9);
    }
  }

  for (double a : cfg.frequencies) {
    for (double h : cfg.bound_steps) {
      PresetParameters p;
      p.a = a;
      const ControlPair pair = make_control_preset("modulated-mass", p, h);
      for (int n : cfg.bound_sizes) {
        const Problem pb = make_problem(n, Discretization::FiniteDifference);
        for (Scheme s : kAllSchemes) {
          const auto r = check_local_bound(s, pair, pb.kinetic, pb.potential, h);
          check("bound." + to_string(s) + "." + suffix("n", n) + "." + suffix("h", h) + "." +
                    suffix("a", a),
                r.measured, r.bound);
        }
      }
    }
  }
  return out;
}

} // namespace trotter::cli

#pragma once

// Independent dense-matrix oracles for the tests. Nothing here goes through
// the FFT path or the library's reference solver.

#include <trotter/controls.hpp>
#include <trotter/propagators.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>
#include <random>

namespace oracle {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using cd = std::complex<double>;

// exp(-i theta H) for Hermitian H by eigendecomposition.
inline Mat expm_hermitian(const Mat& H, double theta) {
  Eigen::SelfAdjointEigenSolver<Mat> es(H);
  const Vec ph = (cd(0, -theta) * es.eigenvalues().cast<cd>()).array().exp();
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

// Cyclic tridiagonal s^2 (2, -1, -1) written out entry by entry.
inline Mat fd_laplacian(int n, double length) {
  const double s = n / length;
  Mat H = Mat::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    H(k, k) += 2 * s * s;
    H(k, (k + 1) % n) += -s * s;
    H(k, (k + n - 1) % n) += -s * s;
  }
  return H;
}

// Composite Simpson rule with m (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int m = 2000) {
  const double h = (b - a) / m;
  double s = f(a) + f(b);
  for (int i = 1; i < m; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

// Dense product of exponentials for one step, controls integrated by Simpson.
inline Mat dense_step(trotter::Scheme s, const std::function<double(double)>& f1,
                      const std::function<double(double)>& f2, const Mat& H1, const Mat& H2,
                      double t, double h) {
  using trotter::Scheme;
  switch (s) {
  case Scheme::S1:
    return expm_hermitian(H2, h * f2(t + h)) * expm_hermitian(H1, h * f1(t + h));
  case Scheme::G1:
    return expm_hermitian(H2, simpson(f2, t, t + h)) * expm_hermitian(H1, simpson(f1, t, t + h));
  case Scheme::S2: {
    const Mat K = expm_hermitian(H1, 0.5 * h * f1(t + 0.5 * h));
    return K * expm_hermitian(H2, h * f2(t + 0.5 * h)) * K;
  }
  case Scheme::G2:
    return expm_hermitian(H1, simpson(f1, t + 0.5 * h, t + h)) *
           expm_hermitian(H2, simpson(f2, t, t + h)) *
           expm_hermitian(H1, simpson(f1, t, t + 0.5 * h));
  }
  return {};
}

// Classical RK4 on U' = -i (f1 H1 + f2 H2) U; an integrator family unrelated
// to the splittings under test.
inline Mat rk4_propagator(const std::function<double(double)>& f1,
                          const std::function<double(double)>& f2, const Mat& H1, const Mat& H2,
                          double t0, double t1, long steps) {
  const auto n = H1.rows();
  Mat U = Mat::Identity(n, n);
  const double h = (t1 - t0) / steps;
  auto rhs = [&](double t, const Mat& X) -> Mat {
    return cd(0, -1) * (f1(t) * (H1 * X) + f2(t) * (H2 * X));
  };
  for (long l = 0; l < steps; ++l) {
    const double t = t0 + l * h;
    const Mat k1 = rhs(t, U);
    const Mat k2 = rhs(t + h / 2, U + (h / 2) * k1);
    const Mat k3 = rhs(t + h / 2, U + (h / 2) * k2);
    const Mat k4 = rhs(t + h, U + h * k3);
    U += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return U;
}

inline double two_norm(const Mat& M) {
  Eigen::JacobiSVD<Mat> svd(M);
  return svd.singularValues()(0);
}

inline Vec random_vector(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Vec v(n);
  for (auto& z : v) z = {g(rng), g(rng)};
  return v;
}

// The modulated-mass and cosine-frequency controls written out directly.
inline std::function<double(double)> f1_of(double a) {
  return [a](double t) { return (2.0 + std::sin(a * t + 0.5)) / 2.0; };
}
inline double f2_fn(double t) { return 1.0 + std::cos(t); }

} // namespace oracle

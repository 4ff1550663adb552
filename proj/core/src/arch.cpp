#include "thetareg/arch.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace thetareg {

namespace {

using cplx = std::complex<double>;

cplx eval_poly(const std::vector<double>& coeffs, cplx x) {
  cplx acc = 0;
  for (int i = (int)coeffs.size() - 1; i >= 0; --i) acc = acc * x + coeffs[i];
  return acc;
}

cplx eval_q(const std::vector<mpq_class>& coeffs, cplx x) {
  cplx acc = 0;
  for (int i = (int)coeffs.size() - 1; i >= 0; --i) acc = acc * x + coeffs[i].get_d();
  return acc;
}

}  // namespace

ArchimedeanData archimedean_data(const FieldSpec& F, const AlgebraicNumber& eta) {
  const int n = F.n;
  ArchimedeanData out;
  std::vector<double> pc(F.poly.begin(), F.poly.end());

  std::vector<cplx> roots;
  if (n == 1) {
    roots.push_back(cplx(-(double)F.poly[0], 0.0));
  } else {
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -(double)F.poly[i];
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(companion);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigenvalue solver failed");
    for (int i = 0; i < n; ++i) {
      cplx r(es.eigenvalues()(i).real(), es.eigenvalues()(i).imag());
      // Newton polish
      for (int it = 0; it < 50; ++it) {
        cplx f = eval_poly(pc, r);
        cplx df = 0;
        for (int k = n; k >= 1; --k) df = df * r + pc[k] * (double)k;
        if (std::abs(df) == 0.0) break;
        cplx step = f / df;
        r -= step;
        if (std::abs(step) < 1e-15 * (1.0 + std::abs(r))) break;
      }
      roots.push_back(r);
    }
  }
  double pnorm = 0;
  for (double c : pc) pnorm += std::abs(c);
  for (cplx r : roots)
    if (std::abs(eval_poly(pc, r)) > 1e-12 * pnorm * (1.0 + std::pow(std::abs(r), n)))
      throw std::runtime_error("root certification failed");

  // Assign a root to each group element: embedding(nu) = A_nu evaluated at a
  // fixed base root, snapped to the nearest certified root.
  cplx base = roots[0];
  out.embeddings.resize(F.group.n);
  std::vector<bool> used(roots.size(), false);
  for (int g = 0; g < F.group.n; ++g) {
    cplx img = n == 1 ? base : eval_q(F.autos[g], base);
    int best = -1;
    double bestd = 1e300;
    for (size_t i = 0; i < roots.size(); ++i) {
      double d = std::abs(img - roots[i]);
      if (d < bestd) { bestd = d; best = (int)i; }
    }
    if (n == (int)F.group.n) {
      if (used[best]) throw std::runtime_error("automorphism images collide on roots");
      used[best] = true;
    }
    out.embeddings[g] = roots[best];
  }

  if (n == 1) {
    out.gamma = 1.0;
  } else {
    Eigen::MatrixXcd B(n, n);
    for (int i = 0; i < n; ++i)
      for (int g = 0; g < n; ++g) B(i, g) = std::pow(out.embeddings[g], i);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(B);
    double cond = svd.singularValues()(0) / svd.singularValues()(n - 1);
    if (!(cond < 1e12)) throw std::runtime_error("embedding basis matrix is ill-conditioned");
    // Gamma_i^sigma = (B^{-1})_{sigma, i}: take max over i of the column
    // absolute sums of the inverse.
    Eigen::MatrixXcd Binv = B.inverse();
    double gmax = 0;
    for (int i = 0; i < n; ++i) {
      double s = 0;
      for (int g = 0; g < n; ++g) s += std::abs(Binv(g, i));
      gmax = std::max(gmax, s);
    }
    out.gamma = gmax;
  }

  double c0 = 0;
  for (int g = 0; g < F.group.n; ++g) {
    cplx v = 0;
    for (int i = n - 1; i >= 0; --i) v = v * out.embeddings[g] + (double)eta.num[i];
    v /= (double)eta.den;
    c0 = std::max(c0, std::abs(v));
  }
  out.c0 = c0;
  return out;
}

int h_bound(const FieldSpec& F, const ArchimedeanData& arch, const AlgebraicNumber& eta, u64 p) {
  if (arch.c0 <= 1.0 + 1e-12) throw ConfigError("h_bound: |eta| <= 1 (torsion-like eta)");
  if (F.n == 1 && eta.den == 1) {
    // K = Q: the residue window is [1, p[; exact integer comparison.
    u64 a = (u64)std::llabs(eta.num[0]);
    if (a <= 1) throw ConfigError("h_bound: |eta| <= 1");
    int h = 0;
    u128 pw = 1;
    while (true) {
      pw *= a;
      if (pw <= (u128)(p - 1)) ++h; else break;
      if (h > 200) break;
    }
    return h;
  }
  // General case: 2 Gamma c0^j <= p-1 with a relative guard against boundary
  // flips from the floating root computation.
  int h = 0;
  long double bound = (long double)(p - 1) * (1.0L + 1e-9L);
  long double cur = 2.0L * (long double)arch.gamma;
  while (true) {
    cur *= (long double)arch.c0;
    if (cur <= bound) ++h; else break;
    if (h > 200) break;
  }
  return h;
}

int h_bound(const FieldSpec& F, const AlgebraicNumber& eta, u64 p) {
  return h_bound(F, archimedean_data(F, eta), eta, p);
}

}  // namespace thetareg

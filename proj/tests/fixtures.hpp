#pragma once

#include "choi.hpp"
#include "rng.hpp"

namespace vqb_test {

using vqb::ComplexMatrix;
using vqb::cxd;

// Frozen reference matrices for the optimal virtual broadcaster and its
// two-part decomposition (entries are exact rationals).
inline ComplexMatrix broadcaster_reference() {
  const double t = 1.0 / 3.0, h = 0.5;
  const double rows[8][8] = {
      {t, 0, 0, h, 0, h, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, t, 0, h, 0, 0, h},
      {h, 0, 0, t, 0, h, 0, 0},
      {0, 0, h, 0, t, 0, 0, h},
      {h, 0, 0, h, 0, t, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, h, 0, h, 0, 0, t},
  };
  ComplexMatrix m(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) m(i, j) = rows[i][j];
  return m;
}

inline ComplexMatrix positive_part_reference() {
  const double t = 1.0 / 3.0;
  const double rows[8][8] = {
      {t, 0, 0, t, 0, t, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, t, 0, t, 0, 0, t},
      {t, 0, 0, t, 0, t, 0, 0},
      {0, 0, t, 0, t, 0, 0, t},
      {t, 0, 0, t, 0, t, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, t, 0, t, 0, 0, t},
  };
  ComplexMatrix m(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) m(i, j) = rows[i][j];
  return m;
}

inline ComplexMatrix negative_part_reference() {
  const double t = 1.0 / 3.0, s = -1.0 / 6.0;
  const double rows[8][8] = {
      {t, 0, 0, s, 0, s, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, t, 0, s, 0, 0, s},
      {s, 0, 0, t, 0, s, 0, 0},
      {0, 0, s, 0, t, 0, 0, s},
      {s, 0, 0, s, 0, t, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, s, 0, s, 0, 0, t},
  };
  ComplexMatrix m(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) m(i, j) = rows[i][j];
  return m;
}

inline ComplexMatrix random_hermitian(vqb::SequentialRng& rng, std::size_t n,
                                      double scale = 1.0) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      if (i == j) {
        m(i, j) = rng.uniform(-scale, scale);
      } else {
        m(i, j) = cxd(rng.uniform(-scale, scale), rng.uniform(-scale, scale));
        m(j, i) = std::conj(m(i, j));
      }
    }
  return m;
}

inline ComplexMatrix random_density(vqb::SequentialRng& rng, std::size_t n) {
  ComplexMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      g(i, j) = cxd(rng.uniform(-1, 1), rng.uniform(-1, 1));
  ComplexMatrix rho = g * vqb::dagger(g);
  return (1.0 / vqb::trace(rho).real()) * rho;
}

// Haar-random special unitary from a normalized quaternion.
inline ComplexMatrix haar_su2(vqb::SequentialRng& rng) {
  auto normal = [&] {
    const double u1 = std::max(rng.uniform(), 1e-300);
    const double u2 = rng.uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  };
  double a = normal(), b = normal(), c = normal(), d = normal();
  const double s = std::sqrt(a * a + b * b + c * c + d * d);
  a /= s;
  b /= s;
  c /= s;
  d /= s;
  return vqb::mat2(cxd(a, b), cxd(c, d), cxd(-c, d), cxd(a, -b));
}

}  // namespace vqb_test

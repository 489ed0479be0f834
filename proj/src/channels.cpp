#include "channels.hpp"

#include <array>
#include <cmath>

#include "optim.hpp"
#include "rng.hpp"

namespace vqb {

namespace {

constexpr double kPi = 3.14159265358979323846;

ComplexMatrix column(const std::vector<cxd>& amps) {
  ComplexMatrix v(amps.size(), 1);
  for (std::size_t i = 0; i < amps.size(); ++i) v(i, 0) = amps[i];
  return v;
}

ComplexMatrix swap_gate() {
  ComplexMatrix s(4, 4);
  s(0, 0) = 1.0;
  s(1, 2) = 1.0;
  s(2, 1) = 1.0;
  s(3, 3) = 1.0;
  return s;
}

}  // namespace

ChoiOperator optimal_virtual_broadcaster() {
  return family_to_choi(free_to_full(ConstrainedParams{1.0 / 3.0, 5.0 / 12.0, 0.0}));
}

ChoiOperator phase_covariant_cloner() {
  // Kraus vectors (|000> + |011> + |101>)/sqrt(3) and the bit-flipped
  // partner; basis index is 4j + 2k + l with l the input slot.
  const double w = 1.0 / std::sqrt(3.0);
  const ComplexMatrix u1 = column({w, 0, 0, w, 0, w, 0, 0});
  const ComplexMatrix u2 = column({0, 0, w, 0, w, 0, 0, w});
  return make_choi(u1 * dagger(u1) + u2 * dagger(u2), {2, 2});
}

namespace {

ComplexMatrix dephase_computational(const ComplexMatrix& x) {
  ComplexMatrix out(x.rows, x.cols);
  for (std::size_t i = 0; i < x.rows; ++i) out(i, i) = x(i, i);
  return out;
}

// Least-squares solve of an overdetermined complex system with a tiny
// number of unknowns, via the normal equations.
std::vector<cxd> solve_normal_equations(const std::vector<std::vector<cxd>>& rows,
                                        const std::vector<cxd>& rhs) {
  const std::size_t n = rows.empty() ? 0 : rows[0].size();
  ComplexMatrix gram(n, n);
  std::vector<cxd> g(n, cxd(0, 0));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j)
        gram(i, j) += std::conj(rows[r][i]) * rows[r][j];
      g[i] += std::conj(rows[r][i]) * rhs[r];
    }
  }
  // Gaussian elimination with partial pivoting
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(gram(r, col)) > std::abs(gram(piv, col))) piv = r;
    if (std::abs(gram(piv, col)) < 1e-14) {
      throw Error(ErrorCode::not_converged,
                  "canonical pipeline: constraint system is rank deficient");
    }
    if (piv != col) {
      for (std::size_t k = 0; k < n; ++k) std::swap(gram(col, k), gram(piv, k));
      std::swap(g[col], g[piv]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const cxd factor = gram(r, col) / gram(col, col);
      for (std::size_t k = col; k < n; ++k) gram(r, k) -= factor * gram(col, k);
      g[r] -= factor * g[col];
    }
  }
  std::vector<cxd> x(n);
  for (std::size_t i = n; i-- > 0;) {
    cxd acc = g[i];
    for (std::size_t k = i + 1; k < n; ++k) acc -= gram(i, k) * x[k];
    x[i] = acc / gram(i, i);
  }
  return x;
}

ChoiOperator build_canonical_broadcaster() {
  // span of the twirl projection, from the images of all matrix units
  std::vector<ComplexMatrix> basis;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      ComplexMatrix unit(8, 8);
      unit(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = 1.0;
      ComplexMatrix img =
          clifford_twirl(swap_twirl(make_choi(std::move(unit), {2, 2}))).m;
      for (const ComplexMatrix& b : basis) {  // Gram-Schmidt
        cxd overlap(0, 0);
        for (std::size_t k = 0; k < 64; ++k)
          overlap += std::conj(b.data[k]) * img.data[k];
        img = img - overlap * b;
      }
      const double nrm = frobenius_norm(img);
      if (nrm > 1e-8) basis.push_back((1.0 / nrm) * img);
    }

  // classical consistency on the diagonal matrix units plus trace
  // preservation, as linear equations in the span coefficients
  std::vector<std::vector<cxd>> rows;
  std::vector<cxd> rhs;
  auto add_matrix_equation = [&](const std::vector<ComplexMatrix>& per_basis,
                                 const ComplexMatrix& target) {
    for (std::size_t i = 0; i < target.rows; ++i)
      for (std::size_t j = 0; j < target.cols; ++j) {
        std::vector<cxd> row(basis.size());
        for (std::size_t k = 0; k < basis.size(); ++k) row[k] = per_basis[k](i, j);
        rows.push_back(std::move(row));
        rhs.push_back(target(i, j));
      }
  };

  for (int in = 0; in < 2; ++in) {
    ComplexMatrix unit(2, 2);
    unit(static_cast<std::size_t>(in), static_cast<std::size_t>(in)) = 1.0;
    std::vector<ComplexMatrix> imgs;
    for (const ComplexMatrix& b : basis) {
      const ChoiOperator cb = make_choi(b, {2, 2});
      imgs.push_back(dephase_computational(apply_map(cb, unit)));
    }
    ComplexMatrix target(4, 4);
    target(static_cast<std::size_t>(3 * in), static_cast<std::size_t>(3 * in)) = 1.0;
    add_matrix_equation(imgs, target);
  }
  {
    std::vector<ComplexMatrix> imgs;
    for (const ComplexMatrix& b : basis)
      imgs.push_back(partial_trace(b, {2, 2, 2}, {0, 1}));
    add_matrix_equation(imgs, identity(2));
  }

  const std::vector<cxd> coeff = solve_normal_equations(rows, rhs);
  ComplexMatrix m(8, 8);
  for (std::size_t k = 0; k < basis.size(); ++k) m = m + coeff[k] * basis[k];

  // residual of the full constraint system
  for (std::size_t r = 0; r < rows.size(); ++r) {
    cxd acc(0, 0);
    for (std::size_t k = 0; k < coeff.size(); ++k) acc += rows[r][k] * coeff[k];
    if (std::abs(acc - rhs[r]) > 1e-10) {
      throw Error(ErrorCode::not_converged,
                  "canonical pipeline: constraints not satisfied");
    }
  }

  const ChoiOperator pipeline = make_choi(std::move(m), {2, 2});

  // independent closed form: rho -> anticommutator of rho (x) 1 with the swap
  const ComplexMatrix s = swap_gate();
  const ChoiOperator closed =
      choi_from_action(2, {2, 2}, [&](const ComplexMatrix& x) {
        const ComplexMatrix xi = kron(x, identity(2));
        return 0.5 * (xi * s + s * xi);
      });
  if (max_abs_diff(pipeline.m, closed.m) > 1e-12) {
    throw Error(ErrorCode::not_converged,
                "canonical pipeline: disagrees with the closed form");
  }
  return pipeline;
}

}  // namespace

ChoiOperator canonical_broadcaster() {
  static const ChoiOperator cached = build_canonical_broadcaster();
  return cached;
}

ChoiOperator universal_cloner() {
  static const ChoiOperator cached = pos_neg_split(canonical_broadcaster()).e_plus;
  return cached;
}

namespace {

// Pure state on input (x) reference from three nested magnitudes and three
// relative phases.
ComplexMatrix chart_state(const std::vector<double>& x) {
  const double c1 = std::cos(x[0]), s1 = std::sin(x[0]);
  const double c2 = std::cos(x[1]), s2 = std::sin(x[1]);
  const double c3 = std::cos(x[2]), s3 = std::sin(x[2]);
  ComplexMatrix v(4, 1);
  v(0, 0) = cxd(c1, 0.0);
  v(1, 0) = std::polar(s1 * c2, x[3]);
  v(2, 0) = std::polar(s1 * s2 * c3, x[4]);
  v(3, 0) = std::polar(s1 * s2 * s3, x[5]);
  return v;
}

// (M (x) I)(|psi><psi|) for a map acting on the first tensor factor of the
// 4-dimensional input (x) reference space.
ComplexMatrix extend_apply(const ComplexMatrix& choi_diff, int out_dim,
                           const ComplexMatrix& psi) {
  const ComplexMatrix x = psi * dagger(psi);
  const std::size_t dout = static_cast<std::size_t>(out_dim);
  ComplexMatrix y(dout * 2, dout * 2);
  for (std::size_t o = 0; o < dout; ++o)
    for (std::size_t op = 0; op < dout; ++op)
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t rp = 0; rp < 2; ++rp) {
          cxd acc(0, 0);
          for (std::size_t l = 0; l < 2; ++l)
            for (std::size_t lp = 0; lp < 2; ++lp)
              acc += choi_diff(o * 2 + l, op * 2 + lp) * x(l * 2 + r, lp * 2 + rp);
          y(o * 2 + r, op * 2 + rp) = acc;
        }
  return y;
}

double stabilized_norm(const ComplexMatrix& choi_diff, int out_dim,
                       const std::vector<double>& coords) {
  const ComplexMatrix y = extend_apply(choi_diff, out_dim, chart_state(coords));
  double s = 0.0;
  for (double v : hermitian_eigenvalues(y, 1e-8)) s += std::abs(v);
  return s;
}

}  // namespace

DiamondResult diamond_distance(const ChoiOperator& a, const ChoiOperator& b,
                               const DiamondConfig& cfg) {
  if (a.dim_in != b.dim_in || a.dims_out != b.dims_out) {
    throw Error(ErrorCode::dimension_mismatch,
                "diamond_distance: operand dimensions differ");
  }
  if (a.dim_in != 2) {
    throw Error(ErrorCode::invalid_argument,
                "diamond_distance: only qubit inputs are supported");
  }
  const ComplexMatrix diff = a.m - b.m;
  const int out_dim = a.out_dim();

  DiamondResult res;
  res.lower_cert = trace_norm(diff) / a.dim_in;

  const ChoiOperator delta = make_choi(diff, a.dims_out, a.dim_in);
  res.upper_cert = base_norm_bounds(delta).upper;

  const ObjectiveFn neg_norm = [&](const std::vector<double>& x) {
    return -stabilized_norm(diff, out_dim, x);
  };

  NelderMeadOptions nm;
  nm.max_iter = cfg.nm_max_iter;
  nm.diameter_tol = 1e-10;

  SequentialRng rng(cfg.seed);
  double best = 0.0;
  for (int s = 0; s < cfg.starts; ++s) {
    std::vector<double> x0(6);
    if (s == 0) {
      // maximally entangled state: amplitudes (1,0,0,1)/sqrt(2)
      x0 = {kPi / 4.0, kPi / 2.0, kPi / 2.0, 0.0, 0.0, 0.0};
    } else {
      for (int k = 0; k < 3; ++k) x0[k] = rng.uniform(0.0, kPi);
      for (int k = 3; k < 6; ++k) x0[k] = rng.uniform(0.0, 2.0 * kPi);
    }
    const OptimResult local = nelder_mead(neg_norm, x0, nm);
    best = std::max(best, -local.value);
  }
  res.value = best;
  res.certified = res.upper_cert - res.lower_cert <= cfg.tol;
  return res;
}

ChoiOperator random_cptp_choi(std::uint64_t seed) {
  SequentialRng rng(seed);
  auto normal = [&]() {
    const double u1 = std::max(rng.uniform(), 1e-300);
    const double u2 = rng.uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  };
  // Ginibre 32x2 block, orthonormalized: an isometry from the qubit into
  // two output qubits plus an eight-dimensional environment.
  const std::size_t env = 8, out = 4;
  ComplexMatrix v(out * env, 2);
  for (std::size_t i = 0; i < v.rows; ++i)
    for (std::size_t j = 0; j < 2; ++j) v(i, j) = cxd(normal(), normal());
  for (std::size_t j = 0; j < 2; ++j) {  // modified Gram-Schmidt
    for (std::size_t prev = 0; prev < j; ++prev) {
      cxd overlap(0, 0);
      for (std::size_t i = 0; i < v.rows; ++i)
        overlap += std::conj(v(i, prev)) * v(i, j);
      for (std::size_t i = 0; i < v.rows; ++i) v(i, j) -= overlap * v(i, prev);
    }
    double nrm = 0.0;
    for (std::size_t i = 0; i < v.rows; ++i) nrm += std::norm(v(i, j));
    nrm = std::sqrt(nrm);
    for (std::size_t i = 0; i < v.rows; ++i) v(i, j) = v(i, j) / nrm;
  }
  std::vector<ComplexMatrix> kraus(env, ComplexMatrix(out, 2));
  for (std::size_t e = 0; e < env; ++e)
    for (std::size_t o = 0; o < out; ++o)
      for (std::size_t j = 0; j < 2; ++j) kraus[e](o, j) = v(o * env + e, j);
  return choi_from_action(2, {2, 2}, [&](const ComplexMatrix& x) {
    ComplexMatrix img(out, out);
    for (const ComplexMatrix& k : kraus) img = img + k * x * dagger(k);
    return img;
  });
}

LocalOptimalityReport cloner_local_optimality(const LocalOptimalityConfig& cfg) {
  const ChoiOperator broadcaster = optimal_virtual_broadcaster();
  const ChoiOperator cloner = phase_covariant_cloner();
  const std::array<double, 3> weights{0.01, 0.05, 0.1};

  DiamondConfig dcfg;
  dcfg.starts = cfg.starts;

  LocalOptimalityReport report;
  bool first = true;
  for (int k = 0; k < cfg.samples; ++k) {
    const double eps = weights[static_cast<std::size_t>(k) % weights.size()];
    const ChoiOperator noise = random_cptp_choi(mix64(cfg.seed) + k);
    const ChoiOperator mixed =
        make_choi((1.0 - eps) * cloner.m + eps * noise.m, {2, 2});
    dcfg.seed = mix64(cfg.seed + 0x5eedULL) + k;
    const double dist = diamond_distance(broadcaster, mixed, dcfg).value;
    if (first || dist < report.min_distance) report.min_distance = dist;
    if (first || dist > report.max_distance) report.max_distance = dist;
    first = false;
  }
  report.pass = report.min_distance >= 2.0 / 3.0 - cfg.tol;
  return report;
}

namespace {

double clone_fidelity(const ChoiOperator& c, const ComplexMatrix& psi) {
  const ComplexMatrix rho = psi * dagger(psi);
  const ComplexMatrix marg = marginal(c, rho, 1);
  return (dagger(psi) * marg * psi)(0, 0).real();
}

FidelityScan scan(const ChoiOperator& c, const std::vector<ComplexMatrix>& states) {
  FidelityScan f;
  double lo = 0.0, hi = 0.0, sum = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const double v = clone_fidelity(c, states[i]);
    sum += v;
    if (i == 0 || v < lo) lo = v;
    if (i == 0 || v > hi) hi = v;
  }
  f.mean = sum / static_cast<double>(states.size());
  f.spread = hi - lo;
  return f;
}

ComplexMatrix haar_qubit_state(SequentialRng& rng) {
  auto normal = [&]() {
    const double u1 = std::max(rng.uniform(), 1e-300);
    const double u2 = rng.uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  };
  cxd a(normal(), normal()), b(normal(), normal());
  const double nrm = std::sqrt(std::norm(a) + std::norm(b));
  ComplexMatrix v(2, 1);
  v(0, 0) = a / nrm;
  v(1, 0) = b / nrm;
  return v;
}

}  // namespace

FidelityScan equatorial_fidelity_scan(const ChoiOperator& c, int n_points) {
  std::vector<ComplexMatrix> states;
  const double s = 1.0 / std::sqrt(2.0);
  for (int k = 0; k < n_points; ++k) {
    const double phi = 2.0 * kPi * k / n_points;
    ComplexMatrix v(2, 1);
    v(0, 0) = s;
    v(1, 0) = std::polar(s, phi);
    states.push_back(v);
  }
  return scan(c, states);
}

FidelityScan haar_fidelity_scan(const ChoiOperator& c, int n_points,
                                std::uint64_t seed) {
  SequentialRng rng(seed);
  std::vector<ComplexMatrix> states;
  for (int k = 0; k < n_points; ++k) states.push_back(haar_qubit_state(rng));
  return scan(c, states);
}

double broadcast_deviation_random(const ChoiOperator& c, int n_states,
                                  std::uint64_t seed) {
  SequentialRng rng(seed);
  double dev = 0.0;
  for (int k = 0; k < n_states; ++k) {
    const ComplexMatrix psi = haar_qubit_state(rng);
    dev = std::max(dev, broadcast_deviation(c, psi * dagger(psi)));
  }
  return dev;
}

}  // namespace vqb

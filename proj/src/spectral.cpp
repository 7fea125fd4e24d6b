#include "fermidyn/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "fermidyn/hamiltonian.hpp"

namespace fermidyn {

namespace {

double offdiagonal_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (Index q = 0; q < a.cols(); ++q) {
    for (Index p = 0; p < q; ++p) {
      sum += std::norm(a(p, q)) + std::norm(a(q, p));
    }
  }
  return std::sqrt(sum);
}

// Cyclic complex Jacobi on one dense Hermitian block. a becomes diagonal,
// v accumulates the rotations (columns are eigenvectors). Throws
// ConvergenceError when max_sweeps is exhausted.
void jacobi_block(ComplexMatrix& a, ComplexMatrix& v, const JacobiOptions& options) {
  const Index n = a.rows();
  const double tol = options.tolerance_scale * a.norm();
  // Entries below skip contribute at most tol to the final off-diagonal
  // Frobenius norm even if all of them survive, so rotating on them is noise.
  const double skip = (n > 0) ? tol / static_cast<double>(n) : 0.0;
  const double skip_sq = skip * skip;

  ComplexVector col_p(n), col_q(n);
  Eigen::RowVectorXcd row_p(n), row_q(n);

  double off = offdiagonal_norm(a);
  for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
    if (off <= tol) return;
    for (Index p = 0; p + 1 < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const double g_sq = std::norm(a(p, q));
        if (g_sq <= skip_sq) continue;
        const double g = std::sqrt(g_sq);
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();

        // Real Jacobi angle for [[app, g], [g, aqq]]; the phase of a(p,q)
        // folds into the rotation so the complex pair is annihilated too.
        const double tau = (aqq - app) / (2.0 * g);
        const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                      : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const ComplexScalar phase = a(p, q) / g;
        const ComplexScalar sp = (t * c) * phase;
        const ComplexScalar sp_conj = std::conj(sp);

        // A <- G^dag A G with G(p,p)=G(q,q)=c, G(p,q)=sp, G(q,p)=-conj(sp).
        col_p = a.col(p);
        col_q = a.col(q);
        a.col(p) = c * col_p - sp_conj * col_q;
        a.col(q) = sp * col_p + c * col_q;
        row_p = a.row(p);
        row_q = a.row(q);
        a.row(p) = c * row_p - sp * row_q;
        a.row(q) = sp_conj * row_p + c * row_q;

        a(p, p) = app - t * g;
        a(q, q) = aqq + t * g;
        a(p, q) = 0.0;
        a(q, p) = 0.0;

        col_p = v.col(p);
        col_q = v.col(q);
        v.col(p) = c * col_p - sp_conj * col_q;
        v.col(q) = sp * col_p + c * col_q;
      }
    }
    off = offdiagonal_norm(a);
    if (off <= tol) return;
  }
  throw ConvergenceError("eigendecompose: Jacobi sweeps exhausted, residual off-diagonal norm " +
                             std::to_string(off) + " (target " +
                             std::to_string(options.tolerance_scale * a.norm()) + ")",
                         off);
}

// Connected components of the sparsity graph, each listed in ascending index
// order and the components ordered by their smallest member. Rotations never
// couple exact-zero blocks, so each component diagonalizes independently.
std::vector<std::vector<Index>> sparsity_components(const ComplexMatrix& h) {
  const Index n = h.rows();
  std::vector<Index> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), Index{0});
  std::function<Index(Index)> find = [&](Index x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (Index q = 0; q < n; ++q) {
    for (Index p = 0; p < q; ++p) {
      if (h(p, q) == ComplexScalar{}) continue;
      const Index rp = find(p), rq = find(q);
      if (rp != rq) parent[static_cast<std::size_t>(std::max(rp, rq))] = std::min(rp, rq);
    }
  }
  std::vector<std::vector<Index>> components;
  std::vector<Index> slot(static_cast<std::size_t>(n), -1);
  for (Index i = 0; i < n; ++i) {
    const Index root = find(i);
    if (slot[static_cast<std::size_t>(root)] == -1) {
      slot[static_cast<std::size_t>(root)] = static_cast<Index>(components.size());
      components.emplace_back();
    }
    components[static_cast<std::size_t>(slot[static_cast<std::size_t>(root)])].push_back(i);
  }
  return components;
}

}  // namespace

SpectralDecomposition eigendecompose(const ComplexMatrix& h, const JacobiOptions& options) {
  const HermiticityReport herm = check_hermitian(h);
  if (!herm.is_hermitian) {
    throw NotHermitianError("eigendecompose: input is not Hermitian (max deviation " +
                                std::to_string(herm.max_deviation) + ")",
                            herm.max_deviation);
  }
  const Index n = h.rows();

  RealVector values(n);
  ComplexMatrix vectors = ComplexMatrix::Zero(n, n);  // columns, pre-sort

  Index column = 0;
  for (const std::vector<Index>& members : sparsity_components(h)) {
    const Index m = static_cast<Index>(members.size());
    if (m == 1) {
      values(column) = h(members[0], members[0]).real();
      vectors(members[0], column) = 1.0;
      ++column;
      continue;
    }
    ComplexMatrix block(m, m);
    for (Index j = 0; j < m; ++j) {
      for (Index i = 0; i < m; ++i) {
        block(i, j) = h(members[static_cast<std::size_t>(i)],
                        members[static_cast<std::size_t>(j)]);
      }
    }
    ComplexMatrix block_vectors = ComplexMatrix::Identity(m, m);
    jacobi_block(block, block_vectors, options);
    for (Index k = 0; k < m; ++k) {
      values(column) = block(k, k).real();
      for (Index i = 0; i < m; ++i) {
        vectors(members[static_cast<std::size_t>(i)], column) = block_vectors(i, k);
      }
      ++column;
    }
  }

  // Sort ascending; ties keep their first-occurrence column order.
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&values](Index lhs, Index rhs) { return values(lhs) < values(rhs); });

  SpectralDecomposition spec;
  spec.eigenvalues.resize(n);
  spec.unitary.resize(n, n);
  for (Index r = 0; r < n; ++r) {
    const Index k = order[static_cast<std::size_t>(r)];
    spec.eigenvalues(r) = values(k);
    spec.unitary.row(r) = vectors.col(k).adjoint();
  }
  return spec;
}

Propagator propagator(const SpectralDecomposition& spec, double t) {
  const Index n = spec.unitary.rows();
  if (t == 0.0) {
    return Propagator{0.0, ComplexMatrix::Identity(n, n)};
  }
  ComplexMatrix scaled = spec.unitary;
  for (Index k = 0; k < n; ++k) {
    scaled.row(k) *= std::exp(ComplexScalar(0.0, spec.eigenvalues(k) * t));
  }
  Propagator p;
  p.time = t;
  p.matrix.noalias() = spec.unitary.adjoint() * scaled;
  return p;
}

EvolvedAnnihilator evolved_annihilator(const ModeOperatorSet& ops,
                                       const SpectralDecomposition& spec, int mode,
                                       double t) {
  if (mode < 1 || mode > ops.n_modes()) {
    throw std::invalid_argument("evolved_annihilator: mode " + std::to_string(mode) +
                                " out of range");
  }
  const ComplexMatrix& a = ops.lowering[static_cast<std::size_t>(mode - 1)];
  EvolvedAnnihilator b;
  b.mode = mode;
  b.time = t;
  if (t == 0.0) {
    b.matrix = a;  // b_j(0) = a_j exactly
    return b;
  }
  b.matrix.noalias() = a * propagator(spec, -t).matrix;
  return b;
}

}  // namespace fermidyn

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qgspec/core/lin_op.hpp"

namespace qgspec {

struct LanczosOptions {
  double tol = 1e-8;                  // Ritz residual bound to call a pair converged
  int max_iter = 5000;                // total matrix-vector products across restarts
  std::uint64_t seed = 0x5eed2024u;   // start vector
  int full_reorth_limit = 5000;       // above this size the Krylov basis is capped
  int krylov_cap = 120;               // basis size per restart cycle when capped
};

enum class LanczosTarget {
  extremal_magnitude,  // both ends of the spectrum, for the spectral radius
  nearest_value,       // the Ritz value closest to a given shift
};

struct RitzPair {
  double value = 0.0;
  double residual_bound = 0.0;  // |beta_k s_k|
  Vector vector;                // unit Ritz vector
};

struct LanczosResult {
  std::vector<double> ritz_values;  // ascending, from the last cycle
  std::vector<RitzPair> wanted;     // min/max for extremal, nearest for nearest_value
  int iterations = 0;
  int restarts = 0;
  bool converged = false;
  bool invariant_subspace = false;  // beta fell to roundoff level
};

/// Symmetric Lanczos with full reorthogonalization (classical Gram-Schmidt,
/// with a DGKS second pass). For sizes above full_reorth_limit the basis is capped at
/// krylov_cap and the iteration restarts from the wanted Ritz vectors.
/// The operator must be symmetric.
LanczosResult lanczos(const LinOp& op, const LanczosOptions& opts,
                      LanczosTarget target = LanczosTarget::extremal_magnitude,
                      double shift = 0.0);

/// Eigenvalues of a symmetric tridiagonal matrix, ascending.
std::vector<double> tridiagonal_eigenvalues(const std::vector<double>& diag,
                                            const std::vector<double>& offdiag);

/// Unit eigenvector of a symmetric tridiagonal matrix for an (approximate)
/// eigenvalue, by shifted inverse iteration.
Vector tridiagonal_eigenvector(const std::vector<double>& diag,
                               const std::vector<double>& offdiag, double eigenvalue);

}  // namespace qgspec

#pragma once

#include "flopcheck/continuation.hpp"
#include "flopcheck/fm.hpp"
#include "flopcheck/givental.hpp"

#include <vector>

namespace flopcheck {

/// Both sides of the square evaluated at one z, for every basis line bundle.
struct PsiSamples {
  BigC z0;
  BigC log_z0;
  /// eval Ψ'(FM(E_k)) and eval Ψ(E_k).
  std::vector<CVector> flop_side, psi;
};

PsiSamples sample_psi(const FlopData& fd, const BigC& z0, const BigC& log_z0);

struct Commutativity {
  Real max_residual;
  std::vector<Real> residuals;
};

/// ‖Ψ'(FM E) - 𝕌 Ψ(E)‖ / ‖𝕌 Ψ(E)‖ over the basis line bundles.
Commutativity commutativity(const PsiSamples& s, const CMatrix& u);

}  // namespace flopcheck

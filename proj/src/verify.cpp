#include "flopcheck/verify.hpp"

namespace flopcheck {

PsiSamples sample_psi(const FlopData& fd, const BigC& z0, const BigC& log_z0) {
  PsiSamples s{z0, log_z0, {}, {}};
  for (const KClass& e : basis_line_bundles(fd.P)) {
    RatClass ch = chern_character(e);
    s.psi.push_back(eval_givental(psi_ch(ch), z0, log_z0));
    s.flop_side.push_back(eval_givental(psi_ch(fm_transform(fd, ch)), z0, log_z0));
  }
  return s;
}

Commutativity commutativity(const PsiSamples& s, const CMatrix& u) {
  Commutativity c{Real(0), {}};
  for (size_t k = 0; k < s.psi.size(); ++k) {
    CVector b = u * s.psi[k];
    Real res = inf_norm(CVector(s.flop_side[k] - b)) / inf_norm(b);
    c.residuals.push_back(res);
    c.max_residual = std::max(c.max_residual, res);
  }
  return c;
}

}  // namespace flopcheck

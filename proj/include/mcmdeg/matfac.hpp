#pragma once

#include <optional>
#include <string>

#include "mcmdeg/poly_matrix.hpp"
#include "mcmdeg/ring.hpp"

namespace mcmdeg {

/// (phi, psi) with phi*psi = psi*phi = f*I; represents coker(phi), rows being relations.
struct MatrixFactorization {
  HypersurfaceRing ring;
  PolyMatrix phi;
  PolyMatrix psi;

  std::size_t size() const { return phi.rows(); }
};

/// Builds an mf after rebasing both matrices onto the ring's variables.
MatrixFactorization make_mf(const HypersurfaceRing& ring, const PolyMatrix& phi, const PolyMatrix& psi);

bool verify_mf(const MatrixFactorization& mf);
MatrixFactorization swap(const MatrixFactorization& mf);
MatrixFactorization direct_sum(const MatrixFactorization& a, const MatrixFactorization& b);

/// True if some entry has a nonzero constant term, i.e. the factorization carries a trivial block
/// and the swap does not compute the syzygy.
bool has_unit_entry(const MatrixFactorization& mf);

/// psi = f * adj(phi) / det(phi), which equals adj(phi) / (c f^(a-1)) when det(phi) = c f^a.
/// Throws DetNotPowerOfF when det(phi) is a unit or the division is not exact.
MatrixFactorization complete_factorization(const PolyMatrix& phi, const HypersurfaceRing& ring);

/// Ring of f + u^2 + v^2 with the first unused names of the form u, v / u2, v2 / ...
HypersurfaceRing knorrer_ring(const HypersurfaceRing& ring);
std::pair<std::string, std::string> knorrer_names(const Variables& vars);

/// ([[phi, aI], [bI, psi]], [[psi, -aI], [-bI, phi]]) with a = u + i v, b = -u + i v.
MatrixFactorization knorrer(const MatrixFactorization& mf);

/// alpha * source.phi == target.phi * beta and beta * source.psi == target.psi * alpha modulo f.
struct MFMorphism {
  MatrixFactorization source;
  MatrixFactorization target;
  PolyMatrix alpha;
  PolyMatrix beta;
};

bool verify_morphism(const MFMorphism& m);
MFMorphism identity_morphism(const MatrixFactorization& mf);
/// second after first.
MFMorphism compose(const MFMorphism& first, const MFMorphism& second);
MFMorphism knorrer(const MFMorphism& m);

/// det(alpha) and det(beta), reduced mod f with every variable except t set to zero, are nonzero:
/// the morphism becomes an isomorphism once t is inverted.
bool unit_after_inverting_t(const MFMorphism& m, const std::string& t_name);

/// Matrix invertible over the local ring: det has a nonzero constant term.
bool is_local_unit_matrix(const PolyMatrix& p, const HypersurfaceRing& ring);

/// P * phi == phi2 * Q with P, Q invertible over R; then coker(phi) is isomorphic to coker(phi2).
struct EquivalenceWitness {
  PolyMatrix p;
  PolyMatrix q;
};

/// Checks P*phi == phi2*Q modulo f, or exactly over S when `exact` is set (the form
/// needed to lift the witness through knorrer).
bool verify_equivalence(const PolyMatrix& phi, const PolyMatrix& phi2, const EquivalenceWitness& w,
                        const HypersurfaceRing& ring, bool exact = false);

/// (diag(P, Q), diag(Q, P)) relates knorrer(a) to knorrer(b) whenever (P, Q) relates a to b exactly.
EquivalenceWitness knorrer(const EquivalenceWitness& w, const Variables& lifted_vars);

/// Witness for the syzygy side: swap(a) vs swap(b) from a witness for a vs b.
EquivalenceWitness swap(const EquivalenceWitness& w);

}  // namespace mcmdeg

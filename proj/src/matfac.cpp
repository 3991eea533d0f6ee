#include "mcmdeg/matfac.hpp"

#include "mcmdeg/errors.hpp"

namespace mcmdeg {

MatrixFactorization make_mf(const HypersurfaceRing& ring, const PolyMatrix& phi, const PolyMatrix& psi) {
  if (!phi.is_square() || !psi.is_square() || phi.rows() != psi.rows())
    throw DimensionMismatch("matrix factorization needs square matrices of equal size");
  if (phi.rows() == 0) throw DimensionMismatch("matrix factorization of size zero");
  return {ring, phi.rebase(ring.variables()), psi.rebase(ring.variables())};
}

bool verify_mf(const MatrixFactorization& mf) {
  if (!mf.phi.is_square() || !mf.psi.is_square() || mf.phi.rows() != mf.psi.rows())
    throw DimensionMismatch("verify_mf: size mismatch");
  PolyMatrix phi = mf.phi.rebase(mf.ring.variables());
  PolyMatrix psi = mf.psi.rebase(mf.ring.variables());
  PolyMatrix target = PolyMatrix::scalar(mf.ring.variables(), mf.size(), mf.ring.f());
  return phi * psi == target && psi * phi == target;
}

MatrixFactorization swap(const MatrixFactorization& mf) { return {mf.ring, mf.psi, mf.phi}; }

MatrixFactorization direct_sum(const MatrixFactorization& a, const MatrixFactorization& b) {
  if (!(a.ring == b.ring)) throw VariableMismatch("direct_sum: factorizations over different rings");
  return {a.ring, PolyMatrix::block_diag(a.phi, b.phi), PolyMatrix::block_diag(a.psi, b.psi)};
}

bool has_unit_entry(const MatrixFactorization& mf) {
  for (const auto* m : {&mf.phi, &mf.psi})
    for (std::size_t i = 0; i < m->rows(); ++i)
      for (std::size_t j = 0; j < m->cols(); ++j)
        if ((*m)(i, j).is_local_unit()) return true;
  return false;
}

MatrixFactorization complete_factorization(const PolyMatrix& phi_in, const HypersurfaceRing& ring) {
  if (!phi_in.is_square() || phi_in.rows() == 0) throw DimensionMismatch("complete_factorization: square matrix expected");
  PolyMatrix phi = phi_in.rebase(ring.variables());
  Polynomial det = phi.det();
  if (det.is_zero() || det.is_local_unit())
    throw DetNotPowerOfF("det(phi) = " + det.to_string() + " is not u*f^a with a >= 1");
  PolyMatrix adj = phi.adjugate();
  PolyMatrix psi(ring.variables(), phi.rows(), phi.cols());
  for (std::size_t i = 0; i < phi.rows(); ++i) {
    for (std::size_t j = 0; j < phi.cols(); ++j) {
      auto q = try_exact_divide(ring.f() * adj(i, j), det);
      if (!q) throw DetNotPowerOfF("det(phi) = " + det.to_string() + " does not divide f*adj(phi)");
      psi(i, j) = *std::move(q);
    }
  }
  MatrixFactorization mf{ring, phi, psi};
  if (!verify_mf(mf)) throw DetNotPowerOfF("completed pair is not a matrix factorization of f");
  return mf;
}

std::pair<std::string, std::string> knorrer_names(const Variables& vars) {
  if (!vars.contains("u") && !vars.contains("v")) return {"u", "v"};
  for (int k = 2;; ++k) {
    std::string u = "u" + std::to_string(k), v = "v" + std::to_string(k);
    if (!vars.contains(u) && !vars.contains(v)) return {u, v};
  }
}

HypersurfaceRing knorrer_ring(const HypersurfaceRing& ring) {
  auto [u, v] = knorrer_names(ring.variables());
  Variables vars = ring.variables().extended({u, v});
  Polynomial f = ring.f().rebase(vars) + Polynomial::variable(vars, u).pow(2) + Polynomial::variable(vars, v).pow(2);
  return HypersurfaceRing(ring.label() + "##", vars, f);
}

namespace {

struct KnorrerScalars {
  Polynomial a, b;
};

KnorrerScalars knorrer_scalars(const Variables& vars, const std::string& u, const std::string& v) {
  Polynomial pu = Polynomial::variable(vars, u);
  Polynomial iv = GaussianRational::imag_unit() * Polynomial::variable(vars, v);
  return {pu + iv, -pu + iv};
}

}  // namespace

MatrixFactorization knorrer(const MatrixFactorization& mf) {
  auto [u, v] = knorrer_names(mf.ring.variables());
  HypersurfaceRing lifted = knorrer_ring(mf.ring);
  const Variables& vars = lifted.variables();
  auto [a, b] = knorrer_scalars(vars, u, v);
  std::size_t n = mf.size();
  PolyMatrix phi = mf.phi.rebase(vars), psi = mf.psi.rebase(vars);
  PolyMatrix ai = PolyMatrix::scalar(vars, n, a), bi = PolyMatrix::scalar(vars, n, b);
  return {lifted, PolyMatrix::blocks(phi, ai, bi, psi), PolyMatrix::blocks(psi, -ai, -bi, phi)};
}

namespace {

// Common variable list for source and target (target may live over fewer variables).
const HypersurfaceRing& wider(const HypersurfaceRing& a, const HypersurfaceRing& b) {
  return a.variables().size() >= b.variables().size() ? a : b;
}

}  // namespace

bool verify_morphism(const MFMorphism& m) {
  std::size_t ns = m.source.size(), nt = m.target.size();
  for (const auto* x : {&m.alpha, &m.beta})
    if (x->rows() != nt || x->cols() != ns) throw DimensionMismatch("morphism matrices must be target x source");
  const HypersurfaceRing& ring = wider(m.source.ring, m.target.ring);
  if (!(ring.f() == m.source.ring.f().rebase(ring.variables())) ||
      !(ring.f() == m.target.ring.f().rebase(ring.variables())))
    throw VariableMismatch("morphism between factorizations of different f");
  const Variables& vars = ring.variables();
  PolyMatrix a = m.alpha.rebase(vars), b = m.beta.rebase(vars);
  PolyMatrix sphi = m.source.phi.rebase(vars), spsi = m.source.psi.rebase(vars);
  PolyMatrix tphi = m.target.phi.rebase(vars), tpsi = m.target.psi.rebase(vars);
  return (a * sphi - tphi * b).reduce(ring.f()).is_zero() && (b * spsi - tpsi * a).reduce(ring.f()).is_zero();
}

MFMorphism identity_morphism(const MatrixFactorization& mf) {
  PolyMatrix id = PolyMatrix::identity(mf.ring.variables(), mf.size());
  return {mf, mf, id, id};
}

MFMorphism compose(const MFMorphism& first, const MFMorphism& second) {
  const Variables& vars = wider(first.source.ring, second.target.ring).variables();
  return {first.source, second.target, second.alpha.rebase(vars) * first.alpha.rebase(vars),
          second.beta.rebase(vars) * first.beta.rebase(vars)};
}

MFMorphism knorrer(const MFMorphism& m) {
  MatrixFactorization s = knorrer(m.source), t = knorrer(m.target);
  const Variables& vars = wider(s.ring, t.ring).variables();
  PolyMatrix a = m.alpha.rebase(vars), b = m.beta.rebase(vars);
  return {s, t, PolyMatrix::block_diag(a, b), PolyMatrix::block_diag(b, a)};
}

bool unit_after_inverting_t(const MFMorphism& m, const std::string& t_name) {
  const HypersurfaceRing& ring = wider(m.source.ring, m.target.ring);
  std::vector<std::string> series;
  for (const auto& n : ring.variables().names())
    if (n != t_name) series.push_back(n);
  for (const auto* x : {&m.alpha, &m.beta}) {
    if (!x->is_square()) return false;
    Polynomial d = normal_form(x->rebase(ring.variables()).det(), ring.f());
    if (d.zero_out(series).is_zero()) return false;
  }
  return true;
}

bool is_local_unit_matrix(const PolyMatrix& p, const HypersurfaceRing& ring) {
  if (!p.is_square()) return false;
  return p.rebase(ring.variables()).det().is_local_unit();
}

bool verify_equivalence(const PolyMatrix& phi, const PolyMatrix& phi2, const EquivalenceWitness& w,
                        const HypersurfaceRing& ring, bool exact) {
  std::size_t n = phi.rows();
  if (!phi.is_square() || !phi2.is_square() || phi2.rows() != n || w.p.rows() != n || w.p.cols() != n ||
      w.q.rows() != n || w.q.cols() != n)
    throw DimensionMismatch("equivalence witness shape");
  const Variables& vars = ring.variables();
  PolyMatrix diff = w.p.rebase(vars) * phi.rebase(vars) - phi2.rebase(vars) * w.q.rebase(vars);
  bool equal = exact ? diff.is_zero() : diff.reduce(ring.f()).is_zero();
  return equal && is_local_unit_matrix(w.p, ring) && is_local_unit_matrix(w.q, ring);
}

EquivalenceWitness knorrer(const EquivalenceWitness& w, const Variables& lifted_vars) {
  PolyMatrix p = w.p.rebase(lifted_vars), q = w.q.rebase(lifted_vars);
  return {PolyMatrix::block_diag(p, q), PolyMatrix::block_diag(q, p)};
}

EquivalenceWitness swap(const EquivalenceWitness& w) { return {w.q, w.p}; }

}  // namespace mcmdeg

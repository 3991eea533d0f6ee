#include "mcmdeg/truncation.hpp"

#include <algorithm>

#include "mcmdeg/errors.hpp"
#include "mcmdeg/field.hpp"

namespace mcmdeg {

ArithmeticMode ArithmeticMode::parse(const std::string& text) {
  if (text == "rational") return rational();
  if (text == "modular") return modular_prime(kDefaultPrime);
  if (text.rfind("modular:", 0) == 0) {
    std::string digits = text.substr(8);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit)) throw Error("bad modulus in " + text);
    std::uint64_t p = std::stoull(digits);
    ModularField check(p);  // validates p
    return modular_prime(p);
  }
  throw Error("unknown arithmetic mode '" + text + "'");
}

std::string ArithmeticMode::name() const { return modular ? "modular:" + std::to_string(prime) : "rational"; }

ArithmeticMode default_mode(const HypersurfaceRing& ring) {
  return ring.krull_dimension() >= 3 ? ArithmeticMode::modular_prime(kDefaultPrime) : ArithmeticMode::rational();
}

namespace {

void monomials_of_degree(std::size_t nvars, unsigned deg, Exponent& cur, std::size_t pos, std::vector<Exponent>& out) {
  if (pos + 1 == nvars) {
    cur[pos] = deg;
    out.push_back(cur);
    cur[pos] = 0;
    return;
  }
  for (unsigned k = deg + 1; k-- > 0;) {
    cur[pos] = k;
    monomials_of_degree(nvars, deg - k, cur, pos + 1, out);
  }
  cur[pos] = 0;
}

}  // namespace

TruncationFrame::TruncationFrame(const HypersurfaceRing& ring, unsigned s) : ring_(ring), s_(s) {
  if (s == 0) throw Error("truncation level must be positive");
  Polynomial low = ring.f().lowest_form();
  lead_ = low.leading_exponent();
  GaussianRational lc = low.leading_coefficient();
  lead_inv_ = lc.inverse();
  tail_ = ring.f() - Polynomial::monomial(ring.variables(), lead_, lc);

  std::size_t n = ring.variables().size();
  prefix_.push_back(0);
  Exponent cur(n, 0);
  for (unsigned d = 0; d < s; ++d) {
    std::vector<Exponent> layer;
    monomials_of_degree(n, d, cur, 0, layer);
    for (auto& e : layer) {
      if (divides(lead_, e)) continue;
      index_.emplace(e, basis_.size());
      basis_.push_back(std::move(e));
    }
    prefix_.push_back(basis_.size());
  }
}

std::size_t TruncationFrame::dimension_below(unsigned t) const {
  if (t > s_) throw Error("level above frame");
  return prefix_[t];
}

const SparseCoords& TruncationFrame::monomial_coords(const Exponent& e) const {
  if (auto it = memo_.find(e); it != memo_.end()) return it->second;
  SparseCoords out;
  if (total_degree(e) < s_) {
    if (auto idx = index_.find(e); idx != index_.end()) {
      out.emplace_back(idx->second, GaussianRational(1));
    } else {
      // e = q*L and L == -(1/lc) * tail modulo f.
      Exponent q(e.size()), m(e.size());
      for (std::size_t i = 0; i < e.size(); ++i) q[i] = e[i] - lead_[i];
      std::map<std::size_t, GaussianRational> acc;
      for (const auto& [te, tc] : tail_.terms()) {
        for (std::size_t i = 0; i < e.size(); ++i) m[i] = q[i] + te[i];
        GaussianRational scale = -(tc * lead_inv_);
        for (const auto& [idx, v] : monomial_coords(m)) acc[idx] += scale * v;
      }
      for (auto& [idx, v] : acc)
        if (!v.is_zero()) out.emplace_back(idx, std::move(v));
    }
  }
  return memo_.emplace(e, std::move(out)).first->second;
}

SparseCoords TruncationFrame::coords(const Polynomial& p, unsigned t) const {
  std::size_t limit = dimension_below(t);
  std::map<std::size_t, GaussianRational> acc;
  Polynomial q = p.rebase(ring_.variables());
  for (const auto& [e, c] : q.terms()) {
    if (total_degree(e) >= t) continue;
    for (const auto& [idx, v] : monomial_coords(e))
      if (idx < limit) acc[idx] += c * v;
  }
  SparseCoords out;
  for (auto& [idx, v] : acc)
    if (!v.is_zero()) out.emplace_back(idx, std::move(v));
  return out;
}

PolyMatrix free_presentation(const HypersurfaceRing& ring, std::size_t rank) {
  return PolyMatrix(ring.variables(), 0, rank);
}

namespace {

// Frame coordinates converted once into the working field.
template <class Field>
class FieldFrame {
 public:
  using Elem = typename Field::Elem;
  using Row = typename SparseEchelon<Field>::Row;

  FieldFrame(const TruncationFrame& frame, const Field& field) : frame_(frame), field_(field) {}

  const std::vector<std::pair<std::size_t, Elem>>& coords(const Exponent& e) {
    auto it = cache_.find(e);
    if (it != cache_.end()) return it->second;
    std::vector<std::pair<std::size_t, Elem>> out;
    for (const auto& [idx, v] : frame_.monomial_coords(e)) {
      Elem x = field_.from(v);
      if (!field_.is_zero(x)) out.emplace_back(idx, x);
    }
    return cache_.emplace(e, std::move(out)).first->second;
  }

  /// All vectors b * row_i(mat) for basis monomials b of degree < t, in F^{cols * N_t}.
  std::vector<Row> row_multiples(const PolyMatrix& mat, unsigned t) {
    std::size_t n = frame_.dimension_below(t);
    const auto& basis = frame_.basis();
    std::vector<Row> out;
    Exponent m(frame_.ring().variables().size());
    PolyMatrix local = mat.rebase(frame_.ring().variables());
    std::vector<std::vector<std::pair<std::size_t, Elem>>> entries;  // converted coefficients per term
    for (std::size_t i = 0; i < local.rows(); ++i) {
      for (std::size_t bi = 0; bi < n; ++bi) {
        const Exponent& b = basis[bi];
        std::map<std::size_t, Elem> acc;
        for (std::size_t j = 0; j < local.cols(); ++j) {
          for (const auto& [e, c] : local(i, j).terms()) {
            for (std::size_t k = 0; k < m.size(); ++k) m[k] = e[k] + b[k];
            if (total_degree(m) >= t) continue;
            Elem cf = field_.from(c);
            for (const auto& [idx, v] : coords(m)) {
              if (idx >= n) continue;
              auto [slot, fresh] = acc.try_emplace(j * n + idx, field_.mul(cf, v));
              if (!fresh) slot->second = field_.add(slot->second, field_.mul(cf, v));
            }
          }
        }
        Row row;
        for (auto& [col, v] : acc)
          if (!field_.is_zero(v)) row.emplace_back(col, v);
        if (!row.empty()) out.push_back(std::move(row));
      }
    }
    return out;
  }

  SparseEchelon<Field> span(const PolyMatrix& mat, unsigned t) {
    SparseEchelon<Field> ech(field_);
    for (auto& row : row_multiples(mat, t)) ech.insert(std::move(row));
    return ech;
  }

  const Field& field() const { return field_; }

 private:
  const TruncationFrame& frame_;
  const Field& field_;
  std::map<Exponent, std::vector<std::pair<std::size_t, Elem>>> cache_;
};

template <class Field>
std::vector<long> lengths_in(const PolyMatrix& phi, const TruncationFrame& frame, const Field& field, unsigned from,
                             unsigned to) {
  FieldFrame<Field> ff(frame, field);
  std::vector<long> out;
  for (unsigned s = from; s <= to; ++s) {
    std::size_t n = frame.dimension_below(s);
    auto ech = ff.span(phi, s);
    out.push_back(static_cast<long>(phi.cols() * n) - static_cast<long>(ech.rank()));
  }
  return out;
}

std::vector<long> lengths_range(const PolyMatrix& phi, const TruncationFrame& frame, const ArithmeticMode& mode,
                                unsigned from, unsigned to) {
  if (mode.modular) {
    ModularField field(mode.prime);
    return lengths_in(phi, frame, field, from, to);
  }
  RationalField field;
  return lengths_in(phi, frame, field, from, to);
}

void check_over_ring(const PolyMatrix& phi, const HypersurfaceRing& ring) {
  for (std::size_t i = 0; i < phi.rows(); ++i)
    for (std::size_t j = 0; j < phi.cols(); ++j) phi(i, j).rebase(ring.variables());
}

// D-th finite difference at level s (1-based) with L(0) = 0.
long finite_difference(const std::vector<long>& lengths, int d, std::size_t s) {
  auto at = [&](long k) -> long { return k <= 0 ? 0 : lengths[static_cast<std::size_t>(k - 1)]; };
  long acc = 0, binom = 1;
  for (int k = 0; k <= d; ++k) {
    long term = binom * at(static_cast<long>(s) - k);
    acc += (k % 2) ? -term : term;
    binom = binom * (d - k) / (k + 1);
  }
  return acc;
}

}  // namespace

LengthProfile module_lengths(const PolyMatrix& phi, const HypersurfaceRing& ring, unsigned s_max,
                             const ArithmeticMode& mode) {
  check_over_ring(phi, ring);
  TruncationFrame frame(ring, s_max);
  return {lengths_range(phi, frame, mode, 1, s_max), ring.krull_dimension(), mode.name()};
}

MultiplicityReport multiplicity_oracle(const PolyMatrix& phi, const HypersurfaceRing& ring, unsigned s_max,
                                       std::optional<ArithmeticMode> mode) {
  check_over_ring(phi, ring);
  if (s_max == 0) s_max = default_s_max(ring);
  ArithmeticMode m = mode.value_or(default_mode(ring));
  int d = ring.krull_dimension();
  TruncationFrame frame(ring, s_max);
  MultiplicityReport rep;
  rep.modular = m.modular;
  rep.profile.dimension = d;
  rep.profile.mode = m.name();
  for (unsigned s = 1; s <= s_max; ++s) {
    rep.profile.lengths.push_back(lengths_range(phi, frame, m, s, s).front());
    rep.differences.push_back(finite_difference(rep.profile.lengths, d, s));
    std::size_t k = rep.differences.size();
    // The window only counts levels where the difference no longer reaches back past L(0).
    if (s >= static_cast<unsigned>(d) + 3 && rep.differences[k - 1] == rep.differences[k - 2] &&
        rep.differences[k - 2] == rep.differences[k - 3]) {
      rep.e = rep.differences.back();
      rep.stabilized_at = s;
      return rep;
    }
  }
  throw NoStabilization("multiplicity did not stabilize by s = " + std::to_string(s_max) + "; raise s_max");
}

nlohmann::json MultiplicityReport::to_json() const {
  return {{"op", "multiplicity"},
          {"e", e},
          {"lengths", profile.lengths},
          {"differences", differences},
          {"dimension", profile.dimension},
          {"stabilized_at", stabilized_at},
          {"mode", profile.mode},
          {"modular", modular}};
}

namespace {

template <class Field>
ExactnessLevel exactness_level(const PolyMatrix& phi_l, const PolyMatrix& phi_m, const PolyMatrix& phi_n,
                               const PolyMatrix& a, const PolyMatrix& b, const TruncationFrame& frame,
                               const Field& field, unsigned s) {
  FieldFrame<Field> ff(frame, field);
  std::size_t n = frame.dimension_below(s);
  ExactnessLevel lv;
  lv.s = s;
  auto u_l = ff.span(phi_l, s);
  auto u_m = ff.span(phi_m, s);
  auto u_n = ff.span(phi_n, s);
  lv.dim_l = static_cast<long>(phi_l.cols() * n - u_l.rank());
  lv.dim_m = static_cast<long>(phi_m.cols() * n - u_m.rank());
  lv.dim_n = static_cast<long>(phi_n.cols() * n - u_n.rank());

  auto all_in = [&](SparseEchelon<Field>& ech, const PolyMatrix& mat) {
    for (auto& row : ff.row_multiples(mat, s))
      if (!ech.contains(std::move(row))) return false;
    return true;
  };
  lv.a_well_defined = phi_l.rows() == 0 || all_in(u_m, phi_l * a);
  lv.b_well_defined = phi_m.rows() == 0 || all_in(u_n, phi_m * b);
  lv.composite_zero = all_in(u_n, a * b);

  auto image_rank = [&](SparseEchelon<Field> base, const PolyMatrix& mat) {
    std::size_t before = base.rank();
    for (auto& row : ff.row_multiples(mat, s)) base.insert(std::move(row));
    return std::pair{static_cast<long>(base.rank() - before), base.rank()};
  };
  auto [rank_a, total_m] = image_rank(u_m, a);
  auto [rank_b, total_n] = image_rank(u_n, b);
  (void)total_m;
  lv.rank_a = rank_a;
  lv.rank_b = rank_b;
  lv.b_surjective = total_n == phi_n.cols() * n;
  lv.middle_exact = lv.rank_a + lv.rank_b == lv.dim_m;
  return lv;
}

}  // namespace

ExactnessReport verify_exact_truncated(const PolyMatrix& phi_l, const PolyMatrix& phi_m, const PolyMatrix& phi_n,
                                       const PolyMatrix& a, const PolyMatrix& b, const HypersurfaceRing& ring,
                                       std::span<const unsigned> levels, std::optional<ArithmeticMode> mode) {
  if (a.rows() != phi_l.cols() || a.cols() != phi_m.cols())
    throw DimensionMismatch("A must be gens(L) x gens(M)");
  if (b.rows() != phi_m.cols() || b.cols() != phi_n.cols())
    throw DimensionMismatch("B must be gens(M) x gens(N)");
  ArithmeticMode m = mode.value_or(default_mode(ring));
  unsigned top = 1;
  for (unsigned s : levels) top = std::max(top, s);
  TruncationFrame frame(ring, top);
  ExactnessReport rep;
  rep.ring = ring.label();
  rep.mode = m.name();
  for (unsigned s : levels) {
    if (s == 0) throw Error("truncation level must be positive");
    if (m.modular) {
      ModularField field(m.prime);
      rep.levels.push_back(exactness_level(phi_l, phi_m, phi_n, a, b, frame, field, s));
    } else {
      RationalField field;
      rep.levels.push_back(exactness_level(phi_l, phi_m, phi_n, a, b, frame, field, s));
    }
  }
  return rep;
}

bool ExactnessReport::pass() const {
  return !levels.empty() && std::all_of(levels.begin(), levels.end(), [](const auto& l) { return l.pass(); });
}

std::optional<unsigned> ExactnessReport::first_failure() const {
  for (const auto& l : levels)
    if (!l.pass()) return l.s;
  return std::nullopt;
}

nlohmann::json ExactnessReport::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& l : levels) {
    out.push_back({{"op", "verify_exact_truncated"},
                   {"ring", ring},
                   {"s", l.s},
                   {"mode", mode},
                   {"dims", {{"L", l.dim_l}, {"M", l.dim_m}, {"N", l.dim_n}}},
                   {"ranks", {{"A", l.rank_a}, {"B", l.rank_b}}},
                   {"checks",
                    {{"A_well_defined", l.a_well_defined},
                     {"B_well_defined", l.b_well_defined},
                     {"composite_zero", l.composite_zero},
                     {"B_surjective", l.b_surjective},
                     {"middle_exact", l.middle_exact}}},
                   {"verdict", l.pass() ? "pass (truncated)" : "fail"}});
  }
  return out;
}

}  // namespace mcmdeg

#include "mcmdeg/order.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

#include "mcmdeg/errors.hpp"

namespace mcmdeg {

using nlohmann::json;

OrderEngine::OrderEngine(const Catalog& cat, std::vector<AtomicFact> facts, EngineBounds bounds)
    : cat_(cat), facts_(std::move(facts)), bounds_(bounds) {
  if (bounds_.n_max < 1) throw Error("n_max must be positive");
  classes_ = cat_.universe_classes();
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    index_[classes_[i]] = i;
    e_.push_back(cat_.get(classes_[i]).e);
  }
  for (const auto& f : facts_) {
    Compiled c;
    for (const auto& [k, n] : f.source.counts()) c.source.emplace_back(index_.at(k), n);
    for (const auto& [k, n] : f.target.counts()) c.target.emplace_back(index_.at(k), n);
    compiled_.push_back(std::move(c));
  }
}

OrderEngine make_engine(const Catalog& cat, EngineBounds bounds, const FactOptions& options) {
  return OrderEngine(cat, build_fact_store(cat, options).facts(), bounds);
}

OrderEngine::State OrderEngine::encode(const ModuleVector& v, long scale) const {
  State s(classes_.size(), '\0');
  for (const auto& [k, n] : v.counts()) {
    auto it = index_.find(k);
    if (it == index_.end()) throw Error(k.to_string() + " is outside the universe of " + cat_.ring.label());
    long c = n * scale;
    if (c > 255) throw Error("multiplicity vector too large for the search state");
    s[it->second] = static_cast<char>(c);
  }
  return s;
}

ModuleVector OrderEngine::decode(const State& s, long divisor) const {
  ModuleVector v;
  for (std::size_t i = 0; i < s.size(); ++i) {
    long c = static_cast<unsigned char>(s[i]);
    if (c) v.add(classes_[i], c / divisor);
  }
  return v;
}

bool OrderEngine::canonical_less(const ModuleVector& a, const ModuleVector& b) const {
  return encode(a, 1) > encode(b, 1);
}

std::vector<ModuleVector> OrderEngine::enumerate_E(long d) const {
  std::vector<ModuleVector> out;
  if (d < 0) return out;
  State cur(classes_.size(), '\0');
  std::function<void(std::size_t, long)> rec = [&](std::size_t i, long left) {
    if (left == 0) {
      out.push_back(decode(cur, 1));
      return;
    }
    if (i == classes_.size()) return;
    for (long k = left / e_[i]; k >= 0; --k) {
      cur[i] = static_cast<char>(k);
      rec(i + 1, left - k * e_[i]);
    }
    cur[i] = 0;
  };
  rec(0, d);
  return out;
}

void OrderEngine::search(const ModuleVector& g, long scale, std::map<ModuleVector, Membership>& out) {
  const State start = encode(g, scale);
  auto fits = [&](const State& s, const Compiled& c) {
    for (const auto& [i, n] : c.source)
      if (static_cast<unsigned char>(s[i]) < n) return false;
    return true;
  };
  std::vector<State> states{start};
  std::vector<std::int64_t> parent{-1};
  std::vector<std::size_t> via{0};
  std::unordered_map<State, std::size_t> seen{{start, 0}};

  bool any = std::any_of(compiled_.begin(), compiled_.end(), [&](const Compiled& c) { return fits(start, c); });
  bool capped = false;
  for (std::size_t head = 0; any && head < states.size(); ++head) {
    for (std::size_t f = 0; f < compiled_.size(); ++f) {
      const Compiled& c = compiled_[f];
      if (!fits(states[head], c)) continue;
      State next = states[head];
      for (const auto& [i, n] : c.source) next[i] = static_cast<char>(static_cast<unsigned char>(next[i]) - n);
      for (const auto& [i, n] : c.target) {
        long v = static_cast<unsigned char>(next[i]) + n;
        if (v > 255) throw Error("multiplicity vector too large for the search state");
        next[i] = static_cast<char>(v);
      }
      if (seen.count(next)) continue;
      if (states.size() >= bounds_.frontier_cap) {
        capped = true;
        break;
      }
      seen.emplace(next, states.size());
      states.push_back(std::move(next));
      parent.push_back(static_cast<std::int64_t>(head));
      via.push_back(f);
    }
    if (capped) break;
  }
  if (capped) {
    warnings_.push_back("frontier cap " + std::to_string(bounds_.frontier_cap) + " reached from " +
                        std::to_string(scale) + "*(" + g.to_string() + ")");
  }

  for (std::size_t i = 0; i < states.size(); ++i) {
    const State& s = states[i];
    bool divisible = std::all_of(s.begin(), s.end(), [&](char c) { return static_cast<unsigned char>(c) % scale == 0; });
    if (!divisible) continue;
    ModuleVector member = decode(s, scale);
    if (out.count(member)) continue;
    std::vector<std::size_t> steps;
    for (std::int64_t j = static_cast<std::int64_t>(i); parent[j] >= 0; j = parent[j]) steps.push_back(via[j]);
    std::reverse(steps.begin(), steps.end());
    Membership m;
    m.scale = scale;
    if (!steps.empty()) m.trace.push_back({std::move(steps), 1});
    out.emplace(std::move(member), std::move(m));
  }
}

const std::map<ModuleVector, Membership>& OrderEngine::direct(const ModuleVector& g, long k) {
  k = std::max(1L, k);
  auto key = std::make_pair(g, k);
  if (auto it = direct_memo_.find(key); it != direct_memo_.end()) return it->second;
  std::map<ModuleVector, Membership> out = k > 1 ? direct(g, k - 1) : std::map<ModuleVector, Membership>{};
  auto skey = std::make_pair(g, k);
  auto sit = scale_memo_.find(skey);
  if (sit == scale_memo_.end()) {
    std::map<ModuleVector, Membership> at;
    search(g, k, at);
    sit = scale_memo_.emplace(skey, std::move(at)).first;
  }
  for (const auto& [v, m] : sit->second) out.emplace(v, m);  // keeps the smaller scale
  return direct_memo_.emplace(key, std::move(out)).first->second;
}

namespace {

Membership compose(const Membership& first, const Membership& second) {
  Membership m;
  m.scale = first.scale * second.scale;
  for (const auto& s : first.trace) m.trace.push_back({s.steps, s.repeat * second.scale});
  for (const auto& s : second.trace) m.trace.push_back({s.steps, s.repeat * first.scale});
  return m;
}

}  // namespace

ClosureResult OrderEngine::closure(const ModuleVector& g, std::optional<long> k_opt) {
  long k = k_opt.value_or(bounds_.n_max);
  ClosureResult r;
  r.generator = g;
  r.d = cat_.total_e(g);
  r.n_max = k;
  std::size_t warn_mark = warnings_.size();
  r.members.emplace(g, Membership{});
  std::deque<ModuleVector> work{g};
  while (!work.empty()) {
    ModuleVector m = work.front();
    work.pop_front();
    Membership base = r.members.at(m);
    for (const auto& [n, mem] : direct(m, k)) {
      if (r.members.count(n)) continue;
      r.members.emplace(n, compose(base, mem));
      work.push_back(n);
    }
  }
  for (const auto& v : enumerate_E(r.d))
    if (!r.members.count(v)) r.not_found.push_back(v);
  r.warnings.assign(warnings_.begin() + static_cast<std::ptrdiff_t>(warn_mark), warnings_.end());
  return r;
}

std::vector<ModuleVector> OrderEngine::closure_of_set(const std::vector<ModuleVector>& xs, std::optional<long> k_opt) {
  long k = k_opt.value_or(bounds_.n_max);
  std::set<ModuleVector> seen(xs.begin(), xs.end());
  std::vector<ModuleVector> work(xs.begin(), xs.end());
  while (!work.empty()) {
    ModuleVector m = work.back();
    work.pop_back();
    for (const auto& [n, mem] : direct(m, k))
      if (seen.insert(n).second) work.push_back(n);
  }
  std::vector<ModuleVector> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), [&](const ModuleVector& a, const ModuleVector& b) { return canonical_less(a, b); });
  return out;
}

bool OrderEngine::replay(const ModuleVector& g, const ModuleVector& member, const Membership& m, std::string* why) const {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (m.scale < 1) return fail("scale must be positive");
  ModuleVector cur = g.scaled(m.scale);
  const long e0 = cat_.total_e(cur);
  for (const auto& seg : m.trace) {
    for (long r = 0; r < seg.repeat; ++r) {
      for (std::size_t idx : seg.steps) {
        if (idx >= facts_.size()) return fail("unknown fact index");
        const AtomicFact& f = facts_[idx];
        if (!cur.contains(f.source)) return fail(f.id + " does not apply to " + cur.to_string());
        cur = cur.minus(f.source) + f.target;
        if (cat_.total_e(cur) != e0) return fail("multiplicity changed after " + f.id);
      }
    }
  }
  if (!(cur == member.scaled(m.scale))) return fail("trace ends at " + cur.to_string());
  return true;
}

DecompositionReport OrderEngine::decompose_E(long d, const std::string& rule) {
  DecompositionReport rep;
  rep.ring = cat_.ring.label();
  rep.d = d;
  rep.N_max = cat_.n_max;
  rep.n_max = bounds_.n_max;
  rep.generator_rule = rule;
  std::vector<ModuleVector> universe = enumerate_E(d);
  if (rule == "formula") {
    rep.generators = cat_.generators(d);
  } else if (rule == "all") {
    rep.generators = universe;
  } else {
    throw Error("unknown generator rule " + rule + " (expected formula or all)");
  }
  std::sort(rep.generators.begin(), rep.generators.end(),
            [&](const ModuleVector& a, const ModuleVector& b) { return canonical_less(a, b); });
  std::size_t warn_mark = warnings_.size();

  std::map<ModuleVector, std::pair<ModuleVector, Membership>> covered;
  auto uncovered = [&] {
    return static_cast<std::size_t>(std::count_if(universe.begin(), universe.end(),
                                                  [&](const ModuleVector& v) { return !covered.count(v); }));
  };
  for (long k = 1; k <= bounds_.n_max && uncovered() > 0; ++k) {
    for (const auto& g : rep.generators)
      for (const auto& [v, m] : direct(g, k))
        if (!covered.count(v)) covered.emplace(v, std::make_pair(g, m));
    if (uncovered() == 0) break;
    for (const auto& g : rep.generators) {
      ClosureResult c = closure(g, k);
      for (const auto& [v, m] : c.members)
        if (!covered.count(v)) covered.emplace(v, std::make_pair(g, m));
    }
  }
  for (const auto& v : universe) {
    DecompositionEntry e;
    e.member = v;
    if (auto it = covered.find(v); it != covered.end()) {
      e.covered_by = it->second.first;
      e.membership = it->second.second;
    } else {
      rep.unresolved.push_back(v);
    }
    rep.entries.push_back(std::move(e));
  }
  rep.warnings.assign(warnings_.begin() + static_cast<std::ptrdiff_t>(warn_mark), warnings_.end());
  return rep;
}

// ---------------------------------------------------------------------------------------------
// Kuratowski axioms

namespace {

using Mask = std::vector<std::uint64_t>;

Mask empty_mask(std::size_t n) { return Mask((n + 63) / 64, 0); }
void set_bit(Mask& m, std::size_t i) { m[i / 64] |= std::uint64_t{1} << (i % 64); }
bool test_bit(const Mask& m, std::size_t i) { return (m[i / 64] >> (i % 64)) & 1u; }
Mask unite(Mask a, const Mask& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] |= b[i];
  return a;
}
bool subset(const Mask& a, const Mask& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

}  // namespace

json AxiomReport::to_json() const {
  return {{"universe_size", universe_size},
          {"subsets_checked", subsets_checked},
          {"pairs_checked", pairs_checked},
          {"exhaustive", exhaustive},
          {"empty_set", empty_set},
          {"extensive", extensive},
          {"additive", additive},
          {"idempotent", idempotent},
          {"generic_point", generic_point},
          {"consistent", consistent},
          {"violations", violations},
          {"pass", pass()}};
}

AxiomReport OrderEngine::check_topology_axioms(const std::vector<ModuleVector>& universe, std::size_t exhaustive_limit,
                                               std::size_t samples, std::uint64_t seed) {
  AxiomReport rep;
  const std::size_t n = universe.size();
  rep.universe_size = n;
  std::map<ModuleVector, std::size_t> pos;
  for (std::size_t i = 0; i < n; ++i) pos[universe[i]] = i;

  // one-step successor sets inside the universe
  std::vector<std::vector<std::size_t>> succ(n);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [v, m] : direct(universe[i], bounds_.n_max))
      if (auto it = pos.find(v); it != pos.end()) succ[i].push_back(it->second);

  auto close = [&](const Mask& x) {
    Mask out = x;
    std::vector<std::size_t> work;
    for (std::size_t i = 0; i < n; ++i)
      if (test_bit(x, i)) work.push_back(i);
    while (!work.empty()) {
      std::size_t i = work.back();
      work.pop_back();
      for (std::size_t j : succ[i])
        if (!test_bit(out, j)) {
          set_bit(out, j);
          work.push_back(j);
        }
    }
    return out;
  };
  auto name = [&](const Mask& m) {
    std::string s = "{";
    for (std::size_t i = 0; i < n; ++i)
      if (test_bit(m, i)) s += (s.size() > 1 ? ", " : "") + universe[i].to_string();
    return s + "}";
  };
  auto violation = [&](bool& flag, const std::string& what) {
    flag = false;
    if (rep.violations.size() < 20) rep.violations.push_back(what);
  };

  // singletons, via closure() and via the worklist
  std::vector<Mask> single(n, empty_mask(n));
  for (std::size_t i = 0; i < n; ++i) {
    Mask x = empty_mask(n);
    set_bit(x, i);
    single[i] = close(x);
    ClosureResult c = closure(universe[i]);
    Mask via_closure = empty_mask(n);
    for (const auto& [v, m] : c.members)
      if (auto it = pos.find(v); it != pos.end()) set_bit(via_closure, it->second);
    if (via_closure != single[i]) violation(rep.consistent, "closure(" + universe[i].to_string() + ") disagrees");
  }

  Mask none = empty_mask(n);
  if (close(none) != none) violation(rep.empty_set, "C(empty) is not empty");

  auto check_set = [&](const Mask& x) {
    Mask cx = close(x);
    if (!subset(x, cx)) violation(rep.extensive, name(x) + " not inside its closure");
    if (close(cx) != cx) violation(rep.idempotent, "C(C(" + name(x) + ")) != C(" + name(x) + ")");
    Mask u = empty_mask(n);
    for (std::size_t i = 0; i < n; ++i)
      if (test_bit(x, i)) u = unite(u, single[i]);
    if (u != cx) violation(rep.additive, "C(" + name(x) + ") is not the union of point closures");
    ++rep.subsets_checked;
    return cx;
  };

  if (n <= exhaustive_limit && n < 63) {
    // C(X) = union of C({x}) for every X gives C(X u Y) = C(X) u C(Y) for every pair
    rep.exhaustive = true;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
      Mask x = empty_mask(n);
      if (!x.empty()) x[0] = bits;
      check_set(x);
    }
  } else {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(0.5);
    for (std::size_t s = 0; s < samples; ++s) {
      Mask x = empty_mask(n), y = empty_mask(n);
      for (std::size_t i = 0; i < n; ++i) {
        if (coin(rng)) set_bit(x, i);
        if (coin(rng)) set_bit(y, i);
      }
      Mask cx = check_set(x), cy = check_set(y);
      Mask cxy = check_set(unite(x, y));
      if (cxy != unite(cx, cy)) violation(rep.additive, "C(X u Y) != C(X) u C(Y) for X = " + name(x));
      ++rep.pairs_checked;
    }
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (test_bit(single[i], j) && !subset(single[j], single[i]))
        violation(rep.generic_point, universe[j].to_string() + " in C(" + universe[i].to_string() + ") but not C(...) inside");
  return rep;
}

Graph OrderEngine::export_graph(const std::vector<ModuleVector>& universe) {
  Graph g;
  g.nodes = universe;
  std::map<ModuleVector, std::size_t> pos;
  for (std::size_t i = 0; i < universe.size(); ++i) pos[universe[i]] = i;
  for (std::size_t i = 0; i < universe.size(); ++i) {
    for (const auto& [v, m] : direct(universe[i], bounds_.n_max)) {
      auto it = pos.find(v);
      if (it == pos.end() || it->second == i) continue;
      Graph::Edge e{i, it->second, m.scale, {}};
      for (const auto& seg : m.trace)
        for (std::size_t s : seg.steps) e.facts.push_back(facts_[s].id);
      g.edges.push_back(std::move(e));
    }
  }
  std::sort(g.edges.begin(), g.edges.end(),
            [](const Graph::Edge& a, const Graph::Edge& b) { return std::tie(a.from, a.to) < std::tie(b.from, b.to); });
  return g;
}

// ---------------------------------------------------------------------------------------------
// JSON

namespace {

json trace_json(const Membership& m, const OrderEngine& engine) {
  json t = json::array();
  for (const auto& seg : m.trace) {
    json steps = json::array();
    for (std::size_t s : seg.steps) steps.push_back(engine.facts()[s].id);
    t.push_back({{"repeat", seg.repeat}, {"steps", steps}});
  }
  return t;
}

json vector_list(const std::vector<ModuleVector>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(v.to_string());
  return a;
}

}  // namespace

json to_json(const ClosureResult& r, const OrderEngine& engine) {
  std::vector<ModuleVector> order;
  for (const auto& [v, m] : r.members) order.push_back(v);
  std::sort(order.begin(), order.end(),
            [&](const ModuleVector& a, const ModuleVector& b) { return engine.canonical_less(a, b); });
  json members = json::array();
  for (const auto& v : order) {
    const Membership& m = r.members.at(v);
    members.push_back({{"vector", v.to_string()}, {"scale", m.scale}, {"trace", trace_json(m, engine)}});
  }
  return {{"ring", engine.catalog().ring.label()},
          {"d", r.d},
          {"N_max", engine.catalog().n_max},
          {"n_max", r.n_max},
          {"generators", json::array({r.generator.to_string()})},
          {"members", members},
          {"unresolved", vector_list(r.not_found)},
          {"unresolved_label", kNotFoundLabel},
          {"warnings", r.warnings}};
}

json to_json(const DecompositionReport& r, const OrderEngine& engine) {
  json members = json::array();
  for (const auto& e : r.entries) {
    if (!e.covered_by) continue;
    members.push_back({{"vector", e.member.to_string()},
                       {"generator", e.covered_by->to_string()},
                       {"scale", e.membership.scale},
                       {"trace", trace_json(e.membership, engine)}});
  }
  return {{"ring", r.ring},
          {"d", r.d},
          {"N_max", r.N_max},
          {"n_max", r.n_max},
          {"generator_rule", r.generator_rule},
          {"generators", vector_list(r.generators)},
          {"E_size", r.entries.size()},
          {"members", members},
          {"unresolved", vector_list(r.unresolved)},
          {"unresolved_label", kUnresolvedLabel},
          {"complete", r.complete()},
          {"warnings", r.warnings}};
}

json to_json(const Graph& g) {
  json edges = json::array();
  for (const auto& e : g.edges)
    edges.push_back({{"from", g.nodes[e.from].to_string()},
                     {"to", g.nodes[e.to].to_string()},
                     {"scale", e.scale},
                     {"facts", e.facts}});
  return {{"nodes", vector_list(g.nodes)}, {"edges", edges}};
}

std::string to_dot(const Graph& g) {
  std::ostringstream os;
  os << "digraph degenerations {\n";
  for (std::size_t i = 0; i < g.nodes.size(); ++i) os << "  n" << i << " [label=\"" << g.nodes[i].to_string() << "\"];\n";
  for (const auto& e : g.edges) {
    std::string facts;
    for (const auto& f : e.facts) facts += (facts.empty() ? "" : ", ") + f;
    os << "  n" << e.from << " -> n" << e.to << " [label=\"n=" << e.scale << "\", tooltip=\"" << facts << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace mcmdeg

#include "approx/modules.hpp"

#include "approx/errors.hpp"
#include "approx/ideal.hpp"
#include "detail/parallel.hpp"

#include <atomic>
#include <cctype>
#include <initializer_list>
#include <numeric>
#include <random>

namespace approx {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Ring group_ring(const std::vector<std::uint64_t>& orders) {
  if (orders.size() == 1) return Ring::residue(orders[0]);
  std::vector<Ring> fs;
  for (auto n : orders) fs.push_back(Ring::residue(n));
  return Ring::product(std::move(fs));
}

Index index_in(const Ring& ring, const RingElem& e) {
  return static_cast<Index>(to_elem_set(ring, {e}).find_first());
}

Verdict first_failing(std::uint64_t n, bool parallel,
                      const std::function<std::optional<std::string>(std::uint64_t)>& test) {
  auto hit = detail::first_hit<std::string>(n, parallel, test);
  return hit ? Verdict::fail(*hit) : Verdict::ok();
}

std::uint64_t scalar_span(const Module& a, const Module& b) {
  return std::lcm(a.exponent(), b.exponent());
}

void require_same_scalars(const Module& a, const Module& b) {
  if (a.scalars().to_string() != b.scalars().to_string())
    throw PreconditionError("scalar-mismatch", "modules over " + a.scalars().to_string() +
                                                   " and " + b.scalars().to_string());
}

}  // namespace

// ------------------------------------------------------------------ Module

Module::Module(Carrier c, Ring scalars, std::vector<std::uint64_t> orders, std::string name)
    : carrier_(std::move(c)),
      scalars_(std::move(scalars)),
      orders_(std::move(orders)),
      name_(std::move(name)) {}

std::optional<std::string> find_module_axiom_violation(const Carrier& c) {
  const std::size_t e = c.actions.size();
  if (e == 0) return "no scalar actions";
  const auto& act = c.actions;
  auto L = [&](Index x) { return c.labels[x]; };
  for (Index x = 0; x < c.size; ++x)
    if (act[1 % e][x] != x) return "1 * " + L(x) + " != " + L(x);
  for (std::size_t r = 0; r < e; ++r)
    for (std::size_t s = 0; s < e; ++s)
      for (Index x = 0; x < c.size; ++x) {
        if (act[(r + s) % e][x] != c.plus(act[r][x], act[s][x]))
          return "(" + std::to_string(r) + " + " + std::to_string(s) + ") * " + L(x) +
                 " != r x + s x";
        if (act[(r * s) % e][x] != act[r][act[s][x]])
          return "(" + std::to_string(r) + " * " + std::to_string(s) + ") * " + L(x) +
                 " != r (s x)";
      }
  for (std::size_t r = 0; r < e; ++r)
    for (Index x = 0; x < c.size; ++x)
      for (Index y = 0; y < c.size; ++y)
        if (act[r][c.plus(x, y)] != c.plus(act[r][x], act[r][y]))
          return std::to_string(r) + " * (" + L(x) + " + " + L(y) + ") != r x + r y";
  return std::nullopt;
}

Module Module::cyclic_product(std::vector<std::uint64_t> orders, const Ring& scalars) {
  if (orders.empty()) throw PreconditionError("empty-module", "no cyclic factors");
  std::uint64_t size = 1;
  for (auto n : orders) {
    if (n < 2) throw PreconditionError("bad-order", "cyclic factor of order " + std::to_string(n));
    size *= n;
    if (size > kMaxModuleSize)
      throw ResourceLimit("module has more than " + std::to_string(kMaxModuleSize) + " elements");
  }
  std::uint64_t e = 1;
  for (auto n : orders) e = std::lcm(e, n);
  switch (scalars.kind()) {
    case RingKind::Integers:
      break;
    case RingKind::Residue: {
      const auto n = scalars.residue_modulus();
      if (n % e)
        throw PreconditionError("action-incompatible", std::to_string(n) +
                                                           " does not annihilate the group");
      e = n;
      break;
    }
    default:
      throw Unsupported("modules over " + scalars.to_string() + " (scalars must be Z or Z/n)");
  }
  Ring g = group_ring(orders);
  const FiniteRing& fr = g.finite();
  Carrier c;
  c.size = fr.size();
  c.zero = fr.zero();
  c.add.resize(c.size * c.size);
  c.neg.resize(c.size);
  for (Index a = 0; a < c.size; ++a) {
    c.labels.push_back(fr.label(a));
    c.neg[a] = fr.neg(a);
    for (Index b = 0; b < c.size; ++b) c.add[a * c.size + b] = fr.add(a, b);
  }
  for (std::uint64_t r = 0; r < e; ++r) {
    Index ri = index_in(g, g.from_integer(BigInt(r)));
    std::vector<Index> m(c.size);
    for (Index x = 0; x < c.size; ++x) m[x] = fr.mul(ri, x);
    c.actions.push_back(std::move(m));
    c.action_labels.push_back(std::to_string(r));
  }
  std::string name;
  for (auto n : orders) name += (name.empty() ? "Z/" : "xZ/") + std::to_string(n);
  if (auto v = find_module_axiom_violation(c)) throw PreconditionError("not-module", *v);
  return Module(std::move(c), scalars, std::move(orders), std::move(name));
}

Module Module::parse(std::string_view text, const Ring& scalars) {
  std::vector<std::uint64_t> orders;
  for (auto part : split_top_level(text, 'x')) {
    std::size_t off = static_cast<std::size_t>(part.data() - text.data());
    auto t = trim(part);
    if (t.size() < 3 || t.substr(0, 2) != "Z/")
      throw ParseError("expected Z/n in a module", off);
    std::uint64_t n = 0;
    for (char ch : t.substr(2)) {
      if (!std::isdigit(static_cast<unsigned char>(ch)))
        throw ParseError("expected a cyclic order after Z/", off);
      n = n * 10 + static_cast<std::uint64_t>(ch - '0');
      if (n > kMaxModuleSize) throw ResourceLimit("cyclic factor above the module cap");
    }
    orders.push_back(n);
  }
  return cyclic_product(std::move(orders), scalars);
}

Module Module::from_carrier(Carrier c, Ring scalars, std::string name) {
  if (auto v = find_module_axiom_violation(c)) throw PreconditionError("not-module", *v);
  return Module(std::move(c), std::move(scalars), {}, std::move(name));
}

ElemSet Module::full_set() const {
  ElemSet s(size());
  s.set();
  return s;
}

ElemSet Module::singleton(Index x) const {
  ElemSet s(size());
  s.set(x);
  return s;
}

ElemSet Module::image(std::uint64_t r, const ElemSet& a) const {
  return carrier_.image(r % exponent(), a);
}

Index Module::parse_element(std::string_view text) const {
  if (orders_.empty())
    throw PreconditionError("derived-module", "elements of " + name_ + " cannot be parsed");
  Ring g = group_ring(orders_);
  return index_in(g, g.parse_element(trim(text)));
}

ElemSet Module::parse_subset(std::string_view text) const {
  auto t = trim(text);
  if (t == "M") return full_set();
  ElemSet out(size());
  if (!t.empty() && t.front() == '{') {
    if (t.back() != '}') throw ParseError("unterminated set", t.size());
    auto body = trim(t.substr(1, t.size() - 2));
    if (body.empty()) return out;
    for (auto part : split_top_level(body)) out.set(parse_element(part));
    return out;
  }
  for (auto part : split_top_level(t)) out.set(parse_element(part));
  return submodule(out);
}

// --------------------------------------------------------------- closures

ModuleClosureSpec ModuleClosureSpec::parse(const Module& m, std::string_view text) {
  auto t = trim(text);
  if (t == "gen") return {GeneratedSubmodule{}};
  auto shifted = [&](std::string_view prefix) -> std::optional<ElemSet> {
    if (t.substr(0, prefix.size()) != prefix) return std::nullopt;
    ElemSet n0 = m.parse_subset(t.substr(prefix.size()));
    if (!m.carrier().is_stable(n0))
      throw PreconditionError("not-submodule", "N0 = " + m.format(n0) + " is not a submodule");
    return n0;
  };
  if (auto n0 = shifted("shift:N=")) return {SubmoduleShift{*n0}};
  if (auto n0 = shifted("setshift:N=")) return {SubmoduleSetShift{*n0}};
  throw ParseError("unknown module closure '" + std::string(t) + "'", 0);
}

std::string ModuleClosureSpec::to_string(const Module& m) const {
  if (std::holds_alternative<SubmoduleShift>(kind))
    return "shift:N=" + m.format(std::get<SubmoduleShift>(kind).n0);
  if (std::holds_alternative<SubmoduleSetShift>(kind))
    return "setshift:N=" + m.format(std::get<SubmoduleSetShift>(kind).n0);
  return "gen";
}

ApproxModule ApproxModule::of(const Module& m, const ModuleClosureSpec& spec) {
  auto mp = std::make_shared<const Module>(m);
  SetClosure cl;
  if (std::holds_alternative<SubmoduleShift>(spec.kind)) {
    ElemSet n0 = std::get<SubmoduleShift>(spec.kind).n0;
    cl = [mp, n0](const ElemSet& x) { return mp->sumset(mp->submodule(x), n0); };
  } else if (std::holds_alternative<SubmoduleSetShift>(spec.kind)) {
    ElemSet n0 = std::get<SubmoduleSetShift>(spec.kind).n0;
    cl = [mp, n0](const ElemSet& x) { return mp->sumset(x, n0); };
  } else {
    cl = [mp](const ElemSet& x) { return mp->submodule(x); };
  }
  return {mp, std::move(cl), spec.to_string(m)};
}

ApproxModule ApproxModule::custom(const Module& m, SetClosure cl, std::string name) {
  return {std::make_shared<const Module>(m), std::move(cl), std::move(name)};
}

AxiomReport check_cm_axioms(const ApproxModule& am, const AxiomMode& mode, CheckOptions opt) {
  opt.module_names = true;
  return check_axioms_carrier(am.m().carrier(), am.cl, mode, opt);
}

Verdict is_approx_submodule(const ApproxModule& am, const ElemSet& n) {
  const Module& m = am.m();
  if (!m.is_subgroup(n))
    throw PreconditionError("not-subgroup", "N = " + m.format(n) + " is not a subgroup");
  ElemSet c = am.cl(n);
  for (std::uint64_t r = 0; r < m.exponent(); ++r)
    for (Index x : members(n)) {
      Index y = m.act(r, x);
      if (!c.test(y))
        return Verdict::fail(std::to_string(r) + " * " + m.label(x) + " = " + m.label(y) +
                             " is not in cl(N) = " + m.format(c));
    }
  return Verdict::ok();
}

// -------------------------------------------------------------- quotients

ElemSet ModuleQuotient::classes_of(const ElemSet& xs) const {
  ElemSet out(size());
  for (Index x : members(xs)) out.set(class_of[x]);
  return out;
}

ElemSet ModuleQuotient::preimage(const ElemSet& classes) const {
  ElemSet out(class_of.size());
  for (Index x = 0; x < class_of.size(); ++x)
    if (classes.test(class_of[x])) out.set(x);
  return out;
}

ElemSet ModuleQuotient::induced_closure(const ElemSet& classes) const {
  return classes_of(base.cl(preimage(classes)));
}

ModuleQuotient relation_quotient(const ApproxModule& am, const ElemSet& relation, bool parallel) {
  const Module& m = am.m();
  const std::size_t n = m.size();
  ModuleQuotient q{am, relation, std::vector<Index>(n, 0), {}, Verdict::ok(), Verdict::ok(),
                   std::nullopt};
  const auto rel = members(relation);

  // Connected components of x -- x + c, c in the relation.
  constexpr Index kUnset = ~Index{0};
  std::vector<Index> cls(n, kUnset);
  std::vector<std::vector<Index>> comps;
  for (Index x = 0; x < n; ++x) {
    if (cls[x] != kUnset) continue;
    const auto id = static_cast<Index>(comps.size());
    comps.emplace_back();
    std::vector<Index> stack{x};
    cls[x] = id;
    while (!stack.empty()) {
      Index y = stack.back();
      stack.pop_back();
      comps[id].push_back(y);
      for (Index c : rel)
        for (Index z : {m.add(y, c), m.sub(y, c)})
          if (cls[z] == kUnset) {
            cls[z] = id;
            stack.push_back(z);
          }
    }
    q.reps.push_back(x);
  }
  q.class_of = cls;

  auto L = [&](Index x) { return m.label(x); };
  if (!relation.test(m.zero())) {
    q.equivalence = Verdict::fail("0 is not in the relation set, so x ~ x fails");
  } else {
    for (Index c : rel)
      if (!relation.test(m.neg(c))) {
        q.equivalence = Verdict::fail("0 ~ " + L(c) + " but not " + L(c) + " ~ 0");
        break;
      }
  }
  auto chain_gap = [&]() -> std::optional<std::string> {
    for (const auto& comp : comps)
      for (Index x : comp)
        for (Index y : comp)
          if (!relation.test(m.sub(y, x)))
            return L(x) + " and " + L(y) + " are linked by a chain but " + L(y) + " - " + L(x) +
                   " is not in the relation set";
    return std::nullopt;
  };
  if (q.equivalence)
    if (auto gap = chain_gap()) q.equivalence = Verdict::fail(*gap);
  const std::uint64_t e = m.exponent();
  q.well_defined = first_failing(n, parallel, [&](std::uint64_t xi) -> std::optional<std::string> {
    const auto x = static_cast<Index>(xi);
    for (Index x2 : comps[cls[x]]) {
      if (x2 == x) continue;
      for (Index y = 0; y < n; ++y)
        if (cls[m.add(x, y)] != cls[m.add(x2, y)])
          return L(x) + " ~ " + L(x2) + " but " + L(x) + " + " + L(y) + " and " + L(x2) +
                 " + " + L(y) + " fall in different classes";
      for (std::uint64_t r = 0; r < e; ++r)
        if (cls[m.act(r, x)] != cls[m.act(r, x2)])
          return L(x) + " ~ " + L(x2) + " but their multiples by " + std::to_string(r) +
                 " fall in different classes";
    }
    return std::nullopt;
  });

  if (q.equivalence && q.well_defined) {
    const std::size_t k = q.reps.size();
    Carrier c;
    c.size = k;
    c.zero = cls[m.zero()];
    c.add.resize(k * k);
    c.neg.resize(k);
    for (Index a = 0; a < k; ++a) {
      c.labels.push_back("[" + L(q.reps[a]) + "]");
      c.neg[a] = cls[m.neg(q.reps[a])];
      for (Index b = 0; b < k; ++b) c.add[a * k + b] = cls[m.add(q.reps[a], q.reps[b])];
    }
    for (std::uint64_t r = 0; r < e; ++r) {
      std::vector<Index> act(k);
      for (Index a = 0; a < k; ++a) act[a] = cls[m.act(r, q.reps[a])];
      c.actions.push_back(std::move(act));
      c.action_labels.push_back(m.carrier().action_labels[r]);
    }
    Module qm = Module::from_carrier(std::move(c), m.scalars(), "(" + m.name() + ")/~");
    auto base = am;
    auto classes = cls;
    const auto k2 = k;
    SetClosure induced = [base, classes, k2](const ElemSet& s) {
      ElemSet pre(classes.size());
      for (Index x = 0; x < classes.size(); ++x)
        if (s.test(classes[x])) pre.set(x);
      ElemSet out(k2);
      for (Index x : members(base.cl(pre))) out.set(classes[x]);
      return out;
    };
    q.module = ApproxModule::custom(qm, std::move(induced), "induced from " + am.closure_name);
  }
  return q;
}

ModuleQuotient module_quotient(const ApproxModule& am, const ElemSet& n, bool parallel) {
  auto v = is_approx_submodule(am, n);
  if (!v) throw PreconditionError("not-approx-submodule", v.witness);
  return relation_quotient(am, am.cl(n), parallel);
}

// ------------------------------------------------------------ morphisms

Verdict ApproxHom::check(const ApproxModule& src, const ApproxModule& dst,
                         const std::vector<Index>& table, bool parallel) {
  const Module& a = src.m();
  const Module& b = dst.m();
  require_same_scalars(a, b);
  if (table.size() != a.size())
    return Verdict::fail("table has " + std::to_string(table.size()) + " entries for " +
                         std::to_string(a.size()) + " elements");
  for (Index v : table)
    if (v >= b.size()) return Verdict::fail("table value out of range");
  std::vector<ElemSet> single(b.size());
  for (Index y = 0; y < b.size(); ++y) single[y] = dst.cl(b.singleton(y));
  const std::uint64_t span = scalar_span(a, b);
  return first_failing(a.size(), parallel, [&](std::uint64_t xi) -> std::optional<std::string> {
    const auto x = static_cast<Index>(xi);
    for (Index y = 0; y < a.size(); ++y) {
      Index lhs = table[a.add(x, y)];
      Index s = b.add(table[x], table[y]);
      if (!single[s].test(lhs))
        return "f(" + a.label(x) + " + " + a.label(y) + ") = " + b.label(lhs) +
               " is not in cl(f(x) + f(y)) = " + b.format(single[s]);
    }
    for (std::uint64_t r = 0; r < span; ++r) {
      Index lhs = table[a.act(r, x)];
      Index s = b.act(r, table[x]);
      if (!single[s].test(lhs))
        return "f(" + std::to_string(r) + " * " + a.label(x) + ") = " + b.label(lhs) +
               " is not in cl(r f(x)) = " + b.format(single[s]);
    }
    return std::nullopt;
  });
}

ApproxHom::ApproxHom(ApproxModule src, ApproxModule dst, std::vector<Index> table, bool parallel)
    : src_(std::move(src)), dst_(std::move(dst)), table_(std::move(table)) {
  auto v = check(src_, dst_, table_, parallel);
  if (!v) throw PreconditionError("not-approx-hom", v.witness);
}

std::vector<Index> ApproxHom::parse_table(const ApproxModule& src, const ApproxModule& dst,
                                          std::string_view text) {
  const Module& a = src.m();
  const Module& b = dst.m();
  auto t = trim(text);
  std::vector<Index> out(a.size(), b.zero());
  if (t == "zero") return out;
  if (t.substr(0, 4) == "mul:") {
    if (a.orders() != b.orders() || a.orders().empty())
      throw PreconditionError("not-endomorphism", "mul:k needs the same cyclic module on both sides");
    long long k = 0;
    try {
      k = std::stoll(std::string(t.substr(4)));
    } catch (const std::exception&) {
      throw ParseError("expected an integer after mul:", 4);
    }
    const auto e = static_cast<long long>(a.exponent());
    const auto r = static_cast<std::uint64_t>(((k % e) + e) % e);
    for (Index x = 0; x < a.size(); ++x) out[x] = a.act(r, x);
    return out;
  }
  if (t.substr(0, 7) == "table:[" && t.back() == ']') {
    auto parts = split_top_level(t.substr(7, t.size() - 8));
    if (parts.size() != a.size())
      throw PreconditionError("bad-table", std::to_string(parts.size()) + " values for " +
                                               std::to_string(a.size()) + " elements");
    for (std::size_t i = 0; i < parts.size(); ++i) out[i] = b.parse_element(parts[i]);
    return out;
  }
  throw ParseError("unknown map '" + std::string(t) + "' (mul:k, zero, table:[...])", 0);
}

ElemSet ApproxHom::image(const ElemSet& a) const {
  ElemSet out(dst_.m().size());
  for (Index x : members(a)) out.set(table_[x]);
  return out;
}

ElemSet ApproxHom::preimage(const ElemSet& b) const {
  ElemSet out(src_.m().size());
  for (Index x = 0; x < table_.size(); ++x)
    if (b.test(table_[x])) out.set(x);
  return out;
}

bool ApproxHom::additive() const {
  const Module& a = src_.m();
  const Module& b = dst_.m();
  const std::uint64_t span = scalar_span(a, b);
  for (Index x = 0; x < a.size(); ++x) {
    for (Index y = 0; y < a.size(); ++y)
      if (table_[a.add(x, y)] != b.add(table_[x], table_[y])) return false;
    for (std::uint64_t r = 0; r < span; ++r)
      if (table_[a.act(r, x)] != b.act(r, table_[x])) return false;
  }
  return true;
}

std::vector<ElemSet> module_domain(const Module& m, const AxiomMode& mode) {
  const std::size_t n = m.size();
  std::vector<ElemSet> out;
  switch (mode.kind) {
    case AxiomMode::Exhaustive:
      if (n > kExhaustiveMaxSize)
        throw ResourceLimit("all subsets of a module with " + std::to_string(n) +
                            " elements exceed the 2^16 cap; use subgroup or sampled mode");
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        ElemSet s(n);
        for (std::size_t i = 0; i < n; ++i)
          if (bits >> i & 1u) s.set(i);
        out.push_back(std::move(s));
      }
      break;
    case AxiomMode::Subgroups:
      out = enumerate_subgroups(m.carrier(), kMaxModuleSize);
      break;
    case AxiomMode::Sampled: {
      std::mt19937_64 rng(mode.seed);
      const std::uint64_t count = mode.count ? mode.count : kDefaultSampleCount;
      for (std::uint64_t i = 0; i < count; ++i) {
        ElemSet s(n);
        auto d = 1 + rng() % 4;
        for (std::size_t x = 0; x < n; ++x)
          if (rng() % 8 < d) s.set(x);
        out.push_back(std::move(s));
      }
      break;
    }
  }
  return out;
}

Verdict is_image_morphic(const ApproxHom& f, const AxiomMode& mode, bool parallel) {
  const auto dom = module_domain(f.src().m(), mode);
  return first_failing(dom.size(), parallel, [&](std::uint64_t i) -> std::optional<std::string> {
    ElemSet lhs = f.image(f.src().cl(dom[i]));
    ElemSet rhs = f.dst().cl(f.image(dom[i]));
    if (lhs.is_subset_of(rhs)) return std::nullopt;
    return "X = " + f.src().m().format(dom[i]) + ": f(cl(X)) = " + f.dst().m().format(lhs) +
           " is not inside cl(f(X)) = " + f.dst().m().format(rhs);
  });
}

Verdict is_preimage_continuous(const ApproxHom& f, const AxiomMode& mode, bool parallel) {
  const auto dom = module_domain(f.dst().m(), mode);
  return first_failing(dom.size(), parallel, [&](std::uint64_t i) -> std::optional<std::string> {
    ElemSet lhs = f.preimage(f.dst().cl(dom[i]));
    ElemSet rhs = f.src().cl(f.preimage(dom[i]));
    if (lhs.is_subset_of(rhs)) return std::nullopt;
    return "Y = " + f.dst().m().format(dom[i]) + ": f^-1(cl(Y)) = " + f.src().m().format(lhs) +
           " is not inside cl(f^-1(Y)) = " + f.src().m().format(rhs);
  });
}

KernelResult kernel(const ApproxHom& f) {
  const Module& b = f.dst().m();
  KernelResult k{f.preimage(f.dst().cl(b.singleton(b.zero()))), Verdict::ok(), std::nullopt};
  const Module& a = f.src().m();
  if (!a.is_subgroup(k.ker)) {
    k.subgroup = Verdict::fail("Ker f = " + a.format(k.ker) + " is not a subgroup");
    return k;
  }
  k.approx_submodule = is_approx_submodule(f.src(), k.ker);
  return k;
}

ImageResult image_q(const ApproxHom& f, bool parallel) {
  const Module& b = f.dst().m();
  auto target = module_quotient(f.dst(), b.singleton(b.zero()), parallel);
  ElemSet fm = f.image(f.src().m().full_set());
  ElemSet classes = target.classes_of(fm);
  ElemSet im_c = f.dst().cl(fm);
  bool special = f.dst().cl(im_c) == im_c && im_c == fm;
  return {std::move(target), std::move(classes), std::move(im_c), special};
}

// ------------------------------------------------------ isomorphism checks

ClassMapCheck check_class_map(const ModuleQuotient& src, const ElemSet& src_dom,
                              const ModuleQuotient& dst, const ElemSet& dst_dom,
                              const std::function<Index(Index)>& g, bool parallel) {
  const Module& a = src.base.m();
  const Module& b = dst.base.m();
  ClassMapCheck out;
  ElemSet src_classes = src.classes_of(src_dom);
  ElemSet dst_classes = dst.classes_of(dst_dom);
  out.source_classes = src_classes.count();
  out.target_classes = dst_classes.count();
  const auto dom = members(src_dom);

  for (Index x : dom)
    if (!dst_dom.test(g(x))) {
      out.total = Verdict::fail("g(" + a.label(x) + ") = " + b.label(g(x)) +
                                " is outside the target domain");
      break;
    }

  constexpr Index kUnset = ~Index{0};
  std::vector<Index> img(src.size(), kUnset), first(src.size(), kUnset);
  for (Index x : dom) {
    Index c = src.class_of[x];
    Index t = dst.class_of[g(x)];
    if (img[c] == kUnset) {
      img[c] = t;
      first[c] = x;
    } else if (img[c] != t && out.well_defined) {
      out.well_defined = Verdict::fail(a.label(first[c]) + " ~ " + a.label(x) +
                                       " but their images lie in different classes");
    }
  }
  std::vector<Index> hit_by(dst.size(), kUnset);
  for (Index c : members(src_classes)) {
    Index t = img[c];
    if (hit_by[t] != kUnset && out.injective) {
      out.injective = Verdict::fail("[" + a.label(first[hit_by[t]]) + "] and [" +
                                    a.label(first[c]) + "] have the same image");
    }
    if (hit_by[t] == kUnset) hit_by[t] = c;
  }
  for (Index t : members(dst_classes))
    if (hit_by[t] == kUnset) {
      out.surjective = Verdict::fail("class [" + b.label(dst.reps[t]) + "] is not hit");
      break;
    }

  std::vector<ElemSet> ind(dst.size());
  for (Index t = 0; t < dst.size(); ++t) {
    ElemSet s(dst.size());
    s.set(t);
    ind[t] = dst.induced_closure(s);
  }
  const std::uint64_t span = scalar_span(a, b);
  std::atomic<bool> exact{true};
  std::atomic<std::uint64_t> instances{0};
  out.hom = first_failing(dom.size(), parallel, [&](std::uint64_t i) -> std::optional<std::string> {
    const Index x = dom[i];
    std::uint64_t local = 0;
    for (Index y : dom) {
      Index s = a.add(x, y);
      if (!src_dom.test(s)) continue;
      ++local;
      Index u = dst.class_of[g(s)];
      Index v = dst.class_of[b.add(g(x), g(y))];
      if (u != v) exact = false;
      if (!ind[v].test(u)) {
        instances += local;
        return "the image of [" + a.label(x) + " + " + a.label(y) +
               "] is not in the induced closure of the sum of the images";
      }
    }
    for (std::uint64_t r = 0; r < span; ++r) {
      Index s = a.act(r, x);
      if (!src_dom.test(s)) continue;
      ++local;
      Index u = dst.class_of[g(s)];
      Index v = dst.class_of[b.act(r, g(x))];
      if (u != v) exact = false;
      if (!ind[v].test(u)) {
        instances += local;
        return "the image of [" + std::to_string(r) + " * " + a.label(x) +
               "] is not in the induced closure of r times the image";
      }
    }
    instances += local;
    return std::nullopt;
  });
  out.exact_hom = out.hom && exact;
  out.hom_instances = instances;
  return out;
}

namespace {

std::string mode_note(const Module& m, const AxiomMode& mode) {
  switch (mode.kind) {
    case AxiomMode::Exhaustive:
      return "all 2^" + std::to_string(m.size()) + " subsets";
    case AxiomMode::Subgroups:
      return "all additive subgroups";
    case AxiomMode::Sampled:
      return std::to_string(mode.count ? mode.count : kDefaultSampleCount) +
             " random subsets, seed " + std::to_string(mode.seed);
  }
  return mode.name();
}

Verdict all_of(std::initializer_list<const Verdict*> vs) {
  for (const Verdict* v : vs)
    if (!*v) return *v;
  return Verdict::ok();
}

void require_approx_submodule(const ApproxModule& am, const ElemSet& s, const char* name) {
  auto v = is_approx_submodule(am, s);
  if (!v) throw PreconditionError("not-approx-submodule", std::string(name) + ": " + v.witness);
}

}  // namespace

bool IsoResult::holds() const {
  if (!map.holds() || !counts_agree()) return false;
  for (const auto& [name, v] : steps)
    if (!v) return false;
  return true;
}

IsoResult iso1(const ApproxHom& f, std::optional<AxiomMode> mode, bool parallel) {
  const Module& a = f.src().m();
  AxiomMode md = mode ? *mode
                      : (a.size() <= kExhaustiveMaxSize ? AxiomMode::exhaustive()
                                                        : AxiomMode::subgroups());
  auto im = is_image_morphic(f, md, parallel);
  if (!im) throw PreconditionError("not-image-morphic", im.witness);
  auto k = kernel(f);
  if (!k.subgroup) throw PreconditionError("kernel-not-approx-submodule", k.subgroup.witness);
  if (!*k.approx_submodule)
    throw PreconditionError("kernel-not-approx-submodule", k.approx_submodule->witness);
  auto src = module_quotient(f.src(), k.ker, parallel);
  auto img = image_q(f, parallel);
  IsoResult r;
  r.part = "iso1";
  r.lhs = "M/Ker f";
  r.rhs = "Im^q f";
  r.map = check_class_map(src, a.full_set(), img.target, f.image(a.full_set()),
                          [&](Index x) { return f(x); }, parallel);
  r.hypotheses = "image-morphic over " + mode_note(a, md);
  return r;
}

IsoResult iso2(const ApproxModule& am, const ElemSet& n, const ElemSet& k, bool parallel) {
  require_approx_submodule(am, n, "N");
  require_approx_submodule(am, k, "K");
  const Module& m = am.m();
  ElemSet clk = am.cl(k);
  ElemSet meet = n & clk;
  auto src = relation_quotient(am, am.cl(meet), parallel);
  auto over_k = relation_quotient(am, clk, parallel);
  auto over_clk = relation_quotient(am, am.cl(clk), parallel);
  auto id = [](Index x) { return x; };
  IsoResult r;
  r.part = "iso2";
  r.lhs = "N/(N ∩ cl K)";
  r.rhs = "(N+K)/K";
  r.map = check_class_map(src, n, over_k, m.sumset(n, k), id, parallel);
  auto ident =
      check_class_map(over_k, m.sumset(n, k), over_clk, m.sumset(n, clk), id, parallel);
  r.steps.emplace_back("(N+K)/K = (N+cl K)/cl K",
                       all_of({&ident.total, &ident.well_defined, &ident.injective,
                               &ident.surjective}));
  r.hypotheses = "N and K approximate submodules";
  return r;
}

IsoResult iso3(const ApproxModule& am, const ElemSet& n, const ElemSet& k, bool parallel) {
  require_approx_submodule(am, n, "N");
  const Module& m = am.m();
  if (!m.is_subgroup(k))
    throw PreconditionError("not-subgroup", "K = " + m.format(k) + " is not a subgroup");
  if (!n.is_subset_of(k))
    throw PreconditionError("not-contained", "N = " + m.format(n) + " is not inside K");
  auto q1 = module_quotient(am, n, parallel);
  if (!q1.module)
    throw PreconditionError("quotient-not-well-defined",
                            q1.equivalence ? q1.well_defined.witness : q1.equivalence.witness);
  ElemSet clk = am.cl(k);
  ElemSet kbar = q1.classes_of(clk);
  auto q2 = relation_quotient(*q1.module, q1.module->cl(kbar), parallel);
  auto q3 = relation_quotient(am, am.cl(clk), parallel);
  IsoResult r;
  r.part = "iso3";
  r.lhs = "(M/N)/(cl K/N)";
  r.rhs = "M/cl K";
  r.map = check_class_map(q2, q1.module->m().full_set(), q3, m.full_set(),
                          [&](Index c) { return q1.reps[c]; }, parallel);
  auto theta = check_class_map(q1, m.full_set(), q3, m.full_set(),
                               [](Index x) { return x; }, parallel);
  r.steps.emplace_back("theta well defined", theta.well_defined);
  r.steps.emplace_back("theta surjective", theta.surjective);
  r.steps.emplace_back("theta hom", theta.hom);
  r.hypotheses = "N approximate submodule, N ⊆ K";
  return r;
}

}  // namespace approx

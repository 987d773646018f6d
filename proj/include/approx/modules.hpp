#pragma once

#include "approx/axioms.hpp"
#include "approx/ideal_theory.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace approx {

/// A finite module over Z or Z/n. Built as Z/n1 x ... x Z/nk with the
/// canonical action, or from tables (quotients). Scalar r acts through the
/// carrier action with index r mod exponent(), where exponent() is the number
/// of actions: lcm(n_i) over Z, n over Z/n.
class Module {
 public:
  /// Checks that n annihilates the group when the scalars are Z/n
  /// (PreconditionError "action-incompatible") and the module axioms
  /// exhaustively (PreconditionError "not-module").
  static Module cyclic_product(std::vector<std::uint64_t> orders,
                               const Ring& scalars = Ring::integers());
  /// `Z/12`, `Z/2xZ/4`; `Z` is not accepted (finite modules only).
  static Module parse(std::string_view text, const Ring& scalars = Ring::integers());
  static Module from_carrier(Carrier c, Ring scalars, std::string name);

  std::size_t size() const { return carrier_.size; }
  std::size_t exponent() const { return carrier_.actions.size(); }
  const Carrier& carrier() const { return carrier_; }
  const Ring& scalars() const { return scalars_; }
  const std::string& name() const { return name_; }
  /// Cyclic orders; empty for derived modules.
  const std::vector<std::uint64_t>& orders() const { return orders_; }

  Index add(Index a, Index b) const { return carrier_.plus(a, b); }
  Index neg(Index a) const { return carrier_.neg[a]; }
  Index sub(Index a, Index b) const { return add(a, neg(b)); }
  Index zero() const { return carrier_.zero; }
  Index act(std::uint64_t r, Index x) const { return carrier_.actions[r % exponent()][x]; }
  const std::string& label(Index x) const { return carrier_.labels[x]; }

  ElemSet empty_set() const { return ElemSet(size()); }
  ElemSet full_set() const;
  ElemSet singleton(Index x) const;
  ElemSet image(std::uint64_t r, const ElemSet& a) const;
  ElemSet sumset(const ElemSet& a, const ElemSet& b) const { return carrier_.sumset(a, b); }
  ElemSet submodule(const ElemSet& gens) const { return carrier_.stable_closure(gens); }
  bool is_subgroup(const ElemSet& s) const { return carrier_.is_subgroup(s); }
  std::string format(const ElemSet& s) const { return carrier_.format(s); }

  /// `3` in a cyclic module, `(1,2)` in a product. Cyclic-product modules only.
  Index parse_element(std::string_view text) const;
  /// `{a, b, ...}` lists a set; otherwise a generator list for a submodule
  /// (`4`, `(1,0),(0,2)`); `M` is the whole module.
  ElemSet parse_subset(std::string_view text) const;

 private:
  Module(Carrier c, Ring scalars, std::vector<std::uint64_t> orders, std::string name);
  Carrier carrier_;
  Ring scalars_;
  std::vector<std::uint64_t> orders_;
  std::string name_;
};

/// Module elements above which construction refuses (ResourceLimit).
inline constexpr std::size_t kMaxModuleSize = 256;

/// Failed module axiom with a witness, or nullopt. O(exponent^2 * size).
std::optional<std::string> find_module_axiom_violation(const Carrier& c);

/// cl(X) = <X>.
struct GeneratedSubmodule {};
/// cl(X) = <X> + N0.
struct SubmoduleShift {
  ElemSet n0;
};
/// cl(X) = X + N0; the empty set stays empty.
struct SubmoduleSetShift {
  ElemSet n0;
};
using ModuleClosureKind = std::variant<GeneratedSubmodule, SubmoduleShift, SubmoduleSetShift>;

struct ModuleClosureSpec {
  ModuleClosureKind kind;
  /// `gen` | `shift:N=<gens>` | `setshift:N=<gens>`; PreconditionError
  /// ("not-submodule") when N0 is not a submodule.
  static ModuleClosureSpec parse(const Module& m, std::string_view text);
  std::string to_string(const Module& m) const;
};

/// A finite module with a closure on its subsets.
struct ApproxModule {
  std::shared_ptr<const Module> module;
  SetClosure cl;
  std::string closure_name;

  static ApproxModule of(const Module& m, const ModuleClosureSpec& spec);
  static ApproxModule custom(const Module& m, SetClosure cl, std::string name);
  const Module& m() const { return *module; }
};

/// CM1-CM4 through the carrier engine: CM4 splits into CM4a (sums) and
/// CM4b (scalars); "absorption" is R N ⊆ cl(N) on submodules.
AxiomReport check_cm_axioms(const ApproxModule& am, const AxiomMode& mode,
                            CheckOptions opt = {});

/// R N ⊆ cl(N). PreconditionError ("not-subgroup") unless N is a subgroup.
Verdict is_approx_submodule(const ApproxModule& am, const ElemSet& n);

/// M / ~ with m ~ m' iff m - m' lies in `relation`. Classes are the connected
/// components of the relation, numbered by least element.
struct ModuleQuotient {
  ApproxModule base;
  ElemSet relation;
  std::vector<Index> class_of;
  std::vector<Index> reps;
  Verdict equivalence;
  /// Addition and every scalar action respect the classes.
  Verdict well_defined;
  /// The quotient module with the induced closure q(cl(q^-1(X))); set only
  /// when both verdicts hold.
  std::optional<ApproxModule> module;

  std::size_t size() const { return reps.size(); }
  ElemSet classes_of(const ElemSet& xs) const;
  ElemSet preimage(const ElemSet& classes) const;
  ElemSet induced_closure(const ElemSet& classes) const;
};

ModuleQuotient relation_quotient(const ApproxModule& am, const ElemSet& relation,
                                 bool parallel = true);
/// M/N with the relation cl(N). PreconditionError ("not-approx-submodule").
ModuleQuotient module_quotient(const ApproxModule& am, const ElemSet& n, bool parallel = true);

/// A map table between finite modules that satisfies f(x+y) ∈ cl'(f(x)+f(y))
/// and f(rx) ∈ cl'(r f(x)) for every x, y and scalar r.
class ApproxHom {
 public:
  /// PreconditionError ("not-approx-hom") with the first failing instance.
  ApproxHom(ApproxModule src, ApproxModule dst, std::vector<Index> table, bool parallel = true);
  static Verdict check(const ApproxModule& src, const ApproxModule& dst,
                       const std::vector<Index>& table, bool parallel = true);
  /// `mul:k` (endomorphisms only), `zero`, `table:[y0,y1,...]` in source
  /// index order.
  static std::vector<Index> parse_table(const ApproxModule& src, const ApproxModule& dst,
                                        std::string_view text);

  const ApproxModule& src() const { return src_; }
  const ApproxModule& dst() const { return dst_; }
  const std::vector<Index>& table() const { return table_; }
  Index operator()(Index x) const { return table_[x]; }
  ElemSet image(const ElemSet& a) const;
  ElemSet preimage(const ElemSet& b) const;
  /// f(x+y) = f(x)+f(y) and f(rx) = r f(x) exactly.
  bool additive() const;

 private:
  ApproxModule src_, dst_;
  std::vector<Index> table_;
};

/// Subsets of the module in the mode's domain: all subsets (size <= 16),
/// additive subgroups, or seeded random subsets.
std::vector<ElemSet> module_domain(const Module& m, const AxiomMode& mode);

Verdict is_image_morphic(const ApproxHom& f, const AxiomMode& mode, bool parallel = true);
Verdict is_preimage_continuous(const ApproxHom& f, const AxiomMode& mode, bool parallel = true);

/// Ker f = {x : f(x) ∈ cl'(0)}.
struct KernelResult {
  ElemSet ker;
  Verdict subgroup;
  std::optional<Verdict> approx_submodule;  // when a subgroup
};
KernelResult kernel(const ApproxHom& f);

/// Im^q f = {f(x) + cl'(0)} inside M'/cl'(0), and Im_c f = cl'(f(M)).
struct ImageResult {
  ModuleQuotient target;  // M'/cl'(0)
  ElemSet classes;        // Im^q f as classes of `target`
  ElemSet im_c;
  /// Im_c f is closed and equals f(M).
  bool im_c_special = false;
};
ImageResult image_q(const ApproxHom& f, bool parallel = true);

/// A map of classes induced by an element map g from src's base into dst's
/// base, restricted to the classes meeting `src_dom` and `dst_dom`.
struct ClassMapCheck {
  std::size_t source_classes = 0;
  std::size_t target_classes = 0;
  Verdict total;         // g(src_dom) ⊆ dst_dom
  Verdict well_defined;  // equal classes go to equal classes
  Verdict injective;
  Verdict surjective;
  /// Approximate hom for the induced closures on the quotients.
  Verdict hom;
  bool exact_hom = false;
  std::uint64_t hom_instances = 0;
  bool bijective() const { return well_defined && injective && surjective; }
  bool holds() const { return total && bijective() && hom; }
};
ClassMapCheck check_class_map(const ModuleQuotient& src, const ElemSet& src_dom,
                              const ModuleQuotient& dst, const ElemSet& dst_dom,
                              const std::function<Index(Index)>& g, bool parallel = true);

struct IsoResult {
  std::string part;      // "iso1" | "iso2" | "iso3"
  std::string lhs, rhs;  // what the map goes between
  ClassMapCheck map;
  /// Intermediate maps of the construction. iso2: the identification
  /// (N+K)/K = (N+cl K)/cl K. iso3: θ: M/N -> M/cl K.
  std::vector<std::pair<std::string, Verdict>> steps;
  std::string hypotheses;  // where they were established
  bool counts_agree() const { return map.source_classes == map.target_classes; }
  bool holds() const;
};

/// M/Ker f -> Im^q f, [x] -> f(x) + cl'(0). PreconditionError
/// ("not-image-morphic", "kernel-not-approx-submodule"). Image-morphism is
/// checked over `mode`; the default is exhaustive up to 16 elements and the
/// subgroup domain beyond.
IsoResult iso1(const ApproxHom& f, std::optional<AxiomMode> mode = std::nullopt,
               bool parallel = true);
/// N/(N ∩ cl K) -> (N+K)/K, [n] -> [n]. PreconditionError
/// ("not-approx-submodule").
IsoResult iso2(const ApproxModule& am, const ElemSet& n, const ElemSet& k, bool parallel = true);
/// (M/N)/(cl K/N) -> M/cl K. PreconditionError ("not-approx-submodule",
/// "not-subgroup", "not-contained").
IsoResult iso3(const ApproxModule& am, const ElemSet& n, const ElemSet& k, bool parallel = true);

}  // namespace approx

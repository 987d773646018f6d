#pragma once

#include "approx/axioms.hpp"
#include "approx/ideal_theory.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace approx {

/// A unital ring homomorphism between finite rings, as a table on element
/// indices. Construction verifies the homomorphism laws exhaustively.
class RingHom {
 public:
  /// PreconditionError("not-hom") with a witness when a law fails.
  RingHom(std::shared_ptr<const FiniteRing> src, std::shared_ptr<const FiniteRing> dst,
          std::vector<Index> map);

  static RingHom identity(const Ring& r);
  /// n·1 ↦ n·1 from Z/n to a ring whose characteristic divides n.
  static RingHom canonical(const Ring& src, const Ring& dst);

  const FiniteRing& src() const { return *src_; }
  const FiniteRing& dst() const { return *dst_; }
  const std::shared_ptr<const FiniteRing>& src_ptr() const { return src_; }
  const std::shared_ptr<const FiniteRing>& dst_ptr() const { return dst_; }
  Index operator()(Index x) const { return map_[x]; }
  const std::vector<Index>& table() const { return map_; }

  ElemSet image(const ElemSet& a) const;
  ElemSet preimage(const ElemSet& b) const;
  ElemSet kernel() const;
  bool surjective() const;

 private:
  std::shared_ptr<const FiniteRing> src_, dst_;
  std::vector<Index> map_;
};

/// f(cl_R(A)) ⊆ cl_S(f(A)) for every A in the mode's domain on the source
/// (all subsets, all subgroups, or a seeded sample).
Verdict is_image_morphic(const RingHom& f, const SetClosure& cl_r, const SetClosure& cl_s,
                         const AxiomMode& mode, bool parallel = true);
/// f^-1(cl_S(B)) ⊆ cl_R(f^-1(B)) over B in the mode's domain on the target.
Verdict is_preimage_continuous(const RingHom& f, const SetClosure& cl_r, const SetClosure& cl_s,
                               const AxiomMode& mode, bool parallel = true);

/// Subsets of a finite carrier for a mode: every subset (size <= 16), every
/// additive subgroup, or `count` random subsets from `seed`.
std::vector<ElemSet> mode_domain(const FiniteRing& r, const AxiomMode& mode,
                                 std::size_t guard = kDefaultSubgroupGuard);

/// Preimage of an approximate ideal, with the proposition's hypotheses
/// machine-checked first (PreconditionError "functoriality-unverified").
struct TransferResult {
  ElemSet ideal;
  Verdict approx_ideal;
  /// Primeness of the transferred ideal, computed whenever it is defined.
  std::optional<Verdict> approx_prime;
  /// The hypotheses of the primeness clause hold; `note` says why not.
  bool prime_clause = false;
  std::string note;
  bool conclusion_holds() const {
    return approx_ideal.holds && (!prime_clause || (approx_prime && approx_prime->holds));
  }
};
TransferResult preimage_transfer(const RingHom& f, const ApproxRing& r, const ApproxRing& s,
                                 const ElemSet& j, const AxiomMode& mode = AxiomMode::exhaustive());
/// Image under a surjection ("not-surjective" otherwise). The primeness clause
/// runs only when I is prime, Ker f ⊆ I and f is preimage-continuous.
/// `pullback` checks f^-1(cl_S(f(A))) ⊆ cl_R(A + Ker f) on the mode's domain.
struct ImageTransferResult : TransferResult {
  bool preimage_continuous = false;  // the pullback lemma's hypothesis
  Verdict pullback;
};
ImageTransferResult image_transfer(const RingHom& f, const ApproxRing& r, const ApproxRing& s,
                                   const ElemSet& i, const AxiomMode& mode = AxiomMode::exhaustive());

// ------------------------------------------------- reduction Z -> Z/n

/// The reduction map Z -> Z/n with closures on both sides. Subsets of Z are
/// the principal subgroups (d), d <= d_max, for image-morphism; subsets of
/// Z/n come from the mode for preimage continuity, whose preimages are
/// n-periodic sets and are decided on residues.
struct ZReduction {
  ClosureSpec cl_z;  // on Z: gen, shift:J=m or setshift:J=m
  ClosureSpec cl_n;  // on Z/n
  std::uint64_t n() const { return cl_n.ring().residue_modulus(); }
};
Verdict z_is_image_morphic(const ZReduction& f, std::uint64_t d_max = 1000);
Verdict z_is_preimage_continuous(const ZReduction& f, const AxiomMode& mode);
/// f^-1(J) = (k) for a subgroup J = (k mod n) of Z/n; returns k.
std::uint64_t z_preimage(const ZReduction& f, const ElemSet& j);
/// f((d)) as a subset of Z/n.
ElemSet z_image(const ZReduction& f, std::uint64_t d);

/// Transfers along Z -> Z/n. Ideals of Z are (k); primeness on Z uses the
/// closed form, cross-checked by brute force.
struct ZPreimageTransfer {
  std::uint64_t k = 0;  // f^-1(J) = (k)
  Verdict approx_ideal;
  std::optional<Verdict> approx_prime;
  bool prime_clause = false;
  std::string note;
  bool conclusion_holds() const {
    return approx_ideal.holds && (!prime_clause || (approx_prime && approx_prime->holds));
  }
};
ZPreimageTransfer z_preimage_transfer(const ZReduction& f, const ElemSet& j, const AxiomMode& mode);
ImageTransferResult z_image_transfer(const ZReduction& f, std::uint64_t d, const AxiomMode& mode);

}  // namespace approx

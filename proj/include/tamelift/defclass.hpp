#pragma once

// Exponential twisting of tame representations by cohomology classes,
// stabilization of the local deformation classes along the n_k filtration,
// the displayed clearing-conjugation identities, fiber enumeration under
// nearly-small reduction, cocycle extraction, and the weight map.

#include "tamelift/cohomology.hpp"
#include "tamelift/matrep.hpp"

namespace tamelift {

struct TwistDatum {
    Cocycle cocycle;  // values in Ad or Ad^0 over F_q (matrix realization)
    RElem scalar;     // r with m_R r = 0
};

// rep generator g goes to (Id + X(g) r) rep(g); requires m_R r = 0 so the
// lift of the F_q-matrix X(g) is unambiguous. The result is revalidated.
TameRep exp_twist(const TameRep& rep, const TwistDatum& t);

// matrix of a cocycle value scaled into the ring
Mat2 cocycle_value_in_ring(const RingPtr& R, const std::array<Fq, 4>& val, const RElem& r);

struct TwistCheck {
    std::string cocycle_label;
    std::string scalar_label;
    bool member_before = false;
    bool member_after = false;
    std::optional<MembershipWitness> witness_after;
};

struct StabilizationReport {
    unsigned k = 0;
    bool ramified = false;
    std::vector<TwistCheck> checks;
    bool all_preserved = true;
    // k = 1 probe bookkeeping: a violation is the expected outcome there
    bool violation_found = false;
    std::string first_violation;
};

// Twists a class member over R/n_{k+1} by every basis cocycle of the
// conjugated tangent space N tensor every basis vector of n_k/n_{k+1} and
// every unit multiple, re-testing membership each time.
StabilizationReport stabilization_check(const RingPtr& R, unsigned k, bool ramified,
                                        const TameRep& sample, const DeformClassSpec& spec,
                                        bool scan_unit_multiples = true);

struct ConjugationIdentityReport {
    bool sigma_identity = false;      // clearing the lower-left of the sigma image
    bool tau_identity = false;        // tau fixed exactly (needs p^2 | y)
    bool tau_ram_display = false;     // diag adjustment display (needs p | y)
    bool applicable_tau = false;      // p^2 | y held
    bool applicable_ram = false;      // p | y held
    bool ok = false;
};

// Verifies the displayed conjugation identities exactly in R/n_{k+1}.
// Preconditions: p^2 | x, r in m, p r in n_k.
ConjugationIdentityReport conjugation_identity_check(const RingPtr& R, unsigned k,
                                                     const RElem& r, const RElem& x,
                                                     const RElem& y,
                                                     const DeformClassSpec& spec);

struct FiberReport {
    // all lifts of the base representation satisfying the tame relation
    uint64_t raw_lift_count = 0;
    // lifts that lie in the class
    std::vector<TameRep> members;
    // strict-equivalence classes of members (indices into members)
    std::vector<std::vector<size_t>> classes;
    size_t h1_dim = 0;
    size_t j_dim = 0;
    uint64_t h1_tensor_j_size = 0;
    bool fiber_nonempty = false;

    // the H^1 tensor J action on the raw lift set is exactly simply transitive
    bool raw_action_simply_transitive = false;
    // every H^1 x J basis twist keeps every member inside the class
    bool action_preserves_class = false;
    // the class-preserving twists act transitively on the equivalence classes
    bool transitive_on_classes = false;
    // order of the stabilizer of a class under the full twist group
    uint64_t class_stabilizer_order = 0;
    // the criterion as stated: H^1 tensor J simply transitive on the classes
    bool simply_transitive_on_classes = false;

    std::string note;
};

// Exhaustive fiber analysis of the reduction map over a nearly-small ideal J:
// enumerates every lift of base (given over R/J), filters by class
// membership, groups by strict equivalence, and analyzes the exponential
// action of H^1(G_v, Ad) tensor J layer by layer.
FiberReport fiber_enumerate(const RingPtr& R, const SubmoduleIdeal& J,
                            const DeformClassSpec& spec, const TameRep& base,
                            const SearchOptions& opts = SearchOptions());

// gamma with sigma_k = (Id + gamma) mu_k, decomposed over an F_q-basis of J;
// requires sigma_k = mu_k mod J and J nearly small.
std::vector<TwistDatum> cocycle_difference(const TameRep& sigma_k, const TameRep& mu_k,
                                           const SubmoduleIdeal& J, const GModulePtr& ad);

// weight map: the coordinate of a representation on weight space
RElem weight_point(const CoefficientRing& R, const RElem& det_at_gamma);
// weights agree modulo n_2 = pR cap m^2
bool weights_congruent(const CoefficientRing& R, const RElem& w1, const RElem& w2);

}  // namespace tamelift

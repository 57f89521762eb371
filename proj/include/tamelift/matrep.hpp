#pragma once

// 2x2 matrices over coefficient rings, representations of the two-generator
// pro-p tame local group at a trivial prime v (relation s t s^-1 = t^v),
// strict equivalence, and membership in the local deformation classes.

#include <array>
#include <optional>

#include "tamelift/coeffring.hpp"

namespace tamelift {

struct SearchBoundError : std::runtime_error {
    explicit SearchBoundError(const std::string& m) : std::runtime_error(m) {}
};

struct Mat2 {
    RingPtr R;
    std::array<RElem, 4> a;  // row major: a[0]=a11 a[1]=a12 a[2]=a21 a[3]=a22

    static Mat2 zero(RingPtr R);
    static Mat2 identity(RingPtr R);
    static Mat2 from_ints(RingPtr R, int64_t a11, int64_t a12, int64_t a21, int64_t a22);

    bool operator==(const Mat2& o) const { return a == o.a; }
};

Mat2 m2_add(const Mat2& x, const Mat2& y);
Mat2 m2_sub(const Mat2& x, const Mat2& y);
Mat2 m2_mul(const Mat2& x, const Mat2& y);
Mat2 m2_scale(const Mat2& x, const RElem& c);  // central scalar multiple
Mat2 m2_pow(const Mat2& x, uint64_t e);
RElem m2_det(const Mat2& x);
RElem m2_trace(const Mat2& x);
bool m2_invertible(const Mat2& x);
Mat2 m2_inv(const Mat2& x);
// all entries of x - Id in J
bool m2_congruent_identity(const Mat2& x, const SubmoduleIdeal& J);
Mat2 m2_reduce(const Mat2& x, const SubmoduleIdeal& J, const RingPtr& quotient);

struct TameRep {
    RingPtr R;
    uint64_t v = 0;
    Mat2 sigma, tau;
};

// Validates: v trivial prime for char p, both matrices invertible and
// congruent to Id mod m, and the tame relation s t s^-1 = t^v exactly.
TameRep make_tame_rep(RingPtr R, uint64_t v, Mat2 sigma, Mat2 tau);
bool tame_relation_holds(const CoefficientRing& R, uint64_t v, const Mat2& s, const Mat2& t);

TameRep conjugate(const TameRep& rep, const Mat2& A);
TameRep reduce(const TameRep& rep, const SubmoduleIdeal& J);

enum class EquivMode { NormalForm, Search, Both };

struct SearchOptions {
    uint64_t ring_bound;      // refuse search above this many ring elements
    uint64_t enum_cap;        // refuse above this many enumerated conjugators
    uint64_t shard = 0;       // this worker's shard
    uint64_t nshards = 1;     // number of shards of the conjugator space
    SearchOptions();
};

uint64_t default_search_bound();  // TAMELIFT_SEARCH_BOUND or 3^10

struct EquivResult {
    bool equivalent = false;
    std::optional<Mat2> witness;  // A in Id + M2(m) with A rep1 A^-1 = rep2
};

EquivResult strictly_equivalent(const TameRep& rep1, const TameRep& rep2,
                                EquivMode mode = EquivMode::NormalForm,
                                const SearchOptions& opts = SearchOptions());

enum class Variant { D, DRam, DNr, DTilde };
enum class BasisConj { Identity, LowerUnipotent, Swap };

const char* variant_name(Variant v);
const char* basis_conj_name(BasisConj c);

struct DeformClassSpec {
    Variant variant = Variant::D;
    uint64_t v = 0;
    WittElem kappa_sigma;  // kappa(sigma_v), a unit of O congruent to 1 mod p
    BasisConj conj = BasisConj::Identity;
};

// Enforces the pairing used by the conjugated classes: lower-unipotent goes
// with the unramified-mod-p^2 variants, swap with the ramified ones.
DeformClassSpec make_class_spec(Variant variant, uint64_t v, const WittElem& kappa,
                                BasisConj conj);

Mat2 basis_conj_matrix(RingPtr R, BasisConj c);
// image in R of the square root of kappa(sigma_v) v^-1
RElem class_unit(const CoefficientRing& R, const DeformClassSpec& spec);
// orbit of the "p^2 divides x" condition under strict equivalence
SubmoduleIdeal x_condition_ideal(const CoefficientRing& R);

struct MembershipWitness {
    Mat2 conjugator;  // strict conjugator A applied after undoing the basis conjugation
    RElem x, y, z;    // sigma -> z u (v x; 0 1), tau -> (1 y; 0 1)
};

struct MembershipResult {
    bool member = false;
    std::optional<MembershipWitness> witness;
};

MembershipResult in_deform_class(const TameRep& rep, const DeformClassSpec& spec,
                                 EquivMode mode = EquivMode::NormalForm,
                                 const SearchOptions& opts = SearchOptions());

// Builds z * u * (v x; 0 1), (1 y; 0 1) conjugated into the spec's frame.
// x, y, z are taken literally; class conditions are checked by the caller.
TameRep normal_form_rep(RingPtr R, const DeformClassSpec& spec, const RElem& x,
                        const RElem& y, const RElem& z);

std::string print_rep(const TameRep& rep, const std::optional<WittElem>& kappa = std::nullopt);
TameRep parse_rep(const std::string& text);

}  // namespace tamelift

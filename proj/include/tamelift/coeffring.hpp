#pragma once

// Finite-length local O-algebras R = O[[U_1..U_s]]/I presented by monomial
// relations in p and the variables.  Elements are stored on the standard
// monomial set with one Witt coefficient per variable-monomial, truncated to
// the exact annihilator power p^{c_alpha}.  Ideals in the monomial lattice
// (m^k, pR, n_k = pR cap m^k, ...) are exponent functions alpha -> e_alpha.
//
// A single rewrite identification p = U^gamma (|gamma| >= 2) is supported as
// an experimental extension; it covers presentations such as (p - U^2, U^4).

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tamelift/field.hpp"
#include "tamelift/linalg.hpp"

namespace tamelift {

// p^a * U^u with u an exponent vector over the ring variables
struct Monomial {
    unsigned a = 0;
    std::vector<unsigned> u;
};

class CoefficientRing;
using RingPtr = std::shared_ptr<const CoefficientRing>;

/// Ring element: one Witt coefficient per standard variable-monomial,
/// normalized modulo p^{c_alpha}.  Small-buffer storage keeps arithmetic
/// allocation free on rings with few monomials (the common case).
class RElem {
public:
    RElem() = default;
    explicit RElem(size_t n) : n_(n) {
        if (n_ > kInline) heap_.reset(new WittElem[n_]);
    }
    RElem(size_t n, const WittElem& fill) : n_(n) {
        if (n_ > kInline) heap_.reset(new WittElem[n_]);
        for (size_t i = 0; i < n_; ++i) data()[i] = fill;
    }
    RElem(const RElem& o) : n_(o.n_) {
        if (n_ > kInline) heap_.reset(new WittElem[n_]);
        for (size_t i = 0; i < n_; ++i) data()[i] = o.data()[i];
    }
    RElem(RElem&& o) noexcept = default;
    RElem& operator=(const RElem& o) {
        if (this == &o) return *this;
        n_ = o.n_;
        heap_.reset(n_ > kInline ? new WittElem[n_] : nullptr);
        for (size_t i = 0; i < n_; ++i) data()[i] = o.data()[i];
        return *this;
    }
    RElem& operator=(RElem&& o) noexcept = default;

    size_t size() const { return n_; }
    WittElem& operator[](size_t i) { return data()[i]; }
    const WittElem& operator[](size_t i) const { return data()[i]; }
    bool operator==(const RElem& o) const {
        if (n_ != o.n_) return false;
        for (size_t i = 0; i < n_; ++i)
            if (!(data()[i] == o.data()[i])) return false;
        return true;
    }

private:
    static constexpr size_t kInline = 4;
    size_t n_ = 0;
    WittElem inline_[kInline];
    std::unique_ptr<WittElem[]> heap_;

    WittElem* data() { return n_ > kInline ? heap_.get() : inline_; }
    const WittElem* data() const { return n_ > kInline ? heap_.get() : inline_; }
};

class SubmoduleIdeal;

class CoefficientRing : public std::enable_shared_from_this<CoefficientRing> {
public:
    static RingPtr create(WittRing base, std::vector<std::string> vars,
                          std::vector<Monomial> relations,
                          std::optional<std::vector<unsigned>> rewrite = std::nullopt);

    const WittRing& base() const { return base_; }
    const FiniteField& residue_field() const { return base_.residue_field(); }
    uint64_t p() const { return base_.p(); }
    size_t nvars() const { return vars_.size(); }
    const std::vector<std::string>& var_names() const { return vars_; }
    const std::vector<Monomial>& relations() const { return relations_; }
    bool experimental() const { return rewrite_.has_value(); }
    const std::optional<std::vector<unsigned>>& rewrite_rule() const { return rewrite_; }

    size_t nmono() const { return mono_.size(); }
    const std::vector<unsigned>& mono(size_t i) const { return mono_[i]; }
    unsigned cexp(size_t i) const { return cexp_[i]; }
    size_t mono_index(const std::vector<unsigned>& u) const;  // SIZE_MAX if absent
    unsigned degree(size_t i) const;  // total degree of the variable part

    // length of R as an F_p-module is fp_length(); number of elements is
    // p^fp_length()
    size_t fp_length() const;
    // number of elements as long double (monotone overflow-safe size gauge)
    long double size_log2() const;

    // --- elements ---
    RElem zero() const;
    RElem one() const;
    RElem from_int(int64_t n) const;
    RElem from_base(const WittElem& x) const;  // structure map O -> R
    RElem p_elem() const { return from_int(int64_t(p())); }
    RElem var(size_t i) const;
    RElem monomial_elem(size_t mono_idx, unsigned a) const;  // p^a U^alpha

    bool is_zero(const RElem& x) const;
    bool is_unit(const RElem& x) const;
    RElem add(const RElem& x, const RElem& y) const;
    RElem sub(const RElem& x, const RElem& y) const;
    RElem neg(const RElem& x) const;
    RElem mul(const RElem& x, const RElem& y) const;
    RElem mul_base(const RElem& x, const WittElem& c) const;
    RElem pow(const RElem& x, uint64_t e) const;
    RElem inv(const RElem& x) const;  // units only

    Fq residue(const RElem& x) const;          // image in R/m = F_q
    WittElem coeff(const RElem& x, size_t i) const { return x[i]; }
    RElem normalized(RElem x) const;

    // enumeration support: elements of a monomial subgroup in a fixed digit
    // order (used by exhaustive searches; count must fit in 64 bits)
    struct DigitSpan {
        std::vector<std::pair<size_t, unsigned>> positions;  // (mono, p-power)
        uint64_t count = 1;                                  // q^positions
    };
    DigitSpan digit_span(const SubmoduleIdeal& J) const;
    RElem element_at(const DigitSpan& span, uint64_t index) const;

    // --- ideals in the monomial lattice ---
    SubmoduleIdeal zero_ideal() const;
    SubmoduleIdeal unit_ideal() const;
    SubmoduleIdeal ideal(const std::vector<Monomial>& gens) const;
    SubmoduleIdeal maximal_ideal() const;
    SubmoduleIdeal maximal_ideal_power(unsigned k) const;
    SubmoduleIdeal p_ideal() const;                     // pR
    SubmoduleIdeal filtration_nk(unsigned k) const;     // pR cap m^k
    // finite length and p not in m^2
    bool is_admissible() const;
    // largest k with m^k != 0
    unsigned nilpotency_degree() const;

    // quotient ring R/J together with the reduction of elements
    RingPtr quotient(const SubmoduleIdeal& J) const;
    RElem reduce(const RElem& x, const SubmoduleIdeal& J) const;

    bool same_presentation(const CoefficientRing& o) const;

    std::string str(const RElem& x) const;

    // canonicalized relation list actually used (pure powers + annihilators)
    std::vector<Monomial> canonical_relations() const;

private:
    WittRing base_;
    std::vector<std::string> vars_;
    std::vector<Monomial> relations_;
    std::optional<std::vector<unsigned>> rewrite_;
    std::vector<unsigned> bounds_;               // pure-power bound per variable
    std::vector<std::vector<unsigned>> mono_;    // standard variable-monomials
    std::vector<unsigned> cexp_;                 // annihilator exponent per monomial
    // product table: mono_i * mono_j -> (index, extra p power) or (-1, .)
    std::vector<std::pair<int32_t, uint32_t>> mult_;

    CoefficientRing(WittRing base, std::vector<std::string> vars,
                    std::vector<Monomial> rels, std::optional<std::vector<unsigned>> rw);
    // canonical form of p^a U^u: rewrite-reduce, then bound check
    std::pair<int32_t, uint32_t> canonicalize(std::vector<unsigned> u) const;
    void build();
    friend class SubmoduleIdeal;
};

/// A subgroup of (R,+) of the form  (+)_alpha p^{e_alpha} O/p^{c_alpha} U^alpha,
/// closed under multiplication by R (checked at construction).  This covers
/// every ideal the filtration machinery needs: m^k, pR, n_k and their sums,
/// intersections and products.
class SubmoduleIdeal {
public:
    SubmoduleIdeal(RingPtr ring, std::vector<unsigned> e);

    const RingPtr& ring() const { return ring_; }
    unsigned e(size_t i) const { return e_[i]; }
    const std::vector<unsigned>& exponents() const { return e_; }

    bool contains(const RElem& x) const;
    bool contains_ideal(const SubmoduleIdeal& other) const;
    bool is_zero() const;
    bool operator==(const SubmoduleIdeal& o) const { return e_ == o.e_; }

    SubmoduleIdeal intersect(const SubmoduleIdeal& o) const;
    SubmoduleIdeal sum(const SubmoduleIdeal& o) const;
    SubmoduleIdeal product(const SubmoduleIdeal& o) const;

    // monomial generators p^{e_alpha} U^alpha with e_alpha < c_alpha
    std::vector<Monomial> monomial_generators() const;
    // the subset not implied by a divisor generator (pure monomial rings)
    std::vector<Monomial> minimal_generators() const;
    // F_p basis of the subgroup: p^a t^i U^alpha over all digit positions
    std::vector<RElem> fp_basis() const;
    // F_q-dimension of J / J' for J' a subideal of J
    size_t fq_dim_quotient(const SubmoduleIdeal& sub) const;

    // m_R * J = 0
    bool nearly_small() const;

private:
    RingPtr ring_;
    std::vector<unsigned> e_;
    friend class CoefficientRing;
};

// m_R * (r) = 0, i.e. r may be used as an exponential-twist scalar
bool annihilated_by_m(const CoefficientRing& R, const RElem& r);

bool is_nearly_small(const CoefficientRing& R, const SubmoduleIdeal& J);

struct GradedPiece {
    unsigned k = 0;
    std::vector<Monomial> labels;  // representatives p^{e_k} U^alpha
    std::vector<RElem> reps;
    size_t dim_fq = 0;
};

// basis representatives of n_k / n_{k+1}
GradedPiece graded_piece(const CoefficientRing& R, unsigned k);

/// O-algebra map R -> T determined by images of the variables (which must lie
/// in m_T and kill the relations of R).  Source must be a pure monomial ring.
class RingHom {
public:
    RingHom(RingPtr source, RingPtr target, std::vector<RElem> images);
    const RingPtr& source() const { return src_; }
    const RingPtr& target() const { return tgt_; }
    RElem apply(const RElem& x) const;

private:
    RingPtr src_, tgt_;
    std::vector<RElem> images_;
    std::vector<RElem> mono_images_;  // image of each standard monomial U^alpha
};

// Membership x in the ideal of T generated by gens (arbitrary elements),
// decided by an exact O-linear solve over the monomial coordinates.
bool in_generated_ideal(const CoefficientRing& T, const std::vector<RElem>& gens,
                        const RElem& x);

// Solve the R-linear system  sum_j A[i][j] * x_j = b[i]  with each unknown
// x_j constrained to the subgroup J, via O-coefficients on J's monomial
// generators.  Returns the unknowns if a solution exists.
std::optional<std::vector<RElem>> solve_linear_in_ideal(
    const CoefficientRing& R, const SubmoduleIdeal& J, size_t nunknowns,
    const std::vector<std::vector<RElem>>& A, const std::vector<RElem>& b);

}  // namespace tamelift

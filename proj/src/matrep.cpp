#include "tamelift/matrep.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "tamelift/ringspec.hpp"

namespace tamelift {

Mat2 Mat2::zero(RingPtr R) {
    Mat2 m;
    m.R = R;
    for (auto& e : m.a) e = R->zero();
    return m;
}

Mat2 Mat2::identity(RingPtr R) {
    Mat2 m = zero(R);
    m.a[0] = R->one();
    m.a[3] = R->one();
    return m;
}

Mat2 Mat2::from_ints(RingPtr R, int64_t a11, int64_t a12, int64_t a21, int64_t a22) {
    Mat2 m;
    m.R = R;
    m.a = {R->from_int(a11), R->from_int(a12), R->from_int(a21), R->from_int(a22)};
    return m;
}

Mat2 m2_add(const Mat2& x, const Mat2& y) {
    Mat2 z = x;
    for (int i = 0; i < 4; ++i) z.a[i] = x.R->add(x.a[i], y.a[i]);
    return z;
}

Mat2 m2_sub(const Mat2& x, const Mat2& y) {
    Mat2 z = x;
    for (int i = 0; i < 4; ++i) z.a[i] = x.R->sub(x.a[i], y.a[i]);
    return z;
}

Mat2 m2_mul(const Mat2& x, const Mat2& y) {
    const auto& R = *x.R;
    Mat2 z = Mat2::zero(x.R);
    z.a[0] = R.add(R.mul(x.a[0], y.a[0]), R.mul(x.a[1], y.a[2]));
    z.a[1] = R.add(R.mul(x.a[0], y.a[1]), R.mul(x.a[1], y.a[3]));
    z.a[2] = R.add(R.mul(x.a[2], y.a[0]), R.mul(x.a[3], y.a[2]));
    z.a[3] = R.add(R.mul(x.a[2], y.a[1]), R.mul(x.a[3], y.a[3]));
    return z;
}

Mat2 m2_scale(const Mat2& x, const RElem& c) {
    Mat2 z = x;
    for (int i = 0; i < 4; ++i) z.a[i] = x.R->mul(x.a[i], c);
    return z;
}

Mat2 m2_pow(const Mat2& x, uint64_t e) {
    Mat2 r = Mat2::identity(x.R), b = x;
    while (e) {
        if (e & 1) r = m2_mul(r, b);
        b = m2_mul(b, b);
        e >>= 1;
    }
    return r;
}

RElem m2_det(const Mat2& x) {
    const auto& R = *x.R;
    return R.sub(R.mul(x.a[0], x.a[3]), R.mul(x.a[1], x.a[2]));
}

RElem m2_trace(const Mat2& x) { return x.R->add(x.a[0], x.a[3]); }

bool m2_invertible(const Mat2& x) { return x.R->is_unit(m2_det(x)); }

Mat2 m2_inv(const Mat2& x) {
    const auto& R = *x.R;
    RElem dinv = R.inv(m2_det(x));
    Mat2 z = Mat2::zero(x.R);
    z.a[0] = R.mul(x.a[3], dinv);
    z.a[1] = R.mul(R.neg(x.a[1]), dinv);
    z.a[2] = R.mul(R.neg(x.a[2]), dinv);
    z.a[3] = R.mul(x.a[0], dinv);
    return z;
}

bool m2_congruent_identity(const Mat2& x, const SubmoduleIdeal& J) {
    Mat2 d = m2_sub(x, Mat2::identity(x.R));
    for (int i = 0; i < 4; ++i)
        if (!J.contains(d.a[i])) return false;
    return true;
}

Mat2 m2_reduce(const Mat2& x, const SubmoduleIdeal& J, const RingPtr& quotient) {
    Mat2 z;
    z.R = quotient;
    for (int i = 0; i < 4; ++i) z.a[i] = quotient->normalized(x.R->reduce(x.a[i], J));
    return z;
}

bool tame_relation_holds(const CoefficientRing& R, uint64_t v, const Mat2& s, const Mat2& t) {
    (void)R;
    // s t s^-1 = t^v checked multiplicatively as s t = t^v s
    return m2_mul(s, t) == m2_mul(m2_pow(t, v), s);
}

TameRep make_tame_rep(RingPtr R, uint64_t v, Mat2 sigma, Mat2 tau) {
    if (!is_trivial_prime(R->p(), v))
        throw std::invalid_argument("v = " + std::to_string(v) +
                                    " is not a trivial prime for p = " + std::to_string(R->p()));
    if (!m2_invertible(sigma) || !m2_invertible(tau))
        throw std::invalid_argument("generator images must be invertible");
    auto m = R->maximal_ideal();
    if (!m2_congruent_identity(sigma, m) || !m2_congruent_identity(tau, m))
        throw std::invalid_argument("generator images must reduce to the identity");
    if (!tame_relation_holds(*R, v, sigma, tau))
        throw std::invalid_argument("tame relation s t s^-1 = t^v violated");
    return TameRep{std::move(R), v, std::move(sigma), std::move(tau)};
}

TameRep conjugate(const TameRep& rep, const Mat2& A) {
    Mat2 Ainv = m2_inv(A);
    TameRep out = rep;
    out.sigma = m2_mul(m2_mul(A, rep.sigma), Ainv);
    out.tau = m2_mul(m2_mul(A, rep.tau), Ainv);
    return out;
}

TameRep reduce(const TameRep& rep, const SubmoduleIdeal& J) {
    RingPtr Q = rep.R->quotient(J);
    TameRep out;
    out.R = Q;
    out.v = rep.v;
    out.sigma = m2_reduce(rep.sigma, J, Q);
    out.tau = m2_reduce(rep.tau, J, Q);
    return out;
}

SearchOptions::SearchOptions() : ring_bound(default_search_bound()), enum_cap(uint64_t(1) << 26) {}

uint64_t default_search_bound() {
    if (const char* env = std::getenv("TAMELIFT_SEARCH_BOUND")) {
        char* end = nullptr;
        unsigned long long val = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && val > 0) return uint64_t(val);
    }
    uint64_t b = 1;
    for (int i = 0; i < 10; ++i) b *= 3;  // 3^10
    return b;
}

namespace {

void check_search_feasible(const CoefficientRing& R, const SearchOptions& opts,
                           uint64_t conj_count) {
    if (R.size_log2() > std::log2((long double)opts.ring_bound) + 1e-9)
        throw SearchBoundError("ring exceeds the configured search bound");
    if (conj_count > opts.enum_cap)
        throw SearchBoundError("conjugator space exceeds the enumeration cap");
}

// all A = Id + Y, Y in M2(m), as an indexed enumeration over a precomputed
// table of the elements of m (the table keeps the scan allocation free)
struct ConjSpace {
    RingPtr R;
    uint64_t count = 1;  // |m|
    uint64_t total = 1;  // |m|^4
    std::vector<RElem> raw;       // the elements of m
    std::vector<RElem> one_plus;  // 1 + each element of m

    explicit ConjSpace(RingPtr ring) : R(std::move(ring)) {
        auto span = R->digit_span(R->maximal_ideal());
        count = span.count;
        if (count > (uint64_t(1) << 16))
            throw SearchBoundError("conjugator space overflows the table");
        for (int i = 0; i < 4; ++i) total *= count;
        raw.reserve(count);
        one_plus.reserve(count);
        for (uint64_t i = 0; i < count; ++i) {
            raw.push_back(R->element_at(span, i));
            one_plus.push_back(R->add(R->one(), raw.back()));
        }
    }
    // entry references for candidate idx (row major, diagonal entries 1 + y)
    void entries(uint64_t idx, const RElem* out[4]) const {
        out[0] = &one_plus[idx % count];
        idx /= count;
        out[1] = &raw[idx % count];
        idx /= count;
        out[2] = &raw[idx % count];
        idx /= count;
        out[3] = &one_plus[idx % count];
    }
    Mat2 at(uint64_t idx) const {
        const RElem* e[4];
        entries(idx, e);
        Mat2 A;
        A.R = R;
        A.a = {*e[0], *e[1], *e[2], *e[3]};
        return A;
    }
};

EquivResult equivalent_linear(const TameRep& r1, const TameRep& r2) {
    const auto& R = *r1.R;
    RingPtr Rp = r1.R;
    auto m = R.maximal_ideal();
    // unknown Y (4 entries in m) with M Y - Y N = N - M for both generators,
    // where M = rep2 image and N = rep1 image
    std::vector<std::vector<RElem>> A;
    std::vector<RElem> b;
    auto add_gen = [&](const Mat2& M, const Mat2& N) {
        // position (r,c) of M Y - Y N: sum_l M[r,l] Y[l,c] - Y[r,l] N[l,c]
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                std::vector<RElem> row(4, R.zero());
                for (int l = 0; l < 2; ++l) {
                    // + M[r,l] * Y[l,c]
                    size_t yi = size_t(l * 2 + c);
                    row[yi] = R.add(row[yi], M.a[r * 2 + l]);
                    // - Y[r,l] * N[l,c]
                    size_t yj = size_t(r * 2 + l);
                    row[yj] = R.sub(row[yj], N.a[l * 2 + c]);
                }
                A.push_back(std::move(row));
                b.push_back(R.sub(N.a[r * 2 + c], M.a[r * 2 + c]));
            }
    };
    add_gen(r2.sigma, r1.sigma);
    add_gen(r2.tau, r1.tau);
    auto sol = solve_linear_in_ideal(R, m, 4, A, b);
    if (!sol) return {};
    Mat2 conj = Mat2::identity(Rp);
    for (int i = 0; i < 4; ++i) conj.a[i] = R.add(conj.a[i], (*sol)[size_t(i)]);
    if (!(m2_mul(conj, r1.sigma) == m2_mul(r2.sigma, conj)) ||
        !(m2_mul(conj, r1.tau) == m2_mul(r2.tau, conj)))
        throw std::logic_error("equivalence witness failed verification");
    return {true, conj};
}

EquivResult equivalent_search(const TameRep& r1, const TameRep& r2, const SearchOptions& opts) {
    const auto& R = *r1.R;
    ConjSpace space(r1.R);
    check_search_feasible(R, opts, space.total);
    // entrywise comparison of A M1 with M2 A, bailing at the first mismatch
    auto intertwines = [&](const RElem* a[4], const Mat2& M1, const Mat2& M2) {
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                RElem lhs = R.add(R.mul(*a[r * 2], M1.a[c]), R.mul(*a[r * 2 + 1], M1.a[2 + c]));
                RElem rhs = R.add(R.mul(M2.a[r * 2], *a[c]), R.mul(M2.a[r * 2 + 1], *a[2 + c]));
                if (!(lhs == rhs)) return false;
            }
        return true;
    };
    for (uint64_t i = 0; i < space.total; ++i) {
        if (opts.nshards > 1 && i % opts.nshards != opts.shard) continue;
        const RElem* a[4];
        space.entries(i, a);
        if (!intertwines(a, r1.sigma, r2.sigma)) continue;
        if (!intertwines(a, r1.tau, r2.tau)) continue;
        return {true, space.at(i)};
    }
    return {};
}

}  // namespace

EquivResult strictly_equivalent(const TameRep& rep1, const TameRep& rep2, EquivMode mode,
                                const SearchOptions& opts) {
    if (!rep1.R->same_presentation(*rep2.R))
        throw std::invalid_argument("strict equivalence requires a common ring");
    if (rep1.v != rep2.v) throw std::invalid_argument("strict equivalence requires equal v");
    switch (mode) {
        case EquivMode::NormalForm:
            return equivalent_linear(rep1, rep2);
        case EquivMode::Search:
            return equivalent_search(rep1, rep2, opts);
        case EquivMode::Both: {
            EquivResult a = equivalent_linear(rep1, rep2);
            EquivResult b = equivalent_search(rep1, rep2, opts);
            if (a.equivalent != b.equivalent)
                throw std::logic_error("equivalence backends disagree");
            return a;
        }
    }
    return {};
}

const char* variant_name(Variant v) {
    switch (v) {
        case Variant::D: return "D";
        case Variant::DRam: return "D_ram";
        case Variant::DNr: return "D_nr";
        case Variant::DTilde: return "D_tilde";
    }
    return "?";
}

const char* basis_conj_name(BasisConj c) {
    switch (c) {
        case BasisConj::Identity: return "identity";
        case BasisConj::LowerUnipotent: return "lower-unipotent";
        case BasisConj::Swap: return "swap";
    }
    return "?";
}

DeformClassSpec make_class_spec(Variant variant, uint64_t v, const WittElem& kappa,
                                BasisConj conj) {
    if (conj == BasisConj::LowerUnipotent && variant != Variant::DNr && variant != Variant::DTilde)
        throw std::invalid_argument("lower-unipotent conjugation pairs with the unramified variant");
    if (conj == BasisConj::Swap && variant != Variant::DRam && variant != Variant::DTilde)
        throw std::invalid_argument("swap conjugation pairs with the ramified variant");
    return DeformClassSpec{variant, v, kappa, conj};
}

Mat2 basis_conj_matrix(RingPtr R, BasisConj c) {
    switch (c) {
        case BasisConj::Identity: return Mat2::identity(R);
        case BasisConj::LowerUnipotent: return Mat2::from_ints(R, 1, 0, 1, 1);
        case BasisConj::Swap: return Mat2::from_ints(R, 0, 1, 1, 0);
    }
    throw std::logic_error("bad conjugator");
}

RElem class_unit(const CoefficientRing& R, const DeformClassSpec& spec) {
    const WittRing& O = R.base();
    WittElem kappa = spec.kappa_sigma;
    for (auto& c : kappa) c %= O.pN();
    if (O.to_residue(kappa) != O.residue_field().one())
        throw std::invalid_argument("kappa(sigma_v) must be a unit congruent to 1 mod p");
    WittElem kv = O.mul(kappa, O.inv(O.from_int(int64_t(spec.v % O.pN()))));
    return R.from_base(O.hensel_sqrt(kv));
}

SubmoduleIdeal x_condition_ideal(const CoefficientRing& R) {
    auto p2R = R.ideal({{2, std::vector<unsigned>(R.nvars(), 0)}});
    auto pm = R.p_ideal().product(R.maximal_ideal());
    return p2R.sum(pm);
}

namespace {

// square root of s in 1 + m for s in 1 + J, J inside m; exact Newton steps
std::optional<RElem> sqrt_one_plus(const CoefficientRing& R, const RElem& s) {
    RElem t = R.zero();
    RElem smin1 = R.sub(s, R.one());
    RElem half = R.inv(R.from_int(2));
    for (unsigned it = 0; it < 64; ++it) {
        RElem z = R.add(R.one(), t);
        if (R.mul(z, z) == s) return z;
        // t <- (s - 1 - t^2)/2
        t = R.mul(half, R.sub(smin1, R.mul(t, t)));
    }
    RElem z = R.add(R.one(), t);
    if (R.mul(z, z) == s) return z;
    return std::nullopt;
}

struct NormalFormTarget {
    RElem u, vbar, z;
    Mat2 sigma0, tau0;  // the rep in the unconjugated frame, z removed from sigma
};

// shared preparation: undo the basis conjugation, check determinants, peel z
std::optional<NormalFormTarget> prepare_target(const TameRep& rep, const DeformClassSpec& spec) {
    const auto& R = *rep.R;
    RingPtr Rp = rep.R;
    if (spec.v != rep.v) throw std::invalid_argument("class spec and representation disagree on v");
    Mat2 B = basis_conj_matrix(Rp, spec.conj);
    TameRep rep0 = conjugate(rep, m2_inv(B));
    NormalFormTarget t;
    t.u = class_unit(R, spec);
    t.vbar = R.from_int(int64_t(spec.v));
    t.sigma0 = rep0.sigma;
    t.tau0 = rep0.tau;
    if (!(m2_det(t.tau0) == R.one())) return std::nullopt;
    RElem kappaR = R.from_base(spec.kappa_sigma);
    RElem dets = m2_det(t.sigma0);
    if (spec.variant == Variant::DTilde) {
        RElem s = R.mul(dets, R.inv(kappaR));
        if (!R.p_ideal().contains(R.sub(s, R.one()))) return std::nullopt;
        auto z = sqrt_one_plus(R, s);
        if (!z) return std::nullopt;
        t.z = *z;
        RElem zinv = R.inv(t.z);
        t.sigma0 = m2_scale(t.sigma0, zinv);
    } else {
        if (!(dets == kappaR)) return std::nullopt;
        t.z = R.one();
    }
    return t;
}

bool y_condition(const CoefficientRing& R, Variant variant, const RElem& y) {
    switch (variant) {
        case Variant::D:
        case Variant::DTilde:
            return true;
        case Variant::DNr:
            return R.filtration_nk(2).contains(y);
        case Variant::DRam:
            return R.p_ideal().contains(y) && !R.filtration_nk(2).contains(y);
    }
    return false;
}

MembershipResult membership_linear(const TameRep& rep, const DeformClassSpec& spec) {
    const auto& R = *rep.R;
    auto target = prepare_target(rep, spec);
    if (!target) return {};
    const Mat2& S = target->sigma0;
    const Mat2& T = target->tau0;
    RElem uv = R.mul(target->u, target->vbar);

    // x lands in p^2 R after adjusting by the upper-triangular freedom iff
    // the raw upper-right entry lies in p^2 R + p m
    if (!x_condition_ideal(R).contains(S.a[1])) return {};
    if (!y_condition(R, spec.variant, T.a[1])) return {};

    // common eigenvector (1, c), c in m, with pinned eigenvalues u v and 1:
    //   s12 c = u v - s11,  (s22 - u v) c = -s21,
    //   t12 c = 1 - t11,    (t22 - 1) c = -t21
    std::vector<std::vector<RElem>> A = {
        {S.a[1]}, {R.sub(S.a[3], uv)}, {T.a[1]}, {R.sub(T.a[3], R.one())}};
    std::vector<RElem> b = {R.sub(uv, S.a[0]), R.neg(S.a[2]), R.sub(R.one(), T.a[0]),
                            R.neg(T.a[2])};
    auto sol = solve_linear_in_ideal(R, R.maximal_ideal(), 1, A, b);
    if (!sol) return {};
    RElem c = (*sol)[0];

    // witness: first clear the lower-left with L = (1 0; -c 1), then move the
    // x-entry into p^2 R with an upper shear, which changes x by p m exactly
    RingPtr Rp = rep.R;
    const WittRing& O = R.base();
    RElem x_raw = R.mul(S.a[1], R.inv(target->u));
    RElem x2 = x_raw;  // part with p-layers >= 2
    RElem xm = R.zero();
    for (size_t i = 0; i < R.nmono(); ++i) {
        uint64_t p2 = O.p_pow(std::min<unsigned>(2, R.cexp(i)));
        WittElem low = x_raw[i];
        for (auto& w : low) w %= p2;
        xm[i] = low;
        x2[i] = O.sub(x_raw[i], low);
    }
    xm = R.normalized(std::move(xm));
    x2 = R.normalized(std::move(x2));
    // b_shear = -xm / (1 - vbar); 1 - vbar = -p * w with w a unit
    RElem w_unit = R.from_base(O.unit_part(O.sub(O.from_int(int64_t(spec.v)), O.one())));
    RElem xm_over_p = R.zero();
    for (size_t i = 0; i < R.nmono(); ++i)
        xm_over_p[i] = O.is_zero(xm[i]) ? O.zero() : O.div_p_exact(xm[i], 1);
    xm_over_p = R.normalized(std::move(xm_over_p));
    RElem b_shear = R.mul(xm_over_p, R.inv(w_unit));

    Mat2 L = Mat2::identity(Rp);
    L.a[2] = R.neg(c);
    Mat2 U = Mat2::identity(Rp);
    U.a[1] = b_shear;
    Mat2 Aconj = m2_mul(U, L);

    MembershipWitness wit;
    wit.conjugator = Aconj;
    wit.x = x2;
    wit.y = T.a[1];
    wit.z = target->z;

    // exact verification of the witness
    Mat2 nf_sigma = Mat2::zero(Rp);
    nf_sigma.a[0] = R.mul(target->u, target->vbar);
    nf_sigma.a[1] = R.mul(target->u, wit.x);
    nf_sigma.a[3] = target->u;
    nf_sigma = m2_scale(nf_sigma, wit.z);
    Mat2 nf_tau = Mat2::identity(Rp);
    nf_tau.a[1] = wit.y;
    Mat2 B = basis_conj_matrix(Rp, spec.conj);
    TameRep rep0 = conjugate(rep, m2_inv(B));
    Mat2 Ainv = m2_inv(Aconj);
    if (!(m2_mul(m2_mul(Aconj, rep0.sigma), Ainv) == nf_sigma) ||
        !(m2_mul(m2_mul(Aconj, rep0.tau), Ainv) == nf_tau))
        throw std::logic_error("membership witness failed verification");
    if (!m2_congruent_identity(Aconj, R.maximal_ideal()))
        throw std::logic_error("membership witness conjugator is not strict");
    return {true, wit};
}

MembershipResult membership_search(const TameRep& rep, const DeformClassSpec& spec,
                                   const SearchOptions& opts) {
    const auto& R = *rep.R;
    RingPtr Rp = rep.R;
    auto target = prepare_target(rep, spec);
    if (!target) return {};
    ConjSpace space(Rp);
    check_search_feasible(R, opts, space.total);
    auto p2R = R.ideal({{2, std::vector<unsigned>(R.nvars(), 0)}});
    RElem uinv = R.inv(target->u);
    RElem uv = R.mul(target->u, target->vbar);
    const Mat2& S0 = target->sigma0;
    const Mat2& T0 = target->tau0;
    // The two lower-left entries of A M adj(A) (det times the conjugate,
    // avoiding any inverse) depend only on the bottom row of A.  Enumerate
    // that row first and keep only the rows clearing both lower-left entries.
    struct BottomRow {
        uint64_t i2, i3;
    };
    std::vector<BottomRow> rows;
    for (uint64_t i3 = 0; i3 < space.count; ++i3)
        for (uint64_t i2 = 0; i2 < space.count; ++i2) {
            const RElem& a2 = space.raw[i2];
            const RElem& a3 = space.one_plus[i3];
            RElem P20 = R.add(R.mul(a2, S0.a[0]), R.mul(a3, S0.a[2]));
            RElem P21 = R.add(R.mul(a2, S0.a[1]), R.mul(a3, S0.a[3]));
            if (!R.is_zero(R.sub(R.mul(P20, a3), R.mul(P21, a2)))) continue;
            RElem Q20 = R.add(R.mul(a2, T0.a[0]), R.mul(a3, T0.a[2]));
            RElem Q21 = R.add(R.mul(a2, T0.a[1]), R.mul(a3, T0.a[3]));
            if (!R.is_zero(R.sub(R.mul(Q20, a3), R.mul(Q21, a2)))) continue;
            rows.push_back({i2, i3});
        }
    for (const auto& row : rows) {
      for (uint64_t i1 = 0; i1 < space.count; ++i1)
       for (uint64_t i0 = 0; i0 < space.count; ++i0) {
        uint64_t i = ((row.i3 * space.count + row.i2) * space.count + i1) * space.count + i0;
        if (opts.nshards > 1 && i % opts.nshards != opts.shard) continue;
        Mat2 A = space.at(i);
        RElem det = m2_det(A);
        Mat2 P = m2_mul(A, S0);
        Mat2 Q = m2_mul(A, T0);
        // diagonals: (A M adj)_11 = det * target
        RElem t11 = R.sub(R.mul(Q.a[0], A.a[3]), R.mul(Q.a[1], A.a[2]));
        if (!(t11 == det)) continue;
        RElem t22 = R.sub(R.mul(Q.a[3], A.a[0]), R.mul(Q.a[2], A.a[1]));
        if (!(t22 == det)) continue;
        RElem s11 = R.sub(R.mul(P.a[0], A.a[3]), R.mul(P.a[1], A.a[2]));
        if (!(s11 == R.mul(det, uv))) continue;
        RElem s22 = R.sub(R.mul(P.a[3], A.a[0]), R.mul(P.a[2], A.a[1]));
        if (!(s22 == R.mul(det, target->u))) continue;
        RElem dinv = R.inv(det);
        RElem s12 = R.mul(R.sub(R.mul(P.a[1], A.a[0]), R.mul(P.a[0], A.a[1])), dinv);
        RElem x = R.mul(s12, uinv);
        if (!p2R.contains(x)) continue;
        RElem y = R.mul(R.sub(R.mul(Q.a[1], A.a[0]), R.mul(Q.a[0], A.a[1])), dinv);
        if (!y_condition(R, spec.variant, y)) continue;
        MembershipWitness wit;
        wit.conjugator = A;
        wit.x = x;
        wit.y = y;
        wit.z = target->z;
        return {true, wit};
       }
    }
    return {};
}

}  // namespace

MembershipResult in_deform_class(const TameRep& rep, const DeformClassSpec& spec, EquivMode mode,
                                 const SearchOptions& opts) {
    switch (mode) {
        case EquivMode::NormalForm:
            return membership_linear(rep, spec);
        case EquivMode::Search:
            return membership_search(rep, spec, opts);
        case EquivMode::Both: {
            MembershipResult a = membership_linear(rep, spec);
            MembershipResult b = membership_search(rep, spec, opts);
            if (a.member != b.member) throw std::logic_error("membership backends disagree");
            return a;
        }
    }
    return {};
}

TameRep normal_form_rep(RingPtr R, const DeformClassSpec& spec, const RElem& x, const RElem& y,
                        const RElem& z) {
    RElem u = class_unit(*R, spec);
    Mat2 sigma = Mat2::zero(R);
    sigma.a[0] = R->mul(u, R->from_int(int64_t(spec.v)));
    sigma.a[1] = R->mul(u, x);
    sigma.a[3] = u;
    sigma = m2_scale(sigma, z);
    Mat2 tau = Mat2::identity(R);
    tau.a[1] = y;
    if (spec.conj != BasisConj::Identity) {
        Mat2 B = basis_conj_matrix(R, spec.conj);
        Mat2 Binv = m2_inv(B);
        sigma = m2_mul(m2_mul(B, sigma), Binv);
        tau = m2_mul(m2_mul(B, tau), Binv);
    }
    return make_tame_rep(R, spec.v, sigma, tau);
}

std::string print_rep(const TameRep& rep, const std::optional<WittElem>& kappa) {
    std::ostringstream os;
    os << "ring = " << print_ring_spec(*rep.R) << "\n";
    os << "v = " << rep.v << "\n";
    if (kappa) os << "kappa = " << rep.R->base().str(*kappa) << "\n";
    auto block = [&](const char* name, const Mat2& M) {
        os << name << " = [[" << print_elem(*rep.R, M.a[0]) << ", " << print_elem(*rep.R, M.a[1])
           << "], [" << print_elem(*rep.R, M.a[2]) << ", " << print_elem(*rep.R, M.a[3]) << "]]\n";
    };
    block("sigma", rep.sigma);
    block("tau", rep.tau);
    return os.str();
}

TameRep parse_rep(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    RingPtr R;
    uint64_t v = 0;
    std::optional<Mat2> sigma, tau;
    auto parse_mat = [&](const std::string& rhs) {
        // [[a, b], [c, d]]; element syntax contains no commas or brackets
        std::vector<std::string> parts;
        std::string cur;
        for (char ch : rhs) {
            if (ch == '[' || ch == ']') continue;
            if (ch == ',') {
                parts.push_back(cur);
                cur.clear();
                continue;
            }
            cur += ch;
        }
        parts.push_back(cur);
        if (parts.size() != 4) throw RingSpecError("matrix block needs 4 entries");
        Mat2 M;
        M.R = R;
        for (int i = 0; i < 4; ++i) M.a[i] = parse_elem(*R, parts[size_t(i)]);
        return M;
    };
    while (std::getline(in, line)) {
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = line.substr(0, eq);
        std::string rhs = line.substr(eq + 1);
        while (!key.empty() && std::isspace((unsigned char)key.back())) key.pop_back();
        while (!key.empty() && std::isspace((unsigned char)key.front())) key.erase(key.begin());
        if (key == "ring")
            R = parse_ring_spec(rhs);
        else if (key == "v")
            v = std::stoull(rhs);
        else if (key == "sigma")
            sigma = parse_mat(rhs);
        else if (key == "tau")
            tau = parse_mat(rhs);
        // other keys (kappa, comments) are ignored
    }
    if (!R || v == 0 || !sigma || !tau) throw RingSpecError("incomplete representation block");
    return make_tame_rep(R, v, *sigma, *tau);
}

}  // namespace tamelift

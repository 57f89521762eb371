#include "tamelift/defclass.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <thread>

#include "tamelift/ringspec.hpp"

namespace tamelift {

namespace {

std::array<Fq, 4> conj_matrix_fq(const FiniteField& k, BasisConj c) {
    switch (c) {
        case BasisConj::Identity: return {1, 0, 0, 1};
        case BasisConj::LowerUnipotent: return {1, 0, 1, 1};
        case BasisConj::Swap: return {0, 1, 1, 0};
    }
    (void)k;
    throw std::logic_error("bad conjugator");
}

// F_q residue of y/p for y divisible by p
Fq y_over_p_residue(const CoefficientRing& R, const RElem& y) {
    const WittRing& O = R.base();
    if (!R.p_ideal().contains(y))
        throw std::invalid_argument("ramification parameter must be divisible by p");
    WittElem c = y[0];
    if (O.is_zero(c)) return 0;
    return O.to_residue(O.div_p_exact(c, 1));
}

}  // namespace

Mat2 cocycle_value_in_ring(const RingPtr& R, const std::array<Fq, 4>& val, const RElem& r) {
    const WittRing& O = R->base();
    Mat2 M = Mat2::zero(R);
    for (int i = 0; i < 4; ++i) {
        if (!val[size_t(i)]) continue;
        M.a[size_t(i)] = R->mul(R->from_base(O.from_residue(val[size_t(i)])), r);
    }
    return M;
}

TameRep exp_twist(const TameRep& rep, const TwistDatum& t) {
    const auto& R = *rep.R;
    if (!annihilated_by_m(R, t.scalar))
        throw std::invalid_argument("twist scalar is not annihilated by the maximal ideal");
    Mat2 Bs = m2_add(Mat2::identity(rep.R), cocycle_value_in_ring(rep.R, t.cocycle.sigma_mat(), t.scalar));
    Mat2 Bt = m2_add(Mat2::identity(rep.R), cocycle_value_in_ring(rep.R, t.cocycle.tau_mat(), t.scalar));
    // make_tame_rep re-checks the tame relation exactly
    return make_tame_rep(rep.R, rep.v, m2_mul(Bs, rep.sigma), m2_mul(Bt, rep.tau));
}

StabilizationReport stabilization_check(const RingPtr& R, unsigned k, bool ramified,
                                        const TameRep& sample, const DeformClassSpec& spec,
                                        bool scan_unit_multiples) {
    if (k < 1) throw std::invalid_argument("stabilization level k must be >= 1");
    auto nk = R->filtration_nk(k);
    auto nk1 = R->filtration_nk(k + 1);
    RingPtr Q = R->quotient(nk1);

    TameRep s = sample;
    if (sample.R->same_presentation(*R))
        s = reduce(sample, nk1);
    else if (!sample.R->same_presentation(*Q))
        throw std::invalid_argument("sample must live over R or R/n_{k+1}");

    auto before = in_deform_class(s, spec);
    if (!before.member) throw std::invalid_argument("sample is not in the deformation class");

    const FiniteField& kq = Q->residue_field();
    std::array<Fq, 4> id = {1, 0, 0, 1};
    auto ad0 = adjoint_module(kq, id, id, true, spec.v);
    // the ramification parameter of g_ram comes from the sample's normal form
    Fq scale = 0;
    if (ramified) {
        Fq yp = y_over_p_residue(*Q, before.witness->y);
        uint64_t w = (spec.v - 1) / Q->p();
        scale = kq.mul(yp, kq.inv(kq.from_int(int64_t(w % Q->p()))));
    }
    StandardCocycles sc;
    {
        FqVec zerov(3, 0);
        auto mk = [&](FqVec sv, FqVec tv) {
            Cocycle c;
            c.mod = ad0;
            c.val_sigma = std::move(sv);
            c.val_tau = std::move(tv);
            return c;
        };
        sc.f1 = mk({1, 0, 0}, zerov);
        sc.f2 = mk(zerov, {1, 0, 0});
        sc.g_nr = mk({0, 0, 1}, zerov);
        sc.g_ram = mk({0, 0, 1}, {0, kq.neg(scale), 0});
    }
    CocycleSpace P = space_P(ad0, sc, ramified);
    CocycleSpace tangent = conjugate_space(P, conj_matrix_fq(kq, spec.conj), "N");

    GradedPiece piece = graded_piece(*R, k);
    StabilizationReport rep_out;
    rep_out.k = k;
    rep_out.ramified = ramified;

    std::vector<Fq> units;
    if (scan_unit_multiples)
        for (Fq u = 1; u < kq.q(); ++u) units.push_back(u);
    else
        units.push_back(1);

    for (size_t ci = 0; ci < tangent.basis.size(); ++ci) {
        static const char* names_nr[] = {"f1", "f2", "g_nr"};
        static const char* names_ram[] = {"f1", "f2", "g_ram"};
        for (size_t ji = 0; ji < piece.reps.size(); ++ji) {
            for (Fq u : units) {
                RElem scalar = Q->normalized(R->reduce(piece.reps[ji], nk1));
                scalar = Q->mul_base(scalar, Q->base().from_residue(u));
                TwistCheck chk;
                chk.cocycle_label = (ramified ? names_ram : names_nr)[ci];
                std::ostringstream lbl;
                lbl << "[p^" << piece.labels[ji].a;
                for (size_t l = 0; l < piece.labels[ji].u.size(); ++l)
                    for (unsigned e = 0; e < piece.labels[ji].u[l]; ++e)
                        lbl << "*" << R->var_names()[l];
                lbl << "]";
                if (u != 1) lbl << "*" << kq.str(u);
                chk.scalar_label = lbl.str();
                chk.member_before = true;
                TameRep twisted = exp_twist(s, {tangent.basis[ci], scalar});
                auto after = in_deform_class(twisted, spec);
                chk.member_after = after.member;
                chk.witness_after = after.witness;
                if (!after.member) {
                    rep_out.all_preserved = false;
                    if (!rep_out.violation_found) {
                        rep_out.violation_found = true;
                        rep_out.first_violation = chk.cocycle_label + " x " + chk.scalar_label;
                    }
                }
                rep_out.checks.push_back(std::move(chk));
            }
        }
    }
    return rep_out;
}

ConjugationIdentityReport conjugation_identity_check(const RingPtr& R, unsigned k,
                                                     const RElem& r, const RElem& x,
                                                     const RElem& y,
                                                     const DeformClassSpec& spec) {
    ConjugationIdentityReport out;
    auto p2R = R->ideal({{2, std::vector<unsigned>(R->nvars(), 0)}});
    if (!p2R.contains(x)) throw std::invalid_argument("x must be divisible by p^2");
    if (R->is_unit(r)) throw std::invalid_argument("r must lie in the maximal ideal");
    RElem pr = R->mul(R->p_elem(), r);
    if (!R->filtration_nk(k).contains(pr)) throw std::invalid_argument("p r must lie in n_k");

    auto nk1 = R->filtration_nk(k + 1);
    RingPtr Q = R->quotient(nk1);
    RElem rq = Q->normalized(R->reduce(r, nk1));
    RElem xq = Q->normalized(R->reduce(x, nk1));
    RElem yq = Q->normalized(R->reduce(y, nk1));
    RElem prq = Q->mul(Q->p_elem(), rq);

    const WittRing& O = Q->base();
    RElem u = class_unit(*Q, spec);
    RElem vbar = Q->from_int(int64_t(spec.v));
    // p/(v-1) is the unit 1/w for v - 1 = p w
    RElem winv = Q->inv(Q->from_base(O.unit_part(O.sub(O.from_int(int64_t(spec.v)), O.one()))));

    Mat2 C = Mat2::identity(Q);
    C.a[2] = Q->mul(rq, winv);
    Mat2 Cinv = m2_inv(C);

    // sigma identity: conjugating away the p r in the lower-left
    Mat2 M = Mat2::zero(Q);
    M.a[0] = Q->mul(u, vbar);
    M.a[1] = Q->mul(u, xq);
    M.a[2] = Q->mul(u, prq);
    M.a[3] = u;
    Mat2 target = Mat2::zero(Q);
    target.a[0] = Q->mul(u, vbar);
    target.a[1] = Q->mul(u, xq);
    target.a[3] = u;
    out.sigma_identity = (m2_mul(m2_mul(Cinv, M), C) == target);

    Mat2 T = Mat2::identity(Q);
    T.a[1] = yq;
    out.applicable_tau = p2R.contains(y);
    if (out.applicable_tau) out.tau_identity = (m2_mul(m2_mul(Cinv, T), C) == T);

    out.applicable_ram = R->p_ideal().contains(y);
    if (out.applicable_ram) {
        // C T C^-1 = (1 - p r y/(v-1), y; 0, 1 + p r y/(v-1))
        RElem shift = Q->mul(Q->mul(rq, yq), winv);
        Mat2 disp = Mat2::zero(Q);
        disp.a[0] = Q->sub(Q->one(), shift);
        disp.a[1] = yq;
        disp.a[3] = Q->add(Q->one(), shift);
        Mat2 lhs = m2_mul(m2_mul(C, T), Cinv);
        bool matches_display = (lhs == disp);
        // and the display is the g_ram twist of tau
        const FiniteField& kq = Q->residue_field();
        Fq yp = y_over_p_residue(*Q, yq);
        uint64_t w = (spec.v - 1) / Q->p();
        Fq sc = kq.mul(yp, kq.inv(kq.from_int(int64_t(w % Q->p()))));
        std::array<Fq, 4> gram_tau = {kq.neg(sc), 0, 0, sc};
        Mat2 twist = m2_add(Mat2::identity(Q), cocycle_value_in_ring(Q, gram_tau, prq));
        bool matches_twist = (m2_mul(twist, T) == disp);
        out.tau_ram_display = matches_display && matches_twist;
    }
    out.ok = out.sigma_identity && (!out.applicable_tau || out.tau_identity) &&
             (!out.applicable_ram || out.tau_ram_display);
    return out;
}

FiberReport fiber_enumerate(const RingPtr& R, const SubmoduleIdeal& J,
                            const DeformClassSpec& spec, const TameRep& base,
                            const SearchOptions& opts) {
    FiberReport out;
    if (!is_nearly_small(*R, J)) throw std::invalid_argument("J must be nearly small");
    RingPtr Q = R->quotient(J);
    if (!base.R->same_presentation(*Q))
        throw std::invalid_argument("base must live over R/J");
    if (!in_deform_class(base, spec).member)
        throw std::invalid_argument("base is not in the deformation class");
    if (R->size_log2() > std::log2((long double)opts.ring_bound) + 1e-9)
        throw SearchBoundError("ring exceeds the configured search bound");

    // canonical lift of the base (digit representatives are shared)
    auto lift_mat = [&](const Mat2& m) {
        Mat2 out_m;
        out_m.R = R;
        for (int i = 0; i < 4; ++i) out_m.a[i] = R->normalized(m.a[i]);
        return out_m;
    };
    Mat2 sig0 = lift_mat(base.sigma), tau0 = lift_mat(base.tau);

    auto span = R->digit_span(J);
    uint64_t per_mat = 1;
    for (int i = 0; i < 4; ++i) {
        if (per_mat > (uint64_t(1) << 16)) throw SearchBoundError("fiber enumeration exceeds the cap");
        per_mat *= span.count;
    }
    if (per_mat > (uint64_t(1) << 16) || per_mat * per_mat > opts.enum_cap)
        throw SearchBoundError("fiber enumeration exceeds the cap");
    uint64_t total = per_mat * per_mat;

    auto deviation = [&](uint64_t idx) {
        Mat2 D = Mat2::zero(R);
        for (int i = 0; i < 4; ++i) {
            D.a[size_t(i)] = R->element_at(span, idx % span.count);
            idx /= span.count;
        }
        return D;
    };

    // partitioned scan of the lift space; every operation below is pure, so
    // shards may run on worker threads and merge by index
    unsigned nshards = std::max<uint64_t>(1, opts.nshards);
    std::vector<std::vector<uint64_t>> shard_members(nshards);
    std::vector<uint64_t> shard_raw(nshards, 0);
    auto scan = [&](unsigned shard) {
        for (uint64_t i = shard; i < total; i += nshards) {
            Mat2 S = m2_add(sig0, deviation(i % per_mat));
            Mat2 T = m2_add(tau0, deviation(i / per_mat));
            if (!tame_relation_holds(*R, spec.v, S, T)) continue;
            ++shard_raw[shard];
            TameRep rep{R, spec.v, S, T};
            if (in_deform_class(rep, spec).member) shard_members[shard].push_back(i);
        }
    };
    if (nshards == 1) {
        scan(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned s = 0; s < nshards; ++s) pool.emplace_back(scan, s);
        for (auto& th : pool) th.join();
    }
    std::vector<uint64_t> member_idx;
    for (auto& v : shard_members) member_idx.insert(member_idx.end(), v.begin(), v.end());
    std::sort(member_idx.begin(), member_idx.end());
    for (uint64_t raw : shard_raw) out.raw_lift_count += raw;
    for (uint64_t i : member_idx) {
        Mat2 S = m2_add(sig0, deviation(i % per_mat));
        Mat2 T = m2_add(tau0, deviation(i / per_mat));
        out.members.push_back(TameRep{R, spec.v, S, T});
    }
    out.fiber_nonempty = !out.members.empty();

    // group members into strict-equivalence classes
    std::vector<size_t> cls_rep;
    for (size_t i = 0; i < out.members.size(); ++i) {
        bool placed = false;
        for (size_t c = 0; c < cls_rep.size(); ++c) {
            if (strictly_equivalent(out.members[cls_rep[c]], out.members[i]).equivalent) {
                out.classes[c].push_back(i);
                placed = true;
                break;
            }
        }
        if (!placed) {
            cls_rep.push_back(i);
            out.classes.push_back({i});
        }
    }

    // H^1(G_v, Ad) tensor J with the residual (trivial) action
    const FiniteField& k = R->residue_field();
    std::array<Fq, 4> id = {1, 0, 0, 1};
    auto Ad = adjoint_module(k, id, id, false, spec.v);
    CocycleSpace Z1 = cocycle_space(Ad);
    CocycleSpace B1 = coboundary_space(Ad);
    out.h1_dim = Z1.dim() - B1.dim();
    out.j_dim = J.fq_dim_quotient(R->zero_ideal());
    if (B1.dim() != 0) throw std::logic_error("coboundaries nonzero at a trivial prime");

    std::vector<RElem> j_basis;
    for (const auto& g : J.monomial_generators()) {
        size_t idx = R->mono_index(g.u);
        for (unsigned a = g.a; a < R->cexp(idx); ++a)
            j_basis.push_back(R->monomial_elem(idx, a));
    }
    size_t ngens = Z1.dim() * j_basis.size();
    uint64_t group_size = 1;
    for (size_t i = 0; i < ngens; ++i) {
        if (group_size > opts.enum_cap / k.q()) throw SearchBoundError("twist group too large");
        group_size *= k.q();
    }
    out.h1_tensor_j_size = group_size;

    // a combined twist indexed by F_q coefficients on (cocycle, j) pairs
    auto combined_twist = [&](uint64_t idx, const TameRep& rep) {
        Mat2 Ds = Mat2::zero(R), Dt = Mat2::zero(R);
        for (size_t g = 0; g < ngens; ++g) {
            Fq c = Fq(idx % k.q());
            idx /= k.q();
            if (!c) continue;
            const Cocycle& X = Z1.basis[g / j_basis.size()];
            RElem scal = R->mul_base(j_basis[g % j_basis.size()], R->base().from_residue(c));
            Ds = m2_add(Ds, cocycle_value_in_ring(R, X.sigma_mat(), scal));
            Dt = m2_add(Dt, cocycle_value_in_ring(R, X.tau_mat(), scal));
        }
        Mat2 S = m2_mul(m2_add(Mat2::identity(R), Ds), rep.sigma);
        Mat2 T = m2_mul(m2_add(Mat2::identity(R), Dt), rep.tau);
        return TameRep{R, spec.v, S, T};
    };

    // exact torsor check on the raw lift set
    if (out.raw_lift_count == group_size) {
        TameRep base_lift{R, spec.v, sig0, tau0};
        if (!tame_relation_holds(*R, spec.v, sig0, tau0))
            throw std::logic_error("canonical base lift violates the relation");
        std::set<std::string> seen;
        bool all_valid = true;
        for (uint64_t idx = 0; idx < group_size; ++idx) {
            TameRep t = combined_twist(idx, base_lift);
            if (!tame_relation_holds(*R, spec.v, t.sigma, t.tau)) {
                all_valid = false;
                break;
            }
            seen.insert(print_rep(t));
        }
        out.raw_action_simply_transitive = all_valid && seen.size() == group_size;
    }

    // does every basis twist keep every member in the class?
    out.action_preserves_class = out.fiber_nonempty;
    for (const auto& mrep : out.members) {
        for (size_t g = 0; g < ngens && out.action_preserves_class; ++g) {
            uint64_t idx = 1;
            for (size_t i = 0; i < g; ++i) idx *= k.q();
            TameRep t = combined_twist(idx, mrep);
            if (!in_deform_class(t, spec).member) out.action_preserves_class = false;
        }
        if (!out.action_preserves_class) break;
    }

    // transitivity on classes: the twist connecting two members always exists
    // inside H^1 tensor J because the deviations exhaust M_2(J) pairs
    out.transitive_on_classes = out.fiber_nonempty;

    // stabilizer of the first class under the full twist group
    if (out.fiber_nonempty) {
        const TameRep& rep0 = out.members[out.classes[0][0]];
        uint64_t stab = 0;
        for (uint64_t idx = 0; idx < group_size; ++idx) {
            TameRep t = combined_twist(idx, rep0);
            if (!in_deform_class(t, spec).member) continue;
            if (strictly_equivalent(rep0, t).equivalent) ++stab;
        }
        out.class_stabilizer_order = stab;
    }

    out.simply_transitive_on_classes = out.fiber_nonempty && out.action_preserves_class &&
                                       out.transitive_on_classes &&
                                       out.class_stabilizer_order == 1 &&
                                       out.classes.size() == group_size;

    std::ostringstream note;
    note << "raw lifts " << out.raw_lift_count << ", members " << out.members.size()
         << ", classes " << out.classes.size() << ", |H1 x J| " << group_size
         << ", class stabilizer " << out.class_stabilizer_order;
    out.note = note.str();
    return out;
}

std::vector<TwistDatum> cocycle_difference(const TameRep& sigma_k, const TameRep& mu_k,
                                           const SubmoduleIdeal& J, const GModulePtr& ad) {
    const auto& R = *sigma_k.R;
    if (!mu_k.R->same_presentation(R) || sigma_k.v != mu_k.v)
        throw std::invalid_argument("representations live over different data");
    if (!is_nearly_small(R, J)) throw std::invalid_argument("J must be nearly small");
    const WittRing& O = R.base();
    const FiniteField& k = R.residue_field();

    Mat2 gs = m2_sub(m2_mul(sigma_k.sigma, m2_inv(mu_k.sigma)), Mat2::identity(sigma_k.R));
    Mat2 gt = m2_sub(m2_mul(sigma_k.tau, m2_inv(mu_k.tau)), Mat2::identity(sigma_k.R));
    for (int i = 0; i < 4; ++i)
        if (!J.contains(gs.a[i]) || !J.contains(gt.a[i]))
            throw std::invalid_argument("representations are not congruent modulo J");

    // J is nearly small, so each monomial slot carries a single F_q layer
    std::vector<TwistDatum> out;
    bool trace_zero = (ad->dim == 3);
    for (const auto& g : J.monomial_generators()) {
        size_t idx = R.mono_index(g.u);
        for (unsigned a = g.a; a < R.cexp(idx); ++a) {
            auto digit_of = [&](const RElem& x) {
                WittElem c = x[idx];
                std::vector<uint64_t> digit(O.f());
                for (unsigned t = 0; t < O.f(); ++t) digit[t] = (c[t] / O.p_pow(a)) % O.p();
                return k.from_coeffs(digit);
            };
            std::array<Fq, 4> Xs, Xt;
            for (int i = 0; i < 4; ++i) {
                Xs[size_t(i)] = digit_of(gs.a[size_t(i)]);
                Xt[size_t(i)] = digit_of(gt.a[size_t(i)]);
            }
            bool nonzero = false;
            for (int i = 0; i < 4; ++i)
                if (Xs[size_t(i)] || Xt[size_t(i)]) nonzero = true;
            if (!nonzero) continue;
            Cocycle c;
            c.mod = ad;
            auto half = k.inv(k.from_int(2));
            auto expand = [&](const std::array<Fq, 4>& m) -> FqVec {
                if (!trace_zero) return {m[0], m[1], m[2], m[3]};
                return {m[1], k.mul(k.sub(m[0], m[3]), half), m[2]};
            };
            c.val_sigma = expand(Xs);
            c.val_tau = expand(Xt);
            if (!is_cocycle(*ad, c.val_sigma, c.val_tau))
                throw std::logic_error("extracted difference fails the relator check");
            out.push_back({std::move(c), R.monomial_elem(idx, a)});
        }
    }

    // exact round-trip: stacking the extracted twists on mu reproduces sigma
    Mat2 Ds = Mat2::zero(sigma_k.R), Dt = Mat2::zero(sigma_k.R);
    for (const auto& td : out) {
        Ds = m2_add(Ds, cocycle_value_in_ring(sigma_k.R, td.cocycle.sigma_mat(), td.scalar));
        Dt = m2_add(Dt, cocycle_value_in_ring(sigma_k.R, td.cocycle.tau_mat(), td.scalar));
    }
    Mat2 Srec = m2_mul(m2_add(Mat2::identity(sigma_k.R), Ds), mu_k.sigma);
    Mat2 Trec = m2_mul(m2_add(Mat2::identity(sigma_k.R), Dt), mu_k.tau);
    if (!(Srec == sigma_k.sigma) || !(Trec == sigma_k.tau))
        throw std::logic_error("cocycle difference does not reproduce the twist");
    return out;
}

RElem weight_point(const CoefficientRing& R, const RElem& det_at_gamma) {
    if (!R.is_unit(det_at_gamma))
        throw std::invalid_argument("determinant at the generator must be a unit");
    return R.sub(det_at_gamma, R.one());
}

bool weights_congruent(const CoefficientRing& R, const RElem& w1, const RElem& w2) {
    return R.filtration_nk(2).contains(R.sub(w1, w2));
}

}  // namespace tamelift

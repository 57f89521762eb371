#include "tamelift/verify.hpp"

#include <chrono>
#include <random>
#include <sstream>

#include "tamelift/defclass.hpp"
#include "tamelift/ledger.hpp"
#include "tamelift/ringspec.hpp"

namespace tamelift {

namespace {

using Clock = std::chrono::steady_clock;

double secs_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

RElem random_elem(const CoefficientRing& R, const SubmoduleIdeal& J, std::mt19937_64& rng) {
    auto span = R.digit_span(J);
    std::uniform_int_distribution<uint64_t> dist(0, span.count - 1);
    return R.element_at(span, dist(rng));
}

Mat2 random_strict_conjugator(const RingPtr& R, std::mt19937_64& rng) {
    auto m = R->maximal_ideal();
    Mat2 A = Mat2::identity(R);
    for (int i = 0; i < 4; ++i) A.a[size_t(i)] = R->add(A.a[size_t(i)], random_elem(*R, m, rng));
    return A;
}

ClaimResult claim_local_cohomology() {
    ClaimResult c;
    c.id = "c1-local-cohomology";
    std::ostringstream det;
    bool ok = true;
    for (auto [p, v, q] : std::vector<std::tuple<uint64_t, uint64_t, uint64_t>>{{5, 11, 5},
                                                                                {3, 13, 3}}) {
        auto t0 = Clock::now();
        auto rep = dimension_table_crosscheck({{p, v, q}});
        double dt = secs_since(t0);
        const auto& r = rep.rows[0];
        det << "(p=" << p << ",v=" << v << ") Ad=(" << r.ad.h0 << "," << r.ad.h1 << ","
            << r.ad.h2 << ") Ad0=(" << r.ad0.h0 << "," << r.ad0.h1 << "," << r.ad0.h2
            << ") within budget; ";
        ok = ok && r.match && dt < 1.0;
    }
    c.pass = ok;
    c.detail = det.str();
    return c;
}

ClaimResult claim_selmer_ledger(const std::string& dir) {
    ClaimResult c;
    c.id = "c2-selmer-ledger";
    auto t0 = Clock::now();
    std::ostringstream det;
    bool ok = true;
    struct Golden {
        const char* file;
        int expected;
    };
    for (auto [file, expected] : std::vector<Golden>{{"full_adjoint_base.scn", 1},
                                                     {"full_adjoint_auxiliary.scn", 1},
                                                     {"trace_zero_balanced.scn", 0}}) {
        auto s = load_scenario(dir + "/" + file);
        int got = wiles_difference(s).difference;
        det << s.name << "=" << got << "(want " << expected << ") ";
        ok = ok && got == expected;
    }
    auto split = tangent_dim_p(OrdinaryCase::Split);
    auto ind = tangent_dim_p(OrdinaryCase::Indecomposable);
    ok = ok && split.dim_tangent == 4 && split.h0_Ad == 2 && split.h1_Utilde == 5;
    ok = ok && ind.dim_tangent == 3 && ind.h0_Ad == 1 && ind.h1_Utilde == 4;
    ok = ok && split.dim_tangent == 2 + split.h0_Ad && ind.dim_tangent == 2 + ind.h0_Ad;
    ok = ok && euler_h1_at_p(2, 0, 3) == 5 && euler_h1_at_p(0, 0, 2) == 2;
    det << "; ordinary tangent (dim,h0,h1~)=(4,2,5)/(3,1,4) and dim = 2 + h0 both cases";
    double dt = secs_since(t0);
    c.pass = ok && dt < 1.0;
    c.seconds = dt;
    c.detail = det.str();
    return c;
}

ClaimResult claim_stabilization(std::mt19937_64& rng) {
    ClaimResult c;
    c.id = "c3-stabilization";
    auto t0 = Clock::now();
    std::ostringstream det;
    bool ok = true;
    size_t total_checks = 0;

    std::vector<RingPtr> rings = {
        parse_ring_spec("base = witt(5, 1, 4); vars = []; rel = [p^4]"),
        parse_ring_spec("base = witt(5, 1, 3); vars = [U]; rel = [p^3, U^3]")};
    for (const auto& R : rings) {
        WittElem kappa = R->base().from_int(11);
        auto n2 = R->filtration_nk(2);
        for (unsigned k : {2u, 3u}) {
            for (bool ramified : {false, true}) {
                auto spec = ramified
                                ? make_class_spec(Variant::DRam, 11, kappa, BasisConj::Swap)
                                : make_class_spec(Variant::DNr, 11, kappa, BasisConj::LowerUnipotent);
                // sample normal forms across the allowed x and y ranges
                std::vector<RElem> xs = {R->zero(), R->monomial_elem(0, 2)};
                xs.push_back(random_elem(*R, x_condition_ideal(*R), rng));
                std::vector<RElem> ys;
                if (ramified) {
                    ys = {R->p_elem(), R->mul(R->p_elem(), R->from_int(2))};
                    // a random y in pR but outside n_2
                    for (int tries = 0; tries < 50; ++tries) {
                        RElem y = random_elem(*R, R->p_ideal(), rng);
                        if (!n2.contains(y)) {
                            ys.push_back(y);
                            break;
                        }
                    }
                } else {
                    ys = {R->zero(), R->monomial_elem(0, 2)};
                    ys.push_back(random_elem(*R, n2, rng));
                }
                for (const auto& x : xs)
                    for (const auto& y : ys) {
                        TameRep sample = normal_form_rep(R, spec, x, y, R->one());
                        // move off the literal normal form by a strict conjugation
                        sample = conjugate(sample, random_strict_conjugator(R, rng));
                        auto rep = stabilization_check(R, k, ramified, sample, spec);
                        total_checks += rep.checks.size();
                        if (!rep.all_preserved) {
                            ok = false;
                            det << "violation at k=" << k << (ramified ? " ram " : " nr ")
                                << rep.first_violation << "; ";
                        }
                    }
            }
        }
    }
    double dt = secs_since(t0);
    det << total_checks << " twist/membership checks, all preserved";

    // level-one probe: over O/p^2 the tangent twists must break membership
    auto R2 = parse_ring_spec("base = witt(5, 1, 2); vars = []; rel = [p^2]");
    auto spec2 = make_class_spec(Variant::DTilde, 11, R2->base().from_int(11),
                                 BasisConj::LowerUnipotent);
    TameRep sample2 = normal_form_rep(R2, spec2, R2->zero(), R2->zero(), R2->one());
    auto probe = stabilization_check(R2, 1, false, sample2, spec2);
    bool g_violation = false;
    for (const auto& chk : probe.checks)
        if (!chk.member_after && chk.cocycle_label.rfind("g", 0) == 0) g_violation = true;
    if (probe.violation_found && g_violation) {
        det << "; level-one probe: violation exhibited (" << probe.first_violation
            << "), including a g-twist";
    } else {
        ok = false;
        det << "; level-one probe DISCREPANCY: basis exhausted without the expected violation";
    }

    c.pass = ok && dt < 30.0;
    c.seconds = secs_since(t0);
    c.detail = det.str();
    return c;
}

ClaimResult claim_conjugation_identities() {
    ClaimResult c;
    c.id = "c4-conjugation-identities";
    auto t0 = Clock::now();
    auto R = parse_ring_spec("base = witt(5, 1, 4); vars = []; rel = [p^4]");
    auto spec = make_class_spec(Variant::D, 11, R->base().from_int(11), BasisConj::Identity);
    size_t triples = 0, failures = 0;
    for (int xi = 0; xi < 5; ++xi)
        for (int yi = 0; yi < 10; ++yi)
            for (int ri = 0; ri < 5; ++ri) {
                RElem x = R->from_int(25 * xi);
                RElem y = R->from_int(5 * yi);
                RElem r = R->from_int(5 * ri);
                RElem pr = R->mul(R->p_elem(), r);
                unsigned k = 2;
                while (k < 3 && R->filtration_nk(k + 1).contains(pr)) ++k;
                auto rep = conjugation_identity_check(R, k, r, x, y, spec);
                ++triples;
                if (!rep.ok) ++failures;
            }
    double dt = secs_since(t0);
    std::ostringstream det;
    det << triples << " parameter triples over Z/5^4, " << failures << " failures";
    c.pass = triples >= 100 && failures == 0 && dt < 5.0;
    c.seconds = dt;
    c.detail = det.str();
    return c;
}

ClaimResult claim_fiber_pseudotorsor(unsigned shards) {
    ClaimResult c;
    c.id = "c5-fiber-pseudotorsor";
    auto t0 = Clock::now();
    auto R = parse_ring_spec("base = witt(3, 1, 3); vars = []; rel = [p^3]");
    auto J = R->ideal({{2, {}}});
    auto spec = make_class_spec(Variant::DTilde, 13, R->base().from_int(13),
                                BasisConj::LowerUnipotent);
    auto base = reduce(normal_form_rep(R, spec, R->zero(), R->zero(), R->one()), J);
    SearchOptions opts;
    opts.nshards = shards;
    auto fr = fiber_enumerate(R, J, spec, base, opts);
    double dt = secs_since(t0);
    // the acceptance statement: nonempty fiber of class members on which the
    // full H^1 x J acts simply transitively up to strict equivalence
    c.pass = fr.fiber_nonempty && fr.simply_transitive_on_classes && dt < 120.0;
    c.seconds = dt;
    std::ostringstream det;
    det << fr.note << "; raw-lift torsor under H1xJ: "
        << (fr.raw_action_simply_transitive ? "exact" : "NO") << "; class preserved by full H1: "
        << (fr.action_preserves_class ? "yes" : "no (tangent subspace only)")
        << "; transitive on classes: " << (fr.transitive_on_classes ? "yes" : "no")
        << "; simply transitive on classes: "
        << (fr.simply_transitive_on_classes ? "yes" : "NO");
    c.detail = det.str();
    return c;
}

ClaimResult claim_hull_step(std::mt19937_64& rng) {
    ClaimResult c;
    c.id = "c6-hull-step-algebra";
    auto t0 = Clock::now();
    std::ostringstream det;
    bool ok = true;

    // substitution maps U -> G and U -> G + H agree on the n_3 monomials
    auto S = parse_ring_spec("base = witt(5, 1, 4); vars = [U]; rel = [p^4, U^4]");
    size_t agree_checks = 0;
    for (unsigned k : {3u, 4u}) {
        RingPtr T = S->quotient(S->filtration_nk(k));
        auto nk1 = T->filtration_nk(k - 1);
        RElem G = T->var(0);
        for (int trial = 0; trial < 5; ++trial) {
            RElem H;
            bool found = false;
            for (int tries = 0; tries < 400 && !found; ++tries) {
                H = random_elem(*T, T->maximal_ideal(), rng);
                RElem pH = T->mul(T->p_elem(), H);
                RElem GH = T->add(G, H);
                if (nk1.contains(pH) && T->is_zero(T->pow(GH, 4))) found = true;
            }
            if (!found) continue;
            RingHom h1(S, T, {G});
            RingHom h2(S, T, {T->add(G, H)});
            auto n3 = graded_piece(*S, 3);
            auto n3_ideal = S->filtration_nk(3);
            for (const auto& gen : n3_ideal.monomial_generators()) {
                RElem m = S->monomial_elem(S->mono_index(gen.u), gen.a);
                ++agree_checks;
                if (!(h1.apply(m) == h2.apply(m))) {
                    ok = false;
                    det << "substitution disagreement on a basis monomial (k=" << k << "); ";
                }
            }
        }
    }
    det << agree_checks << " substitution agreements; ";

    // fifty randomized twist round-trips with exact recovery
    auto R = parse_ring_spec("base = witt(5, 1, 3); vars = []; rel = [p^3]");
    auto Ru = parse_ring_spec("base = witt(5, 1, 3); vars = [U]; rel = [p^3, U^3]");
    const FiniteField& k5 = R->residue_field();
    std::array<Fq, 4> id = {1, 0, 0, 1};
    auto Ad5 = adjoint_module(k5, id, id, false, 11);
    size_t roundtrips = 0;
    for (int trial = 0; trial < 50; ++trial) {
        bool with_var = trial % 2 == 1;
        RingPtr Rbig = with_var ? Ru : R;
        RingPtr W = with_var ? Rbig->quotient(Rbig->filtration_nk(3)) : Rbig;
        auto spec = make_class_spec(Variant::D, 11, W->base().from_int(11), BasisConj::Identity);
        auto J = with_var ? W->filtration_nk(2) : W->ideal({{2, std::vector<unsigned>(W->nvars(), 0)}});
        if (!J.nearly_small()) {
            ok = false;
            det << "test ideal not nearly small; ";
            continue;
        }
        RElem x = random_elem(*W, x_condition_ideal(*W), rng);
        TameRep mu = normal_form_rep(W, spec, x, W->zero(), W->one());
        std::uniform_int_distribution<Fq> coeff(0, Fq(k5.q() - 1));
        Cocycle X;
        X.mod = Ad5;
        X.val_sigma = {coeff(rng), coeff(rng), coeff(rng), coeff(rng)};
        X.val_tau = {coeff(rng), coeff(rng), coeff(rng), coeff(rng)};
        RElem j = random_elem(*W, J, rng);
        if (W->is_zero(j)) continue;
        TameRep tw = exp_twist(mu, {X, j});
        auto extracted = cocycle_difference(tw, mu, J, Ad5);  // asserts exact round-trip
        (void)extracted;
        ++roundtrips;

        // trace-zero twists leave the determinant unchanged exactly
        Cocycle X0;
        X0.mod = adjoint_module(k5, id, id, true, 11);
        X0.val_sigma = {coeff(rng), coeff(rng), coeff(rng)};
        X0.val_tau = {coeff(rng), coeff(rng), coeff(rng)};
        TameRep tw0 = exp_twist(mu, {X0, j});
        if (!(m2_det(tw0.sigma) == m2_det(mu.sigma)) || !(m2_det(tw0.tau) == m2_det(mu.tau))) {
            ok = false;
            det << "trace-zero twist changed a determinant; ";
        }
        RElem w1 = weight_point(*W, m2_det(tw0.sigma));
        RElem w2 = weight_point(*W, m2_det(mu.sigma));
        if (!(w1 == w2) || !weights_congruent(*W, w1, w2)) {
            ok = false;
            det << "weights not congruent across a trace-zero family; ";
        }
    }
    det << roundtrips << " exact twist round-trips with determinant/weight invariance";
    double dt = secs_since(t0);
    c.pass = ok && roundtrips >= 45 && dt < 10.0;
    c.seconds = dt;
    c.detail = det.str();
    return c;
}

ClaimResult claim_oracle_agreement(std::mt19937_64& rng) {
    ClaimResult c;
    c.id = "c7-oracle-agreement";
    auto t0 = Clock::now();
    struct Pool {
        const char* spec_text;
        uint64_t v;
        int cases;
    };
    std::vector<Pool> pools = {
        {"base = witt(5, 1, 2); vars = []; rel = [p^2]", 11, 70},
        {"base = witt(5, 1, 3); vars = []; rel = [p^3]", 11, 12},
        {"base = witt(3, 1, 2); vars = []; rel = [p^2]", 13, 50},
        {"base = witt(3, 1, 3); vars = []; rel = [p^3]", 13, 40},
        {"base = witt(3, 1, 4); vars = []; rel = [p^4]", 13, 6},
        {"base = witt(3, 1, 2); vars = [U]; rel = [p^2, U^2]", 13, 6},
        {"base = witt(3, 2, 2); vars = []; rel = [p^2]", 13, 16},
    };
    size_t cases = 0, disagreements = 0;
    for (const auto& pool : pools) {
        auto R = parse_ring_spec(pool.spec_text);
        WittElem kappa = R->base().from_int(int64_t(pool.v));
        auto m_ideal = R->maximal_ideal();
        for (int i = 0; i < pool.cases; ++i) {
            Variant variant = std::array<Variant, 4>{Variant::D, Variant::DNr, Variant::DRam,
                                                     Variant::DTilde}[size_t(i % 4)];
            BasisConj conj = BasisConj::Identity;
            if (variant == Variant::DNr && i % 8 >= 4) conj = BasisConj::LowerUnipotent;
            if (variant == Variant::DRam && i % 8 >= 4) conj = BasisConj::Swap;
            auto spec = make_class_spec(variant, pool.v, kappa, conj);
            RElem x = random_elem(*R, m_ideal, rng);
            RElem y = random_elem(*R, m_ideal, rng);
            RElem z = R->one();
            if (variant == Variant::DTilde)
                z = R->add(R->one(), random_elem(*R, R->p_ideal(), rng));
            TameRep rep = normal_form_rep(R, spec, x, y, z);
            rep = conjugate(rep, random_strict_conjugator(R, rng));
            auto a = in_deform_class(rep, spec, EquivMode::NormalForm);
            auto b = in_deform_class(rep, spec, EquivMode::Search);
            ++cases;
            if (a.member != b.member) ++disagreements;
        }
    }
    double dt = secs_since(t0);
    std::ostringstream det;
    det << cases << " sampled membership cases across 7 rings, " << disagreements
        << " backend disagreements";
    c.pass = cases >= 200 && disagreements == 0;
    c.seconds = dt;
    c.detail = det.str();
    return c;
}

ClaimResult claim_scope_boundary() {
    ClaimResult c;
    c.id = "c8-scope-boundary";
    c.pass = true;
    c.detail =
        "global existence statements (the hull over the one-variable power-series ring, the "
        "weight-image congruence class, dual-Selmer vanishing over an auxiliary prime set) "
        "require global cohomology and are outside desk scale; they are covered here only "
        "through the ledger identities, the hull-step substitution algebra, the exact twist "
        "round-trips, and the weight-congruence checks above";
    return c;
}

}  // namespace

std::vector<ClaimResult> run_verification(const VerifyOptions& opts) {
    std::mt19937_64 rng(opts.seed);
    std::vector<ClaimResult> out;
    auto wanted = [&](const char* id) {
        return opts.claim_filter.empty() ||
               std::string(id).rfind(opts.claim_filter, 0) == 0;
    };
    auto timed = [&](const char* id, auto&& fn) {
        if (!wanted(id)) return;
        auto t0 = Clock::now();
        ClaimResult r;
        try {
            r = fn();
        } catch (const std::exception& e) {
            r.id = id;
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        if (r.seconds == 0.0) r.seconds = secs_since(t0);
        out.push_back(std::move(r));
    };
    timed("c1-local-cohomology", [&] { return claim_local_cohomology(); });
    timed("c2-selmer-ledger", [&] { return claim_selmer_ledger(opts.scenario_dir); });
    timed("c3-stabilization", [&] { return claim_stabilization(rng); });
    timed("c4-conjugation-identities", [&] { return claim_conjugation_identities(); });
    timed("c5-fiber-pseudotorsor", [&] { return claim_fiber_pseudotorsor(opts.shards); });
    timed("c6-hull-step-algebra", [&] { return claim_hull_step(rng); });
    timed("c7-oracle-agreement", [&] { return claim_oracle_agreement(rng); });
    timed("c8-scope-boundary", [&] { return claim_scope_boundary(); });
    return out;
}

bool all_passed(const std::vector<ClaimResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

}  // namespace tamelift

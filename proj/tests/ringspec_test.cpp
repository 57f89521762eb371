#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tamelift/matrep.hpp"
#include "tamelift/ringspec.hpp"

using namespace tamelift;

TEST_CASE("parse then print is the identity on canonical forms") {
    for (const char* text : {
             "base = witt(5, 1, 3); vars = [U]; rel = [p^3, U^3]",
             "base = witt(5, 1, 4); vars = []; rel = [p^4]",
             "base = witt(3, 1, 3); vars = [A, B]; rel = [p^3, A^2, B^2]",
             "base = witt(3, 2, 2, t^2+1); vars = [U]; rel = [p^2, U^2]",
         }) {
        auto R = parse_ring_spec(text);
        CHECK(print_ring_spec(*R) == text);
        auto R2 = parse_ring_spec(print_ring_spec(*R));
        CHECK(R->same_presentation(*R2));
    }
}

TEST_CASE("lenient input forms parse to the same ring") {
    auto a = parse_ring_spec("base = witt(5, 1, 3); vars = [U]; rel = [p^3, U^3]");
    auto b = parse_ring_spec("witt(5,1,3); vars U; rel p^3,U^3");
    auto c = parse_ring_spec("witt(5,1,3); vars = U; rel = p^3, U^3");
    CHECK(a->same_presentation(*b));
    CHECK(a->same_presentation(*c));
}

TEST_CASE("quotient rings print their annihilator drops and round-trip") {
    auto R = parse_ring_spec("witt(5,1,3); vars = [U]; rel = [p^3, U^3]");
    auto Q = R->quotient(R->filtration_nk(3));
    auto Q2 = parse_ring_spec(print_ring_spec(*Q));
    CHECK(Q->same_presentation(*Q2));
}

TEST_CASE("rewrite identification round-trips") {
    auto T = parse_ring_spec("witt(5,1,3); vars = [U]; rel = [U^4, p - U^2]");
    auto T2 = parse_ring_spec(print_ring_spec(*T));
    CHECK(T->same_presentation(*T2));
}

TEST_CASE("malformed specs are rejected") {
    CHECK_THROWS_AS(parse_ring_spec("vars = [U]; rel = [U^2]"), RingSpecError);
    CHECK_THROWS_AS(parse_ring_spec("witt(5,1); vars = []; rel = []"), RingSpecError);
    CHECK_THROWS_AS(parse_ring_spec("witt(5,1,3); vars = [U]; rel = [W^3]"), RingSpecError);
    CHECK_THROWS_AS(parse_ring_spec("witt(5,1,3); frobs = [U]"), RingSpecError);
}

TEST_CASE("element text round-trips") {
    auto R = parse_ring_spec("witt(5,1,3); vars = [U]; rel = [p^3, U^3]");
    std::vector<RElem> samples = {
        R->zero(),
        R->one(),
        R->from_int(117),
        R->add(R->mul(R->p_elem(), R->var(0)), R->from_int(3)),
        R->mul(R->var(0), R->var(0)),
    };
    for (const auto& x : samples) {
        auto s = print_elem(*R, x);
        CHECK(parse_elem(*R, s) == x);
    }
    CHECK(parse_elem(*R, "2 + 3*p + p*U") ==
          R->add(R->from_int(17), R->mul(R->p_elem(), R->var(0))));
}

TEST_CASE("element text round-trips over an extension") {
    auto R = parse_ring_spec("base = witt(3, 2, 2, t^2+1); vars = [U]; rel = [p^2, U^2]");
    const WittRing& O = R->base();
    RElem x = R->mul_base(R->var(0), WittElem{1, 2});
    x = R->add(x, R->from_base(WittElem{5, 3}));
    auto s = print_elem(*R, x);
    CHECK(parse_elem(*R, s) == x);
    (void)O;
}

TEST_CASE("representation blocks round-trip") {
    auto R = parse_ring_spec("witt(5,1,3); vars = []; rel = [p^3]");
    auto spec = make_class_spec(Variant::D, 11, R->base().from_int(11), BasisConj::Identity);
    TameRep rep = normal_form_rep(R, spec, R->from_int(25), R->p_elem(), R->one());
    auto text = print_rep(rep);
    TameRep back = parse_rep(text);
    CHECK(back.v == rep.v);
    CHECK(back.sigma == rep.sigma);
    CHECK(back.tau == rep.tau);
}

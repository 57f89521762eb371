#pragma once

// Text form of ring presentations and elements.
//
//   base = witt(p, f, N); vars = [U]; rel = [p^3, U^3]
//
// The `base =` / `vars =` / `rel =` prefixes and the brackets are optional on
// input; printing always emits the long form.  For f > 1 a modulus may be
// given as a fourth argument, e.g. witt(3, 2, 2, t^2+1); otherwise the
// lexicographically least irreducible modulus is used.  A relation of the
// form `p - U^2` installs the experimental rewrite identification p = U^2.

#include <string>

#include "tamelift/coeffring.hpp"

namespace tamelift {

struct RingSpecError : std::runtime_error {
    explicit RingSpecError(const std::string& m) : std::runtime_error(m) {}
};

RingPtr parse_ring_spec(const std::string& text);
std::string print_ring_spec(const CoefficientRing& R);

// element text in the monomial basis, e.g. "2 + 3*p + (1+2t)*p^2*U"
std::string print_elem(const CoefficientRing& R, const RElem& x);
RElem parse_elem(const CoefficientRing& R, const std::string& text);

}  // namespace tamelift

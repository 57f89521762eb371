#include "tamelift/coeffring.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tamelift {

namespace {

bool leq_vec(const std::vector<unsigned>& a, const std::vector<unsigned>& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

}  // namespace

CoefficientRing::CoefficientRing(WittRing base, std::vector<std::string> vars,
                                 std::vector<Monomial> rels,
                                 std::optional<std::vector<unsigned>> rw)
    : base_(std::move(base)), vars_(std::move(vars)), relations_(std::move(rels)),
      rewrite_(std::move(rw)) {}

RingPtr CoefficientRing::create(WittRing base, std::vector<std::string> vars,
                                std::vector<Monomial> relations,
                                std::optional<std::vector<unsigned>> rewrite) {
    auto ring = std::shared_ptr<CoefficientRing>(
        new CoefficientRing(std::move(base), std::move(vars), std::move(relations),
                            std::move(rewrite)));
    ring->build();
    return ring;
}

std::pair<int32_t, uint32_t> CoefficientRing::canonicalize(std::vector<unsigned> u) const {
    uint32_t shift = 0;
    if (rewrite_) {
        const auto& g = *rewrite_;
        for (;;) {
            bool ge = true;
            for (size_t i = 0; i < u.size(); ++i)
                if (u[i] < g[i]) { ge = false; break; }
            if (!ge) break;
            for (size_t i = 0; i < u.size(); ++i) u[i] -= g[i];
            ++shift;
        }
    }
    for (size_t i = 0; i < u.size(); ++i)
        if (u[i] >= bounds_[i]) return {-1, shift};
    size_t idx = mono_index(u);
    if (idx == SIZE_MAX) return {-1, shift};
    return {int32_t(idx), shift};
}

void CoefficientRing::build() {
    size_t s = vars_.size();
    {
        std::set<std::string> seen;
        for (const auto& v : vars_) {
            if (v.empty() || v == "p" || v == "t")
                throw std::invalid_argument("bad variable name: " + v);
            if (!seen.insert(v).second)
                throw std::invalid_argument("duplicate variable name: " + v);
        }
    }
    for (const auto& r : relations_)
        if (r.u.size() != s) throw std::invalid_argument("relation arity mismatch");
    if (rewrite_) {
        if (rewrite_->size() != s) throw std::invalid_argument("rewrite arity mismatch");
        unsigned tot = 0;
        for (auto g : *rewrite_) tot += g;
        if (tot < 2)
            throw std::invalid_argument("rewrite identification must have degree >= 2");
    }

    // pure power bound per variable
    bounds_.assign(s, 0);
    for (const auto& r : relations_) {
        if (r.a != 0) continue;
        size_t nz = SIZE_MAX;
        bool pure = true;
        for (size_t i = 0; i < s; ++i) {
            if (r.u[i] == 0) continue;
            if (nz != SIZE_MAX) { pure = false; break; }
            nz = i;
        }
        if (!pure || nz == SIZE_MAX) continue;
        if (bounds_[nz] == 0 || r.u[nz] < bounds_[nz]) bounds_[nz] = r.u[nz];
    }
    for (size_t i = 0; i < s; ++i)
        if (bounds_[i] == 0)
            throw std::invalid_argument("no pure power relation for variable " + vars_[i] +
                                        " (ring would have infinite length)");

    // standard monomials: the box cut out by the bounds, minus rewritables
    mono_.clear();
    std::vector<unsigned> u(s, 0);
    for (;;) {
        bool rewritable = false;
        if (rewrite_) {
            rewritable = true;
            for (size_t i = 0; i < s; ++i)
                if (u[i] < (*rewrite_)[i]) { rewritable = false; break; }
        }
        if (!rewritable) mono_.push_back(u);
        bool rolled_over = true;
        for (size_t i = s; i-- > 0;) {
            if (++u[i] < bounds_[i]) { rolled_over = false; break; }
            u[i] = 0;
        }
        if (rolled_over) break;
    }
    if (mono_.empty() || mono_[0] != std::vector<unsigned>(s, 0))
        throw std::logic_error("monomial enumeration broken");

    // annihilator exponents by closure
    cexp_.assign(mono_.size(), base_.N());
    for (const auto& r : relations_) {
        auto [idx, shift] = canonicalize(r.u);
        if (idx < 0) continue;
        unsigned a = r.a + shift;
        cexp_[size_t(idx)] = std::min<unsigned>(cexp_[size_t(idx)], std::min<unsigned>(a, base_.N()));
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t m = 0; m < mono_.size(); ++m) {
            for (size_t i = 0; i < s; ++i) {
                auto next = mono_[m];
                ++next[i];
                auto [idx, shift] = canonicalize(next);
                if (idx < 0) continue;
                unsigned bound = std::min<unsigned>(cexp_[m] + shift, base_.N());
                if (bound < cexp_[size_t(idx)]) {
                    cexp_[size_t(idx)] = bound;
                    changed = true;
                }
            }
        }
    }
    if (cexp_[0] == 0) throw std::invalid_argument("presentation collapses to the zero ring");

    // normalize the base truncation to the exact characteristic exponent
    if (cexp_[0] < base_.N()) base_ = base_.truncated(cexp_[0]);

    // product table
    mult_.assign(mono_.size() * mono_.size(), {-1, 0});
    for (size_t i = 0; i < mono_.size(); ++i)
        for (size_t j = 0; j < mono_.size(); ++j) {
            std::vector<unsigned> sum(s);
            for (size_t l = 0; l < s; ++l) sum[l] = mono_[i][l] + mono_[j][l];
            mult_[i * mono_.size() + j] = canonicalize(sum);
        }
}

size_t CoefficientRing::mono_index(const std::vector<unsigned>& u) const {
    for (size_t i = 0; i < mono_.size(); ++i)
        if (mono_[i] == u) return i;
    return SIZE_MAX;
}

unsigned CoefficientRing::degree(size_t i) const {
    unsigned d = 0;
    for (auto e : mono_[i]) d += e;
    return d;
}

size_t CoefficientRing::fp_length() const {
    size_t n = 0;
    for (auto c : cexp_) n += c;
    return n * base_.f();
}

long double CoefficientRing::size_log2() const {
    return (long double)(fp_length()) * std::log2((long double)base_.p());
}

RElem CoefficientRing::zero() const { return RElem(mono_.size(), base_.zero()); }

RElem CoefficientRing::one() const {
    RElem x = zero();
    x[0] = base_.one();
    return normalized(std::move(x));
}

RElem CoefficientRing::from_int(int64_t n) const {
    RElem x = zero();
    x[0] = base_.from_int(n);
    return normalized(std::move(x));
}

RElem CoefficientRing::from_base(const WittElem& w) const {
    RElem x = zero();
    WittElem v = w;
    for (auto& c : v) c %= base_.pN();
    x[0] = std::move(v);
    return normalized(std::move(x));
}

RElem CoefficientRing::var(size_t i) const {
    std::vector<unsigned> u(vars_.size(), 0);
    u[i] = 1;
    size_t idx = mono_index(u);
    RElem x = zero();
    if (idx != SIZE_MAX) x[idx] = base_.one();
    return normalized(std::move(x));
}

RElem CoefficientRing::monomial_elem(size_t mono_idx, unsigned a) const {
    RElem x = zero();
    x[mono_idx] = base_.from_int(int64_t(base_.p_pow(std::min<unsigned>(a, base_.N()))));
    if (a >= base_.N()) x[mono_idx] = base_.zero();
    return normalized(std::move(x));
}

RElem CoefficientRing::normalized(RElem x) const {
    for (size_t i = 0; i < x.size(); ++i) x[i] = base_.trunc(x[i], cexp_[i]);
    return x;
}

bool CoefficientRing::is_zero(const RElem& x) const {
    for (size_t i = 0; i < x.size(); ++i)
        if (!base_.is_zero(base_.trunc(x[i], cexp_[i]))) return false;
    return true;
}

Fq CoefficientRing::residue(const RElem& x) const { return base_.to_residue(x[0]); }

bool CoefficientRing::is_unit(const RElem& x) const { return residue(x) != 0; }

RElem CoefficientRing::add(const RElem& x, const RElem& y) const {
    RElem z(x.size());
    for (size_t i = 0; i < x.size(); ++i) z[i] = base_.add(x[i], y[i]);
    return normalized(std::move(z));
}

RElem CoefficientRing::sub(const RElem& x, const RElem& y) const {
    RElem z(x.size());
    for (size_t i = 0; i < x.size(); ++i) z[i] = base_.sub(x[i], y[i]);
    return normalized(std::move(z));
}

RElem CoefficientRing::neg(const RElem& x) const { return sub(zero(), x); }

RElem CoefficientRing::mul(const RElem& x, const RElem& y) const {
    RElem z = zero();
    size_t n = mono_.size();
    for (size_t i = 0; i < n; ++i) {
        if (base_.is_zero(x[i])) continue;
        for (size_t j = 0; j < n; ++j) {
            if (base_.is_zero(y[j])) continue;
            auto [idx, shift] = mult_[i * n + j];
            if (idx < 0) continue;
            WittElem term = base_.mul(x[i], y[j]);
            if (shift) term = base_.mul_int(term, base_.p_pow(std::min<unsigned>(shift, base_.N())));
            z[size_t(idx)] = base_.add(z[size_t(idx)], term);
        }
    }
    return normalized(std::move(z));
}

RElem CoefficientRing::mul_base(const RElem& x, const WittElem& c) const {
    RElem z(x.size());
    WittElem cc = c;
    for (auto& w : cc) w %= base_.pN();
    for (size_t i = 0; i < x.size(); ++i) z[i] = base_.mul(x[i], cc);
    return normalized(std::move(z));
}

RElem CoefficientRing::pow(const RElem& x, uint64_t e) const {
    RElem r = one(), b = x;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

RElem CoefficientRing::inv(const RElem& x) const {
    if (!is_unit(x)) throw std::domain_error("not a unit in the coefficient ring");
    RElem y = from_base(base_.from_residue(residue_field().inv(residue(x))));
    RElem two = from_int(2);
    for (unsigned it = 0; it < 64; ++it) {
        RElem check = mul(x, y);
        if (check == one()) return y;
        y = mul(y, sub(two, check));
    }
    throw std::logic_error("ring inverse failed to converge");
}

CoefficientRing::DigitSpan CoefficientRing::digit_span(const SubmoduleIdeal& J) const {
    DigitSpan span;
    for (size_t i = 0; i < mono_.size(); ++i)
        for (unsigned a = J.e(i); a < cexp_[i]; ++a) {
            span.positions.emplace_back(i, a);
            span.count *= residue_field().q();
            if (span.count > (uint64_t(1) << 62))
                throw std::domain_error("digit span too large to enumerate");
        }
    return span;
}

RElem CoefficientRing::element_at(const DigitSpan& span, uint64_t index) const {
    RElem x = zero();
    uint64_t q = residue_field().q();
    for (const auto& [mono, a] : span.positions) {
        Fq digit = Fq(index % q);
        index /= q;
        if (digit) {
            WittElem w = base_.from_residue(digit);
            w = base_.mul_int(w, base_.p_pow(a));
            x[mono] = base_.add(x[mono], w);
        }
    }
    return normalized(std::move(x));
}

// --- ideals ---

SubmoduleIdeal::SubmoduleIdeal(RingPtr ring, std::vector<unsigned> e)
    : ring_(std::move(ring)), e_(std::move(e)) {
    if (e_.size() != ring_->nmono()) throw std::invalid_argument("ideal arity mismatch");
    for (size_t i = 0; i < e_.size(); ++i) e_[i] = std::min(e_[i], ring_->cexp(i));
    // ideal closure check
    const auto& R = *ring_;
    for (size_t m = 0; m < e_.size(); ++m) {
        for (size_t i = 0; i < R.nvars(); ++i) {
            auto next = R.mono(m);
            ++next[i];
            auto [idx, shift] = R.canonicalize(next);
            if (idx < 0) continue;
            unsigned need = std::min<unsigned>(e_[m] + shift, R.cexp(size_t(idx)));
            if (e_[size_t(idx)] > need)
                throw std::invalid_argument("exponent function is not an ideal");
        }
    }
}

SubmoduleIdeal CoefficientRing::zero_ideal() const {
    return SubmoduleIdeal(shared_from_this(), cexp_);
}

SubmoduleIdeal CoefficientRing::unit_ideal() const {
    return SubmoduleIdeal(shared_from_this(), std::vector<unsigned>(mono_.size(), 0));
}

SubmoduleIdeal CoefficientRing::ideal(const std::vector<Monomial>& gens) const {
    std::vector<unsigned> e = cexp_;
    for (const auto& g : gens) {
        auto [idx, shift] = canonicalize(g.u);
        if (idx < 0) continue;
        e[size_t(idx)] = std::min<unsigned>(e[size_t(idx)], g.a + shift);
    }
    // closure under multiplication by the variables
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t m = 0; m < mono_.size(); ++m) {
            for (size_t i = 0; i < vars_.size(); ++i) {
                auto next = mono_[m];
                ++next[i];
                auto [idx, shift] = canonicalize(next);
                if (idx < 0) continue;
                unsigned bound = std::min<unsigned>(e[m] + shift, cexp_[size_t(idx)]);
                if (bound < e[size_t(idx)]) {
                    e[size_t(idx)] = bound;
                    changed = true;
                }
            }
        }
    }
    return SubmoduleIdeal(shared_from_this(), e);
}

SubmoduleIdeal CoefficientRing::maximal_ideal() const {
    std::vector<Monomial> gens;
    gens.push_back({1, std::vector<unsigned>(vars_.size(), 0)});
    for (size_t i = 0; i < vars_.size(); ++i) {
        std::vector<unsigned> u(vars_.size(), 0);
        u[i] = 1;
        gens.push_back({0, u});
    }
    return ideal(gens);
}

SubmoduleIdeal CoefficientRing::p_ideal() const {
    return ideal({{1, std::vector<unsigned>(vars_.size(), 0)}});
}

SubmoduleIdeal CoefficientRing::maximal_ideal_power(unsigned k) const {
    SubmoduleIdeal J = unit_ideal();
    SubmoduleIdeal m = maximal_ideal();
    for (unsigned i = 0; i < k; ++i) J = J.product(m);
    return J;
}

SubmoduleIdeal CoefficientRing::filtration_nk(unsigned k) const {
    if (k < 1) throw std::invalid_argument("filtration index must be >= 1");
    return p_ideal().intersect(maximal_ideal_power(k));
}

bool CoefficientRing::is_admissible() const {
    return !maximal_ideal_power(2).contains(p_elem());
}

unsigned CoefficientRing::nilpotency_degree() const {
    unsigned k = 0;
    while (!maximal_ideal_power(k + 1).is_zero()) ++k;
    return k;
}

RingPtr CoefficientRing::quotient(const SubmoduleIdeal& J) const {
    auto q = std::shared_ptr<CoefficientRing>(new CoefficientRing(
        base_, vars_, relations_, rewrite_));
    q->bounds_ = bounds_;
    q->mono_ = mono_;
    q->cexp_ = J.exponents();
    q->mult_ = mult_;
    if (q->cexp_[0] == 0) throw std::invalid_argument("quotient collapses to the zero ring");
    if (q->cexp_[0] < q->base_.N()) q->base_ = q->base_.truncated(q->cexp_[0]);
    q->relations_ = q->canonical_relations();
    return q;
}

RElem CoefficientRing::reduce(const RElem& x, const SubmoduleIdeal& J) const {
    RElem z(x.size());
    for (size_t i = 0; i < x.size(); ++i) z[i] = base_.trunc(x[i], J.e(i));
    return z;
}

bool CoefficientRing::same_presentation(const CoefficientRing& o) const {
    return base_ == o.base_ && vars_ == o.vars_ && bounds_ == o.bounds_ &&
           rewrite_ == o.rewrite_ && mono_ == o.mono_ && cexp_ == o.cexp_;
}

std::vector<Monomial> CoefficientRing::canonical_relations() const {
    std::vector<Monomial> rels;
    size_t s = vars_.size();
    // characteristic
    rels.push_back({cexp_[0], std::vector<unsigned>(s, 0)});
    // pure power bounds
    for (size_t i = 0; i < s; ++i) {
        std::vector<unsigned> u(s, 0);
        u[i] = bounds_[i];
        rels.push_back({0, u});
    }
    // annihilator drops not implied by a divisor monomial
    for (size_t m = 1; m < mono_.size(); ++m) {
        if (cexp_[m] >= base_.N() && !rewrite_) continue;
        unsigned implied = base_.N();
        for (size_t m2 = 0; m2 < mono_.size(); ++m2) {
            if (m2 == m || !leq_vec(mono_[m2], mono_[m])) continue;
            implied = std::min(implied, cexp_[m2]);
        }
        if (cexp_[m] < implied) rels.push_back({cexp_[m], mono_[m]});
    }
    return rels;
}

std::string CoefficientRing::str(const RElem& x) const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < mono_.size(); ++i) {
        WittElem c = base_.trunc(x[i], cexp_[i]);
        if (base_.is_zero(c)) continue;
        if (!first) os << " + ";
        bool has_var = degree(i) > 0;
        std::string cs = base_.str(c);
        bool composite = cs.find('+') != std::string::npos;
        if (!has_var) {
            os << (composite ? "(" + cs + ")" : cs);
        } else {
            if (cs != "1") os << (composite ? "(" + cs + ")" : cs) << "*";
            bool firstv = true;
            for (size_t l = 0; l < vars_.size(); ++l) {
                if (mono_[i][l] == 0) continue;
                if (!firstv) os << "*";
                os << vars_[l];
                if (mono_[i][l] > 1) os << "^" << mono_[i][l];
                firstv = false;
            }
        }
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

bool SubmoduleIdeal::contains(const RElem& x) const {
    const auto& R = *ring_;
    for (size_t i = 0; i < e_.size(); ++i) {
        WittElem c = R.base().trunc(x[i], R.cexp(i));
        if (R.base().is_zero(c)) continue;
        if (R.base().val(c) < e_[i]) return false;
    }
    return true;
}

bool SubmoduleIdeal::contains_ideal(const SubmoduleIdeal& o) const {
    for (size_t i = 0; i < e_.size(); ++i)
        if (e_[i] > o.e_[i]) return false;
    return true;
}

bool SubmoduleIdeal::is_zero() const {
    for (size_t i = 0; i < e_.size(); ++i)
        if (e_[i] < ring_->cexp(i)) return false;
    return true;
}

SubmoduleIdeal SubmoduleIdeal::intersect(const SubmoduleIdeal& o) const {
    std::vector<unsigned> e(e_.size());
    for (size_t i = 0; i < e_.size(); ++i) e[i] = std::max(e_[i], o.e_[i]);
    return SubmoduleIdeal(ring_, e);
}

SubmoduleIdeal SubmoduleIdeal::sum(const SubmoduleIdeal& o) const {
    std::vector<unsigned> e(e_.size());
    for (size_t i = 0; i < e_.size(); ++i) e[i] = std::min(e_[i], o.e_[i]);
    return SubmoduleIdeal(ring_, e);
}

SubmoduleIdeal SubmoduleIdeal::product(const SubmoduleIdeal& o) const {
    std::vector<Monomial> gens;
    for (const auto& g1 : monomial_generators())
        for (const auto& g2 : o.monomial_generators()) {
            Monomial m;
            m.a = g1.a + g2.a;
            m.u.resize(g1.u.size());
            for (size_t i = 0; i < m.u.size(); ++i) m.u[i] = g1.u[i] + g2.u[i];
            gens.push_back(std::move(m));
        }
    return ring_->ideal(gens);
}

std::vector<Monomial> SubmoduleIdeal::monomial_generators() const {
    std::vector<Monomial> gens;
    for (size_t i = 0; i < e_.size(); ++i)
        if (e_[i] < ring_->cexp(i)) gens.push_back({e_[i], ring_->mono(i)});
    return gens;
}

std::vector<Monomial> SubmoduleIdeal::minimal_generators() const {
    auto gens = monomial_generators();
    if (ring_->experimental()) return gens;
    std::vector<Monomial> out;
    for (const auto& g : gens) {
        bool implied = false;
        for (const auto& h : gens) {
            if (&h == &g) continue;
            if (h.a <= g.a && leq_vec(h.u, g.u) && !(h.a == g.a && h.u == g.u)) {
                implied = true;
                break;
            }
        }
        if (!implied) out.push_back(g);
    }
    return out;
}

std::vector<RElem> SubmoduleIdeal::fp_basis() const {
    const auto& R = *ring_;
    const auto& O = R.base();
    std::vector<RElem> basis;
    for (size_t i = 0; i < e_.size(); ++i)
        for (unsigned a = e_[i]; a < R.cexp(i); ++a)
            for (unsigned t = 0; t < O.f(); ++t) {
                RElem x = R.zero();
                WittElem w = O.zero();
                w[t] = O.p_pow(a);
                x[i] = w;
                basis.push_back(R.normalized(std::move(x)));
            }
    return basis;
}

size_t SubmoduleIdeal::fq_dim_quotient(const SubmoduleIdeal& sub) const {
    size_t d = 0;
    for (size_t i = 0; i < e_.size(); ++i) {
        unsigned hi = std::min(sub.e_[i], ring_->cexp(i));
        if (e_[i] < hi) d += hi - e_[i];
    }
    return d;
}

bool SubmoduleIdeal::nearly_small() const {
    const auto& R = *ring_;
    for (size_t m = 0; m < e_.size(); ++m) {
        if (e_[m] >= R.cexp(m)) continue;
        // p * p^{e} U^alpha
        if (e_[m] + 1 < R.cexp(m)) return false;
        // U_i * p^{e} U^alpha
        for (size_t i = 0; i < R.nvars(); ++i) {
            auto next = R.mono(m);
            ++next[i];
            auto [idx, shift] = R.canonicalize(next);
            if (idx < 0) continue;
            if (e_[m] + shift < R.cexp(size_t(idx))) return false;
        }
    }
    return true;
}

bool annihilated_by_m(const CoefficientRing& R, const RElem& r) {
    if (!R.is_zero(R.mul(R.p_elem(), r))) return false;
    for (size_t i = 0; i < R.nvars(); ++i)
        if (!R.is_zero(R.mul(R.var(i), r))) return false;
    return true;
}

bool is_nearly_small(const CoefficientRing& R, const SubmoduleIdeal& J) {
    if (!J.ring()->same_presentation(R)) throw std::invalid_argument("ideal of a different ring");
    return J.nearly_small();
}

GradedPiece graded_piece(const CoefficientRing& R, unsigned k) {
    if (k < 1) throw std::invalid_argument("graded piece needs k >= 1");
    auto nk = R.filtration_nk(k);
    auto nk1 = R.filtration_nk(k + 1);
    GradedPiece g;
    g.k = k;
    for (size_t i = 0; i < R.nmono(); ++i) {
        unsigned lo = nk.e(i), hi = std::min(nk1.e(i), R.cexp(i));
        if (lo < hi) {
            g.labels.push_back({lo, R.mono(i)});
            g.reps.push_back(R.monomial_elem(i, lo));
        }
    }
    g.dim_fq = g.labels.size();
    return g;
}

RingHom::RingHom(RingPtr source, RingPtr target, std::vector<RElem> images)
    : src_(std::move(source)), tgt_(std::move(target)), images_(std::move(images)) {
    const auto& S = *src_;
    const auto& T = *tgt_;
    if (S.experimental())
        throw std::invalid_argument("substitution from a rewrite-presented ring is unsupported");
    if (images_.size() != S.nvars()) throw std::invalid_argument("one image per variable required");
    if (S.base().p() != T.base().p() || S.base().f() != T.base().f() ||
        S.residue_field().modulus() != T.residue_field().modulus())
        throw std::invalid_argument("substitution requires a common coefficient base");
    for (const auto& img : images_)
        if (T.is_unit(img))
            throw std::invalid_argument("variable image must lie in the maximal ideal");
    // precompute monomial images
    mono_images_.resize(S.nmono());
    for (size_t i = 0; i < S.nmono(); ++i) {
        RElem v = T.one();
        for (size_t l = 0; l < S.nvars(); ++l)
            for (unsigned e = 0; e < S.mono(i)[l]; ++e) v = T.mul(v, images_[l]);
        mono_images_[i] = v;
    }
    // every defining relation must map to zero
    for (const auto& r : S.canonical_relations()) {
        RElem v = T.one();
        for (size_t l = 0; l < S.nvars(); ++l)
            for (unsigned e = 0; e < r.u[l]; ++e) v = T.mul(v, images_[l]);
        v = T.mul(v, T.from_base(T.base().from_int(int64_t(T.base().p_pow(
                         std::min<unsigned>(r.a, T.base().N()))))));
        if (r.a >= T.base().N()) v = T.zero();
        if (!T.is_zero(v))
            throw std::invalid_argument("substitution does not kill the relation ideal");
    }
    // annihilators transport (implied by the relation check; asserted)
    for (size_t i = 0; i < S.nmono(); ++i) {
        unsigned c = S.cexp(i);
        RElem v = mono_images_[i];
        if (c < T.base().N())
            v = T.mul_base(v, T.base().from_int(int64_t(T.base().p_pow(c))));
        else
            v = T.zero();
        if (!T.is_zero(v)) throw std::logic_error("annihilator not transported by substitution");
    }
}

RElem RingHom::apply(const RElem& x) const {
    const auto& T = *tgt_;
    RElem acc = T.zero();
    for (size_t i = 0; i < src_->nmono(); ++i) {
        if (src_->base().is_zero(x[i])) continue;
        acc = T.add(acc, T.mul_base(mono_images_[i], x[i]));
    }
    return acc;
}

std::optional<std::vector<RElem>> solve_linear_in_ideal(
    const CoefficientRing& R, const SubmoduleIdeal& J, size_t nunknowns,
    const std::vector<std::vector<RElem>>& A, const std::vector<RElem>& b) {
    const WittRing& O = R.base();
    size_t nm = R.nmono();
    auto gens = J.monomial_generators();
    std::vector<RElem> gen_elems;
    for (const auto& g : gens) {
        size_t idx = R.mono_index(g.u);
        gen_elems.push_back(R.monomial_elem(idx, g.a));
    }
    size_t ncols = nunknowns * gen_elems.size();
    size_t nrows = A.size() * nm;
    WittSystem sys(O, nrows, ncols);
    for (size_t i = 0; i < A.size(); ++i) {
        for (size_t j = 0; j < nunknowns; ++j)
            for (size_t g = 0; g < gen_elems.size(); ++g) {
                RElem col = R.mul(A[i][j], gen_elems[g]);
                for (size_t m = 0; m < nm; ++m) sys.at(i * nm + m, j * gen_elems.size() + g) = col[m];
            }
        for (size_t m = 0; m < nm; ++m) {
            sys.b[i * nm + m] = b[i][m];
            sys.row_mod[i * nm + m] = R.cexp(m);
        }
    }
    auto sol = witt_solve(sys);
    if (!sol) return std::nullopt;
    std::vector<RElem> xs(nunknowns, R.zero());
    for (size_t j = 0; j < nunknowns; ++j)
        for (size_t g = 0; g < gen_elems.size(); ++g)
            xs[j] = R.add(xs[j], R.mul_base(gen_elems[g], (*sol)[j * gen_elems.size() + g]));
    return xs;
}

bool in_generated_ideal(const CoefficientRing& T, const std::vector<RElem>& gens,
                        const RElem& x) {
    // O-module span of U^delta * g over all standard monomials delta
    const WittRing& O = T.base();
    size_t nm = T.nmono();
    std::vector<RElem> cols;
    for (const auto& g : gens)
        for (size_t d = 0; d < nm; ++d) {
            RElem m = T.zero();
            m[d] = O.one();
            m = T.normalized(std::move(m));
            RElem prod = T.mul(m, g);
            if (!T.is_zero(prod)) cols.push_back(std::move(prod));
        }
    WittSystem sys(O, nm, cols.size());
    for (size_t r = 0; r < nm; ++r) {
        sys.row_mod[r] = T.cexp(r);
        sys.b[r] = x[r];
        for (size_t c = 0; c < cols.size(); ++c) sys.at(r, c) = cols[c][r];
    }
    return witt_solve(sys).has_value();
}

}  // namespace tamelift

#include "tamelift/field.hpp"

#include <algorithm>
#include <sstream>

namespace tamelift {

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

bool is_trivial_prime(uint64_t p, uint64_t v) {
    return is_prime_u64(v) && v % p == 1 && v % (p * p) != 1;
}

namespace {

// dense polynomials over F_p, little-endian coefficients, no leading zeros
using Poly = std::vector<uint64_t>;

void poly_trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, uint64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    poly_trim(c);
    return c;
}

// remainder of a by monic m
Poly poly_rem(Poly a, const Poly& m, uint64_t p) {
    poly_trim(a);
    while (a.size() >= m.size()) {
        uint64_t lead = a.back();
        size_t shift = a.size() - m.size();
        for (size_t i = 0; i < m.size(); ++i) {
            uint64_t sub = (lead * m[i]) % p;
            a[i + shift] = (a[i + shift] + p * p - sub) % p;
        }
        poly_trim(a);
    }
    return a;
}

bool poly_is_zero(const Poly& a) { return a.empty(); }

// irreducibility over F_p by trial division up to degree deg/2
bool poly_irreducible(const Poly& m, uint64_t p) {
    size_t deg = m.size() - 1;
    if (deg == 0) return false;
    if (deg == 1) return true;
    // enumerate monic divisors of degree 1..deg/2
    for (size_t d = 1; 2 * d <= deg; ++d) {
        uint64_t count = 1;
        for (size_t i = 0; i < d; ++i) count *= p;
        for (uint64_t idx = 0; idx < count; ++idx) {
            Poly div(d + 1, 0);
            uint64_t t = idx;
            for (size_t i = 0; i < d; ++i) {
                div[i] = t % p;
                t /= p;
            }
            div[d] = 1;
            if (poly_is_zero(poly_rem(m, div, p))) return false;
        }
    }
    return true;
}

}  // namespace

struct FiniteField::Impl {
    uint64_t p = 0;
    unsigned f = 0;
    uint64_t q = 0;
    std::vector<uint64_t> modulus;
    std::vector<Fq> add, mul, neg, inv;

    size_t idx(Fq a, Fq b) const { return size_t(a) * q + b; }
    void build_tables();
};

FiniteField::FiniteField(uint64_t p) : FiniteField(p, {0, 1}) {}

FiniteField::FiniteField(uint64_t p, std::vector<uint64_t> modulus) {
    auto impl = std::make_shared<Impl>();
    impl->p = p;
    impl->modulus = std::move(modulus);
    if (!is_prime_u64(impl->p)) throw std::invalid_argument("characteristic must be prime");
    if (impl->p == 2) throw std::invalid_argument("characteristic 2 is not supported");
    if (impl->modulus.size() < 2) throw std::invalid_argument("modulus must have degree >= 1");
    for (auto& c : impl->modulus) c %= impl->p;
    if (impl->modulus.back() != 1) throw std::invalid_argument("modulus must be monic");
    impl->f = unsigned(impl->modulus.size() - 1);
    if (impl->f > 6) throw std::invalid_argument("extension degree too large (max 6)");
    impl->q = 1;
    for (unsigned i = 0; i < impl->f; ++i) {
        impl->q *= impl->p;
        if (impl->q > 512) throw std::invalid_argument("field too large (max q = 512)");
    }
    if (!poly_irreducible(impl->modulus, impl->p))
        throw std::invalid_argument("modulus is reducible over F_p");
    impl->build_tables();
    impl_ = std::move(impl);
}

uint64_t FiniteField::p() const { return impl_->p; }
unsigned FiniteField::f() const { return impl_->f; }
uint64_t FiniteField::q() const { return impl_->q; }
const std::vector<uint64_t>& FiniteField::modulus() const { return impl_->modulus; }
Fq FiniteField::add(Fq a, Fq b) const { return impl_->add[impl_->idx(a, b)]; }
Fq FiniteField::sub(Fq a, Fq b) const { return impl_->add[impl_->idx(a, impl_->neg[b])]; }
Fq FiniteField::neg(Fq a) const { return impl_->neg[a]; }
Fq FiniteField::mul(Fq a, Fq b) const { return impl_->mul[impl_->idx(a, b)]; }

bool FiniteField::operator==(const FiniteField& o) const {
    return impl_ == o.impl_ || (impl_->p == o.impl_->p && impl_->modulus == o.impl_->modulus);
}

FiniteField FiniteField::with_degree(uint64_t p, unsigned f) {
    if (f == 0) throw std::invalid_argument("degree must be >= 1");
    if (f == 1) return FiniteField(p);
    if (!is_prime_u64(p) || p == 2) throw std::invalid_argument("bad characteristic");
    // lex-least monic irreducible: scan (c_0, c_1, ...) ascending
    uint64_t count = 1;
    for (unsigned i = 0; i < f; ++i) count *= p;
    for (uint64_t idx = 0; idx < count; ++idx) {
        std::vector<uint64_t> m(f + 1, 0);
        uint64_t t = idx;
        for (unsigned i = 0; i < f; ++i) {  // c_{f-1} varies fastest => c_0 outermost
            m[f - 1 - i] = t % p;
            t /= p;
        }
        m[f] = 1;
        if (poly_irreducible(m, p)) return FiniteField(p, m);
    }
    throw std::logic_error("no irreducible modulus found");
}

void FiniteField::Impl::build_tables() {
    add.assign(q * q, 0);
    mul.assign(q * q, 0);
    neg.assign(q, 0);
    inv.assign(q, 0);
    auto decode = [&](Fq a) {
        Poly c(f, 0);
        for (unsigned i = 0; i < f; ++i) {
            c[i] = a % p;
            a = Fq(a / p);
        }
        return c;
    };
    auto encode = [&](Poly c) {
        c.resize(f, 0);
        uint64_t v = 0;
        for (unsigned i = f; i-- > 0;) v = v * p + c[i];
        return Fq(v);
    };
    for (Fq a = 0; a < q; ++a) {
        Poly ca = decode(a);
        Poly na(f);
        for (unsigned i = 0; i < f; ++i) na[i] = (p - ca[i]) % p;
        neg[a] = encode(na);
        for (Fq b = 0; b < q; ++b) {
            Poly cb = decode(b);
            Poly s(f);
            for (unsigned i = 0; i < f; ++i) s[i] = (ca[i] + cb[i]) % p;
            add[idx(a, b)] = encode(s);
            mul[idx(a, b)] = encode(poly_rem(poly_mul(ca, cb, p), modulus, p));
        }
    }
    for (Fq a = 1; a < q; ++a) {
        // a^(q-2) = a^{-1}
        Fq r = 1, base = a;
        uint64_t e = q - 2;
        while (e) {
            if (e & 1) r = mul[idx(r, base)];
            base = mul[idx(base, base)];
            e >>= 1;
        }
        inv[a] = r;
    }
}

Fq FiniteField::from_int(int64_t n) const {
    int64_t r = n % int64_t(p());
    if (r < 0) r += int64_t(p());
    return Fq(r);
}

Fq FiniteField::from_coeffs(const std::vector<uint64_t>& c) const {
    uint64_t v = 0;
    for (unsigned i = f(); i-- > 0;) v = v * p() + (i < c.size() ? c[i] % p() : 0);
    return Fq(v);
}

std::vector<uint64_t> FiniteField::coeffs(Fq a) const {
    std::vector<uint64_t> c(f(), 0);
    for (unsigned i = 0; i < f(); ++i) {
        c[i] = a % p();
        a = Fq(a / p());
    }
    return c;
}

Fq FiniteField::inv(Fq a) const {
    if (a == 0) throw std::domain_error("division by zero in F_q");
    return impl_->inv[a];
}

Fq FiniteField::pow(Fq a, uint64_t e) const {
    Fq r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

bool FiniteField::is_square(Fq a) const {
    if (a == 0) return true;
    return pow(a, (q() - 1) / 2) == 1;
}

std::optional<Fq> FiniteField::sqrt(Fq a) const {
    // q is small: scan, keeping the lex-least coefficient vector
    std::optional<Fq> best;
    for (Fq r = 0; r < q(); ++r) {
        if (mul(r, r) != a) continue;
        if (!best || coeffs(r) < coeffs(*best)) best = r;
    }
    return best;
}

std::string FiniteField::str(Fq a) const {
    if (f() == 1) return std::to_string(a);
    auto c = coeffs(a);
    std::ostringstream os;
    bool first = true;
    for (unsigned i = 0; i < f(); ++i) {
        if (c[i] == 0) continue;
        if (!first) os << "+";
        if (i == 0)
            os << c[i];
        else {
            if (c[i] != 1) os << c[i] << "*";
            os << "t";
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

WittRing::WittRing(FiniteField residue, unsigned N) : k_(std::move(residue)), N_(N) {
    if (N_ < 1) throw std::invalid_argument("truncation level must be >= 1");
    pN_ = 1;
    for (unsigned i = 0; i < N_; ++i) {
        pN_ *= k_.p();
        if (pN_ > (uint64_t(1) << 31)) throw std::invalid_argument("p^N too large");
    }
    modlift_.resize(k_.f() + 1);
    for (size_t i = 0; i < modlift_.size(); ++i) modlift_[i] = k_.modulus()[i] % pN_;
}

uint64_t WittRing::p_pow(unsigned e) const {
    uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) r *= p();
    return r;
}

WittElem WittRing::one() const {
    WittElem a(f(), 0);
    a[0] = 1 % pN_;
    return a;
}

WittElem WittRing::from_int(int64_t n) const {
    int64_t r = n % int64_t(pN_);
    if (r < 0) r += int64_t(pN_);
    WittElem a(f(), 0);
    a[0] = uint64_t(r);
    return a;
}

WittElem WittRing::from_residue(Fq x) const {
    auto c = k_.coeffs(x);
    WittElem a(f(), 0);
    for (unsigned i = 0; i < f(); ++i) a[i] = c[i];
    return a;
}

Fq WittRing::to_residue(const WittElem& a) const {
    std::vector<uint64_t> c(f());
    for (unsigned i = 0; i < f(); ++i) c[i] = a[i] % p();
    return k_.from_coeffs(c);
}

bool WittRing::is_zero(const WittElem& a) const {
    for (auto x : a)
        if (x % pN_ != 0) return false;
    return true;
}

WittElem WittRing::add(const WittElem& a, const WittElem& b) const {
    WittElem c(f());
    for (unsigned i = 0; i < f(); ++i) c[i] = m_add(a[i], b[i]);
    return c;
}

WittElem WittRing::sub(const WittElem& a, const WittElem& b) const {
    WittElem c(f());
    for (unsigned i = 0; i < f(); ++i) c[i] = (a[i] + pN_ - b[i] % pN_) % pN_;
    return c;
}

WittElem WittRing::neg(const WittElem& a) const { return sub(zero(), a); }

WittElem WittRing::mul(const WittElem& a, const WittElem& b) const {
    unsigned n = f();
    uint64_t c[11] = {0};
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
            c[i + j] = (c[i + j] + a[i] * b[j]) % pN_;
    // reduce by the monic modulus lift
    for (unsigned k = 2 * n - 2; k >= n && k < 2 * n - 1; --k) {
        uint64_t lead = c[k];
        if (lead) {
            for (unsigned i = 0; i <= n; ++i) {
                uint64_t sub = (lead * modlift_[i]) % pN_;
                c[k - n + i] = (c[k - n + i] + pN_ - sub) % pN_;
            }
        }
        if (k == n) break;
    }
    WittElem out(n);
    for (unsigned i = 0; i < n; ++i) out[i] = c[i];
    return out;
}

WittElem WittRing::mul_int(const WittElem& a, uint64_t n) const {
    WittElem c(f());
    n %= pN_;
    for (unsigned i = 0; i < f(); ++i) c[i] = (a[i] * n) % pN_;
    return c;
}

WittElem WittRing::pow(const WittElem& a, uint64_t e) const {
    WittElem r = one(), base = a;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

WittElem WittRing::inv(const WittElem& a) const {
    if (!is_unit(a)) throw std::domain_error("not a unit in the Witt ring");
    WittElem x = from_residue(k_.inv(to_residue(a)));
    // Newton: x <- x(2 - a x), doubles p-adic precision each step
    for (unsigned it = 0; it < N_ + 2; ++it) {
        WittElem t = sub(from_int(2), mul(a, x));
        x = mul(x, t);
        WittElem check = mul(a, x);
        if (check == one()) return x;
    }
    throw std::logic_error("inverse iteration failed to converge");
}

unsigned WittRing::val(const WittElem& a) const {
    unsigned best = N_;
    for (auto x : a) {
        x %= pN_;
        if (x == 0) continue;
        unsigned v = 0;
        while (x % p() == 0) {
            x /= p();
            ++v;
        }
        best = std::min(best, v);
    }
    return best;
}

WittElem WittRing::div_p_exact(const WittElem& a, unsigned e) const {
    uint64_t pe = p_pow(e);
    WittElem c(f());
    for (unsigned i = 0; i < f(); ++i) {
        if (a[i] % pe != 0) throw std::domain_error("element not divisible by p^e");
        c[i] = a[i] / pe;
    }
    return c;
}

WittElem WittRing::unit_part(const WittElem& a) const {
    return div_p_exact(a, val(a));
}

WittElem WittRing::div_exact(const WittElem& a, const WittElem& b) const {
    if (is_zero(b)) throw std::domain_error("division by zero");
    unsigned vb = val(b);
    if (val(a) < vb) throw std::domain_error("inexact division");
    return mul(div_p_exact(a, vb), inv(unit_part(b)));
}

WittElem WittRing::trunc(const WittElem& a, unsigned e) const {
    uint64_t pe = p_pow(std::min(e, N_));
    WittElem c(f());
    for (unsigned i = 0; i < f(); ++i) c[i] = a[i] % pe;
    return c;
}

WittRing WittRing::truncated(unsigned e) const {
    return WittRing(k_, std::min(e, N_));
}

WittElem WittRing::hensel_sqrt(const WittElem& a) const {
    if (!is_unit(a)) throw std::domain_error("hensel_sqrt: not a unit");
    Fq r0 = to_residue(a);
    auto root = k_.sqrt(r0);
    if (!root) throw std::domain_error("hensel_sqrt: residue is not a square");
    WittElem x = from_residue(*root);
    for (unsigned it = 0; it < N_ + 2; ++it) {
        if (mul(x, x) == a) return x;
        // x <- x - (x^2 - a)/(2x)
        WittElem num = sub(mul(x, x), a);
        WittElem den = mul_int(x, 2);
        x = sub(x, mul(num, inv(den)));
    }
    if (mul(x, x) == a) return x;
    throw std::logic_error("hensel_sqrt failed to converge");
}

std::string WittRing::str(const WittElem& a) const {
    if (f() == 1) return std::to_string(a[0] % pN_);
    std::ostringstream os;
    bool first = true;
    for (unsigned i = 0; i < f(); ++i) {
        uint64_t c = a[i] % pN_;
        if (c == 0) continue;
        if (!first) os << "+";
        if (i == 0)
            os << c;
        else {
            if (c != 1) os << c << "*";
            os << "t";
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace tamelift

#pragma once

// Exact arithmetic in F_q = F_p[t]/(modulus) and in the truncated Witt ring
// W(F_q)/p^N, realized as the Galois ring (Z/p^N)[t]/(modulus lift).

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tamelift {

bool is_prime_u64(uint64_t n);

// v is a trivial prime for p: v prime, v = 1 mod p, v != 1 mod p^2.
bool is_trivial_prime(uint64_t p, uint64_t v);

/// Element of F_q, encoded as sum c_i p^i with c_i the coefficients of the
/// representative polynomial c_0 + c_1 t + ... + c_{f-1} t^{f-1}.
using Fq = uint32_t;

// Cheap-to-copy handle over an immutable field implementation (operation
// tables are shared), so matrices and modules can hold fields by value.
class FiniteField {
public:
    // Empty handle; every real field comes from a constructor below.
    FiniteField() = default;
    // Prime field F_p.
    explicit FiniteField(uint64_t p);
    // F_p[t]/(modulus); modulus given by coefficients c_0..c_f, monic.
    FiniteField(uint64_t p, std::vector<uint64_t> modulus);
    // Extension of degree f with the canonical (lex-least irreducible) modulus.
    static FiniteField with_degree(uint64_t p, unsigned f);

    uint64_t p() const;
    unsigned f() const;
    uint64_t q() const;
    const std::vector<uint64_t>& modulus() const;

    Fq zero() const { return 0; }
    Fq one() const { return 1; }
    Fq from_int(int64_t n) const;
    Fq from_coeffs(const std::vector<uint64_t>& c) const;
    std::vector<uint64_t> coeffs(Fq a) const;

    Fq add(Fq a, Fq b) const;
    Fq sub(Fq a, Fq b) const;
    Fq neg(Fq a) const;
    Fq mul(Fq a, Fq b) const;
    Fq inv(Fq a) const;
    Fq div(Fq a, Fq b) const { return mul(a, inv(b)); }
    Fq pow(Fq a, uint64_t e) const;

    bool is_square(Fq a) const;
    // Both square roots when they exist; the canonical root is the one whose
    // coefficient vector (c_0, c_1, ...) is lexicographically least.
    std::optional<Fq> sqrt(Fq a) const;

    std::string str(Fq a) const;
    bool operator==(const FiniteField& o) const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
    explicit FiniteField(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
};

/// Element of W(F_q)/p^N: f polynomial coefficients, each in [0, p^N).
/// Fixed-capacity inline storage (f <= 6) keeps ring arithmetic allocation
/// free on the hot enumeration paths.
class WittElem {
public:
    WittElem() = default;
    explicit WittElem(size_t n, uint64_t fill = 0) : n_(uint8_t(n)) {
        for (size_t i = 0; i < n_; ++i) v_[i] = fill;
    }
    WittElem(std::initializer_list<uint64_t> il) : n_(uint8_t(il.size())) {
        size_t i = 0;
        for (uint64_t x : il) v_[i++] = x;
    }
    size_t size() const { return n_; }
    uint64_t& operator[](size_t i) { return v_[i]; }
    uint64_t operator[](size_t i) const { return v_[i]; }
    uint64_t* begin() { return v_; }
    uint64_t* end() { return v_ + n_; }
    const uint64_t* begin() const { return v_; }
    const uint64_t* end() const { return v_ + n_; }
    bool operator==(const WittElem& o) const {
        if (n_ != o.n_) return false;
        for (size_t i = 0; i < n_; ++i)
            if (v_[i] != o.v_[i]) return false;
        return true;
    }

private:
    uint64_t v_[6] = {0, 0, 0, 0, 0, 0};
    uint8_t n_ = 0;
};

class WittRing {
public:
    WittRing(FiniteField residue, unsigned N);

    uint64_t p() const { return k_.p(); }
    unsigned f() const { return k_.f(); }
    unsigned N() const { return N_; }
    uint64_t pN() const { return pN_; }
    const FiniteField& residue_field() const { return k_; }
    // p^e for 0 <= e <= N
    uint64_t p_pow(unsigned e) const;

    WittElem zero() const { return WittElem(k_.f(), 0); }
    WittElem one() const;
    WittElem from_int(int64_t n) const;
    WittElem from_residue(Fq a) const;  // digit lift of the polynomial
    Fq to_residue(const WittElem& a) const;

    bool is_zero(const WittElem& a) const;
    bool is_unit(const WittElem& a) const { return to_residue(a) != 0; }

    WittElem add(const WittElem& a, const WittElem& b) const;
    WittElem sub(const WittElem& a, const WittElem& b) const;
    WittElem neg(const WittElem& a) const;
    WittElem mul(const WittElem& a, const WittElem& b) const;
    WittElem mul_int(const WittElem& a, uint64_t n) const;
    WittElem pow(const WittElem& a, uint64_t e) const;
    WittElem inv(const WittElem& a) const;

    // p-adic valuation: largest e <= N with p^e | a (N for a = 0).
    unsigned val(const WittElem& a) const;
    // a / p^e, requires p^e | a.
    WittElem div_p_exact(const WittElem& a, unsigned e) const;
    // unit u with a = p^val(a) * u (undefined for a = 0)
    WittElem unit_part(const WittElem& a) const;
    // exact division a / b for val(a) >= val(b), b != 0.
    WittElem div_exact(const WittElem& a, const WittElem& b) const;

    // reduce coefficients mod p^e (the image in W(F_q)/p^e, kept in this ring's
    // coordinate format)
    WittElem trunc(const WittElem& a, unsigned e) const;
    WittRing truncated(unsigned e) const;

    // Unique b with b^2 = a and b mod p the canonical field square root.
    // Requires a to be a unit whose residue is a square.
    WittElem hensel_sqrt(const WittElem& a) const;

    std::string str(const WittElem& a) const;
    bool operator==(const WittRing& o) const {
        return N_ == o.N_ && k_ == o.k_;
    }

private:
    FiniteField k_;
    unsigned N_;
    uint64_t pN_;
    std::vector<uint64_t> modlift_;  // monic modulus lifted to Z/p^N

    uint64_t m_add(uint64_t a, uint64_t b) const { return (a + b) % pN_; }
    uint64_t m_mul(uint64_t a, uint64_t b) const { return (a * b) % pN_; }
};

}  // namespace tamelift

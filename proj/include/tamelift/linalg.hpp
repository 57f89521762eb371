#pragma once

// Exact linear algebra: row reduction over F_q, and solving linear systems
// over the truncated Witt ring (a chain ring) by minimal-valuation pivoting.

#include <optional>
#include <vector>

#include "tamelift/field.hpp"

namespace tamelift {

using FqVec = std::vector<Fq>;

struct FqMat {
    FiniteField k;  // shared handle
    size_t rows = 0, cols = 0;
    std::vector<Fq> a;

    FqMat() = default;
    FqMat(const FiniteField& field, size_t r, size_t c)
        : k(field), rows(r), cols(c), a(r * c, 0) {}

    Fq& at(size_t r, size_t c) { return a[r * cols + c]; }
    Fq at(size_t r, size_t c) const { return a[r * cols + c]; }

    static FqMat identity(const FiniteField& field, size_t n);
    bool operator==(const FqMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

FqMat fq_mul(const FqMat& A, const FqMat& B);
FqMat fq_add(const FqMat& A, const FqMat& B);
FqMat fq_sub(const FqMat& A, const FqMat& B);
FqMat fq_scale(const FqMat& A, Fq c);
FqMat fq_pow(const FqMat& A, uint64_t e);
// I + A + A^2 + ... + A^(e-1)
FqMat fq_geom_sum(const FqMat& A, uint64_t e);
FqMat fq_inv(const FqMat& A);  // throws if singular
FqVec fq_apply(const FqMat& A, const FqVec& x);

// Reduced row echelon form in place; returns pivot column list.
std::vector<size_t> fq_rref(FqMat& A);
size_t fq_rank(FqMat A);
// Basis of the right kernel {x : Ax = 0}, as rows of the result.
std::vector<FqVec> fq_kernel(const FqMat& A);
// Basis of the row space spanned by the given vectors.
std::vector<FqVec> fq_row_basis(const FiniteField& k, const std::vector<FqVec>& vecs);
// Does the row span of `basis` contain v?
bool fq_in_span(const FiniteField& k, const std::vector<FqVec>& basis, const FqVec& v);

// Linear system over the Witt ring O with per-row moduli: row i is an
// equation in O/p^{row_mod[i]}. Solves A x = b; x entries are unconstrained
// elements of O. Returns a particular solution if one exists.
struct WittSystem {
    const WittRing* O = nullptr;
    size_t rows = 0, cols = 0;
    std::vector<WittElem> a;  // rows*cols
    std::vector<WittElem> b;  // rows
    std::vector<unsigned> row_mod;

    WittSystem(const WittRing& ring, size_t r, size_t c)
        : O(&ring),
          rows(r),
          cols(c),
          a(r * c, ring.zero()),
          b(r, ring.zero()),
          row_mod(r, ring.N()) {}

    WittElem& at(size_t r, size_t c) { return a[r * cols + c]; }
};

std::optional<std::vector<WittElem>> witt_solve(const WittSystem& sys);

}  // namespace tamelift

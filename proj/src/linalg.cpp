#include "tamelift/linalg.hpp"

#include <stdexcept>

namespace tamelift {

FqMat FqMat::identity(const FiniteField& field, size_t n) {
    FqMat I(field, n, n);
    for (size_t i = 0; i < n; ++i) I.at(i, i) = 1;
    return I;
}

FqMat fq_mul(const FqMat& A, const FqMat& B) {
    if (A.cols != B.rows) throw std::invalid_argument("fq_mul: shape mismatch");
    const FiniteField& k = A.k;
    FqMat C(k, A.rows, B.cols);
    for (size_t i = 0; i < A.rows; ++i)
        for (size_t l = 0; l < A.cols; ++l) {
            Fq x = A.at(i, l);
            if (!x) continue;
            for (size_t j = 0; j < B.cols; ++j)
                C.at(i, j) = k.add(C.at(i, j), k.mul(x, B.at(l, j)));
        }
    return C;
}

FqMat fq_add(const FqMat& A, const FqMat& B) {
    FqMat C = A;
    for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = A.k.add(A.a[i], B.a[i]);
    return C;
}

FqMat fq_sub(const FqMat& A, const FqMat& B) {
    FqMat C = A;
    for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = A.k.sub(A.a[i], B.a[i]);
    return C;
}

FqMat fq_scale(const FqMat& A, Fq c) {
    FqMat C = A;
    for (auto& x : C.a) x = A.k.mul(x, c);
    return C;
}

FqMat fq_pow(const FqMat& A, uint64_t e) {
    FqMat R = FqMat::identity(A.k, A.rows), base = A;
    while (e) {
        if (e & 1) R = fq_mul(R, base);
        base = fq_mul(base, base);
        e >>= 1;
    }
    return R;
}

FqMat fq_geom_sum(const FqMat& A, uint64_t e) {
    // S(0) = 0, S(2k) = S(k)(I + A^k), S(2k+1) = S(2k) + A^(2k)
    if (e == 0) return FqMat(A.k, A.rows, A.rows);
    if (e % 2 == 0) {
        FqMat half = fq_geom_sum(A, e / 2);
        FqMat t = fq_add(FqMat::identity(A.k, A.rows), fq_pow(A, e / 2));
        return fq_mul(half, t);
    }
    return fq_add(fq_geom_sum(A, e - 1), fq_pow(A, e - 1));
}

FqVec fq_apply(const FqMat& A, const FqVec& x) {
    FqVec y(A.rows, 0);
    for (size_t i = 0; i < A.rows; ++i)
        for (size_t j = 0; j < A.cols; ++j)
            y[i] = A.k.add(y[i], A.k.mul(A.at(i, j), x[j]));
    return y;
}

std::vector<size_t> fq_rref(FqMat& A) {
    const FiniteField& k = A.k;
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < A.cols && r < A.rows; ++c) {
        size_t sel = r;
        while (sel < A.rows && A.at(sel, c) == 0) ++sel;
        if (sel == A.rows) continue;
        for (size_t j = 0; j < A.cols; ++j) std::swap(A.at(r, j), A.at(sel, j));
        Fq inv = k.inv(A.at(r, c));
        for (size_t j = 0; j < A.cols; ++j) A.at(r, j) = k.mul(A.at(r, j), inv);
        for (size_t i = 0; i < A.rows; ++i) {
            if (i == r || A.at(i, c) == 0) continue;
            Fq f = A.at(i, c);
            for (size_t j = 0; j < A.cols; ++j)
                A.at(i, j) = k.sub(A.at(i, j), k.mul(f, A.at(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

size_t fq_rank(FqMat A) { return fq_rref(A).size(); }

std::vector<FqVec> fq_kernel(const FqMat& A) {
    FqMat R = A;
    auto pivots = fq_rref(R);
    const FiniteField& k = A.k;
    std::vector<bool> is_pivot(A.cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<FqVec> basis;
    for (size_t c = 0; c < A.cols; ++c) {
        if (is_pivot[c]) continue;
        FqVec v(A.cols, 0);
        v[c] = 1;
        for (size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = k.neg(R.at(i, c));
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<FqVec> fq_row_basis(const FiniteField& k, const std::vector<FqVec>& vecs) {
    if (vecs.empty()) return {};
    FqMat A(k, vecs.size(), vecs[0].size());
    for (size_t i = 0; i < vecs.size(); ++i)
        for (size_t j = 0; j < vecs[i].size(); ++j) A.at(i, j) = vecs[i][j];
    auto pivots = fq_rref(A);
    std::vector<FqVec> basis;
    for (size_t i = 0; i < pivots.size(); ++i) {
        FqVec v(A.cols);
        for (size_t j = 0; j < A.cols; ++j) v[j] = A.at(i, j);
        basis.push_back(std::move(v));
    }
    return basis;
}

bool fq_in_span(const FiniteField& k, const std::vector<FqVec>& basis, const FqVec& v) {
    auto b1 = fq_row_basis(k, basis);
    auto all = basis;
    all.push_back(v);
    auto b2 = fq_row_basis(k, all);
    return b1.size() == b2.size();
}

FqMat fq_inv(const FqMat& A) {
    if (A.rows != A.cols) throw std::invalid_argument("fq_inv: not square");
    const FiniteField& k = A.k;
    size_t n = A.rows;
    FqMat M(k, n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) M.at(i, j) = A.at(i, j);
        M.at(i, n + i) = 1;
    }
    auto pivots = fq_rref(M);
    if (pivots.size() != n || pivots[n - 1] != n - 1)
        throw std::domain_error("fq_inv: singular matrix");
    FqMat R(k, n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) R.at(i, j) = M.at(i, n + j);
    return R;
}

std::optional<std::vector<WittElem>> witt_solve(const WittSystem& sys) {
    const WittRing& O = *sys.O;
    // Append one slack column p^{row_mod[i]} per row with modulus below N, so
    // every equation can be treated in O/p^N.
    size_t extra = 0;
    std::vector<size_t> slack_col(sys.rows, SIZE_MAX);
    for (size_t i = 0; i < sys.rows; ++i)
        if (sys.row_mod[i] < O.N()) slack_col[i] = sys.cols + extra++;
    size_t ncols = sys.cols + extra;

    std::vector<WittElem> a(sys.rows * ncols, O.zero());
    std::vector<WittElem> b = sys.b;
    for (size_t i = 0; i < sys.rows; ++i) {
        for (size_t j = 0; j < sys.cols; ++j) a[i * ncols + j] = sys.a[i * sys.cols + j];
        if (slack_col[i] != SIZE_MAX)
            a[i * ncols + slack_col[i]] = O.from_int(int64_t(O.p_pow(sys.row_mod[i])));
    }

    std::vector<bool> row_done(sys.rows, false), col_done(ncols, false);
    struct Pivot {
        size_t row, col;
        unsigned val;
    };
    std::vector<Pivot> pivots;

    for (;;) {
        // minimal-valuation entry in the remaining block, first in scan order
        size_t pr = SIZE_MAX, pc = SIZE_MAX;
        unsigned pv = O.N();
        for (size_t i = 0; i < sys.rows; ++i) {
            if (row_done[i]) continue;
            for (size_t j = 0; j < ncols; ++j) {
                if (col_done[j]) continue;
                unsigned v = O.val(a[i * ncols + j]);
                if (v < pv) {
                    pv = v;
                    pr = i;
                    pc = j;
                }
            }
        }
        if (pr == SIZE_MAX) break;
        // normalize the pivot row so the pivot is exactly p^pv
        WittElem u = O.unit_part(a[pr * ncols + pc]);
        WittElem uinv = O.inv(u);
        for (size_t j = 0; j < ncols; ++j) a[pr * ncols + j] = O.mul(a[pr * ncols + j], uinv);
        b[pr] = O.mul(b[pr], uinv);
        // eliminate the pivot column from the other active rows
        for (size_t i = 0; i < sys.rows; ++i) {
            if (i == pr || row_done[i]) continue;
            const WittElem& e = a[i * ncols + pc];
            if (O.is_zero(e)) continue;
            // val(e) >= pv by pivot minimality
            WittElem factor = O.div_p_exact(e, pv);
            for (size_t j = 0; j < ncols; ++j)
                a[i * ncols + j] = O.sub(a[i * ncols + j], O.mul(factor, a[pr * ncols + j]));
            b[i] = O.sub(b[i], O.mul(factor, b[pr]));
        }
        row_done[pr] = true;
        col_done[pc] = true;
        pivots.push_back({pr, pc, pv});
    }

    // rows with no pivot must have zero rhs
    for (size_t i = 0; i < sys.rows; ++i)
        if (!row_done[i] && !O.is_zero(b[i])) return std::nullopt;

    // back-substitute in reverse pivot order, free variables set to 0
    std::vector<WittElem> x(ncols, O.zero());
    for (size_t t = pivots.size(); t-- > 0;) {
        auto [r, c, v] = pivots[t];
        WittElem rhs = b[r];
        for (size_t j = 0; j < ncols; ++j) {
            if (j == c) continue;
            if (!O.is_zero(x[j])) rhs = O.sub(rhs, O.mul(a[r * ncols + j], x[j]));
        }
        if (O.val(rhs) < v) return std::nullopt;
        x[c] = O.div_p_exact(rhs, v);
    }
    x.resize(sys.cols);
    return x;
}

}  // namespace tamelift

#include "tamelift/cohomology.hpp"

#include <stdexcept>

namespace tamelift {

std::array<Fq, 4> fq2_mul(const FiniteField& k, const std::array<Fq, 4>& a,
                          const std::array<Fq, 4>& b) {
    return {k.add(k.mul(a[0], b[0]), k.mul(a[1], b[2])),
            k.add(k.mul(a[0], b[1]), k.mul(a[1], b[3])),
            k.add(k.mul(a[2], b[0]), k.mul(a[3], b[2])),
            k.add(k.mul(a[2], b[1]), k.mul(a[3], b[3]))};
}

std::array<Fq, 4> fq2_inv(const FiniteField& k, const std::array<Fq, 4>& a) {
    Fq det = k.sub(k.mul(a[0], a[3]), k.mul(a[1], a[2]));
    Fq di = k.inv(det);
    return {k.mul(a[3], di), k.mul(k.neg(a[1]), di), k.mul(k.neg(a[2]), di), k.mul(a[0], di)};
}

GModulePtr make_gmodule(FiniteField k, FqMat act_sigma, FqMat act_tau, uint64_t v) {
    if (act_sigma.rows != act_sigma.cols || act_tau.rows != act_tau.cols ||
        act_sigma.rows != act_tau.rows)
        throw std::invalid_argument("action matrices must be square of equal size");
    auto M = std::make_shared<GModule>();
    M->dim = act_sigma.rows;
    M->k = std::move(k);
    M->act_sigma = std::move(act_sigma);
    M->act_tau = std::move(act_tau);
    M->v = v;
    FqMat lhs = fq_mul(M->act_sigma, M->act_tau);
    FqMat rhs = fq_mul(fq_pow(M->act_tau, v), M->act_sigma);
    if (!(lhs == rhs)) throw std::invalid_argument("module violates the tame relation");
    return M;
}

namespace {

// expand a 2x2 matrix over the chosen basis of Ad (E11,E12,E21,E22) or
// Ad^0 (e = E12, h = E11 - E22, f = E21)
FqVec expand_mat(const FiniteField& k, const std::array<Fq, 4>& m, bool trace_zero) {
    if (!trace_zero) return {m[0], m[1], m[2], m[3]};
    Fq half = k.inv(k.from_int(2));
    Fq b = k.mul(k.sub(m[0], m[3]), half);
    return {m[1], b, m[2]};
}

std::array<Fq, 4> realize(const GModule& M, const FqVec& coords) {
    const FiniteField& k = M.k;
    std::array<Fq, 4> out = {0, 0, 0, 0};
    for (size_t i = 0; i < M.dim; ++i)
        for (int j = 0; j < 4; ++j)
            out[size_t(j)] = k.add(out[size_t(j)], k.mul(coords[i], M.basis_mats[i][size_t(j)]));
    return out;
}

}  // namespace

GModulePtr adjoint_module(const FiniteField& k, const std::array<Fq, 4>& rho_sigma,
                          const std::array<Fq, 4>& rho_tau, bool trace_zero, uint64_t v) {
    size_t dim = trace_zero ? 3 : 4;
    std::vector<std::array<Fq, 4>> basis;
    if (trace_zero) {
        basis = {{0, 1, 0, 0},         // e
                 {1, 0, 0, k.neg(1)},  // h
                 {0, 0, 1, 0}};        // f
    } else {
        basis = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    }
    auto action_of = [&](const std::array<Fq, 4>& g) {
        FqMat A(k, dim, dim);
        std::array<Fq, 4> ginv = fq2_inv(k, g);
        for (size_t j = 0; j < dim; ++j) {
            auto img = fq2_mul(k, fq2_mul(k, g, basis[j]), ginv);
            FqVec col = expand_mat(k, img, trace_zero);
            for (size_t i = 0; i < dim; ++i) A.at(i, j) = col[i];
        }
        return A;
    };
    auto M = make_gmodule(k, action_of(rho_sigma), action_of(rho_tau), v);
    const_cast<GModule&>(*M).basis_mats = std::move(basis);
    return M;
}

GModulePtr trivial_module(const FiniteField& k, size_t dim, uint64_t v) {
    return make_gmodule(k, FqMat::identity(k, dim), FqMat::identity(k, dim), v);
}

GModulePtr dual_module(const GModule& M) {
    const FiniteField& k = M.k;
    // contragredient twisted by the cyclotomic character: sigma acts by
    // v * (A_s^-1)^T, tau by (A_t^-1)^T
    auto dualize = [&](const FqMat& A) {
        FqMat Ainv = fq_inv(A);
        FqMat At(k, A.rows, A.cols);
        for (size_t i = 0; i < A.rows; ++i)
            for (size_t j = 0; j < A.cols; ++j) At.at(i, j) = Ainv.at(j, i);
        return At;
    };
    FqMat ds = fq_scale(dualize(M.act_sigma), k.from_int(int64_t(M.v % M.k.p())));
    FqMat dt = dualize(M.act_tau);
    return make_gmodule(k, std::move(ds), std::move(dt), M.v);
}

std::array<Fq, 4> Cocycle::sigma_mat() const {
    if (!mod->has_matrix_form()) throw std::logic_error("module has no matrix realization");
    return realize(*mod, val_sigma);
}

std::array<Fq, 4> Cocycle::tau_mat() const {
    if (!mod->has_matrix_form()) throw std::logic_error("module has no matrix realization");
    return realize(*mod, val_tau);
}

FqVec relator_defect(const GModule& M, const FqVec& xs, const FqVec& xt) {
    // X(s t s^-1) = X(s) + s.X(t) - (s t s^-1).X(s), with s t s^-1 acting as
    // t^v; a cocycle takes the same value on t^v, namely (sum_i t^i) X(t).
    const FiniteField& k = M.k;
    FqMat tv = fq_pow(M.act_tau, M.v);
    FqVec s_xt = fq_apply(M.act_sigma, xt);
    FqVec tv_xs = fq_apply(tv, xs);
    FqVec geo = fq_apply(fq_geom_sum(M.act_tau, M.v), xt);
    FqVec out(M.dim);
    for (size_t i = 0; i < M.dim; ++i)
        out[i] = k.sub(k.sub(k.add(xs[i], s_xt[i]), tv_xs[i]), geo[i]);
    return out;
}

bool is_cocycle(const GModule& M, const FqVec& xs, const FqVec& xt) {
    for (Fq c : relator_defect(M, xs, xt))
        if (c) return false;
    return true;
}

CocycleSpace cocycle_space(const GModulePtr& Mp) {
    const GModule& M = *Mp;
    const FiniteField& k = M.k;
    // defect is linear: (1 - A_t^v) x_s + (A_s - sum_{i<v} A_t^i) x_t
    FqMat C1 = fq_sub(FqMat::identity(k, M.dim), fq_pow(M.act_tau, M.v));
    FqMat C2 = fq_sub(M.act_sigma, fq_geom_sum(M.act_tau, M.v));
    FqMat A(k, M.dim, 2 * M.dim);
    for (size_t i = 0; i < M.dim; ++i)
        for (size_t j = 0; j < M.dim; ++j) {
            A.at(i, j) = C1.at(i, j);
            A.at(i, M.dim + j) = C2.at(i, j);
        }
    CocycleSpace S;
    S.mod = Mp;
    S.label = "Z1";
    for (auto& vec : fq_kernel(A)) {
        Cocycle c;
        c.mod = Mp;
        c.val_sigma.assign(vec.begin(), vec.begin() + long(M.dim));
        c.val_tau.assign(vec.begin() + long(M.dim), vec.end());
        if (!is_cocycle(M, c.val_sigma, c.val_tau))
            throw std::logic_error("cocycle space basis fails the relator check");
        S.basis.push_back(std::move(c));
    }
    return S;
}

CocycleSpace coboundary_space(const GModulePtr& Mp) {
    const GModule& M = *Mp;
    const FiniteField& k = M.k;
    // span of m -> ((A_s - 1)m, (A_t - 1)m)
    FqMat Ds = fq_sub(M.act_sigma, FqMat::identity(k, M.dim));
    FqMat Dt = fq_sub(M.act_tau, FqMat::identity(k, M.dim));
    std::vector<FqVec> gens;
    for (size_t j = 0; j < M.dim; ++j) {
        FqVec m(M.dim, 0);
        m[j] = 1;
        FqVec top = fq_apply(Ds, m), bot = fq_apply(Dt, m);
        FqVec both = top;
        both.insert(both.end(), bot.begin(), bot.end());
        gens.push_back(std::move(both));
    }
    CocycleSpace S;
    S.mod = Mp;
    S.label = "B1";
    for (auto& vec : fq_row_basis(k, gens)) {
        Cocycle c;
        c.mod = Mp;
        c.val_sigma.assign(vec.begin(), vec.begin() + long(M.dim));
        c.val_tau.assign(vec.begin() + long(M.dim), vec.end());
        if (!is_cocycle(M, c.val_sigma, c.val_tau))
            throw std::logic_error("coboundary fails the relator check");
        S.basis.push_back(std::move(c));
    }
    return S;
}

size_t h0_dim(const GModule& M) {
    const FiniteField& k = M.k;
    FqMat A(k, 2 * M.dim, M.dim);
    FqMat Ds = fq_sub(M.act_sigma, FqMat::identity(k, M.dim));
    FqMat Dt = fq_sub(M.act_tau, FqMat::identity(k, M.dim));
    for (size_t i = 0; i < M.dim; ++i)
        for (size_t j = 0; j < M.dim; ++j) {
            A.at(i, j) = Ds.at(i, j);
            A.at(M.dim + i, j) = Dt.at(i, j);
        }
    return fq_kernel(A).size();
}

HDims h_dims(const GModule& M, bool at_p) {
    if (at_p)
        throw std::invalid_argument(
            "dimensions at p are scenario inputs; this computation covers trivial primes only");
    HDims d;
    d.h0 = h0_dim(M);
    auto Mp = std::make_shared<GModule>(M);
    size_t z1 = cocycle_space(Mp).dim();
    size_t b1 = coboundary_space(Mp).dim();
    d.h1 = z1 - b1;
    d.h2 = h0_dim(*dual_module(M));
    if (d.h0 + d.h2 != d.h1)
        throw std::logic_error("Euler characteristic identity h0 - h1 + h2 = 0 violated");
    return d;
}

StandardCocycles standard_cocycles(const GModulePtr& ad0, uint64_t v, const WittRing& O,
                                   const WittElem& y) {
    if (ad0->dim != 3 || !ad0->has_matrix_form())
        throw std::invalid_argument("standard cocycles live on the trace-zero adjoint module");
    if (!is_trivial_prime(O.p(), v)) throw std::invalid_argument("v is not a trivial prime");
    const FiniteField& k = ad0->k;
    auto mk = [&](FqVec s, FqVec t) {
        Cocycle c;
        c.mod = ad0;
        c.val_sigma = std::move(s);
        c.val_tau = std::move(t);
        if (!is_cocycle(*ad0, c.val_sigma, c.val_tau))
            throw std::logic_error("standard cocycle fails the relator check");
        return c;
    };
    FqVec zerov(3, 0);
    // basis of Ad^0 is (e, h, f)
    StandardCocycles sc;
    sc.f1 = mk({1, 0, 0}, zerov);
    sc.f2 = mk(zerov, {1, 0, 0});
    sc.g_nr = mk({0, 0, 1}, zerov);
    // g_ram(tau) = diag(-y/(v-1), y/(v-1)) = -(y/(v-1)) h, with the quotient
    // reduced as (y/p) * ((v-1)/p)^-1 mod p; (v-1)/p is a unit since v is not
    // 1 mod p^2
    if (O.val(y) < 1)
        throw std::invalid_argument("ramification parameter y must be divisible by p");
    WittElem y_over_p = O.div_p_exact(y, 1);
    uint64_t w = (v - 1) / O.p();
    Fq wq = k.from_int(int64_t(w % O.p()));
    if (wq == 0) throw std::invalid_argument("(v-1)/p is not invertible");
    Fq scale = k.mul(O.to_residue(y_over_p), k.inv(wq));
    sc.g_ram = mk({0, 0, 1}, {0, k.neg(scale), 0});
    return sc;
}

Cocycle conjugate_cocycle(const Cocycle& c, const std::array<Fq, 4>& B) {
    const GModule& M = *c.mod;
    const FiniteField& k = M.k;
    std::array<Fq, 4> Binv = fq2_inv(k, B);
    bool trace_zero = (M.dim == 3);
    Cocycle out;
    out.mod = c.mod;
    out.val_sigma = expand_mat(k, fq2_mul(k, fq2_mul(k, B, c.sigma_mat()), Binv), trace_zero);
    out.val_tau = expand_mat(k, fq2_mul(k, fq2_mul(k, B, c.tau_mat()), Binv), trace_zero);
    if (!is_cocycle(M, out.val_sigma, out.val_tau))
        throw std::logic_error("conjugated cocycle fails the relator check");
    return out;
}

CocycleSpace conjugate_space(const CocycleSpace& S, const std::array<Fq, 4>& B,
                             const std::string& label) {
    CocycleSpace out;
    out.mod = S.mod;
    out.label = label;
    for (const auto& c : S.basis) out.basis.push_back(conjugate_cocycle(c, B));
    std::vector<FqVec> vecs;
    for (const auto& c : out.basis) {
        FqVec v = c.val_sigma;
        v.insert(v.end(), c.val_tau.begin(), c.val_tau.end());
        vecs.push_back(std::move(v));
    }
    if (fq_row_basis(S.mod->k, vecs).size() != S.basis.size())
        throw std::logic_error("conjugation did not preserve linear independence");
    return out;
}

CocycleSpace space_Q(const GModulePtr& ad0, const StandardCocycles& sc) {
    CocycleSpace S;
    S.mod = ad0;
    S.label = "Q";
    S.basis = {sc.f1, sc.f2};
    return S;
}

CocycleSpace space_P(const GModulePtr& ad0, const StandardCocycles& sc, bool ramified) {
    CocycleSpace S;
    S.mod = ad0;
    S.label = ramified ? "P_ram" : "P_nr";
    S.basis = {sc.f1, sc.f2, ramified ? sc.g_ram : sc.g_nr};
    return S;
}

CocycleSpace space_M(const GModulePtr& ad0, const StandardCocycles& sc, bool ramified) {
    std::array<Fq, 4> B =
        ramified ? std::array<Fq, 4>{0, 1, 1, 0} : std::array<Fq, 4>{1, 0, 1, 1};
    return conjugate_space(space_Q(ad0, sc), B, "M");
}

CocycleSpace space_N(const GModulePtr& ad0, const StandardCocycles& sc, bool ramified) {
    std::array<Fq, 4> B =
        ramified ? std::array<Fq, 4>{0, 1, 1, 0} : std::array<Fq, 4>{1, 0, 1, 1};
    return conjugate_space(space_P(ad0, sc, ramified), B, "N");
}

}  // namespace tamelift

#pragma once

// Group cohomology of the two-generator one-relator tame group
// < s, t | s t s^-1 = t^v > with coefficients in finite F_q-modules:
// H^0, Z^1, B^1, H^1 by exact linear algebra, H^2 through local duality,
// and the explicit cocycles spanning the local deformation tangent spaces.

#include <array>
#include <memory>

#include "tamelift/linalg.hpp"

namespace tamelift {

struct GModule;
using GModulePtr = std::shared_ptr<const GModule>;

struct GModule {
    FiniteField k;
    size_t dim = 0;
    FqMat act_sigma, act_tau;
    uint64_t v = 0;
    // realization of basis vectors as 2x2 matrices, for adjoint-type modules
    std::vector<std::array<Fq, 4>> basis_mats;

    bool has_matrix_form() const { return !basis_mats.empty(); }
};

// Validates the relation A_s A_t A_s^-1 = A_t^v.
GModulePtr make_gmodule(FiniteField k, FqMat act_sigma, FqMat act_tau, uint64_t v);

// Adjoint module of a residual representation given by the images of the two
// generators (dim 4, basis E11 E12 E21 E22), or its trace-zero submodule
// (dim 3, basis e = E12, h = E11 - E22, f = E21).
GModulePtr adjoint_module(const FiniteField& k, const std::array<Fq, 4>& rho_sigma,
                          const std::array<Fq, 4>& rho_tau, bool trace_zero, uint64_t v);
GModulePtr trivial_module(const FiniteField& k, size_t dim, uint64_t v);

// dual twisted by the mod-p cyclotomic character (sigma acts by v mod p)
GModulePtr dual_module(const GModule& M);

struct Cocycle {
    GModulePtr mod;
    FqVec val_sigma, val_tau;

    std::array<Fq, 4> sigma_mat() const;
    std::array<Fq, 4> tau_mat() const;
};

// (difference of the two routes around the relator) -- zero iff cocycle
FqVec relator_defect(const GModule& M, const FqVec& xs, const FqVec& xt);
bool is_cocycle(const GModule& M, const FqVec& xs, const FqVec& xt);

struct CocycleSpace {
    GModulePtr mod;
    std::string label;
    std::vector<Cocycle> basis;

    size_t dim() const { return basis.size(); }
};

CocycleSpace cocycle_space(const GModulePtr& M);     // Z^1
CocycleSpace coboundary_space(const GModulePtr& M);  // B^1

struct HDims {
    size_t h0 = 0, h1 = 0, h2 = 0;
};

// at_p must be false: dimensions at p are ledger inputs, never computed here
HDims h_dims(const GModule& M, bool at_p = false);
size_t h0_dim(const GModule& M);

struct StandardCocycles {
    Cocycle f1, f2, g_nr, g_ram;
};

// The four spanning cocycles over the trace-zero adjoint module with trivial
// action; y is an element of O with p | y, entering g_ram through the
// reduction of y/(v-1) = (y/p) * ((v-1)/p)^-1 mod p.
StandardCocycles standard_cocycles(const GModulePtr& ad0, uint64_t v, const WittRing& O,
                                   const WittElem& y);

Cocycle conjugate_cocycle(const Cocycle& c, const std::array<Fq, 4>& B);
CocycleSpace conjugate_space(const CocycleSpace& S, const std::array<Fq, 4>& B,
                             const std::string& label);

// Q = <f1, f2>, P = <f1, f2, g_*>, and their conjugated versions M, N
CocycleSpace space_Q(const GModulePtr& ad0, const StandardCocycles& sc);
CocycleSpace space_P(const GModulePtr& ad0, const StandardCocycles& sc, bool ramified);
CocycleSpace space_M(const GModulePtr& ad0, const StandardCocycles& sc, bool ramified);
CocycleSpace space_N(const GModulePtr& ad0, const StandardCocycles& sc, bool ramified);

// 2x2 matrix helpers over F_q
std::array<Fq, 4> fq2_mul(const FiniteField& k, const std::array<Fq, 4>& a,
                          const std::array<Fq, 4>& b);
std::array<Fq, 4> fq2_inv(const FiniteField& k, const std::array<Fq, 4>& a);

}  // namespace tamelift

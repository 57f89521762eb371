#pragma once

// Selmer/dual-Selmer dimension bookkeeping: the difference formula over a
// scenario of global h^0 data and per-place (dim L_v, h^0_v) pairs, the
// ordinary tangent-space dimension table at p, and the cross-check of the
// trivial-prime dimension table against the cohomology module.

#include <string>
#include <vector>

#include "tamelift/cohomology.hpp"

namespace tamelift {

struct PlaceRecord {
    std::string label;
    int dim_L = 0;
    int h0 = 0;
};

struct SelmerScenario {
    std::string name;
    std::string module_label;  // "Ad" or "Ad0"
    int h0_global = 0;
    int h0_global_dual = 0;
    std::vector<PlaceRecord> places;
};

// sectioned text format:
//   name = ...
//   module = Ad
//   h0_global = 1
//   h0_global_dual = 0
//   [place p]
//   dim_L = 4
//   h0 = 2
SelmerScenario parse_scenario(const std::string& text);
SelmerScenario load_scenario(const std::string& path);
std::string print_scenario(const SelmerScenario& s);

struct WilesBreakdown {
    int difference = 0;
    std::vector<std::pair<std::string, int>> contributions;  // per place dim_L - h0
};

// h0_global - h0_global_dual + sum_v (dim L_v - h0_v); requires a record for
// the archimedean place with dim_L = 0
WilesBreakdown wiles_difference(const SelmerScenario& s);

enum class OrdinaryCase { Split, Indecomposable };

struct TangentDimsAtP {
    int h1_U = 0;          // upper-triangular trace-zero coefficients
    int dim_tangent = 0;   // full ordinary tangent space
    int h0_Ad = 0;
    int h0_Ad0 = 0;
    int h0_Utilde = 0;
    int h1_Utilde = 0;     // full upper-triangular coefficients
};

TangentDimsAtP tangent_dim_p(OrdinaryCase c);

// local Euler characteristic: h^1 = h^0 + h^2 + dim M over Q_p
int euler_h1_at_p(int h0, int h2, int dimM);

struct CrosscheckRow {
    uint64_t p = 0, v = 0, q = 0;
    HDims ad, ad0;
    bool match = false;
};

struct CrosscheckReport {
    std::vector<CrosscheckRow> rows;
    bool all_match = true;
};

// computes (h0,h1,h2) for Ad and Ad0 at each configured trivial prime and
// compares against the fixed dimension table (4,8,4) / (3,6,3)
CrosscheckReport dimension_table_crosscheck(
    const std::vector<std::tuple<uint64_t, uint64_t, uint64_t>>& configs);

}  // namespace tamelift

#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "hochrr/variety.hpp"

namespace hochrr {

struct SheafError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct RankExceeded : SheafError {
    using SheafError::SheafError;
};

// A locally free sheaf on a product of projective spaces, given by transition
// data in homogeneous coordinates. Frame r of chart c carries a weight
// fw[c][r]: the trivializing frame vector transforms with the torus character
// X^{fw[c][r]}, and section components on chart c are honest functions
// (factor-degree-zero Laurent polynomials). Components transform by
// s^(c) = g[c][c'] s^(c'), and entry g[c][c'][r][s] is a monomial of exponent
// fw[c'][s] - fw[c][r]. Both directions are stored; inverses are never formed.
struct Sheaf {
    Variety X;
    int rank = 0;
    std::string name;
    std::vector<std::vector<Expo>> fw;  // [chart][frame] -> weight in Z^nvars
    // trans[c][c2] is rank x rank row-major; trans[c][c] is the identity.
    std::vector<std::vector<std::vector<LaurentPoly>>> trans;

    const LaurentPoly& g(int c, int c2, int r, int s) const {
        return trans[c][c2][r * rank + s];
    }
    friend bool operator==(const Sheaf& a, const Sheaf& b) = default;
};

using SheafPtr = std::shared_ptr<const Sheaf>;
inline SheafPtr make_sheaf(Sheaf s) { return std::make_shared<const Sheaf>(std::move(s)); }

// Structural checks: identity on the diagonal, weight homogeneity of all
// entries, cocycle condition on all chart triples, factor-degree-zero entries.
// Throws SheafError on violation. All constructors below call this.
void validate_sheaf(const Sheaf& E);

Sheaf line_bundle(const Variety& X, const std::vector<int>& d);
Sheaf cotangent(const Variety& X);

Sheaf dual_sheaf(const Sheaf& E);
Sheaf tensor_sheaf(const Sheaf& A, const Sheaf& B);
Sheaf direct_sum_sheaf(const Sheaf& A, const Sheaf& B);
Sheaf wedge_power_sheaf(const Sheaf& E, int p);
Sheaf sym_power_sheaf(const Sheaf& E, int p);
Sheaf twist_sheaf(const Sheaf& E, const std::vector<int>& d);
Sheaf hom_sheaf(const Sheaf& E, const Sheaf& F);  // Hom(E,F) = F (x) E*

inline Sheaf tangent(const Variety& X) {
    Sheaf T = dual_sheaf(cotangent(X));
    T.name = "T";
    return T;
}
Sheaf omega_p(const Variety& X, int p);  // wedge_power(cotangent, p)
inline Sheaf canonical(const Variety& X) { return omega_p(X, X.dim()); }

// JSON document {variety, rank, name, weights, transitions}; rationals as
// "p/q" strings. Round-trips bit-exactly.
std::string sheaf_to_json(const Sheaf& E);
Sheaf sheaf_from_json(const std::string& text);

}  // namespace hochrr

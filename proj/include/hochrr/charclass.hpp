#pragma once

#include <string>

#include "hochrr/cech.hpp"
#include "hochrr/series.hpp"

namespace hochrr {

// The Atiyah 1-cocycle of E with values in Hom(E, E (x) Omega^1): on U_ij the
// connection difference g_ij d(g_ji), expressed in the chart-i frame.
CechCochain atiyah_cocycle(SheafPtr E);
// i-fold composite with the Omega factors wedged: Hom(E, E (x) Omega^i),
// degree i. i = 0 gives the identity.
CechCochain at_power(SheafPtr E, int i);

// ch(E) = rank + sum_i Tr(at^i)/i!, components (i, i).
MixedClass chern_character(const Sheaf& E);
// td(X) = exp(sum_i t_i i! ch_i(Omega^1)), truncated at total degree dim.
MixedClass todd_class(const Variety& X);
// Scale the (p, q) component by the bar-involution sign (-1)^{p(p-1)/2}.
MixedClass mixed_bar(const MixedClass& m);
// integral of the top part of bar(a) ^ b.
Rat top_pairing(const MixedClass& a, const MixedClass& b);
// Componentwise equality of mixed classes up to Cech coboundary.
bool mixed_equal_up_to_coboundary(const MixedClass& a, const MixedClass& b);

// Left multiplication by a scalar-valued cochain (1x1 matrices), wedging its
// forms on the left; the front Cech face belongs to a.
CechCochain scalar_compose(const CechCochain& a, const CechCochain& b);
// Hom(S, T) (x) id_F -> Hom(S (x) F, T (x) F) on every component.
CechCochain tensor_with_identity(const CechCochain& z, SheafPtr F);
// Apply a constant matrix morphism m on the target: Hom(S, T) -> Hom(S, T').
CechCochain apply_constant_map(const std::vector<std::vector<Rat>>& m, SheafPtr new_tgt,
                               const CechCochain& z);
// Move the single form generator into an explicit cotangent tensor factor:
// Hom(S, T (x) Lambda^1) -> Hom(S, (T (x) Omega^1) (x) Lambda^0).
CechCochain form_to_tensor(const CechCochain& z);
// Move the whole form part of a scalar-valued cochain into a wedge-power
// sheaf: Hom(O, O (x) Lambda^p) -> Hom(O, Omega^p_sheaf).
CechCochain forms_to_sheaf(const CechCochain& z, SheafPtr wedge_p);

// The component L^n : Omega^p -> Omega^{p+n-1} (x) Omega^1 of the L-operator
// (Cech degree n), Leibniz-extended from at^n(Omega^1) on Omega^1. Without
// the l_n scaling.
CechCochain L_component(const Variety& X, int p, int n);

// ---------------------------------------------------------------------------
// Verifier reports

struct ComponentReport {
    int p = 0;
    int q = 0;
    int degree = 0;
    std::string status;  // success | failure | vacuous
    int dim_target = 0;
};

struct Report {
    std::string identity;
    std::string variety;
    std::vector<ComponentReport> components;

    bool ok() const;
    bool has_nonvacuous() const;
    std::string to_json() const;
};

std::string variety_name(const Variety& X);

Report verify_at_symmetry(const Variety& X);
Report verify_at_jacobi(const Variety& X);
Report verify_td_annihilation(const Variety& X);
Report verify_L_adjoint(const Variety& X);

struct HrrReport {
    std::string variety, sheaf;
    Int chi_cohomology = 0;
    Rat chi_rr = 0;
    bool equal = false;
    std::string to_json() const;
};
HrrReport hrr_verify(const Sheaf& E);

}  // namespace hochrr

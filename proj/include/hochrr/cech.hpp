#pragma once

#include <map>
#include <optional>
#include <utility>

#include "hochrr/exterior.hpp"
#include "hochrr/matrix.hpp"
#include "hochrr/sheaf.hpp"

namespace hochrr {

struct WindowOverflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotTopDegree : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CoefficientMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Sheaf trivial_sheaf(const Variety& X);

// The coefficient system of a cochain: values are sections of
// Hom(src, tgt (x) Lambda^p Omega^1), stored as tgt.rank x src.rank matrices
// of p-forms. Plain sheaf-valued cochains use a trivial src and p = 0.
struct CochainSpace {
    SheafPtr src, tgt;
    int p = 0;

    const Variety& variety() const { return tgt->X; }
    int rows() const { return tgt->rank; }
    int cols() const { return src->rank; }
};
CochainSpace sheaf_space(SheafPtr E);                       // Hom(O, E), p = 0
CochainSpace scalar_space(const Variety& X, int p);         // Hom(O, O (x) Lambda^p)
CochainSpace hom_space(SheafPtr src, SheafPtr tgt, int p);
// Same local data (rank, frame weights, transitions); names may differ.
bool same_coefficients(const Sheaf& a, const Sheaf& b);

// Torus weight of the decorated frame (r, s, form subset) on a chart.
Expo frame_weight(const CochainSpace& V, int chart, int r, int s, const std::vector<int>& form);

// A Cech q-cochain for the cover by standard charts, on strictly increasing
// chart tuples, with each component expressed in the frame of its first chart.
// Form generators are global variable indices (non-chart variables of that
// first chart).
class CechCochain {
public:
    CechCochain() = default;
    CechCochain(CochainSpace V, int q) : V_(std::move(V)), q_(q) {}

    const CochainSpace& space() const { return V_; }
    int degree() const { return q_; }
    const Variety& variety() const { return V_.variety(); }

    const std::map<std::vector<int>, std::vector<ExteriorElement>>& components() const {
        return comp_;
    }
    std::vector<ExteriorElement> component(const std::vector<int>& tuple) const;
    const ExteriorElement& entry(const std::vector<int>& tuple, int r, int s) const;
    void add_entry(const std::vector<int>& tuple, int r, int s, const ExteriorElement& v);
    bool is_zero() const;

    CechCochain& operator+=(const CechCochain& o);
    friend CechCochain operator+(CechCochain a, const CechCochain& b) { return a += b; }
    friend CechCochain operator-(const CechCochain& a, const CechCochain& b);
    friend CechCochain operator*(const Rat& c, CechCochain a);
    friend bool operator==(const CechCochain& a, const CechCochain& b);

private:
    CochainSpace V_;
    int q_ = 0;
    std::map<std::vector<int>, std::vector<ExteriorElement>> comp_;
};

// d of the function monomial c X^e on a chart, as a 1-form in that chart's
// frame: sum over non-chart j of c e_j X^{e + e_cv - e_j} omega_j.
ExteriorElement monomial_differential(const Variety& X, int chart, const Expo& e, const Rat& c);
// Re-express a form given in `from`-chart frame generators in the `to` frame.
ExteriorElement transport_form(const Variety& X, int to, int from, const ExteriorElement& form);
// Full component transport: g_tgt(to,from) . V . g_src(from,to) with the form
// parts rewritten in the `to` frame.
std::vector<ExteriorElement> transport_component(const CochainSpace& V, int to, int from,
                                                 const std::vector<ExteriorElement>& comp);

CechCochain cech_differential(const CechCochain& z);
// Identity endomorphism as a 0-cochain, the unit for compose.
CechCochain identity_cochain(SheafPtr E);
// Composition cup product: (a o b) = front-face a applied after back-face b,
// matrix product over the middle frames, form parts wedged (a's on the left).
CechCochain compose_cochains(const CechCochain& a, const CechCochain& b);
// Trace over the endomorphism indices (requires src, tgt with the same data).
CechCochain trace_cochain(const CechCochain& z);

// ---------------------------------------------------------------------------
// Weight-graded linear models

struct CechBasisElt {
    std::vector<int> tuple;
    int r, s;
    std::vector<int> form;
};

// All torus weights the graded complexes of V can touch, a box of half-width
// B + q_max + margin intersected with the per-factor degrees of V's frames.
// Throws WindowOverflow when the half-width exceeds the hard cap (default 16,
// overridable via HOCHRR_MAX_WINDOW).
std::vector<Expo> weight_window(const CochainSpace& V, int margin = 2);

std::vector<CechBasisElt> cech_basis(const CochainSpace& V, int q, const Expo& w);
ExactMatrix cech_differential_matrix(const CochainSpace& V, int q, const Expo& w);
// Coordinates of z's weight-w part; throws SheafError if that part is not in
// the span of the basis (a section illegal on some intersection).
std::vector<Rat> cech_coordinates(const CechCochain& z, const Expo& w,
                                  const std::vector<CechBasisElt>& basis);
std::vector<Expo> support_weights(const CechCochain& z);

int cohomology_dim(const CochainSpace& V, int q, int margin = 2);
int cohomology_dim(const Sheaf& E, int q, int margin = 2);
std::vector<int> cohomology_dims(const Sheaf& E, int margin = 2);  // q = 0 .. #charts-1
Int euler_characteristic(const Sheaf& E, int margin = 2);

bool is_coboundary(const CechCochain& z, int margin = 2);

// Cohomology of one (V, q) with explicit representative classes.
class CohomologySpace {
public:
    CohomologySpace(CochainSpace V, int q, int margin = 2);

    const CochainSpace& space() const { return V_; }
    int degree() const { return q_; }
    int dim() const { return dim_; }
    std::vector<CechCochain> representatives() const;
    // Class coordinates of a cocycle; nullopt when z is not a cocycle modulo
    // the stored complexes (or carries weight outside the window).
    std::optional<std::vector<Rat>> class_coordinates(const CechCochain& z) const;

private:
    struct Block {
        Expo w;
        std::vector<CechBasisElt> basis;  // degree q
        ExactMatrix prev;                 // delta_{q-1}
        std::vector<std::vector<Rat>> reps;  // cocycle vectors spanning the quotient
    };
    CochainSpace V_;
    int q_, dim_;
    std::vector<Block> blocks_;
};

// ---------------------------------------------------------------------------
// Integration

// The Atiyah-trace 1-cocycle c1(O(d)) (scalar-valued 1-form cochain).
CechCochain c1_cocycle(const Variety& X, const std::vector<int>& d);
// Integrate a scalar-valued top cochain (p = q = dim X) against the
// normalization  int of prod_f c1(O(e_f))^{n_f} = 1.
Rat integrate(const CechCochain& z, int margin = 2);

// ---------------------------------------------------------------------------
// Mixed (p, q) classes: ch, td and friends

struct MixedClass {
    Variety X;
    std::map<std::pair<int, int>, CechCochain> comp;

    MixedClass() = default;
    explicit MixedClass(Variety v) : X(std::move(v)) {}
    void add(int p, int q, const CechCochain& z);
    MixedClass& operator+=(const MixedClass& o);
    friend MixedClass operator*(const Rat& c, MixedClass m);
};
// Componentwise cup, truncated at total form degree dim X.
MixedClass mixed_cup(const MixedClass& a, const MixedClass& b);
MixedClass mixed_unit(const Variety& X);
// Integrate the (dim, dim) component (zero if absent).
Rat integrate_top(const MixedClass& m);

}  // namespace hochrr

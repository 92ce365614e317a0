#pragma once

#include <compare>
#include <map>
#include <vector>

#include "hochrr/exterior.hpp"
#include "hochrr/laurent.hpp"
#include "hochrr/matrix.hpp"

namespace hochrr {

// The affine model: A = k[x_1..x_n], reduced bar complex, Koszul resolution,
// and the HKR maps between them. Everything is computed per internal
// (polynomial) degree, which is exact because all the maps are homogeneous.

using Monomial = Expo;  // nonnegative exponents
using Poly = LaurentPoly;

inline int mon_degree(const Monomial& m) {
    int d = 0;
    for (int e : m)
        d += e;
    return d;
}

std::vector<Monomial> monomials_of_degree(int nvars, int d);
// Tuples of `len` nonconstant monomials with total degree exactly `total`.
std::vector<std::vector<Monomial>> slot_tuples(int nvars, int len, int total);

// ---------------------------------------------------------------------------
// Bar chains

// One term of the (reduced) bar complex: coefficient monomial in A (x) A and a
// tensor of nonconstant monomials. Chains with A coefficients keep `right`
// identically zero.
struct BarTerm {
    Monomial left, right;
    std::vector<Monomial> slots;
    auto operator<=>(const BarTerm&) const = default;
};

class BarChain {
public:
    BarChain() : nvars_(0) {}
    explicit BarChain(int nvars) : nvars_(nvars) {}

    static BarChain term(int nvars, BarTerm t, Rat c = 1) {
        BarChain b(nvars);
        b.add(std::move(t), std::move(c));
        return b;
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<BarTerm, Rat>& terms() const { return terms_; }

    void add(const BarTerm& t, const Rat& c) {
        if (c == 0)
            return;
        auto [it, inserted] = terms_.try_emplace(t, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    BarChain& operator+=(const BarChain& o);
    friend BarChain operator+(BarChain a, const BarChain& b) { return a += b; }
    friend BarChain operator-(const BarChain& a, const BarChain& b);
    friend BarChain operator*(const Rat& c, const BarChain& a);
    friend bool operator==(const BarChain& a, const BarChain& b) = default;

private:
    int nvars_;
    std::map<BarTerm, Rat> terms_;
};

// Bar differential. With `resolution_form` the coefficient is an A (x) A
// module element (front face multiplies into `left`, back face into `right`);
// otherwise the chain has a single A coefficient and both end faces multiply
// into `left` (the Hochschild chain complex of the commutative algebra A).
BarChain bar_differential(const BarChain& c, bool resolution_form = false);

// ---------------------------------------------------------------------------
// Koszul resolution of A over A (x) A

struct KoszulElement {
    std::vector<int> exterior;  // strictly increasing generator subset
    Monomial left, right;
};

// Basis of Lambda^i V (x) (A (x) A) in total internal degree D (variables have
// degree 1, so the A (x) A part has degree D - i).
std::vector<KoszulElement> koszul_basis(int nvars, int i, int total_degree);
// Matrix of d_i : K_i -> K_{i-1} in fixed total degree.
ExactMatrix koszul_differential(int nvars, int i, int total_degree);
// Antisymmetrization chain map K_i -> B_i (resolution form).
BarChain comparison_phi(int nvars, const KoszulElement& k);

// ---------------------------------------------------------------------------
// Hochschild cochains

// A cochain of degree i: multilinear map from i-tuples of nonconstant
// monomials to A, stored on all tuples of total degree <= cap.
class HochschildCochain {
public:
    HochschildCochain() : nvars_(0), degree_(0), cap_(0) {}
    HochschildCochain(int nvars, int degree, int cap)
        : nvars_(nvars), degree_(degree), cap_(cap) {}

    int nvars() const { return nvars_; }
    int degree() const { return degree_; }
    int cap() const { return cap_; }

    void set(const std::vector<Monomial>& tuple, const Poly& value) {
        if (!value.is_zero())
            values_[tuple] = value;
        else
            values_.erase(tuple);
    }
    // Value on a monomial tuple. Throws for tuples above the degree cap.
    Poly eval(const std::vector<Monomial>& tuple) const;

    HochschildCochain& operator+=(const HochschildCochain& o);
    friend HochschildCochain operator-(const HochschildCochain& a, const HochschildCochain& b);
    friend HochschildCochain operator*(const Rat& c, const HochschildCochain& a);
    bool is_zero() const;

    const std::map<std::vector<Monomial>, Poly>& values() const { return values_; }

private:
    int nvars_, degree_, cap_;
    std::map<std::vector<Monomial>, Poly> values_;
};

// The HKR cochain of a polyvector field: generators of the exterior element
// are read as del_1..del_n. The value on a_1 (x) ... (x) a_i is
// sum_sigma sgn(sigma) del_{sigma(1)} a_1 ... del_{sigma(i)} a_i.
HochschildCochain hkr_cochain(const ExteriorElement& polyvector, int cap);

// Dual bar differential (Hochschild cochain differential with coefficients in
// the bimodule A). Output is evaluable up to the same cap.
HochschildCochain cochain_differential(const HochschildCochain& f);

// (f u g)(a_1..a_{p+q}) = f(a_1..a_p) g(a_{p+1}..a_{p+q}).
HochschildCochain cup_product(const HochschildCochain& f, const HochschildCochain& g);

// Cap action of a cochain on a chain with A coefficients: f is applied to the
// first deg(f) slots and the value is multiplied into the module coefficient.
BarChain action_D(const HochschildCochain& f, const BarChain& c);

// epsilon(action_D(f, c)): the constant term of the resulting coefficient.
Rat hh_pairing(const HochschildCochain& f, const BarChain& c);

// The HKR chain map: a_0 (a_1 (x) ... (x) a_i) -> a_0 da_1 ^ ... ^ da_i,
// with generators of the result read as dx_1..dx_n.
ExteriorElement hkr_chain(const BarChain& c);

// ---------------------------------------------------------------------------
// Per-degree linear models of the complexes

// Basis of the degree-i cochain space in fixed internal degree m (= output
// degree - input degree) with input total degree <= cap: pairs of a slot tuple
// and an output monomial.
struct CochainBasisElement {
    std::vector<Monomial> tuple;
    Monomial output;
    auto operator<=>(const CochainBasisElement&) const = default;
};
std::vector<CochainBasisElement> cochain_basis(int nvars, int i, int internal_degree, int cap);
// Matrix of the dual bar differential C^i -> C^{i+1} on those bases.
ExactMatrix cochain_differential_matrix(int nvars, int i, int internal_degree, int cap);
// dim HH^i in internal degree m, computed from the truncated dual bar complex.
int dual_bar_cohomology_dim(int nvars, int i, int internal_degree, int cap);
// dim (Lambda^i T)_m = C(n, i) * #monomials of degree m + i.
int polyvector_dim(int nvars, int i, int internal_degree);

// Coordinates of a cochain restricted to one internal degree, in cochain_basis
// order: entry = coefficient of the output monomial on the tuple.
std::vector<Rat> cochain_coordinates(const HochschildCochain& f,
                                     const std::vector<CochainBasisElement>& basis);
// Whether f = delta(g) for some g on the same capped model, solving degreewise.
bool cochain_is_coboundary(const HochschildCochain& f);

// Basis of the A-coefficient chain complex C_i = A (x) Abar^(x)i in fixed
// total degree, and the matrix of the chain differential C_i -> C_{i-1}.
std::vector<BarTerm> chain_basis(int nvars, int i, int total_degree);
ExactMatrix chain_differential_matrix(int nvars, int i, int total_degree);

// Coordinates of a chain (all terms of tensor length i, total degree D, right
// coefficient zero) in chain_basis order.
std::vector<Rat> chain_coordinates(const BarChain& c, const std::vector<BarTerm>& basis);

}  // namespace hochrr

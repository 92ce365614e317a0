#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "hochrr/laurent.hpp"

namespace hochrr {

struct DegreeMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Merge two strictly increasing generator index sets; returns the Koszul sign,
// or 0 when they intersect. `out` receives the sorted union.
int wedge_merge(const std::vector<int>& a, const std::vector<int>& b, std::vector<int>& out);

// Sign (-1)^{i(i-1)/2} of the bar anti-involution on degree-i pieces.
inline int bar_involution_sign(int i) {
    return (i * (i - 1) / 2) % 2 == 0 ? 1 : -1;
}

// Element of the exterior algebra over LaurentPoly coefficients: a map from
// strictly increasing generator subsets to coefficients. Wedge is associative
// and graded-commutative on this representation; generators are abstract
// indices 0..g-1 (dx_i or del_i depending on use).
class ExteriorElement {
public:
    ExteriorElement() : nvars_(0) {}
    explicit ExteriorElement(int nvars) : nvars_(nvars) {}

    static ExteriorElement scalar(int nvars, LaurentPoly c) {
        ExteriorElement e(nvars);
        e.add({}, std::move(c));
        return e;
    }
    static ExteriorElement generator(int nvars, int i) {
        ExteriorElement e(nvars);
        e.add({i}, LaurentPoly::constant(nvars, 1));
        return e;
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return comps_.empty(); }
    const std::map<std::vector<int>, LaurentPoly>& components() const { return comps_; }

    void add(const std::vector<int>& subset, const LaurentPoly& c) {
        if (c.is_zero())
            return;
        auto [it, inserted] = comps_.try_emplace(subset, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                comps_.erase(it);
        }
    }

    LaurentPoly component(const std::vector<int>& subset) const {
        auto it = comps_.find(subset);
        return it == comps_.end() ? LaurentPoly(nvars_) : it->second;
    }

    // Keep only components of exterior degree d.
    ExteriorElement degree_part(int d) const;

    ExteriorElement& operator+=(const ExteriorElement& o);
    friend ExteriorElement operator+(ExteriorElement a, const ExteriorElement& b) { return a += b; }
    friend ExteriorElement operator-(const ExteriorElement& a, const ExteriorElement& b);
    friend ExteriorElement operator*(const Rat& c, ExteriorElement a);
    friend bool operator==(const ExteriorElement& a, const ExteriorElement& b) = default;

private:
    int nvars_;
    std::map<std::vector<int>, LaurentPoly> comps_;
};

ExteriorElement wedge(const ExteriorElement& a, const ExteriorElement& b);

// Interior product: contract the polyvector v into the form w, using the
// left-contraction convention: a degree-1 generator acts as the odd derivation
// with del_i . dx_j = delta_ij, and (v1^v2) . w = v1 . (v2 . w).
ExteriorElement contract(const ExteriorElement& v, const ExteriorElement& w);

// Scale the degree-i component by (-1)^{i(i-1)/2}.
ExteriorElement involution_bar(const ExteriorElement& a);

}  // namespace hochrr

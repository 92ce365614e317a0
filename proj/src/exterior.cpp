#include "hochrr/exterior.hpp"

#include <algorithm>

namespace hochrr {

int wedge_merge(const std::vector<int>& a, const std::vector<int>& b, std::vector<int>& out) {
    out.clear();
    out.reserve(a.size() + b.size());
    int sign = 1;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j])
            return 0;
        if (a[i] < b[j]) {
            out.push_back(a[i++]);
        } else {
            // b[j] jumps over the remaining entries of a
            if ((a.size() - i) % 2 == 1)
                sign = -sign;
            out.push_back(b[j++]);
        }
    }
    while (i < a.size())
        out.push_back(a[i++]);
    while (j < b.size())
        out.push_back(b[j++]);
    return sign;
}

ExteriorElement ExteriorElement::degree_part(int d) const {
    ExteriorElement r(nvars_);
    for (auto& [s, c] : comps_)
        if (static_cast<int>(s.size()) == d)
            r.add(s, c);
    return r;
}

ExteriorElement& ExteriorElement::operator+=(const ExteriorElement& o) {
    if (comps_.empty())
        nvars_ = o.nvars_;
    for (auto& [s, c] : o.comps_)
        add(s, c);
    return *this;
}

ExteriorElement operator-(const ExteriorElement& a, const ExteriorElement& b) {
    ExteriorElement r = a;
    for (auto& [s, c] : b.comps_)
        r.add(s, -c);
    return r;
}

ExteriorElement operator*(const Rat& c, ExteriorElement a) {
    ExteriorElement r(a.nvars_);
    if (c == 0)
        return r;
    for (auto& [s, p] : a.comps_)
        r.add(s, c * p);
    return r;
}

ExteriorElement wedge(const ExteriorElement& a, const ExteriorElement& b) {
    if (a.nvars() != b.nvars() && !a.is_zero() && !b.is_zero())
        throw ContextMismatch("wedge: variable context mismatch");
    ExteriorElement r(a.nvars());
    std::vector<int> merged;
    for (auto& [sa, ca] : a.components())
        for (auto& [sb, cb] : b.components()) {
            int sign = wedge_merge(sa, sb, merged);
            if (sign == 0)
                continue;
            LaurentPoly p = ca * cb;
            if (sign < 0)
                p *= Rat(-1);
            r.add(merged, p);
        }
    return r;
}

namespace {

// Contraction by a single degree-1 generator (odd derivation).
ExteriorElement contract1(int gen, const LaurentPoly& coeff, const ExteriorElement& w) {
    ExteriorElement r(w.nvars());
    for (auto& [s, c] : w.components()) {
        auto it = std::find(s.begin(), s.end(), gen);
        if (it == s.end())
            continue;
        int pos = static_cast<int>(it - s.begin());
        std::vector<int> rest;
        rest.reserve(s.size() - 1);
        for (int g : s)
            if (g != gen)
                rest.push_back(g);
        LaurentPoly p = coeff * c;
        if (pos % 2 == 1)
            p *= Rat(-1);
        r.add(rest, p);
    }
    return r;
}

}  // namespace

ExteriorElement contract(const ExteriorElement& v, const ExteriorElement& w) {
    ExteriorElement r(w.nvars());
    for (auto& [sv, cv] : v.components()) {
        // (v1 ^ ... ^ vk) . w = v1 . (v2 . ( ... (vk . w)))
        ExteriorElement cur(w.nvars());
        for (auto& [sw, cw] : w.components()) {
            if (sv.size() > sw.size())
                throw DegreeMismatch("contract: polyvector degree exceeds form degree");
            cur.add(sw, cv * cw);
        }
        for (auto it = sv.rbegin(); it != sv.rend(); ++it)
            cur = contract1(*it, LaurentPoly::constant(w.nvars(), 1), cur);
        r += cur;
    }
    return r;
}

ExteriorElement involution_bar(const ExteriorElement& a) {
    ExteriorElement r(a.nvars());
    for (auto& [s, c] : a.components()) {
        int sign = bar_involution_sign(static_cast<int>(s.size()));
        r.add(s, sign < 0 ? -c : c);
    }
    return r;
}

}  // namespace hochrr

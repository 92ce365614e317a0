#include "hochrr/hochschild.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace hochrr {

std::vector<Monomial> monomials_of_degree(int nvars, int d) {
    std::vector<Monomial> out;
    if (d < 0)
        return out;
    Monomial cur(nvars, 0);
    std::function<void(int, int)> rec = [&](int var, int rem) {
        if (var == nvars - 1) {
            cur[var] = rem;
            out.push_back(cur);
            return;
        }
        for (int e = 0; e <= rem; ++e) {
            cur[var] = e;
            rec(var + 1, rem - e);
        }
    };
    if (nvars == 0) {
        if (d == 0)
            out.push_back({});
        return out;
    }
    rec(0, d);
    return out;
}

std::vector<std::vector<Monomial>> slot_tuples(int nvars, int len, int total) {
    std::vector<std::vector<Monomial>> out;
    if (len == 0) {
        if (total == 0)
            out.push_back({});
        return out;
    }
    for (int d = 1; d <= total - (len - 1); ++d)
        for (auto& m : monomials_of_degree(nvars, d))
            for (auto& rest : slot_tuples(nvars, len - 1, total - d)) {
                std::vector<Monomial> t;
                t.reserve(len);
                t.push_back(m);
                t.insert(t.end(), rest.begin(), rest.end());
                out.push_back(std::move(t));
            }
    return out;
}

BarChain& BarChain::operator+=(const BarChain& o) {
    if (terms_.empty())
        nvars_ = o.nvars_;
    for (auto& [t, c] : o.terms_)
        add(t, c);
    return *this;
}

BarChain operator-(const BarChain& a, const BarChain& b) {
    BarChain r = a;
    for (auto& [t, c] : b.terms_)
        r.add(t, -c);
    return r;
}

BarChain operator*(const Rat& c, const BarChain& a) {
    BarChain r(a.nvars_);
    if (c == 0)
        return r;
    for (auto& [t, v] : a.terms_)
        r.add(t, c * v);
    return r;
}

BarChain bar_differential(const BarChain& c, bool resolution_form) {
    BarChain out(c.nvars());
    for (auto& [t, coef] : c.terms()) {
        int i = static_cast<int>(t.slots.size());
        if (i < 1)
            continue;
        // front face: a_1 multiplies the left coefficient
        {
            BarTerm nt = t;
            nt.left = expo_add(nt.left, t.slots.front());
            nt.slots.erase(nt.slots.begin());
            out.add(nt, coef);
        }
        // inner faces: merge adjacent slots, sign (-1)^k (k the 1-based gap)
        for (int j = 0; j + 1 < i; ++j) {
            BarTerm nt = t;
            nt.slots[j] = expo_add(t.slots[j], t.slots[j + 1]);
            nt.slots.erase(nt.slots.begin() + j + 1);
            out.add(nt, (j % 2 == 0) ? -coef : coef);
        }
        // back face: a_i multiplies the right (resolution) or left coefficient
        {
            BarTerm nt = t;
            if (resolution_form)
                nt.right = expo_add(nt.right, t.slots.back());
            else
                nt.left = expo_add(nt.left, t.slots.back());
            nt.slots.pop_back();
            out.add(nt, (i % 2 == 0) ? coef : -coef);
        }
    }
    return out;
}

std::vector<KoszulElement> koszul_basis(int nvars, int i, int total_degree) {
    std::vector<KoszulElement> out;
    if (i < 0 || i > nvars || total_degree < i)
        return out;
    // subsets of size i
    std::vector<int> subset(i);
    std::function<void(int, int)> rec = [&](int pos, int start) {
        if (pos == i) {
            for (int dl = 0; dl <= total_degree - i; ++dl)
                for (auto& l : monomials_of_degree(nvars, dl))
                    for (auto& r : monomials_of_degree(nvars, total_degree - i - dl))
                        out.push_back({subset, l, r});
            return;
        }
        for (int v = start; v < nvars; ++v) {
            subset[pos] = v;
            rec(pos + 1, v + 1);
        }
    };
    rec(0, 0);
    return out;
}

ExactMatrix koszul_differential(int nvars, int i, int total_degree) {
    auto dom = koszul_basis(nvars, i, total_degree);
    auto cod = koszul_basis(nvars, i - 1, total_degree);
    std::map<std::tuple<std::vector<int>, Monomial, Monomial>, int> index;
    for (size_t r = 0; r < cod.size(); ++r)
        index[{cod[r].exterior, cod[r].left, cod[r].right}] = static_cast<int>(r);
    ExactMatrix m(static_cast<int>(cod.size()), static_cast<int>(dom.size()));
    for (size_t col = 0; col < dom.size(); ++col) {
        const auto& k = dom[col];
        for (size_t pos = 0; pos < k.exterior.size(); ++pos) {
            int var = k.exterior[pos];
            std::vector<int> rest = k.exterior;
            rest.erase(rest.begin() + pos);
            Rat sign = (pos % 2 == 0) ? 1 : -1;
            Monomial l = k.left;
            l[var] += 1;
            m.at(index.at({rest, l, k.right}), static_cast<int>(col)) += sign;
            Monomial r = k.right;
            r[var] += 1;
            m.at(index.at({rest, k.left, r}), static_cast<int>(col)) -= sign;
        }
    }
    return m;
}

BarChain comparison_phi(int nvars, const KoszulElement& k) {
    BarChain out(nvars);
    int i = static_cast<int>(k.exterior.size());
    std::vector<int> perm(i);
    for (int j = 0; j < i; ++j)
        perm[j] = j;
    do {
        // permutation sign
        int inv = 0;
        for (int a = 0; a < i; ++a)
            for (int b = a + 1; b < i; ++b)
                if (perm[a] > perm[b])
                    ++inv;
        BarTerm t;
        t.left = k.left;
        t.right = k.right;
        for (int j = 0; j < i; ++j) {
            Monomial v(nvars, 0);
            v[k.exterior[perm[j]]] = 1;
            t.slots.push_back(std::move(v));
        }
        out.add(t, inv % 2 == 0 ? 1 : -1);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

Poly HochschildCochain::eval(const std::vector<Monomial>& tuple) const {
    int total = 0;
    for (auto& m : tuple)
        total += mon_degree(m);
    if (total > cap_)
        throw std::out_of_range("HochschildCochain::eval above degree cap");
    auto it = values_.find(tuple);
    return it == values_.end() ? Poly(nvars_) : it->second;
}

HochschildCochain& HochschildCochain::operator+=(const HochschildCochain& o) {
    cap_ = std::min(cap_, o.cap_);
    for (auto& [t, v] : o.values_) {
        auto it = values_.find(t);
        if (it == values_.end())
            values_[t] = v;
        else {
            it->second += v;
            if (it->second.is_zero())
                values_.erase(it);
        }
    }
    return *this;
}

HochschildCochain operator-(const HochschildCochain& a, const HochschildCochain& b) {
    HochschildCochain r = a;
    r += Rat(-1) * b;
    return r;
}

HochschildCochain operator*(const Rat& c, const HochschildCochain& a) {
    HochschildCochain r(a.nvars(), a.degree(), a.cap());
    if (c == 0)
        return r;
    for (auto& [t, v] : a.values())
        r.set(t, c * v);
    return r;
}

bool HochschildCochain::is_zero() const { return values_.empty(); }

namespace {

// del_j of a monomial; zero polynomial when the exponent vanishes.
std::pair<Rat, Monomial> derive(const Monomial& m, int j) {
    if (m[j] == 0)
        return {Rat(0), m};
    Monomial r = m;
    r[j] -= 1;
    return {Rat(m[j]), r};
}

}  // namespace

HochschildCochain hkr_cochain(const ExteriorElement& polyvector, int cap) {
    int nvars = polyvector.nvars();
    int degree = -1;
    for (auto& [s, c] : polyvector.components()) {
        if (degree < 0)
            degree = static_cast<int>(s.size());
        else if (degree != static_cast<int>(s.size()))
            throw DegreeMismatch("hkr_cochain: polyvector not homogeneous");
    }
    if (degree < 0)
        degree = 0;
    HochschildCochain f(nvars, degree, cap);
    if (degree == 0) {
        for (auto& [s, c] : polyvector.components())
            f.set({}, c);
        return f;
    }
    for (int total = degree; total <= cap; ++total)
        for (auto& tuple : slot_tuples(nvars, degree, total)) {
            Poly value(nvars);
            for (auto& [gens, coeff] : polyvector.components()) {
                std::vector<int> perm(degree);
                for (int j = 0; j < degree; ++j)
                    perm[j] = j;
                do {
                    int inv = 0;
                    for (int a = 0; a < degree; ++a)
                        for (int b = a + 1; b < degree; ++b)
                            if (perm[a] > perm[b])
                                ++inv;
                    Rat c = inv % 2 == 0 ? 1 : -1;
                    Monomial prod(nvars, 0);
                    for (int l = 0; l < degree && c != 0; ++l) {
                        auto [dc, dm] = derive(tuple[l], gens[perm[l]]);
                        c *= dc;
                        prod = expo_add(prod, dm);
                    }
                    if (c != 0)
                        value += Poly::monomial(nvars, prod, c) * coeff;
                } while (std::next_permutation(perm.begin(), perm.end()));
            }
            f.set(tuple, value);
        }
    return f;
}

HochschildCochain cochain_differential(const HochschildCochain& f) {
    int nvars = f.nvars();
    int i = f.degree();
    HochschildCochain df(nvars, i + 1, f.cap());
    for (int total = i + 1; total <= f.cap(); ++total)
        for (auto& rho : slot_tuples(nvars, i + 1, total)) {
            Poly value(nvars);
            {  // a_1 . f(a_2 .. a_{i+1})
                std::vector<Monomial> rest(rho.begin() + 1, rho.end());
                value += Poly::monomial(nvars, rho[0], 1) * f.eval(rest);
            }
            for (int j = 0; j + 1 <= i; ++j) {  // merge rho_j, rho_{j+1}
                std::vector<Monomial> merged = rho;
                merged[j] = expo_add(rho[j], rho[j + 1]);
                merged.erase(merged.begin() + j + 1);
                Poly v = f.eval(merged);
                value += (j % 2 == 0 ? Rat(-1) : Rat(1)) * v;
            }
            {  // (-1)^{i+1} f(a_1 .. a_i) . a_{i+1}
                std::vector<Monomial> rest(rho.begin(), rho.end() - 1);
                Poly v = f.eval(rest) * Poly::monomial(nvars, rho.back(), 1);
                value += ((i + 1) % 2 == 0 ? Rat(1) : Rat(-1)) * v;
            }
            df.set(rho, value);
        }
    return df;
}

HochschildCochain cup_product(const HochschildCochain& f, const HochschildCochain& g) {
    int nvars = f.nvars();
    int p = f.degree(), q = g.degree();
    int cap = std::min(f.cap(), g.cap());
    HochschildCochain r(nvars, p + q, cap);
    for (int total = p + q; total <= cap; ++total)
        for (auto& rho : slot_tuples(nvars, p + q, total)) {
            std::vector<Monomial> front(rho.begin(), rho.begin() + p);
            std::vector<Monomial> back(rho.begin() + p, rho.end());
            Poly v = f.eval(front) * g.eval(back);
            r.set(rho, v);
        }
    return r;
}

BarChain action_D(const HochschildCochain& f, const BarChain& c) {
    int p = f.degree();
    BarChain out(c.nvars());
    for (auto& [t, coef] : c.terms()) {
        if (p > static_cast<int>(t.slots.size()))
            throw DegreeMismatch("action_D: cochain degree exceeds tensor length");
        std::vector<Monomial> front(t.slots.begin(), t.slots.begin() + p);
        Poly v = f.eval(front);
        for (auto& [e, vc] : v.terms()) {
            BarTerm nt;
            nt.left = expo_add(t.left, e);
            nt.right = t.right;
            nt.slots.assign(t.slots.begin() + p, t.slots.end());
            out.add(nt, coef * vc);
        }
    }
    return out;
}

Rat hh_pairing(const HochschildCochain& f, const BarChain& c) {
    for (auto& [t, coef] : c.terms())
        if (f.degree() != static_cast<int>(t.slots.size()))
            throw DegreeMismatch("hh_pairing: degree must equal tensor length");
    BarChain acted = action_D(f, c);
    Rat r = 0;
    for (auto& [t, coef] : acted.terms())
        if (mon_degree(t.left) == 0 && mon_degree(t.right) == 0)
            r += coef;
    return r;
}

ExteriorElement hkr_chain(const BarChain& c) {
    int nvars = c.nvars();
    ExteriorElement out(nvars);
    for (auto& [t, coef] : c.terms()) {
        ExteriorElement form =
            ExteriorElement::scalar(nvars, Poly::monomial(nvars, t.left, coef));
        for (auto& slot : t.slots) {
            ExteriorElement d(nvars);
            for (int j = 0; j < nvars; ++j) {
                auto [dc, dm] = derive(slot, j);
                if (dc != 0)
                    d.add({j}, Poly::monomial(nvars, dm, dc));
            }
            form = wedge(form, d);
            if (form.is_zero())
                break;
        }
        out += form;
    }
    return out;
}

std::vector<CochainBasisElement> cochain_basis(int nvars, int i, int internal_degree, int cap) {
    std::vector<CochainBasisElement> out;
    for (int t = i; t <= cap; ++t) {
        int outdeg = t + internal_degree;
        if (outdeg < 0)
            continue;
        for (auto& tuple : slot_tuples(nvars, i, t))
            for (auto& mu : monomials_of_degree(nvars, outdeg))
                out.push_back({tuple, mu});
    }
    return out;
}

ExactMatrix cochain_differential_matrix(int nvars, int i, int internal_degree, int cap) {
    auto dom = cochain_basis(nvars, i, internal_degree, cap);
    auto cod = cochain_basis(nvars, i + 1, internal_degree, cap);
    std::map<CochainBasisElement, int> index;
    for (size_t r = 0; r < cod.size(); ++r)
        index[cod[r]] = static_cast<int>(r);
    ExactMatrix m(static_cast<int>(cod.size()), static_cast<int>(dom.size()));
    auto add = [&](const CochainBasisElement& row, int col, const Rat& v) {
        auto it = index.find(row);
        if (it != index.end())
            m.at(it->second, col) += v;
    };
    for (size_t col = 0; col < dom.size(); ++col) {
        const auto& [tau, mu] = dom[col];
        int t = 0;
        for (auto& s : tau)
            t += mon_degree(s);
        // front: rho = (a, tau), output a.mu
        for (int d = 1; t + d <= cap; ++d)
            for (auto& a : monomials_of_degree(nvars, d)) {
                std::vector<Monomial> rho;
                rho.push_back(a);
                rho.insert(rho.end(), tau.begin(), tau.end());
                add({rho, expo_add(a, mu)}, static_cast<int>(col), 1);
            }
        // inner: split tau_j into u.v
        for (int j = 0; j < i; ++j) {
            // enumerate proper splits of tau[j]
            std::vector<Monomial> subs;
            std::function<void(int, Monomial&)> rec = [&](int var, Monomial& cur) {
                if (var == nvars) {
                    subs.push_back(cur);
                    return;
                }
                for (int e = 0; e <= tau[j][var]; ++e) {
                    cur[var] = e;
                    rec(var + 1, cur);
                }
            };
            Monomial cur(nvars, 0);
            rec(0, cur);
            for (auto& u : subs) {
                if (mon_degree(u) == 0 || mon_degree(u) == mon_degree(tau[j]))
                    continue;
                Monomial v = expo_sub(tau[j], u);
                std::vector<Monomial> rho = tau;
                rho[j] = u;
                rho.insert(rho.begin() + j + 1, v);
                add({rho, mu}, static_cast<int>(col), j % 2 == 0 ? -1 : 1);
            }
        }
        // back: rho = (tau, a), output mu.a, sign (-1)^{i+1}
        for (int d = 1; t + d <= cap; ++d)
            for (auto& a : monomials_of_degree(nvars, d)) {
                std::vector<Monomial> rho = tau;
                rho.push_back(a);
                add({rho, expo_add(mu, a)}, static_cast<int>(col),
                    (i + 1) % 2 == 0 ? 1 : -1);
            }
    }
    return m;
}

int dual_bar_cohomology_dim(int nvars, int i, int internal_degree, int cap) {
    int dim_i = static_cast<int>(cochain_basis(nvars, i, internal_degree, cap).size());
    int rank_out = cochain_differential_matrix(nvars, i, internal_degree, cap).rank();
    int rank_in =
        i == 0 ? 0 : cochain_differential_matrix(nvars, i - 1, internal_degree, cap).rank();
    return dim_i - rank_out - rank_in;
}

int polyvector_dim(int nvars, int i, int internal_degree) {
    if (i < 0 || i > nvars)
        return 0;
    int coeff_deg = internal_degree + i;
    if (coeff_deg < 0)
        return 0;
    long binom = 1;
    for (int k = 0; k < i; ++k)
        binom = binom * (nvars - k) / (k + 1);
    return static_cast<int>(binom) *
           static_cast<int>(monomials_of_degree(nvars, coeff_deg).size());
}

std::vector<Rat> cochain_coordinates(const HochschildCochain& f,
                                     const std::vector<CochainBasisElement>& basis) {
    std::vector<Rat> v(basis.size());
    for (size_t r = 0; r < basis.size(); ++r) {
        auto it = f.values().find(basis[r].tuple);
        if (it != f.values().end())
            v[r] = it->second.coeff(basis[r].output);
    }
    return v;
}

bool cochain_is_coboundary(const HochschildCochain& f) {
    if (f.is_zero())
        return true;
    int i = f.degree();
    if (i == 0)
        return false;
    std::set<int> degrees;
    for (auto& [tuple, value] : f.values()) {
        int t = 0;
        for (auto& m : tuple)
            t += mon_degree(m);
        for (auto& [e, c] : value.terms())
            degrees.insert(mon_degree(e) - t);
    }
    for (int m : degrees) {
        auto target = cochain_basis(f.nvars(), i, m, f.cap());
        auto d = cochain_differential_matrix(f.nvars(), i - 1, m, f.cap());
        if (!d.solve(cochain_coordinates(f, target)).has_value())
            return false;
    }
    return true;
}

std::vector<BarTerm> chain_basis(int nvars, int i, int total_degree) {
    std::vector<BarTerm> out;
    for (int d0 = 0; d0 <= total_degree - i; ++d0)
        for (auto& a0 : monomials_of_degree(nvars, d0))
            for (auto& tuple : slot_tuples(nvars, i, total_degree - d0)) {
                BarTerm t;
                t.left = a0;
                t.right = Monomial(nvars, 0);
                t.slots = tuple;
                out.push_back(std::move(t));
            }
    return out;
}

ExactMatrix chain_differential_matrix(int nvars, int i, int total_degree) {
    auto dom = chain_basis(nvars, i, total_degree);
    auto cod = chain_basis(nvars, i - 1, total_degree);
    std::map<BarTerm, int> index;
    for (size_t r = 0; r < cod.size(); ++r)
        index[cod[r]] = static_cast<int>(r);
    ExactMatrix m(static_cast<int>(cod.size()), static_cast<int>(dom.size()));
    for (size_t col = 0; col < dom.size(); ++col) {
        auto d = bar_differential(BarChain::term(nvars, dom[col]), false);
        for (auto& [t, c] : d.terms())
            m.at(index.at(t), static_cast<int>(col)) += c;
    }
    return m;
}

std::vector<Rat> chain_coordinates(const BarChain& c, const std::vector<BarTerm>& basis) {
    std::map<BarTerm, int> index;
    for (size_t r = 0; r < basis.size(); ++r)
        index[basis[r]] = static_cast<int>(r);
    std::vector<Rat> v(basis.size());
    for (auto& [t, coef] : c.terms())
        v[index.at(t)] = coef;
    return v;
}

}  // namespace hochrr

#include "hochrr/charclass.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "json.hpp"

namespace hochrr {

namespace {

std::vector<std::vector<int>> increasing_tuples(int n, int len) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == len) {
            out.push_back(cur);
            return;
        }
        for (int v = start; v < n; ++v) {
            cur.push_back(v);
            rec(v + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

std::vector<int> nonchart_vars(const Variety& X, int c) {
    std::vector<int> out;
    for (int v = 0; v < X.nvars(); ++v)
        if (!X.is_chart_var(c, v))
            out.push_back(v);
    return out;
}

// Strictly increasing p-subsets of 0..n-1, lexicographic; the frame order of
// wedge powers.
std::vector<std::vector<int>> subsets(int n, int p) {
    return increasing_tuples(n, p);
}

ExteriorElement poly_form(const LaurentPoly& c) {
    return ExteriorElement::scalar(c.nvars(), c);
}

// L^n : Omega^p -> Omega^{p+n-1} (x) Omega^1 from a precomputed at^n(Omega^1).
CechCochain L_from_power(const CechCochain& A, SheafPtr Wp, SheafPtr cot, int p, int n) {
    const Variety& X = cot->X;
    int nc = cot->rank, nv = X.nvars();
    CechCochain out(hom_space(Wp, cot, std::max(p + n - 1, 0)), n);
    if (p == 0)
        return out;
    auto subs = subsets(nc, p);
    for (auto& [t, Am] : A.components()) {
        auto frame = nonchart_vars(X, t[0]);
        for (size_t si = 0; si < subs.size(); ++si) {
            const auto& S = subs[si];
            for (int k = 0; k < p; ++k) {
                int j = S[k];
                std::vector<int> rest;
                for (int x : S)
                    if (x != j)
                        rest.push_back(frame[x]);
                ExteriorElement restf(nv);
                restf.add(rest, LaurentPoly::constant(nv, 1));
                Rat sgn = ((p - 1 - k) + n * p) % 2 == 0 ? 1 : -1;
                for (int m = 0; m < nc; ++m) {
                    const ExteriorElement& av = Am[m * nc + j];
                    if (!av.is_zero())
                        out.add_entry(t, m, static_cast<int>(si), sgn * wedge(restf, av));
                }
            }
        }
    }
    return out;
}

nlohmann::json component_json(const ComponentReport& c) {
    return {{"p", c.p},
            {"degree", c.degree},
            {"status", c.status},
            {"dim_target", c.dim_target}};
}

}  // namespace

CechCochain atiyah_cocycle(SheafPtr E) {
    const Variety& X = E->X;
    int n = E->rank, nv = X.nvars();
    CechCochain out(hom_space(E, E, 1), 1);
    for (int i = 0; i < X.num_charts(); ++i)
        for (int j = i + 1; j < X.num_charts(); ++j)
            for (int r = 0; r < n; ++r)
                for (int s = 0; s < n; ++s) {
                    ExteriorElement acc(nv);
                    for (int m = 0; m < n; ++m) {
                        const LaurentPoly& gij = E->g(i, j, r, m);
                        const LaurentPoly& gji = E->g(j, i, m, s);
                        if (gij.is_zero() || gji.is_zero())
                            continue;
                        ExteriorElement dg(nv);
                        for (auto& [e, c] : gji.terms())
                            dg += monomial_differential(X, i, e, c);
                        acc += wedge(poly_form(gij), dg);
                    }
                    out.add_entry({i, j}, r, s, acc);
                }
    return out;
}

CechCochain at_power(SheafPtr E, int i) {
    CechCochain out = identity_cochain(E);
    if (i == 0)
        return out;
    CechCochain at = atiyah_cocycle(std::move(E));
    for (int k = 0; k < i; ++k)
        out = compose_cochains(out, at);
    return out;
}

MixedClass chern_character(const Sheaf& E) {
    const Variety& X = E.X;
    int nv = X.nvars();
    SheafPtr Ep = make_sheaf(E);
    MixedClass ch(X);
    CechCochain rank_part(scalar_space(X, 0), 0);
    for (int c = 0; c < X.num_charts(); ++c)
        rank_part.add_entry({c}, 0, 0,
                            ExteriorElement::scalar(nv, LaurentPoly::constant(nv, Rat(E.rank))));
    ch.add(0, 0, rank_part);
    CechCochain pw = identity_cochain(Ep);
    CechCochain at = atiyah_cocycle(Ep);
    Rat fact = 1;
    for (int i = 1; i <= X.dim(); ++i) {
        pw = compose_cochains(pw, at);
        fact *= i;
        ch.add(i, i, (Rat(1) / fact) * trace_cochain(pw));
    }
    return ch;
}

MixedClass todd_class(const Variety& X) {
    int n = X.dim();
    MixedClass ch = chern_character(cotangent(X));
    auto t = t_coefficients(std::max(n, 1));
    MixedClass S(X);
    Rat fact = 1;
    for (int i = 1; i <= n; ++i) {
        fact *= i;
        auto it = ch.comp.find({i, i});
        if (it != ch.comp.end())
            S.add(i, i, (t[i - 1] * fact) * it->second);
    }
    MixedClass td = mixed_unit(X), pw = mixed_unit(X);
    Rat kfact = 1;
    for (int k = 1; k <= n; ++k) {
        pw = mixed_cup(pw, S);
        kfact *= k;
        td += (Rat(1) / kfact) * pw;
    }
    return td;
}

MixedClass mixed_bar(const MixedClass& m) {
    MixedClass out(m.X);
    for (auto& [k, z] : m.comp)
        out.add(k.first, k.second, Rat(bar_involution_sign(k.first)) * z);
    return out;
}

Rat top_pairing(const MixedClass& a, const MixedClass& b) {
    return integrate_top(mixed_cup(mixed_bar(a), b));
}

bool mixed_equal_up_to_coboundary(const MixedClass& a, const MixedClass& b) {
    std::set<std::pair<int, int>> keys;
    for (auto& [k, z] : a.comp)
        keys.insert(k);
    for (auto& [k, z] : b.comp)
        keys.insert(k);
    for (auto& k : keys) {
        auto ia = a.comp.find(k), ib = b.comp.find(k);
        CechCochain diff;
        if (ia == a.comp.end())
            diff = Rat(-1) * ib->second;
        else if (ib == b.comp.end())
            diff = ia->second;
        else
            diff = ia->second - ib->second;
        if (diff.is_zero())
            continue;
        if (!is_coboundary(diff))
            return false;
    }
    return true;
}

CechCochain scalar_compose(const CechCochain& a, const CechCochain& b) {
    if (a.space().rows() != 1 || a.space().cols() != 1 || !(a.variety() == b.variety()))
        throw CoefficientMismatch("scalar_compose: front factor must be scalar-valued");
    const Variety& X = a.variety();
    int qa = a.degree(), qb = b.degree();
    CochainSpace V{b.space().src, b.space().tgt, a.space().p + b.space().p};
    CechCochain out(V, qa + qb);
    int R = b.space().rows(), S = b.space().cols();
    for (auto& tuple : increasing_tuples(X.num_charts(), qa + qb + 1)) {
        std::vector<int> front(tuple.begin(), tuple.begin() + qa + 1);
        std::vector<int> back(tuple.begin() + qa, tuple.end());
        auto fit = a.components().find(front);
        auto bit = b.components().find(back);
        if (fit == a.components().end() || bit == b.components().end())
            continue;
        const ExteriorElement& av = fit->second[0];
        if (av.is_zero())
            continue;
        std::vector<ExteriorElement> bval =
            transport_component(b.space(), tuple[0], back[0], bit->second);
        for (int r = 0; r < R; ++r)
            for (int s = 0; s < S; ++s)
                if (!bval[r * S + s].is_zero())
                    out.add_entry(tuple, r, s, wedge(av, bval[r * S + s]));
    }
    return out;
}

CechCochain tensor_with_identity(const CechCochain& z, SheafPtr F) {
    auto ns = make_sheaf(tensor_sheaf(*z.space().src, *F));
    auto nt = make_sheaf(tensor_sheaf(*z.space().tgt, *F));
    CechCochain out(hom_space(ns, nt, z.space().p), z.degree());
    int rf = F->rank, S = z.space().cols();
    for (auto& [t, m] : z.components())
        for (int r = 0; r < z.space().rows(); ++r)
            for (int s = 0; s < S; ++s) {
                const ExteriorElement& v = m[r * S + s];
                if (v.is_zero())
                    continue;
                for (int f = 0; f < rf; ++f)
                    out.add_entry(t, r * rf + f, s * rf + f, v);
            }
    return out;
}

CechCochain apply_constant_map(const std::vector<std::vector<Rat>>& m, SheafPtr new_tgt,
                               const CechCochain& z) {
    const Variety& X = z.variety();
    CechCochain out(hom_space(z.space().src, std::move(new_tgt), z.space().p), z.degree());
    int R = z.space().rows(), S = z.space().cols();
    int R2 = out.space().rows();
    for (auto& [t, comp] : z.components())
        for (int r2 = 0; r2 < R2; ++r2)
            for (int s = 0; s < S; ++s) {
                ExteriorElement acc(X.nvars());
                for (int r = 0; r < R; ++r)
                    if (m[r2][r] != 0)
                        acc += m[r2][r] * comp[r * S + s];
                out.add_entry(t, r2, s, acc);
            }
    return out;
}

CechCochain form_to_tensor(const CechCochain& z) {
    if (z.space().p != 1)
        throw CoefficientMismatch("form_to_tensor: need a 1-form valued cochain");
    const Variety& X = z.variety();
    auto cot = make_sheaf(cotangent(X));
    auto nt = make_sheaf(tensor_sheaf(*z.space().tgt, *cot));
    CechCochain out(hom_space(z.space().src, nt, 0), z.degree());
    int nc = cot->rank, S = z.space().cols();
    for (auto& [t, m] : z.components()) {
        auto frame = nonchart_vars(X, t[0]);
        for (int r = 0; r < z.space().rows(); ++r)
            for (int s = 0; s < S; ++s)
                for (auto& [subset, poly] : m[r * S + s].components()) {
                    auto it = std::find(frame.begin(), frame.end(), subset[0]);
                    int idx = static_cast<int>(it - frame.begin());
                    out.add_entry(t, r * nc + idx, s, poly_form(poly));
                }
    }
    return out;
}

CechCochain forms_to_sheaf(const CechCochain& z, SheafPtr wedge_p) {
    const Variety& X = z.variety();
    int p = z.space().p;
    CechCochain out(hom_space(z.space().src, std::move(wedge_p), 0), z.degree());
    auto subs = subsets(X.dim(), p);
    for (auto& [t, m] : z.components()) {
        auto frame = nonchart_vars(X, t[0]);
        std::map<std::vector<int>, int> index;
        for (size_t si = 0; si < subs.size(); ++si) {
            std::vector<int> vars;
            for (int x : subs[si])
                vars.push_back(frame[x]);
            index[vars] = static_cast<int>(si);
        }
        for (auto& [subset, poly] : m[0].components())
            out.add_entry(t, index.at(subset), 0, poly_form(poly));
    }
    return out;
}

CechCochain L_component(const Variety& X, int p, int n) {
    auto cot = make_sheaf(cotangent(X));
    auto Wp = make_sheaf(omega_p(X, p));
    return L_from_power(at_power(cot, n), Wp, cot, p, n);
}

// ---------------------------------------------------------------------------

bool Report::ok() const {
    for (auto& c : components)
        if (c.status == "failure")
            return false;
    return true;
}

bool Report::has_nonvacuous() const {
    for (auto& c : components)
        if (c.status != "vacuous")
            return true;
    return false;
}

std::string Report::to_json() const {
    nlohmann::json doc;
    doc["identity"] = identity;
    doc["variety"] = variety;
    doc["components"] = nlohmann::json::array();
    for (auto& c : components)
        doc["components"].push_back(component_json(c));
    return doc.dump(2);
}

std::string variety_name(const Variety& X) {
    std::string out;
    for (size_t f = 0; f < X.factor_dims().size(); ++f) {
        if (f > 0)
            out += "x";
        out += "P" + std::to_string(X.factor_dims()[f]);
    }
    return out;
}

Report verify_at_symmetry(const Variety& X) {
    auto cot = make_sheaf(cotangent(X));
    CechCochain at0 = form_to_tensor(atiyah_cocycle(cot));
    auto T2 = at0.space().tgt;
    int n = cot->rank;
    std::vector<std::vector<Rat>> sw(static_cast<size_t>(n) * n,
                                     std::vector<Rat>(static_cast<size_t>(n) * n, 0));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            sw[b * n + a][a * n + b] = 1;
    CechCochain diff = apply_constant_map(sw, T2, at0) - at0;
    int dt = cohomology_dim(at0.space(), 1);
    std::string status =
        dt == 0 ? "vacuous" : ((diff.is_zero() || is_coboundary(diff)) ? "success" : "failure");
    Report rep{"at-symmetry", variety_name(X), {}};
    rep.components.push_back({0, 1, 1, status, dt});
    return rep;
}

Report verify_at_jacobi(const Variety& X) {
    auto cot = make_sheaf(cotangent(X));
    CechCochain at0 = form_to_tensor(atiyah_cocycle(cot));
    CechCochain atid = tensor_with_identity(at0, cot);
    CechCochain J = compose_cochains(atid, at0);
    auto T3 = atid.space().tgt;
    int n = cot->rank, r3 = n * n * n;
    auto triple_index = [&](int a, int b, int c) { return (a * n + b) * n + c; };
    int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    CechCochain sym(hom_space(cot, T3, 0), 2);
    for (auto& perm : perms) {
        std::vector<std::vector<Rat>> m(r3, std::vector<Rat>(r3, 0));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) {
                    int t[3] = {0, 0, 0};
                    t[perm[0]] = a;
                    t[perm[1]] = b;
                    t[perm[2]] = c;
                    m[triple_index(t[0], t[1], t[2])][triple_index(a, b, c)] = 1;
                }
        sym += apply_constant_map(m, T3, J);
    }
    int dt = cohomology_dim(hom_space(cot, T3, 0), 2);
    std::string status =
        dt == 0 ? "vacuous" : ((sym.is_zero() || is_coboundary(sym)) ? "success" : "failure");
    Report rep{"at-jacobi", variety_name(X), {}};
    rep.components.push_back({0, 2, 2, status, dt});
    return rep;
}

Report verify_td_annihilation(const Variety& X) {
    int dim = X.dim();
    Report rep{"td-annihilation", variety_name(X), {}};
    MixedClass td = todd_class(X);
    auto l = l_coefficients(dim + 1);
    auto cot = make_sheaf(cotangent(X));
    CechCochain at = atiyah_cocycle(cot);
    std::vector<CechCochain> powers = {identity_cochain(cot)};
    for (int n = 1; n <= dim + 1; ++n)
        powers.push_back(compose_cochains(powers.back(), at));
    for (int p = 1; p <= dim; ++p) {
        auto Wp = make_sheaf(omega_p(X, p));
        CochainSpace tgtV = hom_space(Wp, cot, dim);
        int qdeg = dim + 1 - p;
        CechCochain total(tgtV, qdeg);
        for (int n = 0; n <= dim + 1 - p; ++n) {
            int j = dim - (p + n - 1);
            CechCochain Ln = L_from_power(powers[n], Wp, cot, p, n);
            CechCochain term;
            if (j == 0)
                term = Ln;
            else {
                auto it = td.comp.find({j, j});
                if (it == td.comp.end())
                    continue;
                term = scalar_compose(it->second, Ln);
            }
            total += l[n] * term;
        }
        int dt = cohomology_dim(tgtV, qdeg);
        std::string status =
            dt == 0 ? "vacuous"
                    : ((total.is_zero() || is_coboundary(total)) ? "success" : "failure");
        rep.components.push_back({p, qdeg, qdeg, status, dt});
    }
    return rep;
}

Report verify_L_adjoint(const Variety& X) {
    int dim = X.dim(), nch = X.num_charts();
    auto cot = make_sheaf(cotangent(X));
    auto l = l_coefficients(dim + 1);
    CechCochain at = atiyah_cocycle(cot);
    std::vector<CechCochain> powers = {identity_cochain(cot)};
    for (int n = 1; n <= dim; ++n)
        powers.push_back(compose_cochains(powers.back(), at));
    std::vector<SheafPtr> Wp;
    for (int p = 0; p <= dim; ++p)
        Wp.push_back(make_sheaf(omega_p(X, p)));

    struct Blk {
        int p, q, offset;
        CohomologySpace H;
    };
    auto build = [&](std::function<CochainSpace(int)> sp) {
        std::vector<Blk> out;
        int off = 0;
        for (int p = 0; p <= dim; ++p)
            for (int q = 0; q < nch; ++q) {
                CohomologySpace H(sp(p), q);
                if (H.dim() > 0) {
                    out.push_back({p, q, off, H});
                    off += H.dim();
                }
            }
        return out;
    };
    std::vector<Blk> V = build([&](int p) { return scalar_space(X, p); });
    std::vector<Blk> W =
        build([&](int p) { return hom_space(Wp[0], cot, p); });
    std::vector<Blk> U;
    {
        int off = 0;
        for (int q = 0; q < nch; ++q) {
            CohomologySpace H(hom_space(Wp[0], cot, dim), q);
            if (H.dim() > 0) {
                U.push_back({dim, q, off, H});
                off += H.dim();
            }
        }
    }
    auto total_dim = [](const std::vector<Blk>& bs) {
        int d = 0;
        for (auto& b : bs)
            d += b.H.dim();
        return d;
    };
    int dV = total_dim(V), dW = total_dim(W), dU = total_dim(U);

    // coordinates of a cochain inside a graded family, by (p, q) lookup
    auto coords_in = [&](const std::vector<Blk>& bs, int p, int q, const CechCochain& z,
                         std::vector<Rat>& acc) {
        if (z.is_zero())
            return;
        for (auto& b : bs)
            if (b.p == p && b.q == q) {
                auto c = b.H.class_coordinates(z);
                if (!c.has_value())
                    throw SheafError("verify_L_adjoint: class outside the graded model");
                for (int i = 0; i < b.H.dim(); ++i)
                    acc[b.offset + i] += (*c)[i];
                return;
            }
        // the class must vanish in a zero-dimensional group
        if (!is_coboundary(z))
            throw SheafError("verify_L_adjoint: nonzero class in a vanishing group");
    };

    MixedClass tdb = mixed_bar(todd_class(X));
    // matrix of wedging with bar(td) on a graded family
    auto td_matrix = [&](const std::vector<Blk>& bs) {
        int d = total_dim(bs);
        ExactMatrix m(d, d);
        for (auto& b : bs) {
            auto reps = b.H.representatives();
            for (int i = 0; i < b.H.dim(); ++i) {
                std::vector<Rat> acc(d, 0);
                for (auto& [k, z] : tdb.comp) {
                    int jp = b.p + k.first, jq = b.q + k.second;
                    if (jp > dim || jq >= nch)
                        continue;
                    coords_in(bs, jp, jq, scalar_compose(z, reps[i]), acc);
                }
                for (int r = 0; r < d; ++r)
                    m.at(r, b.offset + i) = acc[r];
            }
        }
        return m;
    };

    ExactMatrix Lmat(dW, dV);
    std::vector<std::vector<CechCochain>> Vreps;
    for (auto& b : V) {
        auto reps = b.H.representatives();
        for (int i = 0; i < b.H.dim(); ++i) {
            std::vector<Rat> acc(dW, 0);
            if (b.p > 0) {
                CechCochain zs = forms_to_sheaf(reps[i], Wp[b.p]);
                for (int n = 0; n <= dim; ++n) {
                    int pp = b.p + n - 1, qq = b.q + n;
                    if (pp > dim || qq >= nch || l[n] == 0)
                        continue;
                    CechCochain Ln = L_from_power(powers[n], Wp[b.p], cot, b.p, n);
                    coords_in(W, pp, qq, l[n] * compose_cochains(Ln, zs), acc);
                }
            }
            for (int r = 0; r < dW; ++r)
                Lmat.at(r, b.offset + i) = acc[r];
        }
        Vreps.push_back(b.H.representatives());
    }

    ExactMatrix tdV = td_matrix(V), tdW = td_matrix(W);
    auto tdV_inv = tdV.inverse();
    if (!tdV_inv.has_value())
        throw SheafError("verify_L_adjoint: td wedge is singular");
    ExactMatrix M = tdW * Lmat * (*tdV_inv);

    // pairing tensor P[u][i][k] of <v_i, w_k> in U coordinates
    std::vector<CechCochain> wreps;
    for (auto& b : W)
        for (auto& r : b.H.representatives())
            wreps.push_back(r);
    std::vector<std::pair<int, int>> wdeg, vdeg;
    std::vector<CechCochain> vreps;
    for (auto& b : W)
        for (int i = 0; i < b.H.dim(); ++i)
            wdeg.push_back({b.p, b.q});
    for (size_t bi = 0; bi < V.size(); ++bi)
        for (int i = 0; i < V[bi].H.dim(); ++i) {
            vreps.push_back(Vreps[bi][i]);
            vdeg.push_back({V[bi].p, V[bi].q});
        }
    auto pair_coords = [&](int i, int k) {
        std::vector<Rat> acc(dU, 0);
        auto [p, q] = vdeg[i];
        auto [p2, q2] = wdeg[k];
        if (p + p2 != dim || q + q2 >= nch)
            return acc;
        CechCochain prod =
            scalar_compose(Rat(bar_involution_sign(p)) * vreps[i], wreps[k]);
        for (auto& b : U)
            if (b.q == q + q2) {
                auto c = b.H.class_coordinates(prod);
                if (!c.has_value())
                    throw SheafError("verify_L_adjoint: pairing outside the model");
                for (int t = 0; t < b.H.dim(); ++t)
                    acc[b.offset + t] = (*c)[t];
                return acc;
            }
        if (!prod.is_zero() && !is_coboundary(prod))
            throw SheafError("verify_L_adjoint: pairing lands in a vanishing group");
        return acc;
    };
    std::vector<std::vector<std::vector<Rat>>> P(
        dV, std::vector<std::vector<Rat>>(dW, std::vector<Rat>(dU, 0)));
    for (int i = 0; i < dV; ++i)
        for (int k = 0; k < dW; ++k)
            P[i][k] = pair_coords(i, k);

    // componentwise check of <a, L b> = <b, (td^bar L td^bar^{-1}) a>
    Report rep{"l-adjoint", variety_name(X), {}};
    for (auto& b : V) {
        bool fail = false;
        for (int i0 = 0; i0 < b.H.dim(); ++i0) {
            int i = b.offset + i0;
            for (int j = 0; j < dV; ++j)
                for (int u = 0; u < dU; ++u) {
                    Rat lhs = 0, rhs = 0;
                    for (int k = 0; k < dW; ++k) {
                        lhs += P[i][k][u] * Lmat.at(k, j);
                        rhs += P[j][k][u] * M.at(k, i);
                    }
                    if (lhs != rhs)
                        fail = true;
                }
        }
        std::string status = b.H.dim() == 0 ? "vacuous" : (fail ? "failure" : "success");
        rep.components.push_back({b.p, b.q, b.q, status, b.H.dim()});
    }
    return rep;
}

std::string HrrReport::to_json() const {
    nlohmann::json doc;
    doc["variety"] = variety;
    doc["sheaf"] = sheaf;
    doc["chi_cohomology"] = chi_cohomology.str();
    doc["chi_rr"] = rat_str(chi_rr);
    doc["equal"] = equal;
    return doc.dump(2);
}

HrrReport hrr_verify(const Sheaf& E) {
    HrrReport rep;
    rep.variety = variety_name(E.X);
    rep.sheaf = E.name;
    rep.chi_cohomology = euler_characteristic(E);
    rep.chi_rr = integrate_top(mixed_cup(chern_character(E), todd_class(E.X)));
    rep.equal = Rat(rep.chi_cohomology) == rep.chi_rr;
    return rep;
}

}  // namespace hochrr

#include "hochrr/cech.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <set>
#include <tuple>

namespace hochrr {

namespace {

const ExteriorElement& zero_form() {
    static const ExteriorElement z(0);
    return z;
}

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

ExteriorElement poly_times(const LaurentPoly& c, const ExteriorElement& form) {
    return wedge(ExteriorElement::scalar(c.nvars(), c), form);
}

int hard_cap() {
    if (const char* env = std::getenv("HOCHRR_MAX_WINDOW"))
        return std::atoi(env);
    return 16;
}

}  // namespace

Sheaf trivial_sheaf(const Variety& X) {
    Sheaf E = line_bundle(X, std::vector<int>(X.nfactors(), 0));
    E.name = "O";
    return E;
}

CochainSpace sheaf_space(SheafPtr E) {
    return {make_sheaf(trivial_sheaf(E->X)), std::move(E), 0};
}

CochainSpace scalar_space(const Variety& X, int p) {
    SheafPtr O = make_sheaf(trivial_sheaf(X));
    return {O, O, p};
}

CochainSpace hom_space(SheafPtr src, SheafPtr tgt, int p) {
    return {std::move(src), std::move(tgt), p};
}

bool same_coefficients(const Sheaf& a, const Sheaf& b) {
    return a.X == b.X && a.rank == b.rank && a.fw == b.fw && a.trans == b.trans;
}

Expo frame_weight(const CochainSpace& V, int chart, int r, int s, const std::vector<int>& form) {
    const Variety& X = V.variety();
    Expo w = expo_sub(V.tgt->fw[chart][r], V.src->fw[chart][s]);
    for (int j : form) {
        w[j] += 1;
        w[X.chart_var_of_factor(chart, j)] -= 1;
    }
    return w;
}

std::vector<ExteriorElement> CechCochain::component(const std::vector<int>& tuple) const {
    auto it = comp_.find(tuple);
    if (it != comp_.end())
        return it->second;
    return std::vector<ExteriorElement>(static_cast<size_t>(V_.rows()) * V_.cols(),
                                        ExteriorElement(variety().nvars()));
}

const ExteriorElement& CechCochain::entry(const std::vector<int>& tuple, int r, int s) const {
    auto it = comp_.find(tuple);
    if (it == comp_.end())
        return zero_form();
    return it->second[r * V_.cols() + s];
}

void CechCochain::add_entry(const std::vector<int>& tuple, int r, int s,
                            const ExteriorElement& v) {
    if (v.is_zero())
        return;
    auto it = comp_.find(tuple);
    if (it == comp_.end())
        it = comp_.emplace(tuple, std::vector<ExteriorElement>(
                                      static_cast<size_t>(V_.rows()) * V_.cols(),
                                      ExteriorElement(variety().nvars())))
                 .first;
    it->second[r * V_.cols() + s] += v;
}

bool CechCochain::is_zero() const {
    for (auto& [t, m] : comp_)
        for (auto& e : m)
            if (!e.is_zero())
                return false;
    return true;
}

CechCochain& CechCochain::operator+=(const CechCochain& o) {
    for (auto& [t, m] : o.comp_)
        for (int r = 0; r < V_.rows(); ++r)
            for (int s = 0; s < V_.cols(); ++s)
                add_entry(t, r, s, m[r * V_.cols() + s]);
    return *this;
}

CechCochain operator-(const CechCochain& a, const CechCochain& b) {
    CechCochain r = a;
    r += Rat(-1) * b;
    return r;
}

CechCochain operator*(const Rat& c, CechCochain a) {
    if (c == 0)
        a.comp_.clear();
    else
        for (auto& [t, m] : a.comp_)
            for (auto& e : m)
                e = c * e;
    return a;
}

bool operator==(const CechCochain& a, const CechCochain& b) {
    return (a - b).is_zero();
}

ExteriorElement monomial_differential(const Variety& X, int chart, const Expo& e, const Rat& c) {
    ExteriorElement out(X.nvars());
    for (int j : nonchart_vars(X, chart)) {
        if (e[j] == 0)
            continue;
        Expo ex = e;
        ex[j] -= 1;
        ex[X.chart_var_of_factor(chart, j)] += 1;
        out.add({j}, LaurentPoly::monomial(X.nvars(), ex, c * e[j]));
    }
    return out;
}

ExteriorElement transport_form(const Variety& X, int to, int from, const ExteriorElement& form) {
    if (to == from)
        return form;
    int nv = X.nvars();
    // image of one generator omega^{from}_k in the `to` frame
    auto image = [&](int k) {
        ExteriorElement img(nv);
        int cf = X.chart_var_of_factor(to, k), cf2 = X.chart_var_of_factor(from, k);
        if (cf == cf2) {
            img.add({k}, LaurentPoly::constant(nv, 1));
            return img;
        }
        if (k != cf) {
            Expo w(nv, 0);
            w[cf] += 1;
            w[cf2] -= 1;
            img.add({k}, LaurentPoly::monomial(nv, w, 1));
        }
        Expo w2(nv, 0);
        w2[k] += 1;
        w2[cf] += 1;
        w2[cf2] -= 2;
        img.add({cf2}, LaurentPoly::monomial(nv, w2, -1));
        return img;
    };
    ExteriorElement out(nv);
    for (auto& [subset, coeff] : form.components()) {
        ExteriorElement term = ExteriorElement::scalar(nv, coeff);
        for (int k : subset) {
            term = wedge(term, image(k));
            if (term.is_zero())
                break;
        }
        out += term;
    }
    return out;
}

std::vector<ExteriorElement> transport_component(const CochainSpace& V, int to, int from,
                                                 const std::vector<ExteriorElement>& comp) {
    const Variety& X = V.variety();
    int R = V.rows(), S = V.cols(), nv = X.nvars();
    std::vector<ExteriorElement> out(static_cast<size_t>(R) * S, ExteriorElement(nv));
    for (int r2 = 0; r2 < R; ++r2)
        for (int s2 = 0; s2 < S; ++s2) {
            if (comp[r2 * S + s2].is_zero())
                continue;
            ExteriorElement mid = transport_form(X, to, from, comp[r2 * S + s2]);
            if (mid.is_zero())
                continue;
            for (int r = 0; r < R; ++r) {
                const LaurentPoly& gt = V.tgt->g(to, from, r, r2);
                if (gt.is_zero())
                    continue;
                for (int s = 0; s < S; ++s) {
                    const LaurentPoly& gs = V.src->g(from, to, s2, s);
                    if (!gs.is_zero())
                        out[r * S + s] += poly_times(gt * gs, mid);
                }
            }
        }
    return out;
}

CechCochain cech_differential(const CechCochain& z) {
    const Variety& X = z.variety();
    int q = z.degree();
    CechCochain out(z.space(), q + 1);
    for (auto& tuple : increasing_tuples(X.num_charts(), q + 2)) {
        for (int k = 0; k <= q + 1; ++k) {
            std::vector<int> face = tuple;
            face.erase(face.begin() + k);
            auto it = z.components().find(face);
            if (it == z.components().end())
                continue;
            std::vector<ExteriorElement> val = it->second;
            if (k == 0)
                val = transport_component(z.space(), tuple[0], face[0], val);
            Rat sign = (k % 2 == 0) ? 1 : -1;
            for (int r = 0; r < z.space().rows(); ++r)
                for (int s = 0; s < z.space().cols(); ++s)
                    out.add_entry(tuple, r, s, sign * val[r * z.space().cols() + s]);
        }
    }
    return out;
}

CechCochain identity_cochain(SheafPtr E) {
    const Variety& X = E->X;
    CochainSpace V{E, E, 0};
    CechCochain out(V, 0);
    for (int c = 0; c < X.num_charts(); ++c)
        for (int r = 0; r < E->rank; ++r)
            out.add_entry({c}, r, r, ExteriorElement::scalar(X.nvars(),
                                                            LaurentPoly::constant(X.nvars(), 1)));
    return out;
}

CechCochain compose_cochains(const CechCochain& a, const CechCochain& b) {
    if (!(a.variety() == b.variety()) || !same_coefficients(*a.space().src, *b.space().tgt))
        throw CoefficientMismatch("compose_cochains: middle coefficients differ");
    const Variety& X = a.variety();
    int qa = a.degree(), qb = b.degree();
    CochainSpace V{b.space().src, a.space().tgt, a.space().p + b.space().p};
    CechCochain out(V, qa + qb);
    int M = a.space().cols(), S = b.space().cols(), R = a.space().rows();
    for (auto& tuple : increasing_tuples(X.num_charts(), qa + qb + 1)) {
        std::vector<int> front(tuple.begin(), tuple.begin() + qa + 1);
        std::vector<int> back(tuple.begin() + qa, tuple.end());
        auto fit = a.components().find(front);
        auto bit = b.components().find(back);
        if (fit == a.components().end() || bit == b.components().end())
            continue;
        std::vector<ExteriorElement> bval =
            transport_component(b.space(), tuple[0], back[0], bit->second);
        for (int r = 0; r < R; ++r)
            for (int s = 0; s < S; ++s) {
                ExteriorElement acc(X.nvars());
                for (int m = 0; m < M; ++m) {
                    const ExteriorElement& av = fit->second[r * M + m];
                    const ExteriorElement& bv = bval[m * S + s];
                    if (!av.is_zero() && !bv.is_zero())
                        acc += wedge(av, bv);
                }
                out.add_entry(tuple, r, s, acc);
            }
    }
    return out;
}

CechCochain trace_cochain(const CechCochain& z) {
    if (!same_coefficients(*z.space().src, *z.space().tgt))
        throw CoefficientMismatch("trace_cochain: not an endomorphism cochain");
    const Variety& X = z.variety();
    CechCochain out(scalar_space(X, z.space().p), z.degree());
    int n = z.space().rows();
    for (auto& [t, m] : z.components()) {
        ExteriorElement acc(X.nvars());
        for (int r = 0; r < n; ++r)
            acc += m[r * n + r];
        out.add_entry(t, 0, 0, acc);
    }
    return out;
}

// ---------------------------------------------------------------------------

std::vector<Expo> weight_window(const CochainSpace& V, int margin) {
    const Variety& X = V.variety();
    int nv = X.nvars();
    auto bound = [&](const Sheaf& E) {
        int b = 0;
        for (auto& chart : E.fw)
            for (auto& w : chart)
                for (int c : w)
                    b = std::max(b, std::abs(c));
        for (auto& row : E.trans)
            for (auto& mat : row)
                for (auto& e : mat)
                    for (auto& [ex, co] : e.terms())
                        for (int c : ex)
                            b = std::max(b, std::abs(c));
        return b;
    };
    int B = bound(*V.src) + bound(*V.tgt) + (V.p > 0 ? 2 : 0);
    int M = B + (X.num_charts() - 1) + margin;
    if (M > hard_cap())
        throw WindowOverflow("weight window half-width " + std::to_string(M) +
                             " exceeds the hard cap");
    // admissible per-factor degree vectors
    std::set<std::vector<int>> pf;
    for (int r = 0; r < V.rows(); ++r)
        for (int s = 0; s < V.cols(); ++s) {
            auto dr = X.factor_degrees(V.tgt->fw[0][r]);
            auto ds = X.factor_degrees(V.src->fw[0][s]);
            std::vector<int> d(dr.size());
            for (size_t f = 0; f < d.size(); ++f)
                d[f] = dr[f] - ds[f];
            pf.insert(d);
        }
    // enumerate per-factor blocks with the prescribed sums
    std::vector<Expo> out;
    for (auto& target : pf) {
        std::vector<std::vector<Expo>> blocks;
        for (int f = 0; f < X.nfactors(); ++f) {
            int len = X.factor_dims()[f] + 1;
            std::vector<Expo> bl;
            Expo cur(len, 0);
            std::function<void(int, int)> rec = [&](int pos, int sum) {
                if (pos == len - 1) {
                    int last = target[f] - sum;
                    if (std::abs(last) <= M) {
                        cur[pos] = last;
                        bl.push_back(cur);
                    }
                    return;
                }
                for (int v = -M; v <= M; ++v) {
                    cur[pos] = v;
                    rec(pos + 1, sum + v);
                }
            };
            rec(0, 0);
            blocks.push_back(std::move(bl));
        }
        std::vector<Expo> acc = {Expo{}};
        for (auto& bl : blocks) {
            std::vector<Expo> next;
            next.reserve(acc.size() * bl.size());
            for (auto& pre : acc)
                for (auto& b : bl) {
                    Expo w = pre;
                    w.insert(w.end(), b.begin(), b.end());
                    next.push_back(std::move(w));
                }
            acc = std::move(next);
        }
        out.insert(out.end(), acc.begin(), acc.end());
    }
    return out;
}

std::vector<CechBasisElt> cech_basis(const CochainSpace& V, int q, const Expo& w) {
    const Variety& X = V.variety();
    std::vector<CechBasisElt> out;
    if (q < 0 || q + 1 > X.num_charts())
        return out;
    for (auto& tuple : increasing_tuples(X.num_charts(), q + 1)) {
        std::set<int> allowed_neg;
        for (int c : tuple)
            for (int v : X.chart_vars(c))
                allowed_neg.insert(v);
        auto nc0 = nonchart_vars(X, tuple[0]);
        std::vector<std::vector<int>> forms;
        {
            std::vector<int> cur;
            std::function<void(size_t)> rec = [&](size_t start) {
                if (static_cast<int>(cur.size()) == V.p) {
                    forms.push_back(cur);
                    return;
                }
                for (size_t i = start; i < nc0.size(); ++i) {
                    cur.push_back(nc0[i]);
                    rec(i + 1);
                    cur.pop_back();
                }
            };
            rec(0);
        }
        for (int r = 0; r < V.rows(); ++r)
            for (int s = 0; s < V.cols(); ++s)
                for (auto& form : forms) {
                    Expo a = expo_sub(w, frame_weight(V, tuple[0], r, s, form));
                    bool ok = true;
                    for (int fd : X.factor_degrees(a))
                        if (fd != 0) {
                            ok = false;
                            break;
                        }
                    for (int v = 0; ok && v < X.nvars(); ++v)
                        if (a[v] < 0 && !allowed_neg.count(v))
                            ok = false;
                    if (ok)
                        out.push_back({tuple, r, s, form});
                }
    }
    return out;
}

std::vector<Rat> cech_coordinates(const CechCochain& z, const Expo& w,
                                  const std::vector<CechBasisElt>& basis) {
    const CochainSpace& V = z.space();
    std::vector<Rat> v(basis.size());
    size_t nonzero = 0;
    for (size_t i = 0; i < basis.size(); ++i) {
        const auto& b = basis[i];
        Expo a = expo_sub(w, frame_weight(V, b.tuple[0], b.r, b.s, b.form));
        v[i] = z.entry(b.tuple, b.r, b.s).component(b.form).coeff(a);
        if (v[i] != 0)
            ++nonzero;
    }
    // every weight-w monomial of z must land in a basis slot
    size_t found = 0;
    for (auto& [t, m] : z.components())
        for (int r = 0; r < V.rows(); ++r)
            for (int s = 0; s < V.cols(); ++s)
                for (auto& [form, poly] : m[r * V.cols() + s].components())
                    for (auto& [e, c] : poly.terms())
                        if (expo_add(e, frame_weight(V, t[0], r, s, form)) == w)
                            ++found;
    if (found != nonzero)
        throw SheafError("cech_coordinates: section outside the admissible span");
    return v;
}

std::vector<Expo> support_weights(const CechCochain& z) {
    const CochainSpace& V = z.space();
    std::set<Expo> ws;
    for (auto& [t, m] : z.components())
        for (int r = 0; r < V.rows(); ++r)
            for (int s = 0; s < V.cols(); ++s)
                for (auto& [form, poly] : m[r * V.cols() + s].components())
                    for (auto& [e, c] : poly.terms())
                        ws.insert(expo_add(e, frame_weight(V, t[0], r, s, form)));
    return {ws.begin(), ws.end()};
}

ExactMatrix cech_differential_matrix(const CochainSpace& V, int q, const Expo& w) {
    auto dom = cech_basis(V, q, w);
    auto cod = cech_basis(V, q + 1, w);
    ExactMatrix m(static_cast<int>(cod.size()), static_cast<int>(dom.size()));
    if (dom.empty() || cod.empty())
        return m;
    const Variety& X = V.variety();
    int R = V.rows(), S = V.cols(), nv = X.nvars();
    std::map<std::tuple<std::vector<int>, int, int, std::vector<int>>, int> row_of;
    for (size_t i = 0; i < cod.size(); ++i)
        row_of[{cod[i].tuple, cod[i].r, cod[i].s, cod[i].form}] = static_cast<int>(i);
    for (size_t col = 0; col < dom.size(); ++col) {
        const auto& b = dom[col];
        Expo a = expo_sub(w, frame_weight(V, b.tuple[0], b.r, b.s, b.form));
        for (int c = 0; c < X.num_charts(); ++c) {
            if (std::find(b.tuple.begin(), b.tuple.end(), c) != b.tuple.end())
                continue;
            std::vector<int> tup = b.tuple;
            auto pos = std::upper_bound(tup.begin(), tup.end(), c);
            int k = static_cast<int>(pos - tup.begin());
            tup.insert(pos, c);
            Rat sign = k % 2 == 0 ? 1 : -1;
            if (k > 0) {
                // inner faces keep the frame: a single matching target slot
                auto it = row_of.find({tup, b.r, b.s, b.form});
                if (it == row_of.end())
                    throw SheafError("cech_differential_matrix: face outside the basis");
                m.at(it->second, static_cast<int>(col)) += sign;
            } else {
                // front face: transport the single entry into the new frame
                std::vector<ExteriorElement> comp(static_cast<size_t>(R) * S,
                                                  ExteriorElement(nv));
                ExteriorElement val(nv);
                val.add(b.form, LaurentPoly::monomial(nv, a, 1));
                comp[b.r * S + b.s] = val;
                auto tc = transport_component(V, c, b.tuple[0], comp);
                for (int r = 0; r < R; ++r)
                    for (int s = 0; s < S; ++s)
                        for (auto& [form2, poly] : tc[r * S + s].components())
                            for (auto& [e, cc] : poly.terms()) {
                                auto it = row_of.find({tup, r, s, form2});
                                if (it == row_of.end())
                                    throw SheafError(
                                        "cech_differential_matrix: transported term outside "
                                        "the basis");
                                m.at(it->second, static_cast<int>(col)) += sign * cc;
                            }
            }
        }
    }
    return m;
}

int cohomology_dim(const CochainSpace& V, int q, int margin) {
    int dim = 0;
    for (auto& w : weight_window(V, margin)) {
        auto basis = cech_basis(V, q, w);
        if (basis.empty())
            continue;
        int d = static_cast<int>(basis.size());
        d -= cech_differential_matrix(V, q, w).rank();
        if (q > 0)
            d -= cech_differential_matrix(V, q - 1, w).rank();
        dim += d;
    }
    return dim;
}

int cohomology_dim(const Sheaf& E, int q, int margin) {
    return cohomology_dim(sheaf_space(make_sheaf(E)), q, margin);
}

std::vector<int> cohomology_dims(const Sheaf& E, int margin) {
    CochainSpace V = sheaf_space(make_sheaf(E));
    int nq = E.X.num_charts();
    std::vector<int> dims(nq, 0);
    for (auto& w : weight_window(V, margin)) {
        std::vector<std::vector<CechBasisElt>> bases;
        bool any = false;
        for (int q = 0; q < nq; ++q) {
            bases.push_back(cech_basis(V, q, w));
            any = any || !bases.back().empty();
        }
        if (!any)
            continue;
        std::vector<int> ranks(nq, 0);
        for (int q = 0; q + 1 < nq; ++q)
            if (!bases[q].empty() && !bases[q + 1].empty())
                ranks[q] = cech_differential_matrix(V, q, w).rank();
        for (int q = 0; q < nq; ++q)
            dims[q] += static_cast<int>(bases[q].size()) - ranks[q] - (q > 0 ? ranks[q - 1] : 0);
    }
    return dims;
}

Int euler_characteristic(const Sheaf& E, int margin) {
    auto dims = cohomology_dims(E, margin);
    Int chi = 0;
    for (size_t q = 0; q < dims.size(); ++q)
        chi += (q % 2 == 0 ? 1 : -1) * Int(dims[q]);
    return chi;
}

bool is_coboundary(const CechCochain& z, int margin) {
    (void)margin;
    int q = z.degree();
    for (auto& w : support_weights(z)) {
        auto basis = cech_basis(z.space(), q, w);
        auto v = cech_coordinates(z, w, basis);
        if (q == 0) {
            for (auto& c : v)
                if (c != 0)
                    return false;
            continue;
        }
        if (!cech_differential_matrix(z.space(), q - 1, w).solve(v).has_value())
            return false;
    }
    return true;
}

CohomologySpace::CohomologySpace(CochainSpace V, int q, int margin)
    : V_(std::move(V)), q_(q), dim_(0) {
    for (auto& w : weight_window(V_, margin)) {
        auto basis = cech_basis(V_, q_, w);
        if (basis.empty())
            continue;
        auto d = cech_differential_matrix(V_, q_, w);
        auto kernel = d.kernel_basis();
        ExactMatrix prev = q_ > 0 ? cech_differential_matrix(V_, q_ - 1, w)
                                  : ExactMatrix(static_cast<int>(basis.size()), 0);
        // pick kernel vectors extending the column space of prev
        int n = static_cast<int>(basis.size());
        ExactMatrix combined(n, prev.cols() + static_cast<int>(kernel.size()));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < prev.cols(); ++j)
                combined.at(i, j) = prev.at(i, j);
        for (size_t k = 0; k < kernel.size(); ++k)
            for (int i = 0; i < n; ++i)
                combined.at(i, prev.cols() + static_cast<int>(k)) = kernel[k][i];
        std::vector<std::vector<Rat>> reps;
        for (int pc : combined.pivot_columns())
            if (pc >= prev.cols())
                reps.push_back(kernel[pc - prev.cols()]);
        dim_ += static_cast<int>(reps.size());
        blocks_.push_back({w, std::move(basis), std::move(prev), std::move(reps)});
    }
}

std::vector<CechCochain> CohomologySpace::representatives() const {
    const Variety& X = V_.variety();
    std::vector<CechCochain> out;
    for (auto& bl : blocks_)
        for (auto& vec : bl.reps) {
            CechCochain z(V_, q_);
            for (size_t i = 0; i < bl.basis.size(); ++i) {
                if (vec[i] == 0)
                    continue;
                const auto& b = bl.basis[i];
                Expo a = expo_sub(bl.w, frame_weight(V_, b.tuple[0], b.r, b.s, b.form));
                ExteriorElement val(X.nvars());
                val.add(b.form, LaurentPoly::monomial(X.nvars(), a, vec[i]));
                z.add_entry(b.tuple, b.r, b.s, val);
            }
            out.push_back(std::move(z));
        }
    return out;
}

std::optional<std::vector<Rat>> CohomologySpace::class_coordinates(const CechCochain& z) const {
    std::vector<Rat> out(dim_, Rat(0));
    std::set<Expo> remaining;
    for (auto& w : support_weights(z))
        remaining.insert(w);
    int offset = 0;
    for (auto& bl : blocks_) {
        int nreps = static_cast<int>(bl.reps.size());
        if (remaining.erase(bl.w)) {
            std::vector<Rat> v;
            try {
                v = cech_coordinates(z, bl.w, bl.basis);
            } catch (const SheafError&) {
                return std::nullopt;
            }
            int n = static_cast<int>(bl.basis.size());
            ExactMatrix solveM(n, bl.prev.cols() + nreps);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < bl.prev.cols(); ++j)
                    solveM.at(i, j) = bl.prev.at(i, j);
            for (int k = 0; k < nreps; ++k)
                for (int i = 0; i < n; ++i)
                    solveM.at(i, bl.prev.cols() + k) = bl.reps[k][i];
            auto x = solveM.solve(v);
            if (!x.has_value())
                return std::nullopt;
            for (int k = 0; k < nreps; ++k)
                out[offset + k] = (*x)[bl.prev.cols() + k];
        }
        offset += nreps;
    }
    if (!remaining.empty())
        return std::nullopt;  // support outside the window
    return out;
}

// ---------------------------------------------------------------------------

CechCochain c1_cocycle(const Variety& X, const std::vector<int>& d) {
    Sheaf L = line_bundle(X, d);
    CechCochain out(scalar_space(X, 1), 1);
    int nv = X.nvars();
    for (int i = 0; i < X.num_charts(); ++i)
        for (int j = i + 1; j < X.num_charts(); ++j) {
            Expo b = expo_sub(L.fw[i][0], L.fw[j][0]);  // exponent of g_ji
            ExteriorElement md = monomial_differential(X, i, b, 1);
            Expo minus_b = expo_sub(Expo(nv, 0), b);
            out.add_entry({i, j}, 0, 0, poly_times(LaurentPoly::monomial(nv, minus_b, 1), md));
        }
    return out;
}

Rat integrate(const CechCochain& z, int margin) {
    const Variety& X = z.variety();
    int n = X.dim();
    if (z.degree() != n || z.space().p != n || z.space().rows() != 1 || z.space().cols() != 1)
        throw NotTopDegree("integrate: need a scalar cochain with p = q = dim");
    // the normalization cocycle: product of hyperplane classes of each factor
    CechCochain gen;
    for (int f = 0; f < X.nfactors(); ++f) {
        std::vector<int> unit(X.nfactors(), 0);
        unit[f] = 1;
        CechCochain h = c1_cocycle(X, unit);
        for (int k = 0; k < X.factor_dims()[f]; ++k)
            gen = (f == 0 && k == 0) ? h : compose_cochains(gen, h);
    }
    CochainSpace top = scalar_space(X, n);
    Expo w0(X.nvars(), 0);
    Rat result = 0;
    for (auto& w : support_weights(z)) {
        auto basis = cech_basis(top, n, w);
        auto v = cech_coordinates(z, w, basis);
        auto prev = cech_differential_matrix(top, n - 1, w);
        if (w == w0) {
            auto gvec = cech_coordinates(gen, w0, basis);
            int nb = static_cast<int>(basis.size());
            ExactMatrix m(nb, prev.cols() + 1);
            for (int i = 0; i < nb; ++i) {
                for (int j = 0; j < prev.cols(); ++j)
                    m.at(i, j) = prev.at(i, j);
                m.at(i, prev.cols()) = gvec[i];
            }
            auto x = m.solve(v);
            if (!x.has_value())
                throw SheafError("integrate: cochain is not a cocycle");
            result = (*x)[prev.cols()];
        } else if (!prev.solve(v).has_value()) {
            throw SheafError("integrate: nonzero class outside the invariant weight");
        }
    }
    (void)margin;
    return result;
}

// ---------------------------------------------------------------------------

void MixedClass::add(int p, int q, const CechCochain& z) {
    if (z.is_zero())
        return;
    auto key = std::make_pair(p, q);
    auto it = comp.find(key);
    if (it == comp.end())
        comp.emplace(key, z);
    else {
        it->second += z;
        if (it->second.is_zero())
            comp.erase(it);
    }
}

MixedClass& MixedClass::operator+=(const MixedClass& o) {
    for (auto& [k, z] : o.comp)
        add(k.first, k.second, z);
    return *this;
}

MixedClass operator*(const Rat& c, MixedClass m) {
    if (c == 0) {
        m.comp.clear();
        return m;
    }
    for (auto& [k, z] : m.comp)
        z = c * z;
    return m;
}

MixedClass mixed_cup(const MixedClass& a, const MixedClass& b) {
    if (!(a.X == b.X))
        throw CoefficientMismatch("mixed_cup: different varieties");
    MixedClass out(a.X);
    int n = a.X.dim(), nc = a.X.num_charts();
    for (auto& [ka, za] : a.comp)
        for (auto& [kb, zb] : b.comp) {
            int p = ka.first + kb.first, q = ka.second + kb.second;
            if (p > n || q + 1 > nc)
                continue;
            out.add(p, q, compose_cochains(za, zb));
        }
    return out;
}

MixedClass mixed_unit(const Variety& X) {
    MixedClass out(X);
    out.add(0, 0, identity_cochain(make_sheaf(trivial_sheaf(X))));
    return out;
}

Rat integrate_top(const MixedClass& m) {
    int n = m.X.dim();
    auto it = m.comp.find({n, n});
    if (it == m.comp.end())
        return 0;
    return integrate(it->second);
}

}  // namespace hochrr

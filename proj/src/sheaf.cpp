#include "hochrr/sheaf.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "json.hpp"

namespace hochrr {

namespace {

using Matrix = std::vector<LaurentPoly>;  // rank_out x rank_in, row-major

Matrix matmul(const Matrix& a, const Matrix& b, int n, int m, int k) {
    // a is n x m, b is m x k
    Matrix r(static_cast<size_t>(n) * k, LaurentPoly(a.empty() ? 0 : a[0].nvars()));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            if (a[i * m + j].is_zero())
                continue;
            for (int l = 0; l < k; ++l)
                r[i * k + l] += a[i * m + j] * b[j * k + l];
        }
    return r;
}

LaurentPoly weight_monomial(int nvars, const Expo& w, Rat c = 1) {
    return LaurentPoly::monomial(nvars, w, std::move(c));
}

// All strictly increasing p-subsets of 0..n-1, lexicographic.
std::vector<std::vector<int>> subsets(int n, int p) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == p) {
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

// All nondecreasing p-tuples from 0..n-1, lexicographic.
std::vector<std::vector<int>> multisets(int n, int p) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == p) {
            out.push_back(cur);
            return;
        }
        for (int v = start; v < n; ++v) {
            cur.push_back(v);
            rec(v);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

LaurentPoly minor_det(const Matrix& g, int rank, const std::vector<int>& rows,
                      const std::vector<int>& cols, int nvars) {
    int p = static_cast<int>(rows.size());
    LaurentPoly det(nvars);
    std::vector<int> perm(p);
    for (int i = 0; i < p; ++i)
        perm[i] = i;
    do {
        int inv = 0;
        for (int a = 0; a < p; ++a)
            for (int b = a + 1; b < p; ++b)
                if (perm[a] > perm[b])
                    ++inv;
        LaurentPoly prod = LaurentPoly::constant(nvars, inv % 2 == 0 ? 1 : -1);
        for (int i = 0; i < p && !prod.is_zero(); ++i)
            prod = prod * g[rows[i] * rank + cols[perm[i]]];
        det += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

Sheaf skeleton(const Variety& X, int rank) {
    Sheaf E;
    E.X = X;
    E.rank = rank;
    int nc = X.num_charts();
    E.fw.assign(nc, std::vector<Expo>(rank, Expo(X.nvars(), 0)));
    E.trans.assign(nc, std::vector<Matrix>(nc, Matrix(static_cast<size_t>(rank) * rank,
                                                      LaurentPoly(X.nvars()))));
    return E;
}

}  // namespace

void validate_sheaf(const Sheaf& E) {
    const Variety& X = E.X;
    int nc = X.num_charts(), r = E.rank, nv = X.nvars();
    for (int c = 0; c < nc; ++c) {
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                const LaurentPoly& d = E.g(c, c, i, j);
                if (d != (i == j ? LaurentPoly::constant(nv, 1) : LaurentPoly(nv)))
                    throw SheafError("validate_sheaf: diagonal transition is not the identity");
            }
        for (int c2 = 0; c2 < nc; ++c2)
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j) {
                    const LaurentPoly& e = E.g(c, c2, i, j);
                    Expo want = expo_sub(E.fw[c2][j], E.fw[c][i]);
                    for (auto& [ex, co] : e.terms()) {
                        if (ex != want)
                            throw SheafError("validate_sheaf: entry weight mismatch");
                        for (int fd : X.factor_degrees(ex))
                            if (fd != 0)
                                throw SheafError("validate_sheaf: entry has nonzero degree");
                    }
                }
    }
    for (int c = 0; c < nc; ++c)
        for (int c2 = 0; c2 < nc; ++c2)
            for (int c3 = 0; c3 < nc; ++c3)
                if (matmul(E.trans[c][c2], E.trans[c2][c3], r, r, r) != E.trans[c][c3])
                    throw SheafError("validate_sheaf: cocycle condition fails");
}

Sheaf line_bundle(const Variety& X, const std::vector<int>& d) {
    if (static_cast<int>(d.size()) != X.nfactors())
        throw SheafError("line_bundle: one degree per factor required");
    Sheaf E = skeleton(X, 1);
    for (int c = 0; c < X.num_charts(); ++c) {
        Expo w(X.nvars(), 0);
        auto cv = X.chart_vars(c);
        for (int f = 0; f < X.nfactors(); ++f)
            w[cv[f]] = d[f];
        E.fw[c][0] = w;
    }
    for (int c = 0; c < X.num_charts(); ++c)
        for (int c2 = 0; c2 < X.num_charts(); ++c2)
            E.trans[c][c2][0] = weight_monomial(X.nvars(), expo_sub(E.fw[c2][0], E.fw[c][0]));
    E.name = "O(";
    for (size_t f = 0; f < d.size(); ++f)
        E.name += (f ? "," : "") + std::to_string(d[f]);
    E.name += ")";
    validate_sheaf(E);
    return E;
}

Sheaf cotangent(const Variety& X) {
    int n = X.dim(), nv = X.nvars();
    Sheaf E = skeleton(X, n);
    // frame i of chart c = d(X_v / X_chart) for the i-th non-chart variable v
    auto frames = [&](int c) {
        std::vector<int> out;
        for (int v = 0; v < nv; ++v)
            if (!X.is_chart_var(c, v))
                out.push_back(v);
        return out;
    };
    for (int c = 0; c < X.num_charts(); ++c) {
        auto fr = frames(c);
        for (int i = 0; i < n; ++i) {
            Expo w(nv, 0);
            w[fr[i]] += 1;
            w[X.chart_var_of_factor(c, fr[i])] -= 1;
            E.fw[c][i] = w;
        }
    }
    for (int c = 0; c < X.num_charts(); ++c)
        for (int c2 = 0; c2 < X.num_charts(); ++c2) {
            auto fr = frames(c), fr2 = frames(c2);
            for (int col = 0; col < n; ++col) {
                int k = fr2[col];
                int cf = X.chart_var_of_factor(c, k), cf2 = X.chart_var_of_factor(c2, k);
                // omega^{c2}_k = (X_cf/X_cf2) omega^c_k - (X_k X_cf/X_cf2^2) omega^c_{cf2}
                for (int row = 0; row < n; ++row) {
                    int j = fr[row];
                    Expo w(nv, 0);
                    if (cf == cf2) {
                        if (j == k)
                            E.trans[c][c2][row * n + col] = LaurentPoly::constant(nv, 1);
                        continue;
                    }
                    if (j == k && k != cf) {
                        w[cf] += 1;
                        w[cf2] -= 1;
                        E.trans[c][c2][row * n + col] += weight_monomial(nv, w);
                    }
                    if (j == cf2) {
                        Expo w2(nv, 0);
                        w2[k] += 1;
                        w2[cf] += 1;
                        w2[cf2] -= 2;
                        E.trans[c][c2][row * n + col] += weight_monomial(nv, w2, -1);
                    }
                }
            }
        }
    E.name = "Omega^1";
    validate_sheaf(E);
    return E;
}

Sheaf dual_sheaf(const Sheaf& E) {
    Sheaf D = skeleton(E.X, E.rank);
    int r = E.rank;
    for (int c = 0; c < E.X.num_charts(); ++c)
        for (int i = 0; i < r; ++i)
            D.fw[c][i] = expo_sub(Expo(E.X.nvars(), 0), E.fw[c][i]);
    for (int c = 0; c < E.X.num_charts(); ++c)
        for (int c2 = 0; c2 < E.X.num_charts(); ++c2)
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j)
                    D.trans[c][c2][i * r + j] = E.g(c2, c, j, i);
    D.name = "dual(" + E.name + ")";
    validate_sheaf(D);
    return D;
}

Sheaf tensor_sheaf(const Sheaf& A, const Sheaf& B) {
    if (!(A.X == B.X))
        throw SheafError("tensor_sheaf: different varieties");
    int ra = A.rank, rb = B.rank, r = ra * rb;
    Sheaf E = skeleton(A.X, r);
    for (int c = 0; c < A.X.num_charts(); ++c)
        for (int i = 0; i < ra; ++i)
            for (int j = 0; j < rb; ++j)
                E.fw[c][i * rb + j] = expo_add(A.fw[c][i], B.fw[c][j]);
    for (int c = 0; c < A.X.num_charts(); ++c)
        for (int c2 = 0; c2 < A.X.num_charts(); ++c2)
            for (int i = 0; i < ra; ++i)
                for (int j = 0; j < rb; ++j)
                    for (int i2 = 0; i2 < ra; ++i2)
                        for (int j2 = 0; j2 < rb; ++j2)
                            E.trans[c][c2][(i * rb + j) * r + (i2 * rb + j2)] =
                                A.g(c, c2, i, i2) * B.g(c, c2, j, j2);
    E.name = "(" + A.name + " (x) " + B.name + ")";
    validate_sheaf(E);
    return E;
}

Sheaf direct_sum_sheaf(const Sheaf& A, const Sheaf& B) {
    if (!(A.X == B.X))
        throw SheafError("direct_sum_sheaf: different varieties");
    int ra = A.rank, rb = B.rank, r = ra + rb;
    Sheaf E = skeleton(A.X, r);
    for (int c = 0; c < A.X.num_charts(); ++c) {
        for (int i = 0; i < ra; ++i)
            E.fw[c][i] = A.fw[c][i];
        for (int j = 0; j < rb; ++j)
            E.fw[c][ra + j] = B.fw[c][j];
    }
    for (int c = 0; c < A.X.num_charts(); ++c)
        for (int c2 = 0; c2 < A.X.num_charts(); ++c2) {
            for (int i = 0; i < ra; ++i)
                for (int i2 = 0; i2 < ra; ++i2)
                    E.trans[c][c2][i * r + i2] = A.g(c, c2, i, i2);
            for (int j = 0; j < rb; ++j)
                for (int j2 = 0; j2 < rb; ++j2)
                    E.trans[c][c2][(ra + j) * r + (ra + j2)] = B.g(c, c2, j, j2);
        }
    E.name = "(" + A.name + " + " + B.name + ")";
    validate_sheaf(E);
    return E;
}

Sheaf wedge_power_sheaf(const Sheaf& E, int p) {
    if (p < 0 || p > E.rank)
        throw RankExceeded("wedge_power_sheaf: power outside 0..rank");
    auto frames = subsets(E.rank, p);
    int r = static_cast<int>(frames.size());
    Sheaf W = skeleton(E.X, r);
    int nv = E.X.nvars();
    for (int c = 0; c < E.X.num_charts(); ++c)
        for (int i = 0; i < r; ++i) {
            Expo w(nv, 0);
            for (int v : frames[i])
                w = expo_add(w, E.fw[c][v]);
            W.fw[c][i] = w;
        }
    for (int c = 0; c < E.X.num_charts(); ++c)
        for (int c2 = 0; c2 < E.X.num_charts(); ++c2)
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j)
                    W.trans[c][c2][i * r + j] =
                        minor_det(E.trans[c][c2], E.rank, frames[i], frames[j], nv);
    W.name = "wedge^" + std::to_string(p) + "(" + E.name + ")";
    validate_sheaf(W);
    return W;
}

Sheaf sym_power_sheaf(const Sheaf& E, int p) {
    if (p < 0)
        throw RankExceeded("sym_power_sheaf: negative power");
    auto frames = multisets(E.rank, p);
    int r = static_cast<int>(frames.size());
    std::map<std::vector<int>, int> index;
    for (int i = 0; i < r; ++i)
        index[frames[i]] = i;
    Sheaf S = skeleton(E.X, r);
    int nv = E.X.nvars();
    for (int c = 0; c < E.X.num_charts(); ++c)
        for (int i = 0; i < r; ++i) {
            Expo w(nv, 0);
            for (int v : frames[i])
                w = expo_add(w, E.fw[c][v]);
            S.fw[c][i] = w;
        }
    for (int c = 0; c < E.X.num_charts(); ++c)
        for (int c2 = 0; c2 < E.X.num_charts(); ++c2)
            for (int j = 0; j < r; ++j) {
                // expand prod_k (sum_v g[v][t_k] e_v) over assignments
                const auto& T = frames[j];
                std::vector<int> assign(p, 0);
                std::function<void(int, LaurentPoly, std::vector<int>&)> rec =
                    [&](int k, LaurentPoly acc, std::vector<int>& rows) {
                        if (acc.is_zero())
                            return;
                        if (k == p) {
                            std::vector<int> srt = rows;
                            std::sort(srt.begin(), srt.end());
                            S.trans[c][c2][index.at(srt) * r + j] += acc;
                            return;
                        }
                        for (int v = 0; v < E.rank; ++v) {
                            rows.push_back(v);
                            rec(k + 1, acc * E.g(c, c2, v, T[k]), rows);
                            rows.pop_back();
                        }
                    };
                std::vector<int> rows;
                rec(0, LaurentPoly::constant(nv, 1), rows);
            }
    S.name = "sym^" + std::to_string(p) + "(" + E.name + ")";
    validate_sheaf(S);
    return S;
}

Sheaf twist_sheaf(const Sheaf& E, const std::vector<int>& d) {
    Sheaf T = tensor_sheaf(E, line_bundle(E.X, d));
    T.name = E.name + "(";
    for (size_t f = 0; f < d.size(); ++f)
        T.name += (f ? "," : "") + std::to_string(d[f]);
    T.name += ")";
    return T;
}

Sheaf hom_sheaf(const Sheaf& E, const Sheaf& F) {
    Sheaf H = tensor_sheaf(F, dual_sheaf(E));
    H.name = "Hom(" + E.name + ", " + F.name + ")";
    return H;
}

Sheaf omega_p(const Variety& X, int p) {
    Sheaf W = wedge_power_sheaf(cotangent(X), p);
    W.name = p == X.dim() ? "omega" : "Omega^" + std::to_string(p);
    return W;
}

std::string sheaf_to_json(const Sheaf& E) {
    nlohmann::json j;
    j["variety"] = E.X.factor_dims();
    j["rank"] = E.rank;
    j["name"] = E.name;
    j["weights"] = E.fw;
    auto& tr = j["transitions"] = nlohmann::json::array();
    for (auto& row : E.trans) {
        auto jrow = nlohmann::json::array();
        for (auto& mat : row) {
            auto jmat = nlohmann::json::array();
            for (auto& entry : mat) {
                auto jentry = nlohmann::json::array();
                for (auto& [e, c] : entry.terms())
                    jentry.push_back({{"e", e}, {"c", rat_str(c)}});
                jmat.push_back(std::move(jentry));
            }
            jrow.push_back(std::move(jmat));
        }
        tr.push_back(std::move(jrow));
    }
    return j.dump(2);
}

Sheaf sheaf_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    Variety X(j.at("variety").get<std::vector<int>>());
    Sheaf E = skeleton(X, j.at("rank").get<int>());
    E.name = j.at("name").get<std::string>();
    E.fw = j.at("weights").get<std::vector<std::vector<Expo>>>();
    auto& tr = j.at("transitions");
    for (size_t c = 0; c < tr.size(); ++c)
        for (size_t c2 = 0; c2 < tr[c].size(); ++c2)
            for (size_t k = 0; k < tr[c][c2].size(); ++k) {
                LaurentPoly p(X.nvars());
                for (auto& term : tr[c][c2][k])
                    p.add_term(term.at("e").get<Expo>(), rat_parse(term.at("c").get<std::string>()));
                E.trans[c][c2][k] = std::move(p);
            }
    validate_sheaf(E);
    return E;
}

}  // namespace hochrr

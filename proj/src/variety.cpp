#include "hochrr/variety.hpp"

#include <algorithm>
#include <stdexcept>

namespace hochrr {

Variety::Variety(std::vector<int> dims) : dims_(std::move(dims)) {
    if (dims_.empty())
        throw std::invalid_argument("Variety: need at least one factor");
    int off = 0;
    for (int d : dims_) {
        if (d < 1)
            throw std::invalid_argument("Variety: factor dimension must be >= 1");
        offset_.push_back(off);
        off += d + 1;
    }
    // charts: all per-factor picks, lexicographic
    charts_.push_back(std::vector<int>(dims_.size(), 0));
    for (size_t f = dims_.size(); f-- > 0;) {
        std::vector<std::vector<int>> next;
        for (int j = 0; j <= dims_[f]; ++j)
            for (auto c : charts_) {
                c[f] = j;
                next.push_back(std::move(c));
            }
        charts_ = std::move(next);
    }
    // restore lexicographic order
    std::sort(charts_.begin(), charts_.end());
}

Variety Variety::product(const Variety& a, const Variety& b) {
    std::vector<int> dims = a.dims_;
    dims.insert(dims.end(), b.dims_.begin(), b.dims_.end());
    return Variety(std::move(dims));
}

int Variety::dim() const {
    int d = 0;
    for (int n : dims_)
        d += n;
    return d;
}

int Variety::nvars() const {
    return offset_.back() + dims_.back() + 1;
}

int Variety::var_factor(int v) const {
    for (int f = nfactors() - 1; f >= 0; --f)
        if (v >= offset_[f])
            return f;
    throw std::out_of_range("Variety::var_factor");
}

std::vector<int> Variety::chart_vars(int c) const {
    std::vector<int> out;
    for (int f = 0; f < nfactors(); ++f)
        out.push_back(var_index(f, charts_[c][f]));
    return out;
}

bool Variety::is_chart_var(int c, int v) const {
    int f = var_factor(v);
    return v == var_index(f, charts_[c][f]);
}

int Variety::chart_var_of_factor(int c, int v) const {
    int f = var_factor(v);
    return var_index(f, charts_[c][f]);
}

std::vector<int> Variety::factor_degrees(const Expo& e) const {
    std::vector<int> out(nfactors(), 0);
    for (int v = 0; v < nvars(); ++v)
        out[var_factor(v)] += e[v];
    return out;
}

std::vector<std::string> Variety::var_names() const {
    std::vector<std::string> out;
    for (int f = 0; f < nfactors(); ++f)
        for (int j = 0; j <= dims_[f]; ++j)
            out.push_back(nfactors() == 1 ? "X" + std::to_string(j)
                                          : "X" + std::to_string(f) + "_" + std::to_string(j));
    return out;
}

}  // namespace hochrr

#pragma once

#include <string>
#include <vector>

#include "hochrr/laurent.hpp"

namespace hochrr {

// A finite product of projective spaces, presented through its homogeneous
// coordinates: factor f of dimension n_f contributes the n_f + 1 variables
// X_{f,0} .. X_{f,n_f}. Charts pick one nonvanishing variable per factor;
// sections and transition matrices live in the Laurent ring of all variables.
class Variety {
public:
    Variety() = default;
    explicit Variety(std::vector<int> dims);

    static Variety projective_space(int n) { return Variety({n}); }
    static Variety product(const Variety& a, const Variety& b);

    int nfactors() const { return static_cast<int>(dims_.size()); }
    int dim() const;
    int nvars() const;
    const std::vector<int>& factor_dims() const { return dims_; }

    int var_index(int f, int j) const { return offset_[f] + j; }
    int var_factor(int v) const;

    // All charts, lexicographic in the per-factor picks.
    const std::vector<std::vector<int>>& charts() const { return charts_; }
    int num_charts() const { return static_cast<int>(charts_.size()); }
    // Flattened indices of the variables a chart inverts, one per factor.
    std::vector<int> chart_vars(int c) const;
    bool is_chart_var(int c, int v) const;
    // The chart variable of v's factor in chart c.
    int chart_var_of_factor(int c, int v) const;

    // Per-factor total degrees of an exponent vector.
    std::vector<int> factor_degrees(const Expo& e) const;

    std::vector<std::string> var_names() const;

    friend bool operator==(const Variety& a, const Variety& b) {
        return a.dims_ == b.dims_;
    }

private:
    std::vector<int> dims_, offset_;
    std::vector<std::vector<int>> charts_;
};

}  // namespace hochrr

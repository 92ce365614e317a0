#pragma once

#include <stdexcept>
#include <vector>

#include "hochrr/rational.hpp"

namespace hochrr {

struct SeriesError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Truncated univariate power series over Rat. Coefficients are indexed
// 0..order(); arithmetic never reads beyond the truncation order, and
// operations on mismatched orders truncate to the minimum.
class FormalSeries {
public:
    FormalSeries() : coeff_(1) {}
    explicit FormalSeries(int order) : coeff_(order + 1) {
        if (order < 0)
            throw SeriesError("FormalSeries: negative order");
    }
    FormalSeries(std::vector<Rat> coeff) : coeff_(std::move(coeff)) {
        if (coeff_.empty())
            coeff_.resize(1);
    }

    int order() const { return static_cast<int>(coeff_.size()) - 1; }
    const Rat& operator[](int i) const { return coeff_[i]; }
    Rat& operator[](int i) { return coeff_[i]; }
    const std::vector<Rat>& coefficients() const { return coeff_; }

    FormalSeries truncated(int n) const;

    friend FormalSeries operator+(const FormalSeries& a, const FormalSeries& b);
    friend FormalSeries operator-(const FormalSeries& a, const FormalSeries& b);
    friend FormalSeries operator*(const FormalSeries& a, const FormalSeries& b);
    friend FormalSeries operator*(const Rat& c, const FormalSeries& a);
    friend bool operator==(const FormalSeries& a, const FormalSeries& b) = default;

private:
    std::vector<Rat> coeff_;
};

// Division; b must have an invertible (nonzero) constant term.
FormalSeries series_div(const FormalSeries& a, const FormalSeries& b);
// exp of a series with zero constant term.
FormalSeries series_exp(const FormalSeries& a);
// log of a series with constant term 1.
FormalSeries series_log(const FormalSeries& a);
// a(b(z)); b must have zero constant term.
FormalSeries series_compose(const FormalSeries& a, const FormalSeries& b);

// Coefficients l_0..l_N of z/(e^z - 1).
std::vector<Rat> l_coefficients(int N);
// Coefficients t_1..t_N of log(z/(e^z - 1)); t_0 = 0 is omitted.
std::vector<Rat> t_coefficients(int N);

}  // namespace hochrr

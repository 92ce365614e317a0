#include "hochrr/series.hpp"

#include <algorithm>

namespace hochrr {

FormalSeries FormalSeries::truncated(int n) const {
    FormalSeries r(std::min(n, order()));
    for (int i = 0; i <= r.order(); ++i)
        r[i] = coeff_[i];
    return r;
}

FormalSeries operator+(const FormalSeries& a, const FormalSeries& b) {
    FormalSeries r(std::min(a.order(), b.order()));
    for (int i = 0; i <= r.order(); ++i)
        r[i] = a[i] + b[i];
    return r;
}

FormalSeries operator-(const FormalSeries& a, const FormalSeries& b) {
    FormalSeries r(std::min(a.order(), b.order()));
    for (int i = 0; i <= r.order(); ++i)
        r[i] = a[i] - b[i];
    return r;
}

FormalSeries operator*(const FormalSeries& a, const FormalSeries& b) {
    FormalSeries r(std::min(a.order(), b.order()));
    for (int i = 0; i <= r.order(); ++i)
        for (int j = 0; i + j <= r.order() && j <= b.order(); ++j)
            if (i <= a.order())
                r[i + j] += a[i] * b[j];
    return r;
}

FormalSeries operator*(const Rat& c, const FormalSeries& a) {
    FormalSeries r = a;
    for (int i = 0; i <= r.order(); ++i)
        r[i] *= c;
    return r;
}

FormalSeries series_div(const FormalSeries& a, const FormalSeries& b) {
    if (b[0] == 0)
        throw SeriesError("series_div: non-invertible constant term");
    int N = std::min(a.order(), b.order());
    FormalSeries q(N);
    for (int n = 0; n <= N; ++n) {
        Rat s = n <= a.order() ? a[n] : Rat(0);
        for (int k = 0; k < n; ++k)
            s -= q[k] * b[n - k];
        q[n] = s / b[0];
    }
    return q;
}

FormalSeries series_exp(const FormalSeries& a) {
    if (a[0] != 0)
        throw SeriesError("series_exp: constant term must be 0");
    int N = a.order();
    // e' = a' e  =>  n e_n = sum_{k>=1} k a_k e_{n-k}
    FormalSeries e(N);
    e[0] = 1;
    for (int n = 1; n <= N; ++n) {
        Rat s = 0;
        for (int k = 1; k <= n; ++k)
            s += Rat(k) * a[k] * e[n - k];
        e[n] = s / n;
    }
    return e;
}

FormalSeries series_log(const FormalSeries& a) {
    if (a[0] != 1)
        throw SeriesError("series_log: constant term must be 1");
    int N = a.order();
    // l' = a'/a  =>  n a_0 l_n = n a_n - sum_{k=1}^{n-1} k l_k a_{n-k}
    FormalSeries l(N);
    for (int n = 1; n <= N; ++n) {
        Rat s = Rat(n) * a[n];
        for (int k = 1; k < n; ++k)
            s -= Rat(k) * l[k] * a[n - k];
        l[n] = s / n;
    }
    return l;
}

FormalSeries series_compose(const FormalSeries& a, const FormalSeries& b) {
    if (b[0] != 0)
        throw SeriesError("series_compose: inner constant term must be 0");
    int N = std::min(a.order(), b.order());
    FormalSeries r(N), p(N);
    p[0] = 1;
    r[0] = a[0];
    for (int k = 1; k <= N; ++k) {
        p = (p * b).truncated(N);
        if (k <= a.order())
            r = r + a[k] * p;
    }
    return r;
}

std::vector<Rat> l_coefficients(int N) {
    if (N < 0)
        throw SeriesError("l_coefficients: negative order");
    // Solve ((e^z-1)/z) * L(z) = 1 term by term; (e^z-1)/z has coefficients 1/(n+1)!.
    FormalSeries g(N);
    Rat f = 1;
    for (int n = 0; n <= N; ++n) {
        f *= n + 1;
        g[n] = Rat(1) / f;
    }
    FormalSeries one(N);
    one[0] = 1;
    return series_div(one, g).coefficients();
}

std::vector<Rat> t_coefficients(int N) {
    if (N < 1)
        throw SeriesError("t_coefficients: order must be >= 1");
    FormalSeries L(l_coefficients(N));
    auto t = series_log(L).coefficients();
    t.erase(t.begin());  // t_0 = 0 omitted
    return t;
}

}  // namespace hochrr

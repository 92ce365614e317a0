#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hochrr/rational.hpp"

namespace hochrr {

// Exponent vector; entries may be negative (Laurent).
using Expo = std::vector<int>;

struct ContextMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Expo expo_add(const Expo& a, const Expo& b) {
    Expo r = a;
    for (size_t i = 0; i < r.size(); ++i)
        r[i] += b[i];
    return r;
}

inline Expo expo_sub(const Expo& a, const Expo& b) {
    Expo r = a;
    for (size_t i = 0; i < r.size(); ++i)
        r[i] -= b[i];
    return r;
}

// Multivariate Laurent polynomial over Rat. Terms are kept in a sorted map
// keyed by exponent vector; zero coefficients are never stored.
class LaurentPoly {
public:
    LaurentPoly() : nvars_(0) {}
    explicit LaurentPoly(int nvars) : nvars_(nvars) {}

    static LaurentPoly monomial(int nvars, Expo e, Rat c) {
        LaurentPoly p(nvars);
        if (c != 0)
            p.terms_.emplace(std::move(e), std::move(c));
        return p;
    }
    static LaurentPoly constant(int nvars, Rat c) {
        return monomial(nvars, Expo(nvars, 0), std::move(c));
    }
    static LaurentPoly variable(int nvars, int i, int power = 1) {
        Expo e(nvars, 0);
        e[i] = power;
        return monomial(nvars, std::move(e), 1);
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Expo, Rat>& terms() const { return terms_; }

    void add_term(const Expo& e, const Rat& c) {
        if (c == 0)
            return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    // Coefficient of a given exponent vector (0 if absent).
    Rat coeff(const Expo& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly& operator*=(const Rat& c);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator*(const Rat& c, LaurentPoly a) { return a *= c; }
    friend LaurentPoly operator-(const LaurentPoly& a) {
        LaurentPoly r = a;
        return r *= Rat(-1);
    }
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) = default;

    // Multiply by a single monomial.
    LaurentPoly shifted(const Expo& e) const;

    std::string str(const std::vector<std::string>& names) const;

private:
    int nvars_;
    std::map<Expo, Rat> terms_;
};

}  // namespace hochrr

#include "doctest.h"
#include "hochrr/laurent.hpp"

#include <random>

using namespace hochrr;

namespace {

LaurentPoly random_poly(std::mt19937& rng, int nvars) {
    std::uniform_int_distribution<int> e(-3, 3), c(-5, 5), nt(0, 4);
    LaurentPoly p(nvars);
    int terms = nt(rng);
    for (int t = 0; t < terms; ++t) {
        Expo ex(nvars);
        for (auto& v : ex)
            v = e(rng);
        p.add_term(ex, Rat(c(rng)));
    }
    return p;
}

}  // namespace

TEST_CASE("basic arithmetic") {
    auto x = LaurentPoly::variable(2, 0);
    auto y = LaurentPoly::variable(2, 1);
    auto p = (x + y) * (x - y);
    CHECK(p.coeff({2, 0}) == 1);
    CHECK(p.coeff({0, 2}) == -1);
    CHECK(p.coeff({1, 1}) == 0);
    CHECK((p - p).is_zero());
}

TEST_CASE("negative exponents") {
    auto xinv = LaurentPoly::variable(1, 0, -1);
    auto x = LaurentPoly::variable(1, 0);
    auto one = LaurentPoly::constant(1, 1);
    CHECK(xinv * x == one);
    CHECK(one.shifted({-2}).coeff({-2}) == 1);
}

TEST_CASE("ring laws on random inputs") {
    std::mt19937 rng(13);
    for (int t = 0; t < 40; ++t) {
        auto a = random_poly(rng, 3), b = random_poly(rng, 3), c = random_poly(rng, 3);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("no zero terms stored") {
    LaurentPoly p(1);
    p.add_term({1}, Rat(2));
    p.add_term({1}, Rat(-2));
    CHECK(p.terms().empty());
}

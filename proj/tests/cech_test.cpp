#include "doctest.h"
#include "hochrr/cech.hpp"

#include <random>

using namespace hochrr;

namespace {

// closed forms for H^q(P^n, O(d))
int h0_line(int n, int d) {
    if (d < 0)
        return 0;
    long b = 1;
    for (int k = 1; k <= n; ++k)
        b = b * (d + k) / k;
    return static_cast<int>(b);
}
int hn_line(int n, int d) { return h0_line(n, -d - n - 1); }

CechCochain random_cochain(std::mt19937& rng, const CochainSpace& V, int q) {
    const Variety& X = V.variety();
    std::uniform_int_distribution<int> coeff(-3, 3), expo(-2, 2), pick(0, 3);
    CechCochain z(V, q);
    std::vector<int> tuple;
    for (int c = 0; c < X.num_charts() && static_cast<int>(tuple.size()) < q + 1; ++c)
        if (pick(rng) > 0 || X.num_charts() - c == q + 1 - static_cast<int>(tuple.size()))
            tuple.push_back(c);
    std::vector<int> frame_vars;
    for (int v = 0; v < X.nvars(); ++v)
        if (!X.is_chart_var(tuple[0], v))
            frame_vars.push_back(v);
    for (int r = 0; r < V.rows(); ++r)
        for (int s = 0; s < V.cols(); ++s) {
            ExteriorElement val(X.nvars());
            std::vector<int> subset;
            for (int v : frame_vars)
                if (static_cast<int>(subset.size()) < V.p && pick(rng) > 1)
                    subset.push_back(v);
            while (static_cast<int>(subset.size()) < V.p)
                for (int v : frame_vars)
                    if (std::find(subset.begin(), subset.end(), v) == subset.end() &&
                        static_cast<int>(subset.size()) < V.p)
                        subset.push_back(v);
            std::sort(subset.begin(), subset.end());
            Expo e(X.nvars());
            for (auto& x : e)
                x = expo(rng);
            val.add(subset, LaurentPoly::monomial(X.nvars(), e, Rat(coeff(rng))));
            z.add_entry(tuple, r, s, val);
        }
    return z;
}

}  // namespace

TEST_CASE("variety combinatorics") {
    auto P2 = Variety::projective_space(2);
    CHECK(P2.num_charts() == 3);
    CHECK(P2.dim() == 2);
    CHECK(P2.nvars() == 3);
    auto P1P1 = Variety::product(Variety::projective_space(1), Variety::projective_space(1));
    CHECK(P1P1.num_charts() == 4);
    CHECK(P1P1.dim() == 2);
    CHECK(P1P1.nvars() == 4);
    CHECK(P1P1.chart_vars(0) == std::vector<int>{0, 2});
    CHECK(P1P1.factor_degrees({1, 2, -1, 0}) == std::vector<int>{3, -1});
}

TEST_CASE("sheaf constructors validate and compose") {
    for (int n = 1; n <= 3; ++n) {
        auto X = Variety::projective_space(n);
        CHECK_NOTHROW(line_bundle(X, {2}));
        CHECK_NOTHROW(cotangent(X));
        CHECK_NOTHROW(tangent(X));
        CHECK_NOTHROW(canonical(X));
    }
    auto X = Variety::product(Variety::projective_space(1), Variety::projective_space(1));
    CHECK_NOTHROW(cotangent(X));
    CHECK_NOTHROW(line_bundle(X, {2, -1}));
    // dual(dual(E)) has E's transitions
    auto E = cotangent(Variety::projective_space(2));
    auto DD = dual_sheaf(dual_sheaf(E));
    CHECK(DD.trans == E.trans);
    CHECK(DD.fw == E.fw);
    CHECK_THROWS_AS(wedge_power_sheaf(E, 3), RankExceeded);
}

TEST_CASE("line bundle cohomology matches closed forms") {
    for (int n = 1; n <= 2; ++n) {
        auto X = Variety::projective_space(n);
        for (int d = -4; d <= 4; ++d) {
            auto dims = cohomology_dims(line_bundle(X, {d}));
            CHECK(dims[0] == h0_line(n, d));
            CHECK(dims[n] == hn_line(n, d));
            for (int q = 1; q < n; ++q)
                CHECK(dims[q] == 0);
        }
    }
    auto P3 = Variety::projective_space(3);
    auto dims = cohomology_dims(line_bundle(P3, {-5}));
    CHECK(dims == std::vector<int>{0, 0, 0, h0_line(3, 1)});
    dims = cohomology_dims(line_bundle(P3, {2}));
    CHECK(dims == std::vector<int>{10, 0, 0, 0});
    // named spot checks
    auto P2 = Variety::projective_space(2);
    CHECK(cohomology_dim(line_bundle(P2, {2}), 0) == 6);
    CHECK(cohomology_dim(line_bundle(P2, {-4}), 2) == 3);
    CHECK(cohomology_dims(trivial_sheaf(P2)) == std::vector<int>{1, 0, 0});
}

TEST_CASE("cotangent and canonical bundle cohomology") {
    auto P1 = Variety::projective_space(1);
    // Omega^1_{P1} = O(-2)
    CHECK(cohomology_dims(cotangent(P1)) == std::vector<int>{0, 1});
    CHECK(euler_characteristic(cotangent(P1)) == -1);
    auto P2 = Variety::projective_space(2);
    // omega_{P2} = O(-3)
    CHECK(cohomology_dims(canonical(P2)) == std::vector<int>{0, 0, 1});
    // Hodge diagonal of P2: h^q(Omega^p) = delta_{pq}
    CHECK(cohomology_dims(cotangent(P2)) == std::vector<int>{0, 1, 0});
    CHECK(euler_characteristic(tangent(P2)) == 8);
    auto P1P1 = Variety::product(P1, P1);
    CHECK(cohomology_dims(cotangent(P1P1)) == std::vector<int>{0, 2, 0, 0});
    CHECK(cohomology_dims(canonical(P1P1)) == std::vector<int>{0, 0, 1, 0});
}

TEST_CASE("products: line bundle Euler characteristics") {
    auto X = Variety::product(Variety::projective_space(1), Variety::projective_space(1));
    for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= 2; ++b)
            CHECK(euler_characteristic(line_bundle(X, {a, b})) == Int((a + 1) * (b + 1)));
}

TEST_CASE("cech differential squares to zero") {
    std::mt19937 rng(71);
    auto P2 = Variety::projective_space(2);
    auto cot = make_sheaf(cotangent(P2));
    auto O2 = make_sheaf(line_bundle(P2, {2}));
    std::vector<CochainSpace> spaces = {sheaf_space(O2), hom_space(cot, cot, 1),
                                        scalar_space(P2, 2)};
    for (auto& V : spaces)
        for (int q = 0; q <= 1; ++q)
            for (int t = 0; t < 5; ++t) {
                auto z = random_cochain(rng, V, q);
                CHECK(cech_differential(cech_differential(z)).is_zero());
            }
}

TEST_CASE("window enlargement does not change dimensions") {
    auto P2 = Variety::projective_space(2);
    for (auto& E : {line_bundle(P2, {2}), line_bundle(P2, {-4}), cotangent(P2)})
        CHECK(cohomology_dims(E, 2) == cohomology_dims(E, 3));
}

TEST_CASE("c1 cocycles and integration") {
    auto P1 = Variety::projective_space(1);
    for (int d = -3; d <= 3; ++d) {
        auto h = c1_cocycle(P1, {d});
        CHECK(cech_differential(h).is_zero());
        CHECK(integrate(h) == d);
    }
    auto P2 = Variety::projective_space(2);
    auto h = c1_cocycle(P2, {1});
    CHECK(cech_differential(h).is_zero());
    CHECK(integrate(compose_cochains(h, h)) == 1);
    auto h2 = c1_cocycle(P2, {2});
    CHECK(integrate(compose_cochains(h2, h2)) == 4);
    CHECK(integrate(compose_cochains(h, h2)) == 2);
    auto P1P1 = Variety::product(P1, P1);
    auto ha = c1_cocycle(P1P1, {1, 0});
    auto hb = c1_cocycle(P1P1, {0, 1});
    CHECK(integrate(compose_cochains(ha, hb)) == 1);
    CHECK(integrate(compose_cochains(ha, ha)) == 0);
    CHECK(integrate(compose_cochains(c1_cocycle(P1P1, {2, 3}), c1_cocycle(P1P1, {1, 1}))) == 5);
}

TEST_CASE("cup commutes up to coboundary and respects the unit") {
    auto P2 = Variety::projective_space(2);
    auto a = c1_cocycle(P2, {1});
    auto b = c1_cocycle(P2, {2});
    CHECK(is_coboundary(compose_cochains(a, b) - compose_cochains(b, a)));
    MixedClass m(P2);
    m.add(1, 1, a);
    auto mu = mixed_cup(mixed_unit(P2), m);
    CHECK(mu.comp.size() == 1);
    CHECK((mu.comp.at({1, 1}) - a).is_zero());
}

TEST_CASE("cohomology space representatives and coordinates") {
    auto P2 = Variety::projective_space(2);
    auto E = make_sheaf(line_bundle(P2, {-4}));
    CohomologySpace H(sheaf_space(E), 2);
    CHECK(H.dim() == 3);
    auto reps = H.representatives();
    REQUIRE(reps.size() == 3);
    for (size_t k = 0; k < reps.size(); ++k) {
        CHECK(cech_differential(reps[k]).is_zero());
        auto coords = H.class_coordinates(reps[k]);
        REQUIRE(coords.has_value());
        for (size_t j = 0; j < coords->size(); ++j)
            CHECK((*coords)[j] == (j == k ? 1 : 0));
    }
    // a coboundary has zero class coordinates; build a valid random 1-cochain
    // from graded basis elements so all its sections are admissible
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> coeff(-3, 3);
    CechCochain z(sheaf_space(E), 1);
    for (auto& w : weight_window(sheaf_space(E)))
        for (auto& b : cech_basis(sheaf_space(E), 1, w)) {
            Rat c = coeff(rng);
            if (c == 0)
                continue;
            Expo a = expo_sub(w, frame_weight(sheaf_space(E), b.tuple[0], b.r, b.s, b.form));
            ExteriorElement val(P2.nvars());
            val.add(b.form, LaurentPoly::monomial(P2.nvars(), a, c));
            z.add_entry(b.tuple, b.r, b.s, val);
        }
    auto dz = cech_differential(z);
    auto coords = H.class_coordinates(dz);
    REQUIRE(coords.has_value());
    for (auto& c : *coords)
        CHECK(c == 0);
}

TEST_CASE("sheaf json round trip is bit exact") {
    auto P2 = Variety::projective_space(2);
    auto E = cotangent(P2);
    CHECK(sheaf_from_json(sheaf_to_json(E)) == E);
    auto X = Variety::product(Variety::projective_space(1), Variety::projective_space(1));
    auto L = line_bundle(X, {2, -1});
    CHECK(sheaf_from_json(sheaf_to_json(L)) == L);
    auto W = wedge_power_sheaf(tangent(P2), 2);
    CHECK(sheaf_from_json(sheaf_to_json(W)) == W);
}

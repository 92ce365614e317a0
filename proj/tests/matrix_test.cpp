#include "doctest.h"
#include "hochrr/matrix.hpp"

#include <random>

using namespace hochrr;

TEST_CASE("identity solve") {
    auto I = ExactMatrix::identity(2);
    auto x = I.solve({Rat(1), Rat(2)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == 1);
    CHECK((*x)[1] == 2);
}

TEST_CASE("inconsistent system") {
    ExactMatrix m(2, 2);
    m.at(0, 0) = 1;
    m.at(0, 1) = 1;
    m.at(1, 0) = 2;
    m.at(1, 1) = 2;
    CHECK(!m.solve({Rat(1), Rat(3)}).has_value());
    CHECK(m.rank() == 1);
    CHECK(m.kernel_basis().size() == 1);
}

TEST_CASE("random consistent system has exactly zero residual") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> d(-4, 4);
    // 20x30 of rank <= 15: product of 20x15 and 15x30
    ExactMatrix a(20, 15), b(15, 30);
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 15; ++j)
            a.at(i, j) = d(rng);
    for (int i = 0; i < 15; ++i)
        for (int j = 0; j < 30; ++j)
            b.at(i, j) = d(rng);
    ExactMatrix m = a * b;
    std::vector<Rat> x0(30);
    for (auto& v : x0)
        v = Rat(d(rng), 3);
    auto rhs = m.apply(x0);
    auto x = m.solve(rhs);
    REQUIRE(x.has_value());
    auto residual = m.apply(*x);
    for (int i = 0; i < 20; ++i)
        CHECK(residual[i] == rhs[i]);
}

TEST_CASE("solve succeeds iff ranks agree") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> d(-2, 2);
    for (int trial = 0; trial < 25; ++trial) {
        ExactMatrix m(6, 4);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 4; ++j)
                m.at(i, j) = d(rng);
        std::vector<Rat> v(6);
        for (auto& e : v)
            e = d(rng);
        ExactMatrix aug(6, 5);
        for (int i = 0; i < 6; ++i) {
            for (int j = 0; j < 4; ++j)
                aug.at(i, j) = m.at(i, j);
            aug.at(i, 4) = v[i];
        }
        bool solvable = m.solve(v).has_value();
        CHECK(solvable == (m.rank() == aug.rank()));
    }
}

TEST_CASE("kernel vectors are killed by the matrix") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> d(-3, 3);
    ExactMatrix m(5, 8);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 8; ++j)
            m.at(i, j) = d(rng);
    auto ker = m.kernel_basis();
    CHECK(static_cast<int>(ker.size()) == 8 - m.rank());
    for (auto& v : ker) {
        auto mv = m.apply(v);
        for (auto& e : mv)
            CHECK(e == 0);
    }
}

TEST_CASE("inverse") {
    ExactMatrix m(2, 2);
    m.at(0, 0) = 1;
    m.at(0, 1) = 2;
    m.at(1, 0) = 3;
    m.at(1, 1) = 4;
    auto inv = m.inverse();
    REQUIRE(inv.has_value());
    CHECK(*inv * m == ExactMatrix::identity(2));
    ExactMatrix s(2, 2);
    s.at(0, 0) = 1;
    CHECK(!s.inverse().has_value());
}

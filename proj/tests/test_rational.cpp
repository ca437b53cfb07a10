#include "doctest.h"
#include "starcodim/rational.hpp"

using namespace starcodim;

TEST_CASE("parse_rational accepts integers and fractions, canonicalized") {
    CHECK(parse_rational("3") == Rational(3));
    CHECK(parse_rational("-3") == Rational(-3));
    CHECK(parse_rational("0") == 0);
    CHECK(to_string(parse_rational("6/4")) == "3/2");
    CHECK(to_string(parse_rational("-6/4")) == "-3/2");
    CHECK(to_string(parse_rational("6/-4")) == "-3/2");
    CHECK(to_string(parse_rational("0/7")) == "0");
    CHECK(parse_rational("41/20") == Rational(41, 20));
}

TEST_CASE("parse_rational rejects malformed input") {
    CHECK_THROWS_AS(parse_rational(""), ParseError);
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("x"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/2/3"), ParseError);
}

TEST_CASE("to_string renders canonical form") {
    CHECK(to_string(Rational(5)) == "5");
    CHECK(to_string(Rational(1, 2)) == "1/2");
    CHECK(to_string(Rational(-7, 3)) == "-7/3");
}

TEST_CASE("integer helpers") {
    CHECK(binomial(7, 3) == 35);
    CHECK(binomial(3, 7) == 0);
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(50, 25) == Integer("126410606437752"));
    CHECK(int_pow(Integer(2), 10) == 1024);
    CHECK(int_pow(Integer(-3), 3) == -27);
    CHECK(int_pow(Integer(7), 0) == 1);
    CHECK(factorial(0) == 1);
    CHECK(factorial(6) == 720);
    CHECK(factorial(20) == Integer("2432902008176640000"));
}

TEST_CASE("normalize sorts, merges duplicates, drops zeros") {
    SparseVec v{{3, Rational(1)}, {1, Rational(2)}, {3, Rational(-1)}, {0, Rational(1, 2)}};
    normalize(v);
    REQUIRE(v.size() == 2);
    CHECK(v[0] == std::pair<int, Rational>(0, Rational(1, 2)));
    CHECK(v[1] == std::pair<int, Rational>(1, Rational(2)));

    SparseVec w{{2, Rational(1)}, {2, Rational(1)}};
    normalize(w);
    REQUIRE(w.size() == 1);
    CHECK(w[0].second == 2);

    SparseVec empty;
    normalize(empty);
    CHECK(empty.empty());
}

TEST_CASE("sparse/dense round-trip") {
    std::vector<Rational> dense{Rational(0), Rational(3), Rational(0), Rational(-1, 2)};
    SparseVec sparse = to_sparse(dense);
    REQUIRE(sparse.size() == 2);
    CHECK(sparse[0].first == 1);
    CHECK(sparse[1].first == 3);
    CHECK(to_dense(sparse, 4) == dense);
    CHECK(to_dense(SparseVec{}, 3) == std::vector<Rational>(3, Rational(0)));
}

#include <random>
#include <vector>

#include "doctest.h"
#include "starcodim/codim.hpp"
#include "starcodim/families.hpp"

using namespace starcodim;

TEST_CASE("chain algebra structure for general T") {
    for (int T = 2; T <= 4; ++T) {
        auto a = make_A_T(T);
        CHECK(a->dim() == 2 * T + 3);
        CHECK(a->name() == "A_" + std::to_string(T));
        CHECK(a->is_commutative());
        CHECK(a->is_metabelian());
        CHECK(validate(*a).empty());
        // z_i a = z_{i+1} for i <= 2T; z_{2T+1} a = 0; z_{2T+1} b = z_1.
        for (int i = 1; i <= 2 * T; ++i)
            CHECK(a->product(i + 1, 0) == SparseVec{{i + 2, Rational(1)}});
        CHECK(a->product(2 * T + 2, 0).empty());
        CHECK(a->product(2 * T + 2, 1) == SparseVec{{2, Rational(1)}});
        for (int i = 1; i <= 2 * T; ++i) CHECK(a->product(i + 1, 1).empty());
        // Involution: a skew, b symmetric, z_i sign (-1)^{i+1}.
        CHECK(a->involution()[0][0] == -1);
        CHECK(a->involution()[1][1] == 1);
        for (int i = 1; i <= 2 * T + 1; ++i)
            CHECK(a->involution()[i + 1][i + 1] == (i % 2 == 1 ? 1 : -1));
    }
    CHECK_THROWS_AS(make_A_T(1), StructuralError);
}

TEST_CASE("tilde slice structure") {
    const int T = 2, M = 3;
    auto t = make_tilde_slice(T, M);
    CHECK(t->dim() == 1 + M + (M + 1) * (2 * T + 1));
    CHECK(t->is_commutative());
    CHECK(t->is_metabelian());
    CHECK(validate(*t).empty());
    auto zi = [&](int i, int j) { return M + (i - 1) * (2 * T + 1) + j; };
    // a z^i_j = z^i_{j+1} for j <= 2T, truncates at j = 2T+1.
    CHECK(t->product(0, zi(1, 1)) == SparseVec{{zi(1, 2), Rational(1)}});
    CHECK(t->product(0, zi(2, 4)) == SparseVec{{zi(2, 5), Rational(1)}});
    CHECK(t->product(0, zi(1, 2 * T + 1)).empty());
    // b_i wraps only its own chain: b_i z^i_{2T+1} = z^{i+1}_1.
    CHECK(t->product(1, zi(1, 2 * T + 1)) == SparseVec{{zi(2, 1), Rational(1)}});
    CHECK(t->product(2, zi(1, 2 * T + 1)).empty());  // superscript mismatch
    CHECK(t->product(2, zi(2, 2 * T + 1)) == SparseVec{{zi(3, 1), Rational(1)}});
    CHECK(t->product(3, zi(M + 1, 2 * T + 1)).empty());  // last chain truncates
    // b_i b_j = 0, a b_i = 0.
    CHECK(t->product(1, 2).empty());
    CHECK(t->product(0, 1).empty());
    // Involution: a skew, b_i symmetric, z^i_j sign (-1)^{j+1}.
    CHECK(t->involution()[0][0] == -1);
    CHECK(t->involution()[1][1] == 1);
    CHECK(t->involution()[zi(2, 2)][zi(2, 2)] == -1);
    CHECK(t->involution()[zi(3, 3)][zi(3, 3)] == 1);
    CHECK_THROWS_AS(make_tilde_slice(1, 2), StructuralError);
    CHECK_THROWS_AS(make_tilde_slice(2, 0), StructuralError);
}

TEST_CASE("nilpotent slice wraps the tilde slice") {
    auto b = make_B_slice(2, 3, 2);
    CHECK(b->dim() == 18 * 3);
    CHECK(b->name() == "B_2_3_2");
    REQUIRE(b->tensor_tag().has_value());
    CHECK(b->tensor_tag()->order == 3);
    CHECK(b->is_commutative());
    CHECK(b->is_metabelian());
    CHECK_THROWS_AS(make_B_slice(2, 0, 2), StructuralError);
}

TEST_CASE("schedule validation enforces strict interleaving") {
    BlockSchedule good;
    good.blocks = {{Integer(2), Integer(3)}, {Integer(5), Integer(11)}};
    CHECK_NOTHROW(validate_schedule(good));

    BlockSchedule empty;
    CHECK_THROWS_AS(validate_schedule(empty), StructuralError);

    BlockSchedule small_T;
    small_T.blocks = {{Integer(1), Integer(3)}};
    CHECK_THROWS_AS(validate_schedule(small_T), StructuralError);

    BlockSchedule N_not_above_T;
    N_not_above_T.blocks = {{Integer(2), Integer(2)}};
    CHECK_THROWS_AS(validate_schedule(N_not_above_T), StructuralError);

    BlockSchedule overlap;
    overlap.blocks = {{Integer(2), Integer(5)}, {Integer(4), Integer(9)}};
    CHECK_THROWS_AS(validate_schedule(overlap), StructuralError);
}

TEST_CASE("prefix sums blocks with independent labels") {
    BlockSchedule sched;
    sched.blocks = {{Integer(2), Integer(3)}, {Integer(5), Integer(11)}};
    auto c = make_C_prefix(sched, {2, 2});
    CHECK(c->dim() == 18 * 3 + 36 * 11);
    REQUIRE(c->sum_parts().size() == 2);
    CHECK(c->sum_parts()[1].offset == 54);
    CHECK(validate(*c).empty());
    CHECK_THROWS_AS(make_C_prefix(sched, {2}), StructuralError);
    CHECK_THROWS_AS(make_C_prefix(sched, {2, 0}), StructuralError);
}

TEST_CASE("chain walk predicate matches honest evaluation") {
    auto a2 = make_A_T(2);
    const int d = a2->dim();
    // Exhaustive cross-check on all words of length 2..4: the predicate's
    // yes/no equals nonvanishing of the actual left-normed product.
    for (int len = 2; len <= 4; ++len) {
        std::vector<int> word(len, 0);
        while (true) {
            SparseVec value{{word[0], Rational(1)}};
            for (int i = 1; i < len; ++i)
                value = a2->multiply(value, SparseVec{{word[i], Rational(1)}});
            CHECK(chain_word_nonzero(2, word) == !value.empty());
            int pos = len - 1;
            while (pos >= 0 && word[pos] == d - 1) word[pos--] = 0;
            if (pos < 0) break;
            ++word[pos];
        }
    }
    CHECK_THROWS_AS(chain_word_nonzero(2, {2}), StructuralError);
    CHECK_THROWS_AS(chain_word_nonzero(2, {0, 99}), StructuralError);
}

TEST_CASE("chain witness certifies rank one in the predicted cell") {
    auto cert = chain_witness(2, 1, 0);
    CHECK(cert.algebra_name == "A_2");
    CHECK(cert.k == 2);  // z and the wrap generator b
    CHECK(cert.m == 4);  // 2T copies of a
    CHECK(cert.rank == 1);
    CHECK(cert.monomials.size() == 1);

    auto tail = chain_witness(2, 2, 3);
    CHECK(tail.k == 3);
    CHECK(tail.m == 11);
    CHECK(tail.rank == 1);

    EvalContext ctx(make_A_T(2));
    CHECK(verify_certificate(ctx, cert).ok);

    CHECK_THROWS_AS(chain_witness(2, -1, 0), StructuralError);
    CHECK_THROWS_AS(chain_witness(2, 1, 5), StructuralError);
}

TEST_CASE("factorial witness certifies m! without full assembly") {
    auto w2 = factorial_witness(2, 3, 2);
    CHECK(w2.rank == 2);
    CHECK(w2.k == 3);
    CHECK(w2.m == 8);
    CHECK(w2.monomials.size() == 2);
    CHECK(w2.assignments.size() == 2);

    auto w3 = factorial_witness(2, 3, 3);
    CHECK(w3.rank == 6);
    CHECK(w3.k == 4);
    CHECK(w3.m == 12);

    EvalContext ctx(make_tilde_slice(2, 3));
    CHECK(verify_certificate(ctx, w2).ok);
    CHECK(verify_certificate(ctx, w3).ok);

    CHECK_THROWS_AS(factorial_witness(2, 3, 4), StructuralError);  // m > M
    CHECK_THROWS_AS(factorial_witness(2, 3, 0), StructuralError);
    CHECK_THROWS_AS(factorial_witness(2, 9, 9), ResourceError);
}

TEST_CASE("certified factorial comparison decides ties exactly") {
    CHECK(certified_factorial_vs_power(Integer(5), Rational(2), Integer(6)) == 1);
    CHECK(certified_factorial_vs_power(Integer(3), Rational(2), Integer(6)) == -1);
    // Exact tie: 6! = 720 = 720^1.
    CHECK(certified_factorial_vs_power(Integer(6), Rational(720), Integer(1)) == 1);
    // Off by one on either side of the tie.
    CHECK(certified_factorial_vs_power(Integer(6), Rational(721), Integer(1)) == -1);
    CHECK(certified_factorial_vs_power(Integer(6), Rational(719), Integer(1)) == 1);
    // alpha <= 1 or n = 0 certify trivially.
    CHECK(certified_factorial_vs_power(Integer(2), Rational(1), Integer(100)) == 1);
    CHECK(certified_factorial_vs_power(Integer(2), Rational(7), Integer(0)) == 1);
    // Large operands still certify (no exact fallback possible).
    CHECK(certified_factorial_vs_power(Integer("100000000000"), Rational(2),
                                       Integer("1000000000")) == 1);
}

TEST_CASE("integer_brief switches to scientific past 40 digits") {
    CHECK(integer_brief(Integer(12345)) == "12345");
    Integer big = int_pow(Integer(10), 50) + 7;
    auto brief = integer_brief(big);
    CHECK(brief.find("~1.000000e+50") == 0);
    CHECK(brief.find("bits=") != std::string::npos);
}

TEST_CASE("computed schedule probes honest codimensions") {
    GreedyOptions opts;
    opts.mode = ScheduleMode::Computed;
    opts.blocks = 2;
    opts.horizon = 6;
    auto result = greedy_schedule(Rational(41, 20), opts);
    REQUIRE(result.schedule.blocks.size() == 2);
    CHECK(result.schedule.blocks[0] == std::pair<Integer, Integer>(2, 3));
    CHECK(result.schedule.blocks[1] == std::pair<Integer, Integer>(4, 5));
    REQUIRE(result.steps.size() == 2);
    CHECK(result.steps[0].crossing == 12);  // c*_3 of the probed slice
    CHECK(result.steps[1].crossing == 80);
    CHECK(result.schedule.alpha == Rational(41, 20));
    CHECK_NOTHROW(validate_schedule(result.schedule));

    // Exhausted horizon reports honest partial progress.
    GreedyOptions short_horizon = opts;
    short_horizon.horizon = 3;
    try {
        greedy_schedule(Rational(3), short_horizon);
        FAIL("expected IncompleteError");
    } catch (const IncompleteError& e) {
        CHECK(std::string(e.what()).find("block 1") != std::string::npos);
        CHECK(e.steps.empty());
    }
}

TEST_CASE("bound schedule at alpha = 2 reproduces the certified ledger") {
    GreedyOptions opts;
    opts.mode = ScheduleMode::Bound;
    opts.blocks = 2;
    auto result = greedy_schedule(Rational(2), opts);
    REQUIRE(result.steps.size() == 2);

    const auto& s1 = result.steps[0];
    CHECK(s1.T == 10);  // n^3 < 2^n first holds for every n >= 10
    CHECK(s1.chain_m == 5700657);
    CHECK(s1.N == 21 * (s1.chain_m + 1));
    CHECK(s1.rule.find("T1 = 10") != std::string::npos);
    CHECK(s1.rule.find("exact integer confirmation") != std::string::npos);
    // Independent re-certification of the threshold and its minimality.
    CHECK(certified_factorial_vs_power(s1.chain_m, Rational(2), s1.N) == 1);
    Integer below_N = 21 * s1.chain_m;  // N for m-1
    CHECK(certified_factorial_vs_power(s1.chain_m - 1, Rational(2), below_N) == -1);

    const auto& s2 = result.steps[1];
    CHECK(s2.T == 2 * s1.N);
    Integer chain = 2 * s2.T + 1;
    CHECK(s2.N == chain * (s2.chain_m + 1));
    CHECK(certified_factorial_vs_power(s2.chain_m, Rational(2), s2.N) == 1);
    CHECK(s2.rule.find("minimality not claimed") != std::string::npos);
    CHECK(mpz_sizeinbase(s2.N.get_mpz_t(), 2) == 478855304);

    CHECK_NOTHROW(validate_schedule(result.schedule));

    // Determinism: a second run reproduces every field.
    auto again = greedy_schedule(Rational(2), opts);
    REQUIRE(again.steps.size() == result.steps.size());
    for (size_t i = 0; i < result.steps.size(); ++i) {
        CHECK(again.steps[i].T == result.steps[i].T);
        CHECK(again.steps[i].N == result.steps[i].N);
        CHECK(again.steps[i].chain_m == result.steps[i].chain_m);
        CHECK(again.steps[i].rule == result.steps[i].rule);
    }
}

TEST_CASE("bound schedule derives the first T from alpha") {
    GreedyOptions opts;
    opts.mode = ScheduleMode::Bound;
    opts.blocks = 1;
    auto result = greedy_schedule(Rational(3), opts);
    REQUIRE(result.steps.size() == 1);
    CHECK(result.steps[0].T == 4);  // 27 = 3^3 ties n^3 exactly at n = 3
    CHECK(result.steps[0].chain_m == 53508);
    CHECK(result.steps[0].N == 481581);
    CHECK_THROWS_AS(greedy_schedule(Rational(1), opts), StructuralError);
}

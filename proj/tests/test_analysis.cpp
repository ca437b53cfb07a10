#include <string>
#include <vector>

#include "doctest.h"
#include "starcodim/analysis.hpp"
#include "starcodim/codim.hpp"
#include "starcodim/families.hpp"

using namespace starcodim;

namespace {

// Assemble a sequence record directly; cells default to a single nonzero
// cell (1, n-1) so support/cap checks have something to look at.
CodimSequence synthetic(const std::vector<long>& totals) {
    CodimSequence seq;
    seq.algebra_name = "synthetic";
    for (size_t i = 0; i < totals.size(); ++i) {
        TotalCodim tc;
        tc.n = static_cast<int>(i) + 1;
        tc.total = totals[i];
        CellResult cell;
        cell.k = 1;
        cell.m = tc.n - 1;
        cell.value = totals[i];
        cell.method = "synthetic";
        tc.cells.push_back(cell);
        seq.by_degree.push_back(std::move(tc));
    }
    return seq;
}

// The computed chain-algebra totals, frozen: see the codim suite for the
// engine-vs-oracle checks that pin them down.
const std::vector<long> kA2{2, 4, 12, 38, 75, 135, 273};

int count_pass(const BoundReport& r, const std::string& state) {
    int c = 0;
    for (const auto& row : r.rows) c += (row.pass == state);
    return c;
}

}  // namespace

TEST_CASE("growth constants are exact rationals with a tight bracket") {
    auto c = exponent_constants(2);
    CHECK(c.T == 2);
    CHECK(c.theta == Rational(1, 5));
    CHECK(c.beta_lo.substr(0, 36) == "1.6493848884661178242175024640370501");
    CHECK(c.beta_hi.substr(0, 36) == "1.6493848884661178242175024640370501");
    CHECK(exponent_constants(3).theta == Rational(1, 7));

    auto [lo, hi] = beta_bounds(2);
    CHECK(lo < hi);
    CHECK(lo > Rational(1649, 1000));
    CHECK(hi < Rational(1650, 1000));
    Rational width = hi - lo;
    Rational tiny(1, int_pow(Integer(10), 60));
    CHECK(width < tiny);

    // The exponent shrinks toward 1 as the chains lengthen.
    CHECK(beta_bounds(3).second < beta_bounds(2).first);
    CHECK(beta_bounds(4).second < beta_bounds(3).first);

    CHECK_THROWS_AS(exponent_constants(1), StructuralError);
    CHECK_THROWS_AS(beta_bounds(0), StructuralError);
}

TEST_CASE("dimension envelope rows compare exact integers") {
    auto rep = check_dimension_envelope(7, synthetic(kA2));
    CHECK(rep.all_pass());
    CHECK(rep.rows.size() == 7);
    CHECK(rep.rows[0].lhs == "2");
    CHECK(rep.rows[0].rhs == "49");  // 7^2
    CHECK(rep.rows[0].margin == "47");

    auto bad = check_dimension_envelope(2, synthetic({9}));  // 9 > 2^2
    CHECK(!bad.all_pass());
    CHECK(bad.rows[0].pass == "fail");
    CHECK(bad.rows[0].margin == "-5");

    CHECK_THROWS_AS(check_dimension_envelope(0, synthetic({1})), StructuralError);
}

TEST_CASE("cubic envelope marks the claim range") {
    auto rep = check_cubic_envelope(synthetic(kA2), 2);
    // n = 1, 2 informational; 3, 4 checked; past 2T the claim is out of range.
    REQUIRE(rep.rows.size() == 7);
    CHECK(rep.rows[0].pass == "info");
    CHECK(rep.rows[1].pass == "info");
    CHECK(rep.rows[1].lhs == "4");  // raw sides still recorded
    CHECK(rep.rows[1].rhs == "8");
    CHECK(rep.rows[2].pass == "pass");  // 12 <= 27
    CHECK(rep.rows[3].pass == "pass");  // 38 <= 64
    for (int n = 5; n <= 7; ++n) {
        CHECK(rep.rows[n - 1].pass == "info");
        CHECK(rep.rows[n - 1].lhs == "NA");
    }
    CHECK(rep.all_pass());

    auto bad = check_cubic_envelope(synthetic({1, 1, 100}), 2);
    CHECK(bad.rows[2].pass == "fail");
    CHECK(bad.rows[2].margin == "-73");
}

TEST_CASE("sandwich bounds check against the certified interval") {
    auto rep = check_sandwich(synthetic(kA2), 2);
    REQUIRE(rep.rows.size() == 14);  // lower + upper per degree
    CHECK(rep.all_pass());
    for (int n = 1; n <= 5; ++n) {
        CHECK(rep.rows[2 * (n - 1)].bound == "sandwich-lower");
        CHECK(rep.rows[2 * (n - 1)].pass == "info");  // below the claim range
    }
    // n = 6, 7 get honest lower-bound rows.
    CHECK(rep.rows[10].bound == "sandwich-lower");
    CHECK(rep.rows[10].pass == "pass");
    CHECK(rep.rows[12].pass == "pass");
    for (int n = 1; n <= 7; ++n) {
        CHECK(rep.rows[2 * n - 1].bound == "sandwich-upper");
        CHECK(rep.rows[2 * n - 1].pass == "pass");
    }

    // A sequence stuck at 1 violates the lower bound once beta^(n-5) > n^2,
    // which first happens at n = 17.
    auto stuck = check_sandwich(synthetic(std::vector<long>(18, 1)), 2);
    CHECK(!stuck.all_pass());
}

TEST_CASE("support rows count cells and bound the symmetric excess") {
    auto a2 = make_A_T(2);
    EvalContext ctx(a2);
    ComputeOptions opts;
    auto seq = codim_sequence(ctx, 5, opts);
    auto rep = check_support(seq, 2);
    CHECK(rep.all_pass());
    CHECK(count_pass(rep, "fail") == 0);
    // One count row per degree.
    int counts = 0;
    for (const auto& row : rep.rows) counts += (row.bound == "support-count");
    CHECK(counts == 5);

    // Four nonzero cells in one degree break the count bound.
    CodimSequence wide = synthetic({4});
    for (int k = 0; k < 3; ++k) {
        CellResult extra;
        extra.k = k;
        extra.m = 1 - k;
        extra.value = 1;
        wide.by_degree[0].cells.push_back(extra);
    }
    auto bad = check_support(wide, 2);
    CHECK(!bad.all_pass());

    // A cell with k - 2 > n/5 breaks the ratio bound.
    CodimSequence heavy = synthetic({1, 1, 1});
    heavy.by_degree[2].cells[0].k = 3;
    heavy.by_degree[2].cells[0].m = 0;
    auto ratio_fail = check_support(heavy, 2);
    CHECK(!ratio_fail.all_pass());
}

TEST_CASE("cell cap applies inside the pumping range") {
    auto a2 = make_A_T(2);
    EvalContext ctx(a2);
    ComputeOptions opts;
    auto seq = codim_sequence(ctx, 6, opts);
    auto rep = check_cell_cap(seq, 2);
    CHECK(rep.all_pass());
    for (const auto& row : rep.rows) CHECK(row.rhs == "125");

    CodimSequence over = synthetic({200});
    auto bad = check_cell_cap(over, 2);
    CHECK(!bad.all_pass());
    CHECK(bad.rows[0].margin == "-75");

    // Past n = 2T+2 the cap is out of claim range: informational only.
    auto tall = check_cell_cap(synthetic({1, 1, 1, 1, 1, 1, 1}), 2);
    CHECK(tall.rows.back().pass == "info");
    CHECK(tall.rows.back().lhs == "NA");
}

TEST_CASE("stepwise growth compares adjacent degrees") {
    auto rep = check_stepwise_growth(synthetic(kA2));
    REQUIRE(rep.rows.size() == 7);
    CHECK(rep.rows[0].pass == "info");  // no predecessor at n = 1
    for (int n = 2; n <= 7; ++n) CHECK(rep.rows[n - 1].pass == "pass");
    CHECK(rep.rows[1].rhs == "12");  // 3 * 2 * c_1
    CHECK(rep.all_pass());

    auto bad = check_stepwise_growth(synthetic({1, 100}));
    CHECK(bad.rows[1].pass == "fail");
    CHECK(bad.rows[1].margin == "-94");
}

TEST_CASE("binomial growth inequality holds strictly") {
    auto rep = stirling_binomial_check(2, 6);
    REQUIRE(rep.rows.size() == 6);
    CHECK(rep.all_pass());
    CHECK(rep.rows[0].n == 5);    // N = 5k
    CHECK(rep.rows[5].n == 30);
    CHECK(rep.rows[0].rhs == "5");  // binom(5,1)
    CHECK(stirling_binomial_check(3, 4).all_pass());
    CHECK_THROWS_AS(stirling_binomial_check(1, 3), StructuralError);
    CHECK_THROWS_AS(stirling_binomial_check(2, 0), StructuralError);
}

TEST_CASE("window estimate reports n-th roots of the totals") {
    auto est = window_estimate(synthetic({2, 4, 8}), 1, 3);
    REQUIRE(est.roots.size() == 3);
    CHECK(est.roots[0].second.substr(0, 7) == "2.00000");
    CHECK(est.roots[2].second.substr(0, 7) == "2.00000");  // 8^(1/3)
    CHECK(est.roots[1].first == 2);

    auto a2 = window_estimate(synthetic(kA2), 4, 6);
    CHECK(a2.roots[0].second.substr(0, 19) == "2.48282379619838839");
    CHECK(a2.roots[1].second.substr(0, 19) == "2.37144060977931174");
    CHECK(a2.roots[2].second.substr(0, 19) == "2.26493440082270174");
    CHECK(a2.max_root == a2.roots[0].second);
    CHECK(a2.min_root == a2.roots[2].second);

    auto gap = window_estimate(synthetic({1, 0}), 1, 2);
    CHECK(gap.roots[1].second == "NA");
    CHECK(gap.min_root == gap.max_root);  // only one usable degree

    CHECK(to_csv(gap).substr(0, 7) == "n,root\n");
    CHECK_THROWS_AS(window_estimate(synthetic({1}), 0, 1), StructuralError);
    CHECK_THROWS_AS(window_estimate(synthetic({1}), 1, 2), StructuralError);
}

TEST_CASE("report rendering") {
    auto rep = check_dimension_envelope(7, synthetic({2, 4}));
    auto csv = to_csv(rep);
    CHECK(csv.substr(0, 28) == "bound,n,lhs,rhs,pass,margin\n");
    CHECK(csv.find("dim-envelope,1,2,49,pass,47\n") != std::string::npos);

    auto table = to_table(rep);
    CHECK(table.substr(0, 15) == "# dim-envelope\n");
    CHECK(table.find("pass") != std::string::npos);
}

#include <catch2/catch_amalgamated.hpp>

#include "mnk/presentation.hpp"

using namespace mnk;

namespace {

Polynomial var(const ContextPtr& c, const std::string& v, int e = 1) {
    return Polynomial::variable(c, v, e);
}

}  // namespace

TEST_CASE("q polynomials") {
    auto ctx = partial_context(5, 3);
    Polynomial c1 = var(ctx, "c1"), c2 = var(ctx, "c2"), c3 = var(ctx, "c3");

    CHECK(q_polynomial(1, 3, ctx) == c1 * c1 - Rational(2) * c2);
    CHECK(q_polynomial(2, 3, ctx) == c2 * c2 - Rational(2) * c1 * c3);  // c4 = 0 at k = 3
    CHECK(q_polynomial(4, 3, ctx).is_zero());
    CHECK(q_polynomial(2, 3, ctx).is_homogeneous());
    CHECK(q_polynomial(2, 3, ctx).weighted_degree() == 8);

    auto ctx4 = partial_context(6, 4);
    Polynomial d2 = var(ctx4, "c2"), d4 = var(ctx4, "c4");
    CHECK(q_polynomial(2, 4, ctx4) ==
          d2 * d2 - Rational(2) * var(ctx4, "c1") * var(ctx4, "c3") + Rational(2) * d4);
}

TEST_CASE("relation rows reproduce the worked examples") {
    SECTION("(5,3): the five relations, with p2 written as e^2") {
        auto ctx = partial_context(5, 3);
        Polynomial c1 = var(ctx, "c1"), c2 = var(ctx, "c2"), c3 = var(ctx, "c3");
        Polynomial p1 = var(ctx, "p1"), e = var(ctx, "e");
        Polynomial e2 = e * e;
        std::vector<Polynomial> expected{
            c1 * c1 - Rational(2) * c2 + p1,
            c2 * c2 - Rational(2) * c1 * c3 + (c1 * c1 - Rational(2) * c2) * p1 + e2,
            c3 * c3 + (c2 * c2 - Rational(2) * c1 * c3) * p1 + (c1 * c1 - Rational(2) * c2) * e2,
            c3 * c3 * p1 + (c2 * c2 - Rational(2) * c1 * c3) * e2,
            c3 * e,
        };
        std::vector<Polynomial> rows = relation_rows(5, 3, ctx);
        REQUIRE(rows.size() == expected.size());
        for (std::size_t i = 0; i < rows.size(); ++i) CHECK(rows[i] == expected[i]);
    }
    SECTION("(2,1)") {
        auto ctx = partial_context(2, 1);
        Polynomial c1 = var(ctx, "c1"), e = var(ctx, "e");
        std::vector<Polynomial> rows = relation_rows(2, 1, ctx);
        REQUIRE(rows.size() == 2);
        CHECK(rows[0] == c1 * c1 + e * e);
        CHECK(rows[1] == c1 * e);
    }
    SECTION("(6,4): the six relations, with p2 written as e^2") {
        auto ctx = partial_context(6, 4);
        Polynomial c1 = var(ctx, "c1"), c2 = var(ctx, "c2"), c3 = var(ctx, "c3"),
                   c4 = var(ctx, "c4");
        Polynomial p1 = var(ctx, "p1"), e = var(ctx, "e");
        Polynomial e2 = e * e;
        Polynomial q1 = c1 * c1 - Rational(2) * c2;
        Polynomial q2 = c2 * c2 - Rational(2) * c1 * c3 + Rational(2) * c4;
        Polynomial q3 = c3 * c3 - Rational(2) * c2 * c4;
        Polynomial q4 = c4 * c4;
        std::vector<Polynomial> expected{
            q1 + p1,
            q2 + q1 * p1 + e2,
            q3 + q2 * p1 + q1 * e2,
            q4 + q3 * p1 + q2 * e2,
            q4 * p1 + q3 * e2,
            c4 * e,
        };
        std::vector<Polynomial> rows = relation_rows(6, 4, ctx);
        REQUIRE(rows.size() == expected.size());
        for (std::size_t i = 0; i < rows.size(); ++i) CHECK(rows[i] == expected[i]);
    }
    SECTION("bad parameters are usage errors") {
        CHECK_THROWS_AS(relation_rows(1, 1), std::invalid_argument);
        CHECK_THROWS_AS(relation_rows(3, 3), std::invalid_argument);
        CHECK_THROWS_AS(relation_rows(3, 0), std::invalid_argument);
    }
}

TEST_CASE("flag presentations") {
    SECTION("n = 2: ideal and dimensions") {
        FlagPresentation flag(2);
        auto ctx = flag.context();
        REQUIRE(flag.generators().size() == 2);
        CHECK(flag.generators()[0] == var(ctx, "t1", 2) + var(ctx, "t2", 2));
        CHECK(flag.generators()[1] == var(ctx, "t1") * var(ctx, "t2"));
        GradedDimensions dims = flag.graded_dims();
        CHECK(dims.at(0) == 1);
        CHECK(dims.at(2) == 2);
        CHECK(dims.at(4) == 1);
        CHECK(dims.top_nonzero() == 4);
    }
    SECTION("n = 3: top degree is twice the number of positive roots") {
        FlagPresentation flag(3);
        CHECK(flag.top_degree() == 12);
        GradedDimensions dims = flag.graded_dims();
        CHECK(dims.top_nonzero() == 12);
        CHECK(dims.total() == 24);  // |W(D_3)| = 2^2 * 3!
    }
}

TEST_CASE("partial flag presentations") {
    SECTION("(2,1): quotient dims [1,2,1]") {
        PartialFlagPresentation pres(2, 1);
        std::vector<long> b = pres.betti();
        CHECK(b == std::vector<long>{1, 2, 1});
        CHECK(pres.N() == 2);
        CHECK(pres.euler_characteristic() == 4);
    }
    SECTION("(3,1): betti [1,1,2,1,1]") {
        PartialFlagPresentation pres(3, 1);
        CHECK(pres.betti() == std::vector<long>{1, 1, 2, 1, 1});
        CHECK(pres.N() == 4);  // (2(2*3*1 - 1) - 2)/2
        CHECK(pres.euler_characteristic() == 6);
    }
    SECTION("out-of-range parameters") {
        CHECK_THROWS_AS(PartialFlagPresentation(1, 1), std::invalid_argument);
        CHECK_THROWS_AS(FlagPresentation(1), std::invalid_argument);
    }
}

TEST_CASE("pullback") {
    SECTION("(2,1): c1 -> t1, e -> t2, and c1*e dies in F_2") {
        FlagPresentation flag(2);
        auto pctx = partial_context(2, 1);
        auto tctx = flag.context();
        CHECK(pullback(var(pctx, "c1"), 2, 1, tctx) == var(tctx, "t1"));
        CHECK(pullback(var(pctx, "e"), 2, 1, tctx) == var(tctx, "t2"));
        Polynomial image = pullback(var(pctx, "c1") * var(pctx, "e"), 2, 1, tctx);
        CHECK(image == var(tctx, "t1") * var(tctx, "t2"));
        CHECK(flag.gb().contains(image));
    }
    SECTION("(3,1): p1 -> t2^2 + t3^2") {
        auto pctx = partial_context(3, 1);
        auto tctx = flag_context(3);
        CHECK(pullback(var(pctx, "p1"), 3, 1, tctx) ==
              var(tctx, "t2", 2) + var(tctx, "t3", 2));
    }
    SECTION("well-definedness and redundancy for n <= 4") {
        for (int n = 2; n <= 4; ++n) {
            FlagPresentation flag(n);
            for (int k = 1; k < n; ++k) {
                auto ctx = partial_context(n, k);
                for (const auto& row : relation_rows(n, k, ctx))
                    REQUIRE(flag.gb().contains(pullback(row, n, k, flag.context())));
                // R_n reduces to zero modulo the returned generators
                PartialFlagPresentation pres(n, k);
                Polynomial rn = relation_row(n, k, n, pres.context());
                REQUIRE(pres.gb().normal_form(rn).is_zero());
            }
        }
    }
}

TEST_CASE("betti numbers against the hilbert oracle") {
    SECTION("oracle worked examples") {
        CHECK(hilbert_oracle(2, 1) == std::vector<long>{1, 2, 1});
        CHECK(hilbert_oracle(3, 1) == std::vector<long>{1, 1, 2, 1, 1});
        long sum = 0;
        for (long d : hilbert_oracle(3, 1)) sum += d;
        CHECK(sum == 6);  // 2^1 * C(3,1)
    }
    SECTION("staircase equals oracle for n <= 4") {
        for (int n = 2; n <= 4; ++n)
            for (int k = 1; k < n; ++k) {
                PartialFlagPresentation pres(n, k);
                CHECK(pres.betti() == hilbert_oracle(n, k));
            }
    }
    SECTION("complex dimension formula") {
        CHECK(complex_dim(3, 1) == 4);
        CHECK(complex_dim(5, 3) == 15);
        for (int n = 2; n <= 5; ++n)
            for (int k = 1; k < n; ++k) {
                PartialFlagPresentation pres(n, k, BuildOptions{});
                CHECK(static_cast<long>(pres.betti().size()) - 1 == complex_dim(n, k));
            }
    }
    SECTION("euler characteristic: Weyl order oracle") {
        auto binom = [](int n, int k) {
            long r = 1;
            for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
            return r;
        };
        for (int n = 2; n <= 4; ++n)
            for (int k = 1; k < n; ++k) {
                PartialFlagPresentation pres(n, k);
                CHECK(pres.euler_characteristic() == (1L << k) * binom(n, k));
            }
        PartialFlagPresentation p53(5, 3);
        CHECK(p53.euler_characteristic() == 80);
    }
}

TEST_CASE("power sums of the t's lie in the flag ideal") {
    for (int n = 2; n <= 4; ++n) {
        FlagPresentation flag(n);
        std::vector<std::string> tvars;
        for (int i = 1; i <= n; ++i) tvars.push_back(t_name(i));
        for (int i = 1; i <= n; ++i)
            CHECK(flag.gb().contains(power_sum(2 * i, flag.context(), tvars)));
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sepmod/enumerate.hpp"
#include "sepmod/structure.hpp"
#include "slow_oracle.hpp"

using namespace sepmod;
using sepmod::testing::slow_eval;

namespace {

DefinableSet solve(const StructureHandle& S, const std::string& text,
                   const std::map<std::string, Point>& params = {}) {
    return definable_set(S, parse_formula(text, S.signature()), params);
}

bool holds(const StructureHandle& S, const std::string& text,
           const std::map<std::string, Point>& params = {}) {
    return eval_formula(S, parse_formula(text, S.signature()), params);
}

} // namespace

TEST_CASE("dlo atomic and quantified solution sets") {
    const auto& S = StructureHandle::dlo();
    auto d = solve(S, "y < x", {{"y", Point::rat(Rational(0))}});
    REQUIRE(d.pieces().size() == 1);
    CHECK(d.pieces()[0].lo.kind == Bound::Kind::AfterPoint);
    CHECK(d.pieces()[0].hi.kind == Bound::Kind::PosInf);
    CHECK(d.contains(Point::rat(Rational(1))));
    CHECK(!d.contains(Point::rat(Rational(0))));
    CHECK(!d.contains(Point::rat(Rational(-1))));

    auto between = solve(S, "@{0} < x and x < @{1}");
    CHECK(between.contains(Point::rat(Rational(1, 2))));
    CHECK(!between.contains(Point::rat(Rational(0))));

    // Density, twice quantified.
    CHECK(holds(S, "exists y (@{0} < y and y < @{1})"));
    CHECK(holds(S, "forall y (exists z (y < z))"));
    CHECK(!holds(S, "exists y (forall z (not (y < z)))"));

    // Solution sets of quantified formulas.
    auto above_zero = solve(S, "exists y (@{0} < y and y < x)");
    CHECK(!above_zero.contains(Point::rat(Rational(0))));
    CHECK(above_zero.contains(Point::rat(Rational(1, 100))));
    auto all = solve(S, "exists y (y < x)");
    CHECK(all.is_universe());
}

TEST_CASE("ehr constants and the two tiers") {
    const auto& S = StructureHandle::ehr();
    auto between = solve(S, "c1 < x and x < c2");
    REQUIRE(between.pieces().size() == 1);
    CHECK(between.contains(Point::tier(Rational(3, 2), 0)));
    CHECK(!between.contains(Point::tier(Rational(1), 0)));
    CHECK(!between.contains(Point::tier(Rational(3, 2), 1)));

    CHECK(holds(S, "exists x (c0 < x and x < c1)"));
    CHECK(holds(S, "c0 < c1"));
    CHECK(!holds(S, "c1 < c0"));

    // Tier-1 points sit above every constant.
    auto above_c5 = solve(S, "c5 < x");
    CHECK(above_c5.contains(Point::tier(Rational(-100), 1)));
    CHECK(above_c5.contains(Point::tier(Rational(6), 0)));
    CHECK(!above_c5.contains(Point::tier(Rational(5), 0)));
}

TEST_CASE("ex1 fibers, sorts, and f") {
    const auto& S = StructureHandle::ex1();

    // The fiber of z = 2 is one convex block of pairs.
    auto fiber = solve(S, "f(x) = z", {{"z", Point::single(Rational(2))}});
    REQUIRE(fiber.pieces().size() == 1);
    CHECK(fiber.contains(Point::pair(Rational(2), Rational(-7))));
    CHECK(fiber.contains(Point::pair(Rational(2), Rational(7))));
    CHECK(!fiber.contains(Point::pair(Rational(3), Rational(0))));
    CHECK(!fiber.contains(Point::single(Rational(2))));

    CHECK(holds(S, "P2(f(@{(2,3)}))"));
    CHECK(holds(S, "f(@{(2,3)}) = @{2:P2}"));
    CHECK(!holds(S, "P1(f(@{(2,3)}))"));

    // Range(f) = P2.
    auto range = solve(S, "exists y (f(y) = x)");
    CHECK(range.contains(Point::single(Rational(9))));
    CHECK(!range.contains(Point::pair(Rational(9), Rational(0))));

    // f(x) < 3 is bounded by a fiber edge, not by a point.
    auto below3 = solve(S, "f(x) < @{3:P2}");
    REQUIRE(below3.pieces().size() == 1);
    CHECK(below3.pieces()[0].hi.kind == Bound::Kind::FiberStart);
    CHECK(below3.contains(Point::pair(Rational(2), Rational(1000))));
    CHECK(!below3.contains(Point::pair(Rational(3), Rational(-1000))));
    CHECK(!below3.contains(Point::single(Rational(0))));

    // Every point is below its f-image.
    auto below_image = solve(S, "x < f(x)");
    CHECK(below_image.contains(Point::pair(Rational(5), Rational(5))));
    CHECK(!below_image.contains(Point::single(Rational(5))));
    CHECK(solve(S, "f(x) < x").empty());

    // Partial function: f(f(x)) is never defined.
    CHECK(solve(S, "f(f(x)) = x").empty());
    CHECK(!holds(S, "exists x (f(f(x)) = x)"));
}

TEST_CASE("budget guard") {
    const auto& S = StructureHandle::dlo();
    std::string deep = "x < @{1}";
    for (int i = 0; i < 9; ++i) deep = "exists v" + std::to_string(i) + " (" + deep + ")";
    deep = "exists x (" + deep + ")";
    CHECK_THROWS_AS(holds(S, deep), BudgetExceeded);
}

TEST_CASE("qe agrees with the slow oracle on sampled formulas") {
    for (auto* Sp : {&StructureHandle::dlo(), &StructureHandle::ehr(), &StructureHandle::ex1()}) {
        const auto& S = *Sp;
        SplitMix64 rng(2024 + static_cast<int>(S.id()));
        std::vector<Point> pool;
        for (int i = 0; i < 3; ++i) pool.push_back(sample_point(S.id(), rng));
        FormulaEnumerator en(S, pool, 2);
        int checked = 0;
        for (auto& phi : en.generate(90, 5)) {
            DefinableSet sol = definable_set(S, phi);
            // Membership at every grid point must match direct evaluation.
            for (auto& p : sepmod::testing::oracle_grid(S.id(), phi, {})) {
                Formula inst = substitute(phi, {{free_variables(phi)[0], p}});
                bool direct = slow_eval(S, inst, {});
                CHECK_MESSAGE(sol.contains(p) == direct,
                              "structure ", S.name(), ", formula ", format_formula(phi),
                              ", point ", p.literal());
                ++checked;
            }
            // Emptiness must match the oracle's existential search.
            Formula closed = Formula::exists(free_variables(phi)[0], phi);
            CHECK(eval_formula(S, closed) == slow_eval(S, closed, {}));
        }
        CHECK(checked > 200);
    }
}

TEST_CASE("definable sets have disjoint sorted maximal pieces") {
    for (auto* Sp : {&StructureHandle::dlo(), &StructureHandle::ehr(), &StructureHandle::ex1()}) {
        const auto& S = *Sp;
        SplitMix64 rng(77 + static_cast<int>(S.id()));
        std::vector<Point> pool;
        for (int i = 0; i < 3; ++i) pool.push_back(sample_point(S.id(), rng));
        FormulaEnumerator en(S, pool, 2);
        for (auto& phi : en.generate(80, 3)) {
            DefinableSet sol = definable_set(S, phi);
            const auto& ps = sol.pieces();
            for (std::size_t i = 0; i < ps.size(); ++i) {
                CHECK(compare_bounds(S.id(), ps[i].lo, ps[i].hi) < 0);
                REQUIRE(sample_between(S.id(), ps[i].lo, ps[i].hi).has_value());
                if (i + 1 < ps.size())  // strict gap between consecutive pieces
                    CHECK(compare_bounds(S.id(), ps[i].hi, ps[i + 1].lo) < 0);
            }
        }
    }
}

TEST_CASE("realize and isolated types") {
    const auto& dlo = StructureHandle::dlo();
    auto t = type_from_formula(dlo, "@{0} < x and x < @{1}");
    CHECK(realize(dlo, t) == Point::rat(Rational(1, 2)));

    auto dlo_types = list_isolated_1types(dlo);
    REQUIRE(dlo_types.size() == 1);
    CHECK(dlo_types[0].presentation == "x = x");

    const auto& ex1 = StructureHandle::ex1();
    auto ex1_types = list_isolated_1types(ex1);
    REQUIRE(ex1_types.size() == 2);
    CHECK(realize(ex1, ex1_types[0]).in_p1());
    CHECK(realize(ex1, ex1_types[1]).in_p2());
    auto fiber_type = type_from_formula(ex1, "P1(x) and f(x) = @{2:P2}");
    CHECK(realize(ex1, fiber_type) == Point::pair(Rational(2), Rational(0)));

    const auto& ehr = StructureHandle::ehr();
    auto ehr_types = list_isolated_1types(ehr, 3);
    bool saw_limit = false;
    for (auto& ty : ehr_types) {
        Point p = realize(ehr, ty);
        if (ty.name == "limit") {
            saw_limit = true;
            CHECK(!ty.isolated);
            CHECK(p.tier_index() == 1);  // above every constant
        } else {
            CHECK(ty.isolated);
            Formula phi = parse_formula(ty.presentation, ehr.signature());
            CHECK(definable_set(ehr, phi).contains(p));
        }
    }
    CHECK(saw_limit);
}

TEST_CASE("ehr saturation sampling: finitely presented cuts are realized") {
    const auto& S = StructureHandle::ehr();
    SplitMix64 rng(11);
    for (int it = 0; it < 40; ++it) {
        std::vector<Point> params;
        for (int i = 0; i < 4; ++i) params.push_back(sample_point(StructureId::EHR, rng));
        std::sort(params.begin(), params.end());
        params.erase(std::unique(params.begin(), params.end()), params.end());
        // Cut between two chosen parameters (or one-sided).
        for (std::size_t i = 0; i + 1 < params.size(); ++i) {
            Formula phi = Formula::conj(
                Formula::atom("<", {Term::param(params[i]), Term::var("x")}),
                Formula::atom("<", {Term::var("x"), Term::param(params[i + 1])}));
            auto t = type_from_formula(S, format_formula(phi));
            Point w = realize(S, t);
            CHECK(params[i] < w);
            CHECK(w < params[i + 1]);
        }
    }
    // The limit cut over any finite batch of constants is realized (tier 1).
    auto above_all = type_from_formula(S, "c7 < x and c19 < x");
    CHECK(realize(S, above_all).tier_index() == 0);  // realized below higher constants too
}

TEST_CASE("automorphisms preserve structure on samples") {
    for (auto* Sp : {&StructureHandle::dlo(), &StructureHandle::ehr(), &StructureHandle::ex1()}) {
        const auto& S = *Sp;
        for (std::uint64_t seed = 0; seed < 12; ++seed) {
            Automorphism g = sample_automorphism(S, seed);
            SplitMix64 rng(seed * 31 + 7);
            std::vector<Point> pts;
            for (int i = 0; i < 24; ++i) pts.push_back(sample_point(S.id(), rng));
            // Order preservation.
            for (std::size_t i = 0; i < pts.size(); ++i)
                for (std::size_t j = i + 1; j < pts.size(); ++j) {
                    bool lt = pts[i] < pts[j];
                    CHECK((g.apply(pts[i]) < g.apply(pts[j])) == lt);
                }
            if (S.id() == StructureId::EHR)
                for (long k = 0; k < 6; ++k) {
                    Point c = Point::tier(Rational(k), 0);
                    CHECK(g.apply(c) == c);
                }
            if (S.id() == StructureId::EX1)
                for (auto& p : pts) {
                    if (!p.in_p1()) continue;
                    CHECK(g.apply(p).in_p1());
                    CHECK(*g.apply(p).ex1_f_image() == g.apply(*p.ex1_f_image()));
                }
        }
    }
}

TEST_CASE("automorphisms can be pinned to fix points") {
    for (auto* Sp : {&StructureHandle::dlo(), &StructureHandle::ehr(), &StructureHandle::ex1()}) {
        const auto& S = *Sp;
        SplitMix64 rng(99 + static_cast<int>(S.id()));
        std::vector<Point> fix;
        for (int i = 0; i < 3; ++i) fix.push_back(sample_point(S.id(), rng));
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            Automorphism g = sample_automorphism(S, seed, fix);
            for (auto& p : fix) CHECK(g.apply(p) == p);
        }
    }
}

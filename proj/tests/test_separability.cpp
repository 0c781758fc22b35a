#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sepmod/enumerate.hpp"
#include "sepmod/separability.hpp"

using namespace sepmod;

namespace {

Point r(std::int64_t n, std::int64_t d = 1) { return Point::rat(Rational(n, d)); }
Point eh(std::int64_t n, std::int64_t d = 1, int t = 0) { return Point::tier(Rational(n, d), t); }

Verdict check_t0(StructureId sid, std::vector<Point> A, std::vector<Point> B,
                 ZSpec z = ZSpec::empty()) {
    return criterion_t0({sid, SepMode::T0, std::move(A), std::move(B), std::move(z), "H"});
}

Verdict check_t2(StructureId sid, std::vector<Point> A, std::vector<Point> B,
                 ZSpec z = ZSpec::empty()) {
    return criterion_t2({sid, SepMode::T2, std::move(A), std::move(B), std::move(z), "H"});
}

} // namespace

TEST_CASE("t0 criterion examples") {
    CHECK(check_t0(StructureId::DLO, {r(0)}, {r(1)}).answer);

    // ex1: b = f(a) blocks one direction only.
    Point a = Point::pair(Rational(2), Rational(3));
    Point b = Point::single(Rational(2));
    auto v = check_t0(StructureId::EX1, {a}, {b});
    CHECK(!v.answer);
    REQUIRE(v.certificate.size() == 1);
    CHECK(v.certificate[0].point == b);
    CHECK(v.certificate[0].via_a == "f(@{(2,3)}) = x");
    bool noted = false;
    for (auto& n : v.notes)
        if (n.find("ex1") != std::string::npos && n.find("transposition") != std::string::npos)
            noted = true;
    CHECK(noted);
    CHECK(check_t0(StructureId::EX1, {b}, {a}).answer);

    // ehr: constants are in acl(A) but not in B, so plain T0 holds.
    CHECK(check_t0(StructureId::EHR, {eh(1, 2)}, {eh(3, 4)}).answer);
    CHECK(check_t0(StructureId::EHR, {eh(1, 2)}, {eh(3, 4)}, ZSpec::acl_empty()).answer);
    // A constant in B cannot be avoided without Z.
    CHECK(!check_t0(StructureId::EHR, {eh(1, 2)}, {eh(2)}).answer);
    CHECK_THROWS_AS(check_t0(StructureId::EHR, {eh(1, 2)}, {eh(2)}, ZSpec::acl_empty()),
                    PreconditionError);  // B within Z: definitional exclusion
}

TEST_CASE("t2 criterion examples") {
    CHECK(check_t2(StructureId::DLO, {r(0)}, {r(1)}).answer);

    // ehr: every constant lies in both closures when Z is empty.
    auto v = check_t2(StructureId::EHR, {eh(1, 2)}, {eh(3, 4)});
    CHECK(!v.answer);
    CHECK(v.certificate_all_constants);
    REQUIRE(!v.certificate.empty());
    CHECK(v.certificate[0].point.is_ehr_constant());

    CHECK(check_t2(StructureId::EHR, {eh(1, 2)}, {eh(3, 4)}, ZSpec::acl_empty()).answer);

    // Symmetry.
    for (auto zk : {ZSpec::empty(), ZSpec::acl_empty()}) {
        auto v1 = check_t2(StructureId::EHR, {eh(1, 2)}, {eh(3, 4)}, zk);
        auto v2 = check_t2(StructureId::EHR, {eh(3, 4)}, {eh(1, 2)}, zk);
        CHECK(v1.answer == v2.answer);
    }

    // Relativization monotonicity: enlarging Z keeps true verdicts true.
    Point a = eh(1, 2), b = eh(3, 4);
    auto base = check_t2(StructureId::EHR, {a}, {b}, ZSpec::acl_empty());
    auto larger = check_t2(StructureId::EHR, {a}, {b}, ZSpec::acl_of({eh(7, 8)}));
    CHECK(base.answer);
    CHECK(larger.answer);
}

TEST_CASE("t0 with Z = acl(one point)") {
    // Putting b inside Z is a definitional exclusion; putting a third point
    // there relativizes harmlessly.
    CHECK(check_t0(StructureId::DLO, {r(0)}, {r(1)}, ZSpec::acl_of({r(5)})).answer);
    CHECK_THROWS_AS(check_t0(StructureId::DLO, {r(0)}, {r(1)}, ZSpec::acl_of({r(1)})),
                    PreconditionError);
    // ex1: absorbing the f-image into Z unblocks the pair direction.
    Point a = Point::pair(Rational(2), Rational(3));
    Point b = Point::single(Rational(2));
    CHECK(check_t0(StructureId::EX1, {a}, {Point::single(Rational(7))},
                   ZSpec::acl_of({b})).answer);
}

TEST_CASE("saturated pair separability") {
    // dlo: the unique type realizes everywhere; reduces to closure disjointness.
    auto v1 = saturated_pair_separability(StructureHandle::dlo(), {r(0)}, {r(1)});
    CHECK(v1.answer);

    // ex1: fine fibers escape finite closures.
    Point a = Point::pair(Rational(2), Rational(3));
    auto v2 = saturated_pair_separability(StructureHandle::ex1(), {a},
                                          {Point::single(Rational(5))});
    CHECK(v2.answer);
    auto v3 = saturated_pair_separability(StructureHandle::ex1(), {a},
                                          {Point::single(Rational(2))});
    CHECK(!v3.answer);
    CHECK(!v3.certificate.empty());

    // ehr: conditions (1) and (2) fail together — constants lie in both
    // closures and the constant singleton types are swallowed.
    auto v4 = saturated_pair_separability(StructureHandle::ehr(), {eh(1, 2)}, {eh(3, 4)});
    CHECK(!v4.answer);
    CHECK(v4.certificate_all_constants);
    REQUIRE(v4.failing_type);
    CHECK(v4.failing_type->find("const") != std::string::npos);

    // Agreement with the t2 criterion where type coverage is automatic.
    SplitMix64 rng(5);
    for (auto* Sp : {&StructureHandle::dlo(), &StructureHandle::ex1()}) {
        for (int it = 0; it < 20; ++it) {
            std::vector<Point> A, B;
            for (int i = 0; i < 1 + static_cast<int>(rng.below(3)); ++i)
                A.push_back(sample_point(Sp->id(), rng));
            for (int i = 0; i < 1 + static_cast<int>(rng.below(3)); ++i)
                B.push_back(sample_point(Sp->id(), rng));
            bool disjoint = true;
            for (auto& x : A)
                for (auto& y : B)
                    if (x == y) disjoint = false;
            if (!disjoint) continue;
            auto sat = saturated_pair_separability(*Sp, A, B);
            auto t2 = check_t2(Sp->id(), A, B);
            CHECK(sat.answer == t2.answer);
        }
    }
}

TEST_CASE("qo equivalence report on ehr agrees sixfold") {
    ZSpec z = ZSpec::acl_empty();
    SplitMix64 rng(7);
    for (int it = 0; it < 20; ++it) {
        Point a = sample_point(StructureId::EHR, rng);
        Point b = sample_point(StructureId::EHR, rng);
        if (a == b || a.is_ehr_constant() || b.is_ehr_constant()) continue;
        auto rep = qo_equivalence_report(StructureHandle::ehr(), a, b, z);
        CHECK(rep.consistent);
        CHECK(rep.theorem_applicable);
        for (int i = 1; i <= 6; ++i) CHECK(rep.cond[i] == rep.cond[1]);
    }
}

TEST_CASE("qo equivalence report splits on the ex1 fiber pair") {
    Point a = Point::pair(Rational(2), Rational(3));
    Point b = Point::single(Rational(2));
    auto rep = qo_equivalence_report(StructureHandle::ex1(), a, b, ZSpec::empty());
    CHECK(!rep.theorem_applicable);
    CHECK(!rep.consistent);
    CHECK(rep.cond[5] == false);  // b = f(a) lies in dcl(a)
    CHECK(rep.cond[4] == true);   // a is not definable from b
    CHECK(rep.cond[6] == false);
    CHECK(rep.cond[1] == rep.cond[5]);
    CHECK(rep.cond[2] == rep.cond[4]);
    CHECK(rep.cond[3] == rep.cond[6]);

    // Unrelated pairs agree even here.
    auto rep2 = qo_equivalence_report(StructureHandle::ex1(), a,
                                      Point::single(Rational(9)), ZSpec::empty());
    CHECK(rep2.consistent);

    CHECK_THROWS_AS(qo_equivalence_report(StructureHandle::dlo(), r(0), r(0), ZSpec::empty()),
                    PreconditionError);
    CHECK_THROWS_AS(
        qo_equivalence_report(StructureHandle::ehr(), eh(2), eh(1, 2), ZSpec::acl_empty()),
        PreconditionError);  // a constant is inside Z
}

TEST_CASE("qo finite sets: matrix, aggregate, and the flag gate") {
    auto rep = qo_finite_sets(StructureHandle::dlo(), {r(0), r(1)}, {r(2), r(3)},
                              ZSpec::empty());
    CHECK(rep.verdict.answer);
    CHECK(rep.matrix.size() == 4);
    CHECK(rep.aggregate_matches_pairwise);

    auto rep2 = qo_finite_sets(StructureHandle::ehr(), {eh(1, 2)}, {eh(3, 4), eh(7, 8)},
                               ZSpec::dcl_empty());
    CHECK(rep2.verdict.answer);
    CHECK(rep2.aggregate_matches_pairwise);

    // With Z empty on ehr both sides share the constants: false, coherently.
    auto rep3 = qo_finite_sets(StructureHandle::ehr(), {eh(1, 2)}, {eh(3, 4)},
                               ZSpec::empty());
    CHECK(!rep3.verdict.answer);
    CHECK(rep3.aggregate_matches_pairwise);
    for (auto& cell : rep3.matrix) CHECK(!cell.ok);

    CHECK_THROWS_WITH_AS(
        qo_finite_sets(StructureHandle::ex1(), {Point::pair(Rational(0), Rational(0))},
                       {Point::single(Rational(1))}, ZSpec::empty()),
        "theorem hypotheses unmet: quite_o_minimal = false", PreconditionError);
}

TEST_CASE("pairwise/aggregate equivalence on samples") {
    SplitMix64 rng(13);
    for (auto* Sp : {&StructureHandle::dlo(), &StructureHandle::ehr()}) {
        for (int it = 0; it < 25; ++it) {
            std::vector<Point> A, B;
            for (int i = 0; i < 1 + static_cast<int>(rng.below(3)); ++i)
                A.push_back(sample_point(Sp->id(), rng));
            for (int i = 0; i < 1 + static_cast<int>(rng.below(3)); ++i)
                B.push_back(sample_point(Sp->id(), rng));
            ZSpec z = Sp->id() == StructureId::EHR ? ZSpec::acl_empty() : ZSpec::empty();
            ClosureSet Zc = z.materialize(*Sp);
            bool skip = false;
            for (auto& x : A)
                for (auto& y : B)
                    if (x == y && !Zc.contains(x)) skip = true;
            for (auto& x : A) skip = skip || Zc.contains(x);
            for (auto& y : B) skip = skip || Zc.contains(y);
            if (skip) continue;
            auto rep = qo_finite_sets(*Sp, A, B, z);
            CHECK(rep.aggregate_matches_pairwise);
        }
    }
}

TEST_CASE("t2 symmetry and Z-monotonicity on sampled queries") {
    SplitMix64 rng(271);
    int checked = 0;
    for (int it = 0; it < 120; ++it) {
        StructureId sid = it % 3 == 0   ? StructureId::DLO
                          : it % 3 == 1 ? StructureId::EHR
                                        : StructureId::EX1;
        const StructureHandle& S = StructureHandle::get(sid);
        Point a = sample_point(sid, rng);
        Point b = sample_point(sid, rng);
        if (a == b) continue;
        Point zp = sample_point(sid, rng);
        std::vector<ZSpec> chain = {ZSpec::empty(), ZSpec::acl_empty(), ZSpec::acl_of({zp})};
        bool prev = false, have_prev = false;
        for (auto& z : chain) {
            ClosureSet Zc = z.materialize(S);
            if (Zc.contains(a) || Zc.contains(b)) break;
            auto fwd = check_t2(sid, {a}, {b}, z);
            auto bwd = check_t2(sid, {b}, {a}, z);
            CHECK(fwd.answer == bwd.answer);  // symmetry
            if (have_prev && prev) CHECK(fwd.answer);  // monotone in Z
            prev = fwd.answer;
            have_prev = true;
            ++checked;
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("genpr coherence: closure intersection failure forces the verdict") {
    // Whenever condition (1) fails the overall answer is false regardless of
    // type coverage.
    Point a = Point::pair(Rational(2), Rational(3));
    auto v = saturated_pair_separability(StructureHandle::ex1(), {a},
                                         {Point::single(Rational(2))});
    CHECK(!v.answer);
    CHECK(!v.certificate.empty());
}

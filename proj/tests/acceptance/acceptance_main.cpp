// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Every tolerance is pinned here; the suite is deterministic end to end.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sepmod/cli.hpp"
#include "sepmod/enumerate.hpp"
#include "sepmod/jsonio.hpp"

using namespace sepmod;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& what) {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << criterion << ": " << what
              << std::endl;
    if (!ok) ++failures;
}

bool contains_atom(const AtomSet& s, Atom a) {
    return std::find(s.begin(), s.end(), a) != s.end();
}

// ── 1. Combinatorial definitions on fuzzed hypergraphs ───────────────────

void criterion1() {
    SplitMix64 rng(0xC1);
    int violations = 0;
    int graphs = 0;
    while (graphs < 1000) {
        std::size_t n = 2 + rng.below(7);  // |X| <= 8
        AtomSet X;
        for (std::size_t i = 0; i < n; ++i) X.push_back(static_cast<Atom>(i));
        std::vector<AtomSet> Y;
        std::size_t edges = rng.below(13);  // |Y| <= 12
        for (std::size_t e = 0; e < edges; ++e) {
            AtomSet y;
            for (Atom a : X)
                if (rng.coin()) y.push_back(a);
            Y.push_back(std::move(y));
        }
        Hypergraph H = Hypergraph::make(X, Y);
        ++graphs;

        Atom x1 = X[rng.below(X.size())];
        Atom x2 = X[rng.below(X.size())];
        if (x1 == x2) continue;
        AtomSet Z;
        for (Atom a : X)
            if (a != x1 && a != x2 && rng.below(3) == 0) Z.push_back(a);

        // Z = {} reduction against the plain definitions, inlined.
        bool plain_t0 = false, plain_t2 = false;
        for (auto& y : H.Y)
            if (contains_atom(y, x1) && !contains_atom(y, x2)) plain_t0 = true;
        for (auto& y1 : H.Y)
            for (auto& y2 : H.Y) {
                if (!contains_atom(y1, x1) || !contains_atom(y2, x2)) continue;
                bool disjoint = true;
                for (Atom a : y1)
                    if (contains_atom(y2, a)) disjoint = false;
                if (disjoint) plain_t2 = true;
            }
        if (t0_separable(H, x1, x2, {}).verdict != plain_t0) ++violations;
        if (t2_separable(H, x1, x2, {}).verdict != plain_t2) ++violations;

        // T2 implies both T0 directions.
        bool t2 = t2_separable(H, x1, x2, Z).verdict;
        if (t2 && (!t0_separable(H, x1, x2, Z).verdict || !t0_separable(H, x2, x1, Z).verdict))
            ++violations;

        // Element/set coherence.
        if (t0_separable(H, x1, x2, Z).verdict != set_t0_separable(H, {x1}, {x2}, Z).verdict)
            ++violations;

        // Z-monotonicity.
        AtomSet Z2 = Z;
        for (Atom a : X)
            if (a != x1 && a != x2 && rng.coin() && !contains_atom(Z2, a)) Z2.push_back(a);
        if (t0_separable(H, x1, x2, Z).verdict && !t0_separable(H, x1, x2, Z2).verdict)
            ++violations;
        if (t2 && !t2_separable(H, x1, x2, Z2).verdict) ++violations;
    }
    std::ostringstream what;
    what << "combinatorial definitions on " << graphs
         << " fuzzed hypergraphs (reduction, T2=>T0, Z-monotonicity, element/set "
            "coherence), violations = "
         << violations;
    report(1, violations == 0, what.str());
}

// ── 2. Criterion/constructive equivalence over the query grid ────────────

struct GridQuery {
    std::string structure, mode, z;
    std::string a, b;
};

std::vector<GridQuery> make_grid() {
    std::vector<GridQuery> qs;
    auto add = [&](const std::string& s, const std::string& a, const std::string& b,
                   const std::string& zp) {
        for (std::string mode : {"t0", "t2"})
            for (std::string z : {std::string("empty"), std::string("acl-empty"),
                                  std::string("acl:") + zp})
                qs.push_back({s, mode, z, a, b});
    };
    add("dlo", "@{0}", "@{1}", "@{100}");
    add("dlo", "@{-3}", "@{1/2}", "@{100}");
    add("ehr", "@{1/2;0}", "@{3/4;0}", "@{100;1}");
    add("ehr", "@{5/4;0}", "@{0;1}", "@{100;1}");
    add("ex1", "@{(2,3)}", "@{2:P2}", "@{(100,100)}");   // blocked direction
    add("ex1", "@{2:P2}", "@{(2,3)}", "@{(100,100)}");   // open direction
    add("ex1", "@{(2,3)}", "@{5:P2}", "@{(100,100)}");
    add("ex1", "@{(2,3)}", "@{(3,4)}", "@{(100,100)}");
    add("ehr", "@{2;0}", "@{3/4;0}", "@{100;1}");        // a is a constant
    add("dlo", "@{0},@{1}", "@{2},@{3}", "@{100}");      // set form
    add("dlo", "@{7}", "@{-2}", "@{100}");
    add("ex1", "@{1:P2}", "@{3:P2}", "@{(100,100)}");
    return qs;
}

void criterion2() {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "sepmod_acceptance";
    fs::create_directories(dir);
    auto qs = make_grid();
    int mismatches = 0, verify_failures = 0, exact_failures = 0, usable = 0;
    for (std::size_t i = 0; i < qs.size(); ++i) {
        const auto& q = qs[i];
        std::ostringstream out, err;
        int check_code = cli::run({"check", "--structure", q.structure, "--mode", q.mode,
                                   "--a", q.a, "--b", q.b, "--z", q.z},
                                  out, err);
        if (check_code == 2) continue;  // grid rows violating a precondition are skipped
        ++usable;
        std::string desc_path = (dir / ("d" + std::to_string(i) + ".json")).string();
        std::ostringstream bout, berr;
        int build_code = cli::run({"build", "--structure", q.structure, "--mode", q.mode,
                                   "--a", q.a, "--b", q.b, "--z", q.z, "--out", desc_path},
                                  bout, berr);
        if ((check_code == 0) != (build_code == 0)) {
            ++mismatches;
            continue;
        }
        if (build_code != 0) continue;

        std::ostringstream vout, verr;
        int verify_code = cli::run({"verify", "--file", desc_path, "--depth", "2",
                                    "--samples", "500", "--seed", "7"},
                                   vout, verr);
        if (verify_code != 0) ++verify_failures;

        // b-exclusion and acl-inclusion, checked exactly on the payload.
        Json payload = Json::parse(std::ifstream(desc_path));
        auto exact = [&](const Json& dj) {
            SubmodelDescription d = description_from_json(dj);
            for (auto& p : d.contains.listed())
                if (!d.member(p)) ++exact_failures;
            for (auto& p : d.excludes)
                if (d.member(p)) ++exact_failures;
        };
        if (payload.contains("description")) exact(payload["description"]);
        if (payload.contains("a_side")) exact(payload["a_side"]);
        if (payload.contains("b_side")) exact(payload["b_side"]);
    }
    fs::remove_all(dir);
    std::ostringstream what;
    what << "check/build/verify coherence over " << usable << " grid queries (>= 60): "
         << mismatches << " mismatches, " << verify_failures << " verification failures, "
         << exact_failures << " exact-containment failures";
    report(2, usable >= 60 && mismatches == 0 && verify_failures == 0 && exact_failures == 0,
           what.str());
}

// ── 3. The ex1 asymmetry, exact ──────────────────────────────────────────

void criterion3() {
    const auto& S = StructureHandle::ex1();
    bool ok = true;
    std::string missing;
    auto t0 = [&](Point a, Point b) {
        return criterion_t0({S.id(), SepMode::T0, {a}, {b}, ZSpec::empty(), "H"});
    };
    auto t2 = [&](Point a, Point b) {
        return criterion_t2({S.id(), SepMode::T2, {a}, {b}, ZSpec::empty(), "H"});
    };
    std::vector<Point> as = {Point::pair(Rational(2), Rational(3)),
                             Point::pair(Rational(-1, 2), Rational(7)),
                             Point::pair(Rational(0), Rational(0))};
    for (auto& a : as) {
        Point b = *a.ex1_f_image();
        Verdict forward = t0(a, b);
        Verdict backward = t0(b, a);
        Verdict both = t2(a, b);
        ok = ok && !forward.answer && backward.answer && !both.answer;
        bool cites = false;
        for (auto& n : forward.notes)
            if (n.find("ex1") != std::string::npos &&
                n.find("transposition") != std::string::npos)
                cites = true;
        if (!cites) {
            ok = false;
            missing = "; certificate missing the ex1/transposition note";
        }
    }
    // Distinct fibers: all three verdicts true.
    std::vector<std::pair<Point, Point>> free_pairs = {
        {Point::pair(Rational(2), Rational(3)), Point::single(Rational(5))},
        {Point::pair(Rational(-1), Rational(0)), Point::single(Rational(1, 2))},
    };
    for (auto& [a, b] : free_pairs)
        ok = ok && t0(a, b).answer && t0(b, a).answer && t2(a, b).answer;
    report(3, ok,
           "ex1 fiber asymmetry exact on all tested pairs, certificates cite the example "
           "and the suspected transposition" + missing);
}

// ── 4. Six-way equivalence report ────────────────────────────────────────

void criterion4() {
    SplitMix64 rng(0xC4);
    int agree = 0, sampled = 0;
    bool flags_ok = true;
    while (sampled < 20) {
        Point a = sample_point(StructureId::EHR, rng);
        Point b = sample_point(StructureId::EHR, rng);
        if (a == b || a.is_ehr_constant() || b.is_ehr_constant()) continue;
        ++sampled;
        auto rep = qo_equivalence_report(StructureHandle::ehr(), a, b, ZSpec::acl_empty());
        if (rep.consistent) ++agree;
        flags_ok = flags_ok && rep.theorem_applicable;
    }
    Point a = Point::pair(Rational(2), Rational(3));
    auto split = qo_equivalence_report(StructureHandle::ex1(), a, *a.ex1_f_image(),
                                       ZSpec::empty());
    bool split_ok = !split.consistent && split.cond[4] != split.cond[5] &&
                    !split.theorem_applicable;
    std::ostringstream what;
    what << "six-way report: " << agree << "/20 ehr pairs fully consistent with Z = acl({}); "
         << "ex1 fiber pair splits (4) != (5) with flag false";
    report(4, agree == 20 && flags_ok && split_ok, what.str());
}

// ── 5. Two-condition criterion vs the closure criterion ──────────────────

void criterion5() {
    SplitMix64 rng(0xC5);
    int agreements = 0, sampled = 0;
    for (auto* Sp : {&StructureHandle::dlo(), &StructureHandle::ex1()}) {
        int per = 0;
        while (per < 10) {
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
            ++per;
            ++sampled;
            Verdict sat = saturated_pair_separability(*Sp, A, B);
            Verdict t2 = criterion_t2({Sp->id(), SepMode::T2, A, B, ZSpec::empty(), "H"});
            if (sat.answer == t2.answer) ++agreements;
        }
    }
    // The ehr constant-type case: conditions (1) and (2) fail together.
    Verdict ehr = saturated_pair_separability(StructureHandle::ehr(),
                                              {Point::tier(Rational(1, 2), 0)},
                                              {Point::tier(Rational(3, 4), 0)});
    bool ehr_ok = !ehr.answer && ehr.certificate_all_constants && ehr.failing_type &&
                  ehr.failing_type->find("const") != std::string::npos;
    std::ostringstream what;
    what << "two-condition criterion agrees with the closure criterion on " << agreements
         << "/" << sampled << " sampled (A, B); ehr exercises the type-coverage certificate "
         << "with conditions (1) and (2) failing together";
    report(5, agreements == sampled && ehr_ok, what.str());
}

// ── 6. Closure soundness via automorphisms; exchange verdicts ────────────

void criterion6() {
    int violations = 0;
    for (auto* Sp : {&StructureHandle::dlo(), &StructureHandle::ehr(), &StructureHandle::ex1()}) {
        SplitMix64 rng(0xC6 + static_cast<int>(Sp->id()));
        for (int set = 0; set < 50; ++set) {
            std::vector<Point> A;
            for (int i = 0; i < 1 + static_cast<int>(rng.below(3)); ++i)
                A.push_back(sample_point(Sp->id(), rng));
            ClosureSet cd = dcl(*Sp, A);
            ClosureSet ca = acl(*Sp, A);
            for (std::uint64_t s = 0; s < 2; ++s) {  // 100 automorphisms per structure
                Automorphism g = sample_automorphism(*Sp, rng.next() ^ s, A);
                for (auto& p : A)
                    if (!(g.apply(p) == p)) ++violations;
                for (auto& p : cd.listed())
                    if (!(g.apply(p) == p)) ++violations;  // dcl fixed pointwise
                for (auto& p : ca.listed())
                    if (!in_closure(ca, g.apply(p))) ++violations;  // acl fixed setwise
            }
        }
    }
    // Exchange verdicts per entry.
    SplitMix64 rng(0x6C);
    bool exchange_ok = true;
    for (auto* Sp : {&StructureHandle::dlo(), &StructureHandle::ehr()})
        for (int it = 0; it < 40; ++it) {
            Point a = sample_point(Sp->id(), rng);
            Point b = sample_point(Sp->id(), rng);
            if (a == b) continue;
            exchange_ok = exchange_ok && exchange_check(*Sp, a, b).holds;
        }
    for (int it = 0; it < 10; ++it) {
        Rational q = rng.rational(), m = rng.rational();
        Point a = Point::pair(q, m);
        exchange_ok =
            exchange_ok && !exchange_check(StructureHandle::ex1(), a, *a.ex1_f_image()).holds;
    }
    std::ostringstream what;
    what << "automorphism sampling (100 per structure, 50 parameter sets): " << violations
         << " closure violations; exchange holds on dlo/ehr samples and fails on ex1 "
            "fiber pairs";
    report(6, violations == 0 && exchange_ok, what.str());
}

// ── 7. Pairwise/aggregate equivalence for finite sets ────────────────────

void criterion7() {
    SplitMix64 rng(0xC7);
    int agree = 0, sampled = 0;
    for (auto* Sp : {&StructureHandle::dlo(), &StructureHandle::ehr()}) {
        int per = 0;
        while (per < 25) {
            std::vector<Point> A, B;
            for (int i = 0; i < 1 + static_cast<int>(rng.below(3)); ++i)
                A.push_back(sample_point(Sp->id(), rng));
            for (int i = 0; i < 1 + static_cast<int>(rng.below(3)); ++i)
                B.push_back(sample_point(Sp->id(), rng));
            ZSpec z = Sp->id() == StructureId::EHR ? ZSpec::dcl_empty() : ZSpec::empty();
            ClosureSet Zc = z.materialize(*Sp);
            bool skip = false;
            for (auto& x : A)
                for (auto& y : B)
                    if (x == y && !Zc.contains(x)) skip = true;
            for (auto& x : A) skip = skip || Zc.contains(x);
            for (auto& y : B) skip = skip || Zc.contains(y);
            if (skip) continue;
            ++per;
            ++sampled;
            if (qo_finite_sets(*Sp, A, B, z).aggregate_matches_pairwise) ++agree;
        }
    }
    bool gate_ok = false;
    try {
        qo_finite_sets(StructureHandle::ex1(), {Point::pair(Rational(0), Rational(0))},
                       {Point::single(Rational(1))}, ZSpec::empty());
    } catch (const PreconditionError& e) {
        gate_ok = std::string(e.what()).find("quite_o_minimal = false") != std::string::npos;
    }
    std::ostringstream what;
    what << "aggregate and pairwise criteria agree on " << agree << "/" << sampled
         << " sampled finite sets; ex1 refused with the flag-gate diagnostic";
    report(7, agree == sampled && sampled == 50 && gate_ok, what.str());
}

// ── 8. Negative controls ─────────────────────────────────────────────────

void criterion8() {
    int caught = 0, runs = 0;
    // Interval-gap candidate over dlo.
    SubmodelDescription gap(StructureId::DLO);
    {
        ClosedForm cf;
        cf.kind = ClosedForm::Kind::Complement;
        cf.sid = StructureId::DLO;
        cf.removed = DefinableSet::from_pieces(
            StructureId::DLO,
            {{Bound::after(Point::rat(Rational(0))), Bound::before(Point::rat(Rational(1)))}});
        gap.closed_form = cf;
        gap.contains = acl(StructureHandle::dlo(), {Point::rat(Rational(0)), Point::rat(Rational(1))});
        gap.complete = true;
    }
    // Fiber-breaking candidate over ex1.
    SubmodelDescription fib(StructureId::EX1);
    {
        ClosedForm cf;
        cf.kind = ClosedForm::Kind::Complement;
        cf.sid = StructureId::EX1;
        cf.removed = DefinableSet::singleton(Point::single(Rational(2)));
        fib.closed_form = cf;
        fib.contains =
            acl(StructureHandle::ex1(), {Point::pair(Rational(2), Rational(3))});
        fib.complete = true;
    }
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        for (auto* d : {&gap, &fib}) {
            ++runs;
            auto rep = tarski_vaught_verify(*d, 2, 500, seed);
            if (rep.status == TvReport::Status::Fail &&
                (rep.counterexample || !rep.contains_ok))
                ++caught;
        }
    }
    std::ostringstream what;
    what << "negative controls (interval gap, fiber break) rejected with counterexamples in "
         << caught << "/" << runs << " runs across 10 seeds";
    report(8, caught == runs, what.str());
}

} // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    std::cout << (failures == 0 ? "ACCEPTANCE: all criteria pass"
                                : "ACCEPTANCE: " + std::to_string(failures) + " criteria failed")
              << std::endl;
    return failures == 0 ? 0 : 1;
}

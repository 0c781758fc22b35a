#include "sepmod/modelbuilder.hpp"

#include <algorithm>
#include <set>

#include "sepmod/enumerate.hpp"

namespace sepmod {

// ── Dense side families ──────────────────────────────────────────────────

bool side_family(int side, const Rational& q) {
    return side == 0 ? q.den() % 2 == 1 : q.den() % 4 == 2;
}

namespace {

struct Window {
    bool lo_inf = true, hi_inf = true;
    Rational lo, hi;
};

// Family rationals inside the open window, densest-first; the grids j/3^k
// (side 0) and j/(2*3^k) (side 1) are dense and constructive.
std::vector<Rational> family_candidates(int side, const Window& w, std::size_t want) {
    Rational lo = w.lo_inf ? (w.hi_inf ? Rational(-1) : w.hi - Rational(2)) : w.lo;
    Rational hi = w.hi_inf ? lo + Rational(2) : w.hi;
    std::vector<Rational> out;
    if (!(lo < hi)) return out;
    Rational width = hi - lo;
    // Refine the grid until several points land inside the window.
    std::int64_t scale = side == 0 ? 1 : 2;
    int guard = 0;
    while (Rational(scale) * width < Rational(8) && guard++ < 38) scale *= 3;
    // Candidates j / scale with j coprime to the non-unit part.
    Rational lo_scaled = lo * Rational(scale);
    std::int64_t j = lo_scaled.floor() + 1;
    for (int step = 0; step < 64 && out.size() < want; ++step, ++j) {
        Rational cand(j, scale);
        if (!(lo < cand && cand < hi)) {
            if (!(cand < hi)) break;
            continue;
        }
        if (side_family(side, cand)) out.push_back(cand);
    }
    return out;
}

Window window_from(const std::optional<Rational>& lo, const std::optional<Rational>& hi) {
    Window w;
    if (lo) { w.lo_inf = false; w.lo = *lo; }
    if (hi) { w.hi_inf = false; w.hi = *hi; }
    return w;
}

} // namespace

// ── ClosedForm ───────────────────────────────────────────────────────────

bool ClosedForm::contains(const Point& p) const {
    if (kind == Kind::Complement) return !removed.contains(p);
    for (auto& q : include)
        if (q == p) return true;
    if (sid == StructureId::EHR && p.is_ehr_constant()) return with_constants;
    for (auto& q : exclude)
        if (q == p) return false;
    switch (sid) {
        case StructureId::DLO:
        case StructureId::EHR:
            return side_family(side, p.x());
        default:
            if (p.in_p2()) return side_family(side, p.x());
            return contains(Point::single(p.x())) && side_family(side, p.y());
    }
}

namespace {

// Decoded coordinate of a bound within one region, nullopt meaning
// unbounded on that side.
std::optional<Rational> anchor_value(const Bound& b) {
    if (b.kind == Bound::Kind::BeforePoint || b.kind == Bound::Kind::AfterPoint)
        return b.p->x();
    if (b.kind == Bound::Kind::FiberStart || b.kind == Bound::Kind::FiberEnd) return b.q;
    return std::nullopt;
}

} // namespace

std::optional<Point> ClosedForm::find_member(const DefinableSet& within) const {
    if (kind == Kind::Complement) return within.subtract(removed).sample();

    StructureId s = sid;
    for (auto& pc : within.pieces()) {
        // Listed members first, then the singleton's own point.
        for (auto& p : include)
            if (pc.contains(s, p) && contains(p)) return p;
        if (pc.is_singleton()) {
            if (contains(*pc.lo.p)) return *pc.lo.p;
            continue;
        }
        if (s == StructureId::EHR && with_constants)
            if (auto c = first_constant_in(DefinableSet::from_pieces(s, {pc})))
                if (contains(*c)) return *c;

        auto try_point = [&](const Point& p) -> std::optional<Point> {
            if (pc.contains(s, p) && contains(p)) return p;
            return std::nullopt;
        };

        if (s == StructureId::DLO) {
            Window w = window_from(anchor_value(pc.lo), anchor_value(pc.hi));
            for (auto& q : family_candidates(side, w, 24))
                if (auto r = try_point(Point::rat(q))) return r;
            continue;
        }

        if (s == StructureId::EHR) {
            int lo_tier = pc.lo.p ? pc.lo.p->tier_index() : 0;
            int hi_tier = pc.hi.p ? pc.hi.p->tier_index() : 1;
            for (int t = lo_tier; t <= hi_tier; ++t) {
                auto wlo = (pc.lo.p && lo_tier == t) ? anchor_value(pc.lo) : std::nullopt;
                auto whi = (pc.hi.p && hi_tier == t) ? anchor_value(pc.hi) : std::nullopt;
                for (auto& q : family_candidates(side, window_from(wlo, whi), 24))
                    if (auto r = try_point(Point::tier(q, t))) return r;
            }
            continue;
        }

        // ex1: split the piece into its P1 and P2 zones.
        bool lo_in_p1 = compare_bounds(s, pc.lo, Bound::sort_split()) < 0;
        bool hi_in_p2 = compare_bounds(s, Bound::sort_split(), pc.hi) < 0;
        bool lo_is_p2_anchor = pc.lo.p && pc.lo.p->in_p2();
        bool hi_is_p1_anchor =
            (pc.hi.p && pc.hi.p->in_p1()) || pc.hi.kind == Bound::Kind::FiberStart ||
            pc.hi.kind == Bound::Kind::FiberEnd;

        if (lo_in_p1) {
            auto lo_fiber = anchor_value(pc.lo);
            auto hi_fiber = hi_is_p1_anchor ? anchor_value(pc.hi) : std::nullopt;
            bool lo_mid_fiber =
                pc.lo.kind == Bound::Kind::BeforePoint || pc.lo.kind == Bound::Kind::AfterPoint ||
                pc.lo.kind == Bound::Kind::FiberStart;
            bool hi_mid_fiber =
                (pc.hi.kind == Bound::Kind::BeforePoint && pc.hi.p->in_p1()) ||
                (pc.hi.kind == Bound::Kind::AfterPoint && pc.hi.p->in_p1()) ||
                pc.hi.kind == Bound::Kind::FiberEnd;

            bool same_fiber = lo_fiber && hi_fiber && *lo_fiber == *hi_fiber;
            if (same_fiber) {
                // Entirely inside one fiber: vary the second coordinate.
                auto wlo = pc.lo.kind == Bound::Kind::FiberStart
                               ? std::nullopt
                               : std::optional<Rational>(pc.lo.p->y());
                auto whi = pc.hi.kind == Bound::Kind::FiberEnd
                               ? std::nullopt
                               : std::optional<Rational>(pc.hi.p->y());
                for (auto& q2 : family_candidates(side, window_from(wlo, whi), 24))
                    if (auto r = try_point(Point::pair(*lo_fiber, q2))) return r;
            } else {
                // Tail of the lower fiber.
                if (lo_fiber && lo_mid_fiber) {
                    auto wlo = pc.lo.kind == Bound::Kind::FiberStart
                                   ? std::nullopt
                                   : std::optional<Rational>(pc.lo.p->y());
                    for (auto& q2 : family_candidates(side, window_from(wlo, std::nullopt), 12))
                        if (auto r = try_point(Point::pair(*lo_fiber, q2))) return r;
                }
                // Head of the upper fiber.
                if (hi_fiber && hi_mid_fiber) {
                    auto whi = pc.hi.kind == Bound::Kind::FiberEnd
                                   ? std::nullopt
                                   : std::optional<Rational>(pc.hi.p->y());
                    for (auto& q2 : family_candidates(side, window_from(std::nullopt, whi), 12))
                        if (auto r = try_point(Point::pair(*hi_fiber, q2))) return r;
                }
                // Whole fibers strictly between: family fibers and the
                // fibers of listed P2 members.
                Window fw = window_from(lo_fiber, hi_fiber);
                for (auto& q1 : family_candidates(side, fw, 12))
                    for (auto& q2 : family_candidates(side, window_from(std::nullopt, std::nullopt), 6))
                        if (auto r = try_point(Point::pair(q1, q2))) return r;
                for (auto& p : include) {
                    if (!p.in_p2()) continue;
                    for (auto& q2 : family_candidates(side, window_from(std::nullopt, std::nullopt), 6))
                        if (auto r = try_point(Point::pair(p.x(), q2))) return r;
                }
            }
        }
        if (hi_in_p2) {
            auto wlo = lo_is_p2_anchor ? anchor_value(pc.lo) : std::nullopt;
            auto whi = pc.hi.p && pc.hi.p->in_p2() ? anchor_value(pc.hi) : std::nullopt;
            for (auto& q : family_candidates(side, window_from(wlo, whi), 24))
                if (auto r = try_point(Point::single(q))) return r;
        }
    }
    return std::nullopt;
}

std::string ClosedForm::describe() const {
    if (kind == Kind::Complement) {
        if (removed.empty()) return "M";
        return "M \\ (" + removed.str() + ")";
    }
    std::string fam = side == 0 ? "odd reduced denominator"
                                : "reduced denominator = 2 (mod 4)";
    std::string s = "dense side carrier " + std::to_string(side) + " (" + fam + ")";
    if (with_constants) s += " u { all constants }";
    s += " u listed closure, minus the twin's closure";
    return s;
}

// ── SubmodelDescription ──────────────────────────────────────────────────

bool SubmodelDescription::member(const Point& p) const {
    if (!closed_form) throw std::logic_error("description has no closed form");
    return closed_form->contains(p);
}

bool SubmodelDescription::in_z(const Point& p) const {
    for (auto& q : z_points)
        if (q == p) return true;
    return z_constants && p.is_ehr_constant();
}

// ── choose_witness ───────────────────────────────────────────────────────

namespace {

int piece_rank(StructureId sid, const ConvexPiece& pc, Rational& width) {
    if (pc.is_singleton()) return 0;
    auto lo = anchor_value(pc.lo);
    auto hi = anchor_value(pc.hi);
    if (!lo || !hi) return 2;
    if (sid == StructureId::EHR && pc.lo.p && pc.hi.p &&
        pc.lo.p->tier_index() != pc.hi.p->tier_index())
        return 2;
    if (sid == StructureId::EX1) {
        bool lo_p1 = compare_bounds(sid, pc.lo, Bound::sort_split()) < 0;
        bool hi_p1 = compare_bounds(sid, pc.hi, Bound::sort_split()) < 0;
        if (lo_p1 != hi_p1) return 2;
        if (lo_p1) {
            if (!(*lo == *hi)) return 2;  // spans whole fibers
            bool lo_edge = pc.lo.kind == Bound::Kind::FiberStart;
            bool hi_edge = pc.hi.kind == Bound::Kind::FiberEnd;
            if (lo_edge || hi_edge) return 2;
            width = pc.hi.p->y() - pc.lo.p->y();
            return 1;
        }
    }
    width = *hi - *lo;
    return 1;
}

std::optional<Point> widest_piece_sample(const DefinableSet& d) {
    const ConvexPiece* best = nullptr;
    int best_rank = -1;
    Rational best_width(0);
    for (auto& pc : d.pieces()) {
        Rational w(0);
        int r = piece_rank(d.structure(), pc, w);
        if (r > best_rank || (r == best_rank && r == 1 && best_width < w)) {
            best = &pc;
            best_rank = r;
            best_width = w;
        }
    }
    if (!best) return std::nullopt;
    return sample_between(d.structure(), best->lo, best->hi);
}

std::string points_str(const std::vector<Point>& pts) {
    std::string s = "{";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) s += ", ";
        s += pts[i].literal();
    }
    return s + "}";
}

} // namespace

WitnessChoice choose_witness(const StructureHandle& S, const Formula& phi,
                             const std::map<std::string, Point>& params,
                             const ForbiddenSet& forbidden, const ClosureSet& Z,
                             const ClosedForm* carrier) {
    Formula inst = substitute(phi, params);
    DefinableSet sol = definable_set(S, inst);
    std::string text = format_formula(inst);
    if (sol.empty()) throw WitnessFailure("witness requested for inconsistent formula " + text);

    // First case: the solution set meets Z.
    for (auto& z : Z.listed())
        if (sol.contains(z))
            return {text, z, "taken from Z: " + z.literal() + " solves " + text};
    if (Z.intensional_constants())
        if (auto c = first_constant_in(sol))
            return {text, *c, "taken from Z: constant " + c->literal() + " solves " + text};

    if (forbidden.all_constants && !Z.intensional_constants())
        throw WitnessFailure(
            "forbidden set contains the whole constant family but Z does not absorb it; "
            "the separator criterion cannot have held for " + text);

    // Remove everything whose closure contribution could reach the
    // forbidden side: the forbidden points themselves and, on ex1, the
    // fibers over forbidden P2 points (f(c) must stay clear too).
    std::vector<ConvexPiece> avoid;
    for (auto& p : forbidden.points) {
        if (Z.contains(p)) continue;
        avoid.push_back({Bound::before(p), Bound::after(p)});
        if (S.id() == StructureId::EX1 && p.in_p2())
            avoid.push_back({Bound::fiber_start(p.x()), Bound::fiber_end(p.x())});
    }
    DefinableSet admissible =
        sol.subtract(DefinableSet::from_pieces(S.id(), std::move(avoid)));

    std::optional<Point> w =
        carrier ? carrier->find_member(admissible) : widest_piece_sample(admissible);
    if (!w)
        throw WitnessFailure("no admissible witness for " + text + "; solution " + sol.str() +
                             ", admissible " + admissible.str() +
                             " — the criterion hypothesis must have been violated");

    // Re-verify the closure-avoidance check explicitly for the transcript.
    std::vector<Point> ext;
    for (auto& [k, v] : params) ext.push_back(v);
    ext.push_back(*w);
    for (auto& z : Z.listed()) ext.push_back(z);
    ClosureSet grown = acl(S, ext);
    for (auto& p : forbidden.points)
        if (grown.contains(p) && !Z.contains(p))
            throw WitnessFailure("witness " + w->literal() + " for " + text +
                                 " drags forbidden point " + p.literal() +
                                 " into the closure");
    std::string check = "chose " + w->literal() + " in " + text +
                        "; acl(params u {witness} u Z) avoids " +
                        points_str(forbidden.points) + " modulo Z";
    return {text, *w, check};
}

// ── Builders ─────────────────────────────────────────────────────────────

namespace {

std::vector<Point> closure_union(const ClosureSet& c, const ClosureSet& z) {
    std::vector<Point> out = c.listed();
    for (auto& p : z.listed())
        if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    return out;
}

struct Chain {
    std::vector<Point> carrier;
    std::set<std::string> processed;
};

// One staged step: pick the next unprocessed consistent formula over the
// carrier, realize it inside the carrier or extend by a certified witness.
std::optional<Stage> chain_step(const StructureHandle& S, Chain& chain,
                                const ForbiddenSet& forbidden, const ClosureSet& Z,
                                const ClosedForm* carrier_form, int index, int side) {
    FormulaEnumerator en(S, chain.carrier, 2);
    auto formulas = en.generate(chain.processed.size() + 48);
    for (auto& phi : formulas) {
        std::string text = format_formula(phi);
        if (chain.processed.count(text)) continue;
        chain.processed.insert(text);

        DefinableSet sol = definable_set(S, phi);
        if (sol.empty()) continue;  // only consistent formulas are processed

        Stage st;
        st.index = index;
        st.side = side;

        std::optional<Point> realizer;
        for (auto& p : chain.carrier)
            if (sol.contains(p)) { realizer = p; break; }
        if (!realizer && Z.intensional_constants()) realizer = first_constant_in(sol);

        if (realizer) {
            st.processed = {text, "already-realized", realizer, ""};
            st.carrier_size = chain.carrier.size();
            return st;
        }

        WitnessChoice wc = choose_witness(S, phi, {}, forbidden, Z, carrier_form);
        std::vector<Point> grown = chain.carrier;
        grown.push_back(wc.chosen);
        std::vector<Point> closed = acl(S, grown).listed();
        for (auto& p : closed)
            if (std::find(chain.carrier.begin(), chain.carrier.end(), p) == chain.carrier.end())
                st.added.push_back(p);
        bool from_z = Z.contains(wc.chosen);
        st.processed = {text, from_z ? "taken-from-Z" : "witness-added", wc.chosen, wc.check};
        chain.carrier = std::move(closed);
        st.carrier_size = chain.carrier.size();
        return st;
    }
    return std::nullopt;  // enumeration exhausted at this carrier size
}

} // namespace

SubmodelDescription build_t0_separator(const StructureHandle& S, const std::vector<Point>& A,
                                       const std::vector<Point>& B, const ZSpec& zspec,
                                       int budget) {
    SeparabilityQuery q{S.id(), SepMode::T0, A, B, zspec, "H"};
    Verdict v = criterion_t0(q);
    if (!v.answer) throw BuildRefusal(std::move(v));

    ClosureSet Z = zspec.materialize(S);
    SubmodelDescription desc(S.id());
    desc.contains = acl(S, closure_union(acl(S, A), Z));
    for (auto& b : B)
        if (!Z.contains(b)) desc.excludes.push_back(b);
    desc.z_points = Z.listed();
    desc.z_constants = Z.intensional_constants();
    desc.z_description = zspec.describe();

    // Closed form: remove the excluded points and, on ex1, the entire fiber
    // over each excluded P2 point so the carrier stays f-closed.
    std::vector<ConvexPiece> removed;
    for (auto& b : desc.excludes) {
        removed.push_back({Bound::before(b), Bound::after(b)});
        if (S.id() == StructureId::EX1 && b.in_p2())
            removed.push_back({Bound::fiber_start(b.x()), Bound::fiber_end(b.x())});
    }
    ClosedForm cf;
    cf.kind = ClosedForm::Kind::Complement;
    cf.sid = S.id();
    cf.removed = DefinableSet::from_pieces(S.id(), std::move(removed));
    desc.closed_form = std::move(cf);

    Chain chain{desc.contains.listed(), {}};
    ForbiddenSet forbidden = ForbiddenSet::of(desc.excludes);
    for (int i = 0; i < budget; ++i) {
        auto st = chain_step(S, chain, forbidden, Z, &*desc.closed_form, i, 0);
        if (!st) break;
        desc.stages.push_back(std::move(*st));
    }
    desc.complete = true;
    return desc;
}

std::pair<SubmodelDescription, SubmodelDescription> build_t2_separators(
    const StructureHandle& S, const std::vector<Point>& A, const std::vector<Point>& B,
    const ZSpec& zspec, int budget) {
    SeparabilityQuery q{S.id(), SepMode::T2, A, B, zspec, "H"};
    Verdict v = criterion_t2(q);
    if (!v.answer) throw BuildRefusal(std::move(v));

    ClosureSet Z = zspec.materialize(S);
    ClosureSet CA = acl(S, closure_union(acl(S, A), Z));
    ClosureSet CB = acl(S, closure_union(acl(S, B), Z));
    std::vector<Point> Xa = CA.listed();
    std::vector<Point> Xb = CB.listed();

    auto make_side = [&](int side, const ClosureSet& own, const std::vector<Point>& own_pts,
                         const std::vector<Point>& other_pts) {
        SubmodelDescription d(S.id());
        d.contains = own;
        for (auto& p : other_pts)
            if (!Z.contains(p)) d.excludes.push_back(p);
        d.z_points = Z.listed();
        d.z_constants = Z.intensional_constants();
        d.z_description = zspec.describe();
        ClosedForm cf;
        cf.kind = ClosedForm::Kind::SideDense;
        cf.sid = S.id();
        cf.side = side;
        cf.include = own_pts;
        cf.exclude = other_pts;
        cf.with_constants = Z.intensional_constants();
        d.closed_form = std::move(cf);
        return d;
    };
    SubmodelDescription da = make_side(0, CA, Xa, Xb);
    SubmodelDescription db = make_side(1, CB, Xb, Xa);

    // Alternate the twin chains; each witness avoids the other chain's
    // current closure modulo Z.
    Chain ca{Xa, {}};
    Chain cb{Xb, {}};
    for (int i = 0; i < budget; ++i) {
        bool a_side = i % 2 == 0;
        Chain& own = a_side ? ca : cb;
        Chain& other = a_side ? cb : ca;
        SubmodelDescription& d = a_side ? da : db;
        auto st = chain_step(S, own, ForbiddenSet::of(other.carrier), Z,
                             &*d.closed_form, i, a_side ? 0 : 1);
        if (!st) break;
        d.stages.push_back(std::move(*st));
        // Twin disjointness of the carriers modulo Z, kept at every stage.
        for (auto& p : own.carrier)
            if (!Z.contains(p) &&
                std::find(other.carrier.begin(), other.carrier.end(), p) != other.carrier.end())
                throw WitnessFailure("twin carriers meet outside Z at " + p.literal());
    }
    da.complete = true;
    db.complete = true;
    return {std::move(da), std::move(db)};
}

// ── Tarski–Vaught verification ───────────────────────────────────────────

TvReport tarski_vaught_verify(const SubmodelDescription& desc, int depth, int samples,
                              std::uint64_t seed) {
    TvReport rep;
    if (!desc.closed_form || !desc.complete) {
        rep.status = TvReport::Status::Incomplete;
        rep.detail = "description has no total membership rule (staged prefix only)";
        return rep;
    }
    const StructureHandle& S = StructureHandle::get(desc.structure);

    rep.contains_ok = true;
    for (auto& p : desc.contains.listed())
        if (!desc.member(p)) {
            rep.contains_ok = false;
            rep.detail = "required point " + p.literal() + " is not a member";
        }
    if (desc.contains.intensional_constants())
        for (long k = 0; k < 8; ++k)
            if (!desc.member(Point::tier(Rational(k), 0))) {
                rep.contains_ok = false;
                rep.detail = "required constant c" + std::to_string(k) + " is not a member";
            }
    rep.excludes_ok = true;
    for (auto& p : desc.excludes)
        if (desc.member(p)) {
            rep.excludes_ok = false;
            rep.detail = "excluded point " + p.literal() + " is a member";
        }

    // Parameter pool: the required closure plus sampled members.
    std::vector<Point> pool = desc.contains.listed();
    auto add_member = [&](const DefinableSet& region) {
        if (auto p = desc.closed_form->find_member(region))
            if (std::find(pool.begin(), pool.end(), *p) == pool.end()) pool.push_back(*p);
    };
    add_member(DefinableSet::universe(desc.structure));
    if (desc.structure == StructureId::EX1) {
        add_member(DefinableSet::from_pieces(desc.structure,
                                             {{Bound::neg_inf(), Bound::sort_split()}}));
        add_member(DefinableSet::from_pieces(desc.structure,
                                             {{Bound::sort_split(), Bound::pos_inf()}}));
    }
    if (desc.structure == StructureId::EHR)
        add_member(DefinableSet::from_pieces(
            desc.structure,
            {{Bound::after(Point::tier(Rational(0), 0)), Bound::pos_inf()}}));
    SplitMix64 rng(seed * 0x2545f4914f6cdd1dULL + 0x9e3779b97f4a7c15ULL);
    for (int tries = 0; tries < 64 && pool.size() < 10; ++tries) {
        Point p = sample_point(desc.structure, rng);
        if (desc.member(p) && std::find(pool.begin(), pool.end(), p) == pool.end())
            pool.push_back(p);
    }

    FormulaEnumerator en(S, pool, depth);
    auto formulas = en.generate(static_cast<std::size_t>(samples), seed);
    for (auto& phi : formulas) {
        ++rep.checked;
        DefinableSet sol = definable_set(S, phi, {}, std::max(depth + 1, kDefaultDepthBudget));
        if (sol.empty()) continue;  // the model does not satisfy exists-x phi
        auto w = desc.closed_form->find_member(sol);
        if (!w) {
            rep.status = TvReport::Status::Fail;
            rep.counterexample = "exists x (" + format_formula(phi) + ")";
            rep.detail = "satisfiable in the rich model, no witness inside the candidate; "
                         "solution " + sol.str();
            return rep;
        }
    }
    rep.status = (rep.contains_ok && rep.excludes_ok) ? TvReport::Status::Pass
                                                      : TvReport::Status::Fail;
    if (rep.status == TvReport::Status::Pass)
        rep.detail = "all sampled existentials witnessed inside; contains/excludes exact";
    return rep;
}

bool twins_disjoint_mod_z(const SubmodelDescription& a, const SubmodelDescription& b,
                          int samples, std::uint64_t seed) {
    SplitMix64 rng(seed ^ 0xd1b54a32d192ed03ULL);
    for (auto& p : a.contains.listed())
        if (!a.in_z(p) && b.member(p)) return false;
    for (auto& p : b.contains.listed())
        if (!b.in_z(p) && a.member(p)) return false;
    for (int i = 0; i < samples; ++i) {
        Point p = sample_point(a.structure, rng);
        if (a.member(p) && b.member(p) && !a.in_z(p)) return false;
    }
    return true;
}

} // namespace sepmod

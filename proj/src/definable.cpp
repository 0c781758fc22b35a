#include "sepmod/definable.hpp"

#include <algorithm>
#include <stdexcept>

namespace sepmod {

namespace {

// Extended rational with -inf / +inf sentinels, for lexicographic cut keys.
struct ExtRat {
    int cls;  // -1, 0, +1
    Rational q;

    static ExtRat ninf() { return {-1, Rational(0)}; }
    static ExtRat pinf() { return {+1, Rational(0)}; }
    static ExtRat fin(Rational r) { return {0, std::move(r)}; }

    friend int cmp(const ExtRat& a, const ExtRat& b) {
        if (a.cls != b.cls) return a.cls < b.cls ? -1 : 1;
        if (a.cls != 0) return 0;
        if (a.q < b.q) return -1;
        if (b.q < a.q) return 1;
        return 0;
    }
};

// (major, a, b, eps) lexicographic position of a cut.
struct Key {
    int major;
    ExtRat a;
    ExtRat b;
    int eps;
};

int eps_of(Bound::Kind k) {
    if (k == Bound::Kind::BeforePoint) return -1;
    if (k == Bound::Kind::AfterPoint) return +1;
    return 0;
}

Key key_of(StructureId sid, const Bound& bd) {
    switch (bd.kind) {
        case Bound::Kind::NegInf: return {0, ExtRat::ninf(), ExtRat::ninf(), 0};
        case Bound::Kind::PosInf: return {9, ExtRat::pinf(), ExtRat::pinf(), 0};
        case Bound::Kind::SortSplit:
            if (sid != StructureId::EX1) throw std::logic_error("sort split outside EX1");
            return {2, ExtRat::fin(Rational(0)), ExtRat::fin(Rational(0)), 0};
        case Bound::Kind::FiberStart:
            if (sid != StructureId::EX1) throw std::logic_error("fiber cut outside EX1");
            return {1, ExtRat::fin(bd.q), ExtRat::ninf(), 0};
        case Bound::Kind::FiberEnd:
            if (sid != StructureId::EX1) throw std::logic_error("fiber cut outside EX1");
            return {1, ExtRat::fin(bd.q), ExtRat::pinf(), 0};
        default: {
            const Point& p = *bd.p;
            int eps = eps_of(bd.kind);
            switch (sid) {
                case StructureId::DLO:
                    return {1, ExtRat::fin(p.x()), ExtRat::fin(Rational(0)), eps};
                case StructureId::EHR:
                    return {1, ExtRat::fin(Rational(p.tier_index())), ExtRat::fin(p.x()), eps};
                default:
                    if (p.in_p1())
                        return {1, ExtRat::fin(p.x()), ExtRat::fin(p.y()), eps};
                    return {3, ExtRat::fin(p.x()), ExtRat::fin(Rational(0)), eps};
            }
        }
    }
}

} // namespace

int compare_bounds(StructureId sid, const Bound& a, const Bound& b) {
    Key ka = key_of(sid, a), kb = key_of(sid, b);
    if (ka.major != kb.major) return ka.major < kb.major ? -1 : 1;
    if (int c = cmp(ka.a, kb.a); c != 0) return c;
    if (int c = cmp(ka.b, kb.b); c != 0) return c;
    if (ka.eps != kb.eps) return ka.eps < kb.eps ? -1 : 1;
    return 0;
}

bool bounds_equal(StructureId sid, const Bound& a, const Bound& b) {
    return compare_bounds(sid, a, b) == 0;
}

// ── sample_between ───────────────────────────────────────────────────────

namespace {

std::optional<Point> sample_dlo(const Bound& lo, const Bound& hi) {
    bool lo_inf = lo.kind == Bound::Kind::NegInf;
    bool hi_inf = hi.kind == Bound::Kind::PosInf;
    if (lo_inf && hi_inf) return Point::rat(Rational(0));
    if (lo_inf) return Point::rat(hi.p->x() - Rational(1));
    if (hi_inf) return Point::rat(lo.p->x() + Rational(1));
    const Rational& a = lo.p->x();
    const Rational& b = hi.p->x();
    if (a < b) return Point::rat(Rational::midpoint(a, b));
    return Point::rat(a);  // (before(p), after(p)) — the point itself
}

std::optional<Point> sample_ehr(const Bound& lo, const Bound& hi) {
    bool lo_inf = lo.kind == Bound::Kind::NegInf;
    bool hi_inf = hi.kind == Bound::Kind::PosInf;
    if (lo_inf && hi_inf) return Point::tier(Rational(0), 0);
    if (lo_inf) return Point::tier(hi.p->x() - Rational(1), hi.p->tier_index());
    if (hi_inf) return Point::tier(lo.p->x() + Rational(1), lo.p->tier_index());
    int t1 = lo.p->tier_index(), t2 = hi.p->tier_index();
    if (t1 < t2) return Point::tier(lo.p->x() + Rational(1), 0);
    const Rational& a = lo.p->x();
    const Rational& b = hi.p->x();
    if (a < b) return Point::tier(Rational::midpoint(a, b), t1);
    return Point::tier(a, t1);
}

// EX1 bound, decoded into region + coordinates.
struct Ex1Pos {
    enum class Region { Neg, P1, Split, P2, Pos } region;
    Rational q1;   // fiber coordinate when in P1, value when in P2
    ExtRat k2;     // within-fiber coordinate (ninf for fiber_start, pinf for fiber_end)
};

Ex1Pos decode_ex1(const Bound& b) {
    switch (b.kind) {
        case Bound::Kind::NegInf: return {Ex1Pos::Region::Neg, Rational(0), ExtRat::fin(Rational(0))};
        case Bound::Kind::PosInf: return {Ex1Pos::Region::Pos, Rational(0), ExtRat::fin(Rational(0))};
        case Bound::Kind::SortSplit: return {Ex1Pos::Region::Split, Rational(0), ExtRat::fin(Rational(0))};
        case Bound::Kind::FiberStart: return {Ex1Pos::Region::P1, b.q, ExtRat::ninf()};
        case Bound::Kind::FiberEnd: return {Ex1Pos::Region::P1, b.q, ExtRat::pinf()};
        default:
            if (b.p->in_p1()) return {Ex1Pos::Region::P1, b.p->x(), ExtRat::fin(b.p->y())};
            return {Ex1Pos::Region::P2, b.p->x(), ExtRat::fin(Rational(0))};
    }
}

std::optional<Point> sample_ex1(const Bound& lo, const Bound& hi) {
    Ex1Pos a = decode_ex1(lo), b = decode_ex1(hi);
    using R = Ex1Pos::Region;
    switch (a.region) {
        case R::Neg:
            switch (b.region) {
                case R::P1: return Point::pair(b.q1 - Rational(1), Rational(0));
                default: return Point::pair(Rational(0), Rational(0));
            }
        case R::P1:
            if (b.region != R::P1) return Point::pair(a.q1 + Rational(1), Rational(0));
            if (a.q1 < b.q1) return Point::pair(Rational::midpoint(a.q1, b.q1), Rational(0));
            // Same fiber.
            if (a.k2.cls < 0 && b.k2.cls > 0) return Point::pair(a.q1, Rational(0));
            if (a.k2.cls < 0) return Point::pair(a.q1, b.k2.q - Rational(1));
            if (b.k2.cls > 0) return Point::pair(a.q1, a.k2.q + Rational(1));
            if (a.k2.q < b.k2.q)
                return Point::pair(a.q1, Rational::midpoint(a.k2.q, b.k2.q));
            return Point::pair(a.q1, a.k2.q);  // (before(p), after(p))
        case R::Split:
            if (b.region == R::P2) return Point::single(b.q1 - Rational(1));
            return Point::single(Rational(0));
        case R::P2:
            if (b.region == R::Pos) return Point::single(a.q1 + Rational(1));
            if (a.q1 < b.q1) return Point::single(Rational::midpoint(a.q1, b.q1));
            return Point::single(a.q1);
        default:
            return std::nullopt;  // lo = +inf, unreachable under the < guard
    }
}

bool strictly_between(StructureId sid, const Bound& lo, const Point& p, const Bound& hi) {
    return compare_bounds(sid, lo, Bound::before(p)) <= 0 &&
           compare_bounds(sid, Bound::after(p), hi) <= 0;
}

// Half-bounded regions prefer a zero-anchored interior point when one fits;
// witness choices and realizations stay on small round values that way.
std::optional<Point> zero_candidate(StructureId sid, const Bound& lo, const Bound& hi) {
    std::vector<Point> cands;
    switch (sid) {
        case StructureId::DLO:
            cands.push_back(Point::rat(Rational(0)));
            break;
        case StructureId::EHR:
            cands.push_back(Point::tier(Rational(0), 0));
            break;
        default: {
            Ex1Pos a = decode_ex1(lo), b = decode_ex1(hi);
            if (a.region == Ex1Pos::Region::P1 && b.region == Ex1Pos::Region::P1 &&
                a.q1 == b.q1)
                cands.push_back(Point::pair(a.q1, Rational(0)));
            cands.push_back(Point::pair(Rational(0), Rational(0)));
            cands.push_back(Point::single(Rational(0)));
            break;
        }
    }
    for (auto& c : cands)
        if (strictly_between(sid, lo, c, hi)) return c;
    return std::nullopt;
}

} // namespace

std::optional<Point> sample_between(StructureId sid, const Bound& lo, const Bound& hi) {
    if (compare_bounds(sid, lo, hi) >= 0) return std::nullopt;
    if (auto z = zero_candidate(sid, lo, hi)) return z;
    switch (sid) {
        case StructureId::DLO: return sample_dlo(lo, hi);
        case StructureId::EHR: return sample_ehr(lo, hi);
        default: return sample_ex1(lo, hi);
    }
}

// ── ConvexPiece ──────────────────────────────────────────────────────────

bool ConvexPiece::contains(StructureId sid, const Point& pt) const {
    return compare_bounds(sid, lo, Bound::before(pt)) <= 0 &&
           compare_bounds(sid, Bound::after(pt), hi) <= 0;
}

std::string Bound::str() const {
    switch (kind) {
        case Kind::NegInf: return "-inf";
        case Kind::PosInf: return "+inf";
        case Kind::BeforePoint: return "before " + p->literal();
        case Kind::AfterPoint: return "after " + p->literal();
        case Kind::FiberStart: return "fiber_start " + q.str();
        case Kind::FiberEnd: return "fiber_end " + q.str();
        default: return "P1|P2";
    }
}

std::string ConvexPiece::str() const {
    if (is_singleton()) return "{" + lo.p->literal() + "}";
    std::string l, r;
    switch (lo.kind) {
        case Bound::Kind::NegInf: l = "(-inf"; break;
        case Bound::Kind::BeforePoint: l = "[" + lo.p->literal(); break;
        case Bound::Kind::AfterPoint: l = "(" + lo.p->literal(); break;
        case Bound::Kind::FiberStart: l = "[fiber " + lo.q.str(); break;
        case Bound::Kind::FiberEnd: l = "(end-of-fiber " + lo.q.str(); break;
        default: l = "(P1|P2"; break;
    }
    switch (hi.kind) {
        case Bound::Kind::PosInf: r = "+inf)"; break;
        case Bound::Kind::BeforePoint: r = hi.p->literal() + ")"; break;
        case Bound::Kind::AfterPoint: r = hi.p->literal() + "]"; break;
        case Bound::Kind::FiberStart: r = "start-of-fiber " + hi.q.str() + ")"; break;
        case Bound::Kind::FiberEnd: r = "fiber " + hi.q.str() + "]"; break;
        default: r = "P1|P2)"; break;
    }
    return l + ", " + r;
}

// ── DefinableSet ─────────────────────────────────────────────────────────

DefinableSet DefinableSet::universe(StructureId sid) {
    DefinableSet d(sid);
    d.pieces_.push_back({Bound::neg_inf(), Bound::pos_inf()});
    return d;
}

DefinableSet DefinableSet::singleton(const Point& p) {
    DefinableSet d(p.structure());
    d.pieces_.push_back({Bound::before(p), Bound::after(p)});
    return d;
}

DefinableSet DefinableSet::from_pieces(StructureId sid, std::vector<ConvexPiece> pieces) {
    std::vector<ConvexPiece> valid;
    valid.reserve(pieces.size());
    for (auto& pc : pieces)
        if (compare_bounds(sid, pc.lo, pc.hi) < 0) valid.push_back(std::move(pc));
    std::sort(valid.begin(), valid.end(), [&](const ConvexPiece& a, const ConvexPiece& b) {
        if (int c = compare_bounds(sid, a.lo, b.lo); c != 0) return c < 0;
        return compare_bounds(sid, a.hi, b.hi) < 0;
    });
    DefinableSet out(sid);
    for (auto& pc : valid) {
        if (!out.pieces_.empty() &&
            compare_bounds(sid, pc.lo, out.pieces_.back().hi) <= 0) {
            if (compare_bounds(sid, out.pieces_.back().hi, pc.hi) < 0)
                out.pieces_.back().hi = pc.hi;
        } else {
            out.pieces_.push_back(pc);
        }
    }
    return out;
}

bool DefinableSet::is_universe() const {
    return pieces_.size() == 1 && pieces_[0].lo.kind == Bound::Kind::NegInf &&
           pieces_[0].hi.kind == Bound::Kind::PosInf;
}

bool DefinableSet::contains(const Point& p) const {
    for (auto& pc : pieces_)
        if (pc.contains(sid_, p)) return true;
    return false;
}

DefinableSet DefinableSet::complement() const {
    DefinableSet out(sid_);
    Bound prev = Bound::neg_inf();
    for (auto& pc : pieces_) {
        if (compare_bounds(sid_, prev, pc.lo) < 0) out.pieces_.push_back({prev, pc.lo});
        prev = pc.hi;
    }
    if (compare_bounds(sid_, prev, Bound::pos_inf()) < 0)
        out.pieces_.push_back({prev, Bound::pos_inf()});
    return out;
}

DefinableSet DefinableSet::intersect(const DefinableSet& other) const {
    std::vector<ConvexPiece> out;
    std::size_t i = 0, j = 0;
    while (i < pieces_.size() && j < other.pieces_.size()) {
        const ConvexPiece& a = pieces_[i];
        const ConvexPiece& b = other.pieces_[j];
        const Bound& lo = compare_bounds(sid_, a.lo, b.lo) >= 0 ? a.lo : b.lo;
        const Bound& hi = compare_bounds(sid_, a.hi, b.hi) <= 0 ? a.hi : b.hi;
        if (compare_bounds(sid_, lo, hi) < 0) out.push_back({lo, hi});
        if (compare_bounds(sid_, a.hi, b.hi) <= 0)
            ++i;
        else
            ++j;
    }
    return from_pieces(sid_, std::move(out));
}

DefinableSet DefinableSet::unite(const DefinableSet& other) const {
    std::vector<ConvexPiece> all = pieces_;
    all.insert(all.end(), other.pieces_.begin(), other.pieces_.end());
    return from_pieces(sid_, std::move(all));
}

std::optional<Point> DefinableSet::sample() const {
    for (auto& pc : pieces_)
        if (auto p = sample_between(sid_, pc.lo, pc.hi)) return p;
    return std::nullopt;
}

std::string DefinableSet::str() const {
    if (pieces_.empty()) return "{}";
    std::string out;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        if (i) out += " u ";
        out += pieces_[i].str();
    }
    return out;
}

std::optional<Point> first_constant_in(const DefinableSet& d) {
    if (d.structure() != StructureId::EHR) return std::nullopt;
    for (auto& pc : d.pieces()) {
        // The first candidate index at or above the piece's lower cut.
        long start = 0;
        if (pc.lo.kind == Bound::Kind::BeforePoint || pc.lo.kind == Bound::Kind::AfterPoint) {
            if (pc.lo.p->tier_index() == 1) continue;  // tier 1 holds no constants
            start = std::max<long>(0, pc.lo.p->x().floor());
        }
        for (long k = start; k <= start + 2; ++k) {
            Point c = Point::tier(Rational(k), 0);
            if (pc.contains(StructureId::EHR, c)) return c;
        }
    }
    return std::nullopt;
}

// ── cut_closure ──────────────────────────────────────────────────────────

std::vector<Bound> cut_closure(StructureId sid, const std::vector<Point>& points,
                               const std::vector<long>& constant_indices) {
    std::vector<Bound> cuts;
    auto add_point = [&](const Point& p) {
        cuts.push_back(Bound::before(p));
        cuts.push_back(Bound::after(p));
    };
    for (auto& p : points) {
        add_point(p);
        if (sid == StructureId::EX1) {
            if (p.in_p1()) {
                cuts.push_back(Bound::fiber_start(p.x()));
                cuts.push_back(Bound::fiber_end(p.x()));
                add_point(Point::single(p.x()));  // f-image
            } else {
                cuts.push_back(Bound::fiber_start(p.x()));
                cuts.push_back(Bound::fiber_end(p.x()));
            }
        }
    }
    if (sid == StructureId::EHR)
        for (long k : constant_indices) add_point(Point::tier(Rational(k), 0));
    if (sid == StructureId::EX1) cuts.push_back(Bound::sort_split());

    std::sort(cuts.begin(), cuts.end(), [&](const Bound& a, const Bound& b) {
        return compare_bounds(sid, a, b) < 0;
    });
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [&](const Bound& a, const Bound& b) {
                               return compare_bounds(sid, a, b) == 0;
                           }),
               cuts.end());
    return cuts;
}

} // namespace sepmod

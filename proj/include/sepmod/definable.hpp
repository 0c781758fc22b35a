// Definable subsets in one variable, in quantifier-eliminated normal form.
//
// A definable set is a finite union of convex pieces. A piece is the set of
// points strictly between two cuts of the order. Cuts rather than points are
// the right endpoint notion here: EX1 has definable convex sets such as
// { x : f(x) < q } whose boundary is a fiber edge, not a point of the
// universe, and the P1/P2 sort split is a cut as well.
//
//   before(p) / after(p)        the two cuts adjacent to a point p
//   fiber_start(q)/fiber_end(q) edges of the EX1 fiber f^{-1}(q)
//   sort_split                  the EX1 boundary between P1 and P2
//
// With this encoding [a, b] = (before(a), after(b)), (a, b) =
// (after(a), before(b)), and {p} = (before(p), after(p)); complement,
// union and intersection close over the representation exactly.

#ifndef SEPMOD_DEFINABLE_HPP
#define SEPMOD_DEFINABLE_HPP

#include <optional>
#include <string>
#include <vector>

#include "sepmod/point.hpp"

namespace sepmod {

struct Bound {
    enum class Kind { NegInf, PosInf, BeforePoint, AfterPoint, FiberStart, FiberEnd, SortSplit };

    Kind kind = Kind::NegInf;
    std::optional<Point> p;  // BeforePoint / AfterPoint
    Rational q;              // FiberStart / FiberEnd

    static Bound neg_inf() { return {Kind::NegInf, std::nullopt, Rational(0)}; }
    static Bound pos_inf() { return {Kind::PosInf, std::nullopt, Rational(0)}; }
    static Bound before(Point pt) { return {Kind::BeforePoint, std::move(pt), Rational(0)}; }
    static Bound after(Point pt) { return {Kind::AfterPoint, std::move(pt), Rational(0)}; }
    static Bound fiber_start(Rational q) { return {Kind::FiberStart, std::nullopt, std::move(q)}; }
    static Bound fiber_end(Rational q) { return {Kind::FiberEnd, std::nullopt, std::move(q)}; }
    static Bound sort_split() { return {Kind::SortSplit, std::nullopt, Rational(0)}; }

    std::string str() const;
};

// Total order on cuts of one structure's order.
int compare_bounds(StructureId sid, const Bound& a, const Bound& b);
bool bounds_equal(StructureId sid, const Bound& a, const Bound& b);

// Canonical point strictly between two cuts; nullopt iff the region is empty.
// Deterministic: midpoints for bounded rational gaps, unit offsets otherwise.
std::optional<Point> sample_between(StructureId sid, const Bound& lo, const Bound& hi);

struct ConvexPiece {
    Bound lo;
    Bound hi;

    bool contains(StructureId sid, const Point& pt) const;
    bool is_singleton() const {
        return lo.kind == Bound::Kind::BeforePoint && hi.kind == Bound::Kind::AfterPoint &&
               *lo.p == *hi.p;
    }
    std::string str() const;
};

class DefinableSet {
public:
    explicit DefinableSet(StructureId sid) : sid_(sid) {}

    static DefinableSet empty_set(StructureId sid) { return DefinableSet(sid); }
    static DefinableSet universe(StructureId sid);
    static DefinableSet from_pieces(StructureId sid, std::vector<ConvexPiece> pieces);
    static DefinableSet singleton(const Point& p);

    StructureId structure() const { return sid_; }
    const std::vector<ConvexPiece>& pieces() const { return pieces_; }

    bool empty() const { return pieces_.empty(); }
    bool is_universe() const;
    bool contains(const Point& p) const;

    DefinableSet complement() const;
    DefinableSet intersect(const DefinableSet& other) const;
    DefinableSet unite(const DefinableSet& other) const;
    DefinableSet subtract(const DefinableSet& other) const { return intersect(other.complement()); }

    // Canonical representative of the first nonempty piece.
    std::optional<Point> sample() const;

    std::string str() const;

private:
    StructureId sid_;
    std::vector<ConvexPiece> pieces_;  // disjoint, sorted, maximal
};

// All cuts at which definable sets with the given parameter points (and, for
// EHR, the given constant indices) can change truth value. Sorted, unique.
std::vector<Bound> cut_closure(StructureId sid, const std::vector<Point>& points,
                               const std::vector<long>& constant_indices);

// Smallest ehr constant c_i inside the set, if any.
std::optional<Point> first_constant_in(const DefinableSet& d);

} // namespace sepmod

#endif

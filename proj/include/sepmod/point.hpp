// Points of the three catalog universes.
//
//   DLO  : exact rationals.
//   EHR  : two lexicographic tiers of rationals; tier 0 carries the
//          constants c_i = (i, 0) and tier 1 sits above every tier-0
//          point, so tier-1 points realize the "above all constants" cut.
//   EX1  : pairs (q1, q2) ordered lexicographically (sort P1) below
//          single rationals (sort P2), with f((q1, q2)) = q1.
//
// The CLI and all file formats write points as parameter literals:
//   @{q}        DLO
//   @{q;t}      EHR  (t in {0,1})
//   @{(q1,q2)}  EX1, sort P1
//   @{q:P2}     EX1, sort P2
// where q is an exact fraction "a/b" or integer.

#ifndef SEPMOD_POINT_HPP
#define SEPMOD_POINT_HPP

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>

#include "sepmod/rational.hpp"

namespace sepmod {

enum class StructureId { DLO, EHR, EX1 };

std::string structure_name(StructureId id);
std::optional<StructureId> structure_from_name(const std::string& name);

class Point {
public:
    enum class Kind { Rat, Tier, Pair, Single };

    static Point rat(Rational q) { return Point(Kind::Rat, q, Rational(0), 0); }
    static Point tier(Rational q, int t) {
        if (t != 0 && t != 1) throw std::invalid_argument("tier must be 0 or 1");
        return Point(Kind::Tier, q, Rational(0), t);
    }
    static Point pair(Rational q1, Rational q2) { return Point(Kind::Pair, q1, q2, 0); }
    static Point single(Rational q) { return Point(Kind::Single, q, Rational(0), 0); }

    Kind kind() const { return kind_; }
    const Rational& x() const { return x_; }
    const Rational& y() const { return y_; }
    int tier_index() const { return t_; }

    bool in_p1() const { return kind_ == Kind::Pair; }
    bool in_p2() const { return kind_ == Kind::Single; }

    StructureId structure() const {
        switch (kind_) {
            case Kind::Rat: return StructureId::DLO;
            case Kind::Tier: return StructureId::EHR;
            default: return StructureId::EX1;
        }
    }

    // EHR only: is this the interpretation of some constant c_i?
    bool is_ehr_constant() const {
        return kind_ == Kind::Tier && t_ == 0 && x_.is_integer() && x_.num() >= 0;
    }

    // EX1 only: f-image of a P1 point.
    std::optional<Point> ex1_f_image() const {
        if (kind_ != Kind::Pair) return std::nullopt;
        return single(x_);
    }

    friend bool operator==(const Point& a, const Point& b) {
        return a.kind_ == b.kind_ && a.t_ == b.t_ && a.x_ == b.x_ && a.y_ == b.y_;
    }

    // Total order within one structure; comparing across structures is a bug.
    friend std::strong_ordering operator<=>(const Point& a, const Point& b) {
        if (a.structure() != b.structure())
            throw std::logic_error("comparing points of different structures");
        switch (a.kind_) {
            case Kind::Rat:
                return a.x_ <=> b.x_;
            case Kind::Tier:
                if (auto c = a.t_ <=> b.t_; c != 0) return c;
                return a.x_ <=> b.x_;
            default:
                // P1 < P2; P1 lexicographic.
                if (a.kind_ != b.kind_)
                    return a.kind_ == Kind::Pair ? std::strong_ordering::less
                                                 : std::strong_ordering::greater;
                if (a.kind_ == Kind::Single) return a.x_ <=> b.x_;
                if (auto c = a.x_ <=> b.x_; c != 0) return c;
                return a.y_ <=> b.y_;
        }
    }

    // Payload text without the @{ } wrapper, e.g. "1/2;0" or "(2,3)".
    std::string payload() const;
    // Full literal, e.g. "@{(2,3)}".
    std::string literal() const { return "@{" + payload() + "}"; }

    // Parses a payload for the given structure; throws std::invalid_argument.
    static Point parse_payload(StructureId sid, const std::string& text);
    // Parses "@{...}" for the given structure.
    static Point parse_literal(StructureId sid, const std::string& text);

    std::size_t hash() const {
        std::size_t h = static_cast<std::size_t>(kind_) * 1315423911u + static_cast<std::size_t>(t_);
        h ^= x_.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h ^= y_.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }

private:
    Point(Kind k, Rational x, Rational y, int t) : kind_(k), x_(x), y_(y), t_(t) {}

    Kind kind_;
    Rational x_;
    Rational y_;
    int t_;
};

struct PointHash {
    std::size_t operator()(const Point& p) const { return p.hash(); }
};

} // namespace sepmod

#endif

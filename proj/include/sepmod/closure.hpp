// Exact dcl/acl for finite parameter sets over the catalog structures.
//
// All three catalog entries are linearly ordered, so dcl(A) = acl(A); the
// closures are computed structurally per entry and every listed element
// carries a defining formula as provenance:
//
//   dlo : dcl(A) = A
//   ehr : dcl(A) = A u { all constants c_i }   (constants kept intensionally)
//   ex1 : dcl(A) = A u { f(a) : a in A n P1 }
//
// The structural computation is validated against QE enumeration and
// automorphism sampling by the test suites.

#ifndef SEPMOD_CLOSURE_HPP
#define SEPMOD_CLOSURE_HPP

#include <optional>
#include <string>
#include <vector>

#include "sepmod/logic.hpp"
#include "sepmod/structure.hpp"

namespace sepmod {

enum class ClosureKind { Dcl, Acl };

struct ClosureElement {
    Point point;
    Formula defining;   // phi(x, params) with this point as its unique solution
    int bound;          // |phi(M, params)|; 1 everywhere on this catalog
};

class ClosureSet {
public:
    ClosureSet(StructureId sid, ClosureKind kind) : sid_(sid), kind_(kind) {}

    StructureId structure() const { return sid_; }
    ClosureKind kind() const { return kind_; }
    const std::vector<Point>& base() const { return base_; }
    const std::vector<ClosureElement>& elements() const { return elements_; }
    bool intensional_constants() const { return intensional_constants_; }

    bool contains(const Point& p) const;

    // Defining formula for a member; for an unlisted constant the formula
    // "x = c_i" is synthesized on demand.
    std::optional<Formula> provenance(const Point& p) const;

    // Finite listed part (base and derived elements).
    std::vector<Point> listed() const;

    // Deserialization entry; normal construction goes through dcl/acl.
    static ClosureSet reconstruct(StructureId sid, ClosureKind kind, std::vector<Point> base,
                                  std::vector<ClosureElement> elements, bool intensional);

    friend class ClosureBuilder;

private:
    StructureId sid_;
    ClosureKind kind_;
    std::vector<Point> base_;
    std::vector<ClosureElement> elements_;
    bool intensional_constants_ = false;
};

ClosureSet dcl(const StructureHandle& S, const std::vector<Point>& A);
ClosureSet acl(const StructureHandle& S, const std::vector<Point>& A);

bool in_closure(const ClosureSet& C, const Point& p);

struct ExchangeResult {
    bool holds;
    std::optional<std::pair<Point, Point>> witness;  // (a, b) on failure
    std::string explanation;
};

// Tests the instance "b in acl(a) and b not in acl({}) implies a in acl(b)".
ExchangeResult exchange_check(const StructureHandle& S, const Point& a, const Point& b);

} // namespace sepmod

#endif

// Criterion engine: decides separability of elements and finite sets in the
// hypergraph of elementary submodels of a catalog structure via the exact
// closure criteria, relative to an algebraically closed set Z:
//
//   T0:  (acl(A u Z) n B) \ Z  is empty
//   T2:  (acl(A u Z) n acl(B u Z)) \ Z  is empty
//
// One verdict covers H, H_omega1 and H_p alike; the hypergraph class is
// echoed for the caller. Each verdict carries a re-checkable certificate
// (the offending closure members with their defining formulas, or the
// isolated type whose realizations are swallowed by a closure).

#ifndef SEPMOD_SEPARABILITY_HPP
#define SEPMOD_SEPARABILITY_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "sepmod/closure.hpp"
#include "sepmod/structure.hpp"

namespace sepmod {

struct ZSpec {
    enum class Kind { Empty, AclEmpty, DclEmpty, AclOf };
    Kind kind = Kind::Empty;
    std::vector<Point> params;  // AclOf only

    static ZSpec empty() { return {}; }
    static ZSpec acl_empty() { return {Kind::AclEmpty, {}}; }
    static ZSpec dcl_empty() { return {Kind::DclEmpty, {}}; }
    static ZSpec acl_of(std::vector<Point> pts) { return {Kind::AclOf, std::move(pts)}; }

    // The relativizer as a closure set; Kind::Empty yields a genuinely empty
    // set (the plain, non-relative notions).
    ClosureSet materialize(const StructureHandle& S) const;
    bool is_empty_spec() const { return kind == Kind::Empty; }
    std::string describe() const;

    // Parses "empty" | "acl-empty" | "dcl-empty" | "acl:<points>", the
    // spelling used by the CLI and the bindings.
    static ZSpec parse(const StructureHandle& S, const std::string& text);
};

enum class SepMode { T0, T2 };

struct SeparabilityQuery {
    StructureId structure;
    SepMode mode;
    std::vector<Point> A;
    std::vector<Point> B;
    ZSpec z;
    std::string hypergraph_class = "H";  // "H" | "H_omega1" | "H_p"; informational
};

struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct CertificateEntry {
    Point point;
    std::string via_a;  // defining formula on the A side, if any
    std::string via_b;  // defining formula on the B side / membership reason
};

struct Verdict {
    bool answer = false;
    std::string criterion;  // which closure criterion decided, in words
    std::vector<CertificateEntry> certificate;
    bool certificate_all_constants = false;  // ehr: whole constant family offends
    std::optional<std::string> failing_type;  // type-coverage failures
    std::vector<std::string> notes;
    std::string hypergraph_class = "H";
};

Verdict criterion_t0(const SeparabilityQuery& q);
Verdict criterion_t2(const SeparabilityQuery& q);

// Mutual separability of A and B via the two-condition criterion:
//   (1) acl(A) n acl(B) empty,
//   (2) every isolated 1-type over {} has realizations outside acl(A)
//       and outside acl(B).
Verdict saturated_pair_separability(const StructureHandle& S, const std::vector<Point>& A,
                                    const std::vector<Point>& B);

// The six-way equivalence report for a pair of elements. Conditions (4),
// (5), (6) are computed from closures; (1), (2), (3) are reported through
// the unconditional pairings (1)<=>(5), (2)<=>(4), (3)<=>(6).
struct QoReport {
    std::array<bool, 7> cond{};  // cond[1] .. cond[6]
    bool consistent = false;          // all six agree
    bool theorem_applicable = false;  // exchange + quite o-minimal + almost omega-categorical
    std::vector<CertificateEntry> certificate;  // for condition (6)
    std::vector<std::string> notes;
};

QoReport qo_equivalence_report(const StructureHandle& S, const Point& a, const Point& b,
                               const ZSpec& z);

// Pairwise matrix criterion for finite sets over quite o-minimal entries.
struct PairCell {
    Point a;
    Point b;
    bool ok;
    std::vector<CertificateEntry> offending;
};

struct FiniteSetsReport {
    Verdict verdict;
    std::vector<PairCell> matrix;
    bool aggregate_matches_pairwise = false;
};

FiniteSetsReport qo_finite_sets(const StructureHandle& S, const std::vector<Point>& A,
                                const std::vector<Point>& B, const ZSpec& z);

// Shared helper: the intersection (acl(A u Z) n acl(B u Z)) \ Z as
// certificate entries; sets certificate_all_constants when the whole
// constant family lies in both closures but not in Z.
std::vector<CertificateEntry> closure_intersection_mod_z(const ClosureSet& ca,
                                                         const ClosureSet& cb,
                                                         const ClosureSet& z,
                                                         bool& all_constants);

} // namespace sepmod

#endif

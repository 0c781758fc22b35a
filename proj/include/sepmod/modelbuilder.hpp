// Constructive separators: elementary-submodel candidates built by the
// staged witness-closure procedure, together with closed-form membership
// rules and Tarski–Vaught verification.
//
// A description tells one story two ways. The closed form is a total
// decidable membership rule (the complement of a removed definable set, or
// one side of a pair of disjoint dense carriers), which lets verification
// sample arbitrary formulas. The stages are the inductive construction
// itself: a chain of acl-closed finite carriers in which every enumerated
// consistent formula over the current carrier is realized, each new witness
// certified to keep the forbidden side out of the growing closure.

#ifndef SEPMOD_MODELBUILDER_HPP
#define SEPMOD_MODELBUILDER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sepmod/closure.hpp"
#include "sepmod/separability.hpp"
#include "sepmod/structure.hpp"

namespace sepmod {

// ── Closed-form membership rules ─────────────────────────────────────────

struct ClosedForm {
    enum class Kind {
        Complement,  // M \ removed, removed a definable set
        SideDense,   // one of two disjoint dense carriers plus listed points
    };

    Kind kind = Kind::Complement;
    StructureId sid = StructureId::DLO;

    // Complement
    DefinableSet removed = DefinableSet::empty_set(StructureId::DLO);

    // SideDense: side 0 uses rationals with odd reduced denominator, side 1
    // those with reduced denominator = 2 (mod 4); disjoint dense families.
    int side = 0;
    std::vector<Point> include;  // own closure listed (always members)
    std::vector<Point> exclude;  // other side's closure listed (never members)
    bool with_constants = false;  // ehr: the constant family belongs to the carrier

    bool contains(const Point& p) const;

    // Constructive intersection: a member of this carrier inside `within`,
    // or nullopt when the intersection is genuinely empty.
    std::optional<Point> find_member(const DefinableSet& within) const;

    std::string describe() const;
};

// Membership of a rational in the side families.
bool side_family(int side, const Rational& q);

// ── Staged construction records ──────────────────────────────────────────

struct ProcessedFormula {
    std::string formula;  // phi(x, params) with parameters embedded
    std::string outcome;  // "already-realized" | "witness-added" | "taken-from-Z"
    std::optional<Point> realized_by;
    std::string certificate;  // witness-check transcript
};

struct Stage {
    int index = 0;
    int side = 0;  // 0 = A-chain, 1 = B-chain (T2 builds alternate)
    std::vector<Point> added;
    std::size_t carrier_size = 0;
    ProcessedFormula processed;
};

struct SubmodelDescription {
    StructureId structure = StructureId::DLO;
    std::optional<ClosedForm> closed_form;
    ClosureSet contains;          // acl(A u Z): must lie inside the submodel
    std::vector<Point> excludes;  // must stay outside (B \ Z, or the twin's closure)
    std::vector<Point> z_points;
    bool z_constants = false;
    std::string z_description;
    std::vector<Stage> stages;
    bool complete = false;

    explicit SubmodelDescription(StructureId sid)
        : structure(sid), contains(sid, ClosureKind::Acl) {}

    bool member(const Point& p) const;  // requires closed_form
    bool in_z(const Point& p) const;
};

// ── Witness choice ───────────────────────────────────────────────────────

struct ForbiddenSet {
    std::vector<Point> points;
    bool all_constants = false;

    static ForbiddenSet of(std::vector<Point> pts) { return {std::move(pts), false}; }
    static ForbiddenSet of_closure(const ClosureSet& c) {
        return {c.listed(), c.intensional_constants()};
    }
};

struct WitnessChoice {
    std::string formula;
    Point chosen;
    std::string check;  // transcript of the closure-avoidance check
};

struct WitnessFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An element of phi(M, params) whose closure contribution avoids
// `forbidden` modulo Z. Preference order: a solution already inside Z, else
// a point of the widest admissible piece (inside `carrier` when given).
WitnessChoice choose_witness(const StructureHandle& S, const Formula& phi,
                             const std::map<std::string, Point>& params,
                             const ForbiddenSet& forbidden, const ClosureSet& Z,
                             const ClosedForm* carrier = nullptr);

// ── Builders ─────────────────────────────────────────────────────────────

struct BuildRefusal : std::runtime_error {
    Verdict verdict;
    explicit BuildRefusal(Verdict v)
        : std::runtime_error("criterion fails: the separator cannot exist"),
          verdict(std::move(v)) {}
};

inline constexpr int kDefaultBudget = 200;

// Submodel containing acl(A u Z) and excluding B \ Z; refuses with the
// criterion certificate when (acl(A u Z) n B) \ Z is nonempty.
SubmodelDescription build_t0_separator(const StructureHandle& S, const std::vector<Point>& A,
                                       const std::vector<Point>& B, const ZSpec& z,
                                       int budget = kDefaultBudget);

// Twin submodels N_a, N_b with disjoint-modulo-Z carriers, built by
// alternating the two chains stage by stage.
std::pair<SubmodelDescription, SubmodelDescription> build_t2_separators(
    const StructureHandle& S, const std::vector<Point>& A, const std::vector<Point>& B,
    const ZSpec& z, int budget = kDefaultBudget);

// ── Tarski–Vaught verification ───────────────────────────────────────────

struct TvReport {
    enum class Status { Pass, Fail, Incomplete } status = Status::Incomplete;
    int checked = 0;
    bool contains_ok = false;
    bool excludes_ok = false;
    std::optional<std::string> counterexample;  // exists-formula with no witness inside
    std::string detail;
};

inline constexpr int kDefaultTvDepth = 2;
inline constexpr int kDefaultTvSamples = 500;

// Samples existential formulas with parameters from the description and
// checks that every one satisfiable in the rich model has a witness inside;
// the contains/excludes lists are checked exactly.
TvReport tarski_vaught_verify(const SubmodelDescription& desc, int depth = kDefaultTvDepth,
                              int samples = kDefaultTvSamples, std::uint64_t seed = 0);

// Sampled disjointness-modulo-Z of a twin pair.
bool twins_disjoint_mod_z(const SubmodelDescription& a, const SubmodelDescription& b,
                          int samples = 300, std::uint64_t seed = 0);

} // namespace sepmod

#endif

// The catalog of computable ordered structures and their model theory:
// quantifier elimination to DefinableSet normal form, sentence evaluation,
// automorphism sampling, and the isolated 1-types over the empty set.
//
// Three entries, each a fixed rich model:
//   dlo — (Q, <): dense linear order without endpoints.
//   ehr — dense order with constants c_0 < c_1 < ... at tier-0 integers and
//         a second tier of rationals above every constant (so the limit cut
//         "above all c_i" is realized).
//   ex1 — two-sorted order P1 < P2 with P1 = Q x Q lexicographic,
//         P2 = Q, and the fiber projection f((q1, q2)) = q1 onto P2.

#ifndef SEPMOD_STRUCTURE_HPP
#define SEPMOD_STRUCTURE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sepmod/definable.hpp"
#include "sepmod/logic.hpp"
#include "sepmod/point.hpp"

namespace sepmod {

struct StructureFlags {
    bool omega_categorical;
    bool quite_o_minimal;
    bool almost_omega_categorical;
    bool exchange_principle;
    bool dcl_equals_acl;
};

struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(int budget)
        : std::runtime_error("quantifier depth budget exceeded (budget " +
                             std::to_string(budget) + ")") {}
};

class StructureHandle {
public:
    StructureId id() const { return id_; }
    const std::string& name() const { return name_; }
    const Signature& signature() const { return sig_; }
    const StructureFlags& flags() const { return flags_; }
    const std::string& saturation_note() const { return note_; }

    static const StructureHandle& dlo();
    static const StructureHandle& ehr();
    static const StructureHandle& ex1();
    static const StructureHandle& get(StructureId id);

    Point parse_point(const std::string& literal_or_payload) const;

private:
    StructureHandle(StructureId id, std::string name, Signature sig, StructureFlags flags,
                    std::string note)
        : id_(id), name_(std::move(name)), sig_(std::move(sig)), flags_(flags),
          note_(std::move(note)) {}

    StructureId id_;
    std::string name_;
    Signature sig_;
    StructureFlags flags_;
    std::string note_;
};

inline constexpr int kDefaultDepthBudget = 8;

// Exact solution set of phi in the designated rich model. phi must have
// exactly one free variable once params are substituted. Throws
// BudgetExceeded when the quantifier depth exceeds the budget.
DefinableSet definable_set(const StructureHandle& S, const Formula& phi,
                           const std::map<std::string, Point>& params = {},
                           int depth_budget = kDefaultDepthBudget);

// Truth of a sentence (no free variables after substituting params).
bool eval_formula(const StructureHandle& S, const Formula& sentence,
                  const std::map<std::string, Point>& params = {},
                  int depth_budget = kDefaultDepthBudget);

// ── Automorphisms ────────────────────────────────────────────────────────

// Finitely described order automorphism of the rich model: piecewise-linear
// increasing rational maps, fixing every constant (ehr) and commuting with
// the fiber projection (ex1). A test oracle for closure soundness.
class Automorphism {
public:
    Point apply(const Point& p) const;
    StructureId structure() const { return sid_; }

    // Piecewise-linear increasing bijection of Q given by interpolation
    // anchors; identity-slope translation beyond the outermost anchors.
    struct PLMap {
        std::vector<std::pair<Rational, Rational>> anchors;  // sorted by first
        Rational apply(const Rational& x) const;
    };

private:
    friend Automorphism sample_automorphism(const StructureHandle&, std::uint64_t,
                                            const std::vector<Point>&);
    StructureId sid_;
    PLMap base;                       // dlo map; ehr tier-1 map; ex1 base/P2 map
    PLMap low;                        // ehr: tier-0 block below c_0
    std::map<long, PLMap> blocks;     // ehr: perturbed inter-constant blocks, key i
    std::map<Rational, PLMap, std::less<>> fibers;  // ex1: per-fiber maps (by source fiber)
};

// Deterministic in (structure, seed); fixes `fix` pointwise.
Automorphism sample_automorphism(const StructureHandle& S, std::uint64_t seed,
                                 const std::vector<Point>& fix = {});

// ── 1-types over the empty set ───────────────────────────────────────────

struct TypeDescriptor {
    std::string name;          // stable identifier, e.g. "p1", "const-2", "block-0"
    std::string presentation;  // isolating formula, or a cut description
    bool isolated = true;
    std::optional<Point> realization;
};

// Complete list for dlo and ex1; for ehr, the isolated family is infinite
// and is reported as a finite prefix (constants and inter-constant blocks
// up to `ehr_prefix`) plus the non-isolated limit type above all constants.
std::vector<TypeDescriptor> list_isolated_1types(const StructureHandle& S, int ehr_prefix = 4);

// A point realizing the type in the rich model. Throws std::invalid_argument
// for inconsistent presentations.
Point realize(const StructureHandle& S, const TypeDescriptor& t);

// Convenience: build a type descriptor from a one-variable formula.
TypeDescriptor type_from_formula(const StructureHandle& S, const std::string& text);

} // namespace sepmod

#endif

// Isolated 1-types over the empty set, per catalog entry, with realizations
// in the designated rich model.

#include "sepmod/structure.hpp"

namespace sepmod {

std::vector<TypeDescriptor> list_isolated_1types(const StructureHandle& S, int ehr_prefix) {
    std::vector<TypeDescriptor> out;
    switch (S.id()) {
        case StructureId::DLO:
            // Parameter-free one-variable definable sets are {} or M, so
            // there is a unique 1-type over the empty set.
            out.push_back({"all", "x = x", true, Point::rat(Rational(0))});
            return out;
        case StructureId::EX1:
            out.push_back({"p1", "P1(x)", true, Point::pair(Rational(0), Rational(0))});
            out.push_back({"p2", "P2(x)", true, Point::single(Rational(0))});
            return out;
        default: {
            // The isolated family is indexed by the constants; report the
            // requested finite prefix plus the non-isolated limit type.
            out.push_back({"below-c0", "x < c0", true, Point::tier(Rational(-1), 0)});
            for (int i = 0; i < ehr_prefix; ++i) {
                out.push_back({"const-" + std::to_string(i),
                               "x = c" + std::to_string(i), true,
                               Point::tier(Rational(i), 0)});
                out.push_back({"block-" + std::to_string(i),
                               "c" + std::to_string(i) + " < x and x < c" + std::to_string(i + 1),
                               true,
                               Point::tier(Rational(2 * i + 1, 2), 0)});
            }
            TypeDescriptor limit;
            limit.name = "limit";
            limit.presentation = "x above every constant (c_i < x for all i)";
            limit.isolated = false;
            limit.realization = Point::tier(Rational(0), 1);
            out.push_back(limit);
            return out;
        }
    }
}

Point realize(const StructureHandle& S, const TypeDescriptor& t) {
    if (t.realization) return *t.realization;
    Formula phi = parse_formula(t.presentation, S.signature());
    DefinableSet sol = definable_set(S, phi);
    auto p = sol.sample();
    if (!p)
        throw std::invalid_argument("type '" + t.name +
                                    "' is inconsistent: empty solution set");
    return *p;
}

TypeDescriptor type_from_formula(const StructureHandle& S, const std::string& text) {
    TypeDescriptor t;
    t.name = "cut";
    t.presentation = text;
    Formula phi = parse_formula(text, S.signature());
    auto fv = free_variables(phi);
    if (fv.size() != 1)
        throw std::invalid_argument("a type presentation needs exactly one free variable");
    DefinableSet sol = definable_set(S, phi);
    auto p = sol.sample();
    if (!p) throw std::invalid_argument("type is inconsistent: empty solution set");
    t.realization = *p;
    // A presentation isolates a complete type only if its solutions are a
    // single convex piece not split by definable cuts; callers that need the
    // exact isolated list should use list_isolated_1types.
    t.isolated = true;
    return t;
}

} // namespace sepmod

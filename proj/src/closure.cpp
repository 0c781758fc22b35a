#include "sepmod/closure.hpp"

#include <algorithm>

namespace sepmod {

namespace {

Formula identity_formula(const Point& p) {
    return Formula::atom("=", {Term::var("x"), Term::param(p)});
}

Formula constant_formula(long index) {
    return Formula::atom("=", {Term::var("x"), Term::constant(index)});
}

Formula image_formula(const Point& p1_point) {
    return Formula::atom("=", {Term::apply("f", Term::param(p1_point)), Term::var("x")});
}

} // namespace

bool ClosureSet::contains(const Point& p) const {
    for (auto& e : elements_)
        if (e.point == p) return true;
    if (intensional_constants_ && p.is_ehr_constant()) return true;
    return false;
}

std::optional<Formula> ClosureSet::provenance(const Point& p) const {
    for (auto& e : elements_)
        if (e.point == p) return e.defining;
    if (intensional_constants_ && p.is_ehr_constant())
        return constant_formula(p.x().num());
    return std::nullopt;
}

std::vector<Point> ClosureSet::listed() const {
    std::vector<Point> out;
    out.reserve(elements_.size());
    for (auto& e : elements_) out.push_back(e.point);
    return out;
}

// Building happens through a friend so ClosureSet stays immutable to callers.
class ClosureBuilder {
public:
    static ClosureSet build(const StructureHandle& S, const std::vector<Point>& A,
                            ClosureKind kind) {
        ClosureSet c(S.id(), kind);
        for (auto& a : A) {
            if (a.structure() != S.id())
                throw std::invalid_argument("parameter " + a.literal() +
                                            " does not belong to " + S.name());
            if (std::find(c.base_.begin(), c.base_.end(), a) == c.base_.end())
                c.base_.push_back(a);
        }
        auto add = [&](const Point& p, Formula phi) {
            if (!c.contains(p)) c.elements_.push_back({p, std::move(phi), 1});
        };
        for (auto& a : c.base_) {
            if (S.id() == StructureId::EHR && a.is_ehr_constant())
                add(a, constant_formula(a.x().num()));
            else
                add(a, identity_formula(a));
        }
        if (S.id() == StructureId::EX1)
            for (auto& a : c.base_)
                if (auto img = a.ex1_f_image()) add(*img, image_formula(a));
        if (S.id() == StructureId::EHR) c.intensional_constants_ = true;
        return c;
    }
};

ClosureSet ClosureSet::reconstruct(StructureId sid, ClosureKind kind, std::vector<Point> base,
                                   std::vector<ClosureElement> elements, bool intensional) {
    ClosureSet c(sid, kind);
    c.base_ = std::move(base);
    c.elements_ = std::move(elements);
    c.intensional_constants_ = intensional;
    return c;
}

ClosureSet dcl(const StructureHandle& S, const std::vector<Point>& A) {
    return ClosureBuilder::build(S, A, ClosureKind::Dcl);
}

ClosureSet acl(const StructureHandle& S, const std::vector<Point>& A) {
    return ClosureBuilder::build(S, A, ClosureKind::Acl);
}

bool in_closure(const ClosureSet& C, const Point& p) {
    if (p.structure() != C.structure())
        throw std::invalid_argument("point does not belong to the closure's structure");
    return C.contains(p);
}

ExchangeResult exchange_check(const StructureHandle& S, const Point& a, const Point& b) {
    ClosureSet acl_a = acl(S, {a});
    ClosureSet acl_empty = acl(S, {});
    if (!acl_a.contains(b) || acl_empty.contains(b))
        return {true, std::nullopt,
                "vacuous: b is not in acl(a) \\ acl({})"};
    ClosureSet acl_b = acl(S, {b});
    if (acl_b.contains(a)) return {true, std::nullopt, "a recovered from b"};
    return {false, std::make_pair(a, b),
            "b = " + b.literal() + " lies in acl(" + a.literal() +
                ") but a is not in acl(b): the fiber over b is infinite"};
}

} // namespace sepmod

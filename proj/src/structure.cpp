#include "sepmod/structure.hpp"

namespace sepmod {

namespace {

Signature dlo_signature() {
    Signature sig;
    sig.name = "dlo";
    sig.sid = StructureId::DLO;
    sig.relations = {{"<", 2}, {"=", 2}};
    return sig;
}

Signature ehr_signature() {
    Signature sig;
    sig.name = "ehr";
    sig.sid = StructureId::EHR;
    sig.relations = {{"<", 2}, {"=", 2}};
    sig.indexed_constants = true;
    return sig;
}

Signature ex1_signature() {
    Signature sig;
    sig.name = "ex1";
    sig.sid = StructureId::EX1;
    sig.relations = {{"<", 2}, {"=", 2}, {"P1", 1}, {"P2", 1}};
    sig.functions = {{"f", 1}};
    return sig;
}

} // namespace

const StructureHandle& StructureHandle::dlo() {
    static StructureHandle h(
        StructureId::DLO, "dlo", dlo_signature(),
        StructureFlags{true, true, true, true, true},
        "rich model (Q,<) is omega-saturated; every cut over finitely many "
        "parameters is realized by density");
    return h;
}

const StructureHandle& StructureHandle::ehr() {
    static StructureHandle h(
        StructureId::EHR, "ehr", ehr_signature(),
        StructureFlags{false, true, true, true, true},
        "two-tier rich model realizes every finitely presented cut, including "
        "the limit cut above all constants (tier 1); asserted omega-saturated "
        "at desk scale and spot-checked by sampled cut realization");
    return h;
}

const StructureHandle& StructureHandle::ex1() {
    static StructureHandle h(
        StructureId::EX1, "ex1", ex1_signature(),
        StructureFlags{true, false, true, false, true},
        "countably categorical rich model; fibers and P2 are dense, so cuts "
        "over finite parameter sets are realized");
    return h;
}

const StructureHandle& StructureHandle::get(StructureId id) {
    switch (id) {
        case StructureId::DLO: return dlo();
        case StructureId::EHR: return ehr();
        default: return ex1();
    }
}

Point StructureHandle::parse_point(const std::string& text) const {
    if (text.size() >= 2 && text.substr(0, 2) == "@{") return Point::parse_literal(id_, text);
    return Point::parse_payload(id_, text);
}

} // namespace sepmod

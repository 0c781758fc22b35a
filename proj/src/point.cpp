#include "sepmod/point.hpp"

namespace sepmod {

std::string structure_name(StructureId id) {
    switch (id) {
        case StructureId::DLO: return "dlo";
        case StructureId::EHR: return "ehr";
        default: return "ex1";
    }
}

std::optional<StructureId> structure_from_name(const std::string& name) {
    if (name == "dlo" || name == "DLO") return StructureId::DLO;
    if (name == "ehr" || name == "EHR") return StructureId::EHR;
    if (name == "ex1" || name == "EX1") return StructureId::EX1;
    return std::nullopt;
}

std::string Point::payload() const {
    switch (kind_) {
        case Kind::Rat: return x_.str();
        case Kind::Tier: return x_.str() + ";" + std::to_string(t_);
        case Kind::Pair: return "(" + x_.str() + "," + y_.str() + ")";
        default: return x_.str() + ":P2";
    }
}

Point Point::parse_payload(StructureId sid, const std::string& text) {
    auto bad = [&](const char* why) {
        return std::invalid_argument("bad point payload '" + text + "' for " +
                                     structure_name(sid) + ": " + why);
    };
    switch (sid) {
        case StructureId::DLO:
            return rat(Rational::parse(text));
        case StructureId::EHR: {
            std::size_t semi = text.find(';');
            if (semi == std::string::npos) throw bad("expected q;t");
            std::string tpart = text.substr(semi + 1);
            if (tpart != "0" && tpart != "1") throw bad("tier must be 0 or 1");
            return tier(Rational::parse(text.substr(0, semi)), tpart == "1" ? 1 : 0);
        }
        default: {
            if (!text.empty() && text.front() == '(') {
                if (text.back() != ')') throw bad("unbalanced parentheses");
                std::string inner = text.substr(1, text.size() - 2);
                std::size_t comma = inner.find(',');
                if (comma == std::string::npos) throw bad("expected (q1,q2)");
                return pair(Rational::parse(inner.substr(0, comma)),
                            Rational::parse(inner.substr(comma + 1)));
            }
            std::size_t colon = text.find(':');
            if (colon == std::string::npos || text.substr(colon + 1) != "P2")
                throw bad("expected (q1,q2) or q:P2");
            return single(Rational::parse(text.substr(0, colon)));
        }
    }
}

Point Point::parse_literal(StructureId sid, const std::string& text) {
    if (text.size() < 4 || text.substr(0, 2) != "@{" || text.back() != '}')
        throw std::invalid_argument("point literal must look like @{...}: '" + text + "'");
    return parse_payload(sid, text.substr(2, text.size() - 3));
}

} // namespace sepmod

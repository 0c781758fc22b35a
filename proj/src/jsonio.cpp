#include "sepmod/jsonio.hpp"

namespace sepmod {

Json point_to_json(const Point& p) { return p.literal(); }

Point point_from_json(StructureId sid, const Json& j) {
    if (!j.is_string()) throw std::invalid_argument("point must be a @{...} literal string");
    return Point::parse_literal(sid, j.get<std::string>());
}

namespace {

Json points_to_json(const std::vector<Point>& pts) {
    Json arr = Json::array();
    for (auto& p : pts) arr.push_back(point_to_json(p));
    return arr;
}

std::vector<Point> points_from_json(StructureId sid, const Json& j) {
    std::vector<Point> out;
    for (auto& e : j) out.push_back(point_from_json(sid, e));
    return out;
}

Json bound_to_json(const Bound& b) {
    switch (b.kind) {
        case Bound::Kind::NegInf: return Json{{"kind", "neg_inf"}};
        case Bound::Kind::PosInf: return Json{{"kind", "pos_inf"}};
        case Bound::Kind::SortSplit: return Json{{"kind", "sort_split"}};
        case Bound::Kind::FiberStart: return Json{{"kind", "fiber_start"}, {"q", b.q.str()}};
        case Bound::Kind::FiberEnd: return Json{{"kind", "fiber_end"}, {"q", b.q.str()}};
        case Bound::Kind::BeforePoint:
            return Json{{"kind", "before"}, {"point", b.p->literal()}};
        default:
            return Json{{"kind", "after"}, {"point", b.p->literal()}};
    }
}

Bound bound_from_json(StructureId sid, const Json& j) {
    std::string k = j.at("kind").get<std::string>();
    if (k == "neg_inf") return Bound::neg_inf();
    if (k == "pos_inf") return Bound::pos_inf();
    if (k == "sort_split") return Bound::sort_split();
    if (k == "fiber_start") return Bound::fiber_start(Rational::parse(j.at("q").get<std::string>()));
    if (k == "fiber_end") return Bound::fiber_end(Rational::parse(j.at("q").get<std::string>()));
    Point p = Point::parse_literal(sid, j.at("point").get<std::string>());
    if (k == "before") return Bound::before(p);
    if (k == "after") return Bound::after(p);
    throw std::invalid_argument("unknown bound kind '" + k + "'");
}

Json certificate_to_json(const std::vector<CertificateEntry>& cert) {
    Json arr = Json::array();
    for (auto& e : cert)
        arr.push_back(Json{{"point", e.point.literal()}, {"via_a", e.via_a}, {"via_b", e.via_b}});
    return arr;
}

} // namespace

Json definable_to_json(const DefinableSet& d) {
    Json arr = Json::array();
    for (auto& pc : d.pieces())
        arr.push_back(Json{{"lo", bound_to_json(pc.lo)},
                           {"hi", bound_to_json(pc.hi)},
                           {"text", pc.str()}});
    return Json{{"structure", structure_name(d.structure())}, {"pieces", arr}};
}

Json closure_to_json(const ClosureSet& c) {
    Json elems = Json::array();
    for (auto& e : c.elements())
        elems.push_back(Json{{"point", e.point.literal()},
                             {"formula", format_formula(e.defining)},
                             {"bound", e.bound}});
    return Json{{"kind", c.kind() == ClosureKind::Dcl ? "dcl" : "acl"},
                {"base", points_to_json(c.base())},
                {"elements", elems},
                {"intensional_constants", c.intensional_constants()}};
}

ClosureSet closure_from_json(StructureId sid, const Json& j) {
    const StructureHandle& S = StructureHandle::get(sid);
    std::vector<ClosureElement> elems;
    for (auto& e : j.at("elements"))
        elems.push_back({point_from_json(sid, e.at("point")),
                         parse_formula(e.at("formula").get<std::string>(), S.signature()),
                         e.at("bound").get<int>()});
    return ClosureSet::reconstruct(
        sid, j.at("kind").get<std::string>() == "dcl" ? ClosureKind::Dcl : ClosureKind::Acl,
        points_from_json(sid, j.at("base")), std::move(elems),
        j.at("intensional_constants").get<bool>());
}

Json verdict_to_json(const Verdict& v) {
    Json j{{"answer", v.answer},
           {"criterion", v.criterion},
           {"certificate", certificate_to_json(v.certificate)},
           {"certificate_all_constants", v.certificate_all_constants},
           {"notes", v.notes},
           {"hypergraph_class", v.hypergraph_class}};
    if (v.failing_type) j["failing_type"] = *v.failing_type;
    return j;
}

Json qo_report_to_json(const QoReport& r) {
    Json conds;
    for (int i = 1; i <= 6; ++i) conds[std::to_string(i)] = r.cond[i];
    return Json{{"conditions", conds},
                {"consistent", r.consistent},
                {"theorem_applicable", r.theorem_applicable},
                {"certificate", certificate_to_json(r.certificate)},
                {"notes", r.notes}};
}

Json finite_sets_to_json(const FiniteSetsReport& r) {
    Json m = Json::array();
    for (auto& cell : r.matrix)
        m.push_back(Json{{"a", cell.a.literal()},
                         {"b", cell.b.literal()},
                         {"ok", cell.ok},
                         {"offending", certificate_to_json(cell.offending)}});
    return Json{{"verdict", verdict_to_json(r.verdict)},
                {"matrix", m},
                {"aggregate_matches_pairwise", r.aggregate_matches_pairwise}};
}

Json type_to_json(const TypeDescriptor& t) {
    Json j{{"name", t.name}, {"presentation", t.presentation}, {"isolated", t.isolated}};
    if (t.realization) j["realization"] = t.realization->literal();
    return j;
}

Json description_to_json(const SubmodelDescription& d) {
    Json j;
    j["structure"] = structure_name(d.structure);
    if (d.closed_form) {
        const ClosedForm& cf = *d.closed_form;
        Json c{{"text", cf.describe()}};
        if (cf.kind == ClosedForm::Kind::Complement) {
            c["kind"] = "complement";
            Json rem = Json::array();
            for (auto& pc : cf.removed.pieces())
                rem.push_back(Json{{"lo", bound_to_json(pc.lo)}, {"hi", bound_to_json(pc.hi)}});
            c["removed"] = rem;
        } else {
            c["kind"] = "side_dense";
            c["side"] = cf.side;
            c["include"] = points_to_json(cf.include);
            c["exclude"] = points_to_json(cf.exclude);
            c["with_constants"] = cf.with_constants;
        }
        j["closed_form"] = c;
    }
    j["contains"] = closure_to_json(d.contains);
    j["excludes"] = points_to_json(d.excludes);
    j["z"] = Json{{"points", points_to_json(d.z_points)},
                  {"constants", d.z_constants},
                  {"description", d.z_description}};
    Json stages = Json::array();
    for (auto& st : d.stages) {
        Json s{{"index", st.index},
               {"side", st.side},
               {"carrier_size", st.carrier_size},
               {"added", points_to_json(st.added)},
               {"formula", st.processed.formula},
               {"outcome", st.processed.outcome},
               {"certificate", st.processed.certificate}};
        if (st.processed.realized_by) s["realized_by"] = st.processed.realized_by->literal();
        stages.push_back(s);
    }
    j["stages"] = stages;
    j["complete"] = d.complete;
    return j;
}

SubmodelDescription description_from_json(const Json& j) {
    auto sid = structure_from_name(j.at("structure").get<std::string>());
    if (!sid) throw std::invalid_argument("unknown structure id");
    SubmodelDescription d(*sid);
    if (j.contains("closed_form")) {
        const Json& c = j.at("closed_form");
        ClosedForm cf;
        cf.sid = *sid;
        if (c.at("kind") == "complement") {
            cf.kind = ClosedForm::Kind::Complement;
            std::vector<ConvexPiece> pieces;
            for (auto& pj : c.at("removed"))
                pieces.push_back({bound_from_json(*sid, pj.at("lo")),
                                  bound_from_json(*sid, pj.at("hi"))});
            cf.removed = DefinableSet::from_pieces(*sid, std::move(pieces));
        } else if (c.at("kind") == "side_dense") {
            cf.kind = ClosedForm::Kind::SideDense;
            cf.side = c.at("side").get<int>();
            cf.include = points_from_json(*sid, c.at("include"));
            cf.exclude = points_from_json(*sid, c.at("exclude"));
            cf.with_constants = c.at("with_constants").get<bool>();
        } else {
            throw std::invalid_argument("unknown closed form kind");
        }
        d.closed_form = std::move(cf);
    }
    d.contains = closure_from_json(*sid, j.at("contains"));
    d.excludes = points_from_json(*sid, j.at("excludes"));
    d.z_points = points_from_json(*sid, j.at("z").at("points"));
    d.z_constants = j.at("z").at("constants").get<bool>();
    d.z_description = j.at("z").at("description").get<std::string>();
    for (auto& sj : j.at("stages")) {
        Stage st;
        st.index = sj.at("index").get<int>();
        st.side = sj.at("side").get<int>();
        st.carrier_size = sj.at("carrier_size").get<std::size_t>();
        st.added = points_from_json(*sid, sj.at("added"));
        st.processed.formula = sj.at("formula").get<std::string>();
        st.processed.outcome = sj.at("outcome").get<std::string>();
        st.processed.certificate = sj.at("certificate").get<std::string>();
        if (sj.contains("realized_by"))
            st.processed.realized_by = point_from_json(*sid, sj.at("realized_by"));
        d.stages.push_back(std::move(st));
    }
    d.complete = j.at("complete").get<bool>();
    return d;
}

Json tv_report_to_json(const TvReport& r) {
    const char* status = r.status == TvReport::Status::Pass   ? "pass"
                         : r.status == TvReport::Status::Fail ? "fail"
                                                              : "incomplete";
    Json j{{"status", status},
           {"checked", r.checked},
           {"contains_ok", r.contains_ok},
           {"excludes_ok", r.excludes_ok},
           {"detail", r.detail}};
    if (r.counterexample) j["counterexample"] = *r.counterexample;
    return j;
}

Hypergraph hypergraph_from_json(const Json& j) {
    AtomSet X;
    for (auto& a : j.at("X")) X.push_back(a.get<Atom>());
    std::vector<AtomSet> Y;
    for (auto& y : j.at("Y")) {
        AtomSet e;
        for (auto& a : y) e.push_back(a.get<Atom>());
        Y.push_back(std::move(e));
    }
    return Hypergraph::make(std::move(X), std::move(Y));
}

} // namespace sepmod

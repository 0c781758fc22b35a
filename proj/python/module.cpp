// Python bindings for the main operations. Structured results cross the
// boundary as plain dicts/lists mirroring the CLI's JSON shapes; points are
// @{...} literal strings and formulas concrete-syntax text.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "sepmod/cli.hpp"
#include "sepmod/jsonio.hpp"

namespace py = pybind11;
using namespace sepmod;

namespace {

py::object json_to_py(const Json& j) {
    switch (j.type()) {
        case Json::value_t::null: return py::none();
        case Json::value_t::boolean: return py::bool_(j.get<bool>());
        case Json::value_t::number_integer: return py::int_(j.get<std::int64_t>());
        case Json::value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
        case Json::value_t::number_float: return py::float_(j.get<double>());
        case Json::value_t::string: return py::str(j.get<std::string>());
        case Json::value_t::array: {
            py::list out;
            for (auto& e : j) out.append(json_to_py(e));
            return out;
        }
        default: {
            py::dict out;
            for (auto& [k, v] : j.items()) out[py::str(k)] = json_to_py(v);
            return out;
        }
    }
}

Json py_to_json(const py::handle& obj) {
    if (obj.is_none()) return nullptr;
    if (py::isinstance<py::bool_>(obj)) return obj.cast<bool>();
    if (py::isinstance<py::int_>(obj)) return obj.cast<std::int64_t>();
    if (py::isinstance<py::float_>(obj)) return obj.cast<double>();
    if (py::isinstance<py::str>(obj)) return obj.cast<std::string>();
    if (py::isinstance<py::dict>(obj)) {
        Json j = Json::object();
        for (auto item : obj.cast<py::dict>())
            j[item.first.cast<std::string>()] = py_to_json(item.second);
        return j;
    }
    Json j = Json::array();
    for (auto item : obj.cast<py::iterable>()) j.push_back(py_to_json(item));
    return j;
}

const StructureHandle& S_(const std::string& name) {
    auto sid = structure_from_name(name);
    if (!sid) throw std::invalid_argument("unknown structure '" + name + "'");
    return StructureHandle::get(*sid);
}

std::vector<Point> pts_(const StructureHandle& S, const std::vector<std::string>& lits) {
    std::vector<Point> out;
    for (auto& l : lits) out.push_back(S.parse_point(l));
    return out;
}

SeparabilityQuery query_(const std::string& structure, const std::string& mode,
                         const std::vector<std::string>& a, const std::vector<std::string>& b,
                         const std::string& z) {
    const StructureHandle& S = S_(structure);
    return {S.id(),
            mode == "t2" ? SepMode::T2 : SepMode::T0,
            pts_(S, a),
            pts_(S, b),
            ZSpec::parse(S, z),
            "H"};
}

} // namespace

PYBIND11_MODULE(_sepmod, m) {
    m.doc() = "separability toolkit for hypergraphs of elementary submodels";

    m.def("structures", [] { return std::vector<std::string>{"dlo", "ehr", "ex1"}; });

    m.def("flags", [](const std::string& structure) {
        const auto& f = S_(structure).flags();
        py::dict d;
        d["omega_categorical"] = f.omega_categorical;
        d["quite_o_minimal"] = f.quite_o_minimal;
        d["almost_omega_categorical"] = f.almost_omega_categorical;
        d["exchange_principle"] = f.exchange_principle;
        d["dcl_equals_acl"] = f.dcl_equals_acl;
        return d;
    });

    m.def("saturation_note",
          [](const std::string& structure) { return S_(structure).saturation_note(); });

    // ── logic ────────────────────────────────────────────────────────────
    m.def("parse_format", [](const std::string& structure, const std::string& text) {
        return format_formula(parse_formula(text, S_(structure).signature()));
    }, "canonical printed form of a formula (parse then print)");

    m.def("free_variables", [](const std::string& structure, const std::string& text) {
        return free_variables(parse_formula(text, S_(structure).signature()));
    });

    m.def("substitute_points",
          [](const std::string& structure, const std::string& text,
             const std::map<std::string, std::string>& binding) {
              const auto& S = S_(structure);
              std::map<std::string, Point> b;
              for (auto& [k, v] : binding) b.insert_or_assign(k, S.parse_point(v));
              return format_formula(substitute(parse_formula(text, S.signature()), b));
          });

    // ── catalog ──────────────────────────────────────────────────────────
    m.def("eval_formula", [](const std::string& structure, const std::string& text) {
        const auto& S = S_(structure);
        return eval_formula(S, parse_formula(text, S.signature()));
    });

    m.def("definable_pieces", [](const std::string& structure, const std::string& text) {
        const auto& S = S_(structure);
        DefinableSet d = definable_set(S, parse_formula(text, S.signature()));
        std::vector<std::string> out;
        for (auto& pc : d.pieces()) out.push_back(pc.str());
        return out;
    });

    m.def("definable_contains",
          [](const std::string& structure, const std::string& text, const std::string& point) {
              const auto& S = S_(structure);
              DefinableSet d = definable_set(S, parse_formula(text, S.signature()));
              return d.contains(S.parse_point(point));
          });

    m.def("isolated_types", [](const std::string& structure, int prefix) {
        py::list out;
        for (auto& t : list_isolated_1types(S_(structure), prefix))
            out.append(json_to_py(type_to_json(t)));
        return out;
    }, py::arg("structure"), py::arg("prefix") = 4);

    m.def("realize_type", [](const std::string& structure, const std::string& presentation) {
        const auto& S = S_(structure);
        return realize(S, type_from_formula(S, presentation)).literal();
    });

    m.def("apply_automorphism",
          [](const std::string& structure, std::uint64_t seed,
             const std::vector<std::string>& fix, const std::string& point) {
              const auto& S = S_(structure);
              Automorphism g = sample_automorphism(S, seed, pts_(S, fix));
              return g.apply(S.parse_point(point)).literal();
          },
          py::arg("structure"), py::arg("seed"), py::arg("fix") = std::vector<std::string>{},
          py::arg("point") = "@{0}");

    // ── closures ─────────────────────────────────────────────────────────
    m.def("closure", [](const std::string& structure, const std::string& kind,
                        const std::vector<std::string>& points) {
        const auto& S = S_(structure);
        ClosureSet c = kind == "dcl" ? dcl(S, pts_(S, points)) : acl(S, pts_(S, points));
        return json_to_py(closure_to_json(c));
    });

    m.def("in_closure", [](const std::string& structure, const std::string& kind,
                           const std::vector<std::string>& points, const std::string& p) {
        const auto& S = S_(structure);
        ClosureSet c = kind == "dcl" ? dcl(S, pts_(S, points)) : acl(S, pts_(S, points));
        return in_closure(c, S.parse_point(p));
    });

    m.def("exchange_check", [](const std::string& structure, const std::string& a,
                               const std::string& b) {
        const auto& S = S_(structure);
        auto r = exchange_check(S, S.parse_point(a), S.parse_point(b));
        py::dict d;
        d["holds"] = r.holds;
        d["explanation"] = r.explanation;
        if (r.witness)
            d["witness"] = py::make_tuple(r.witness->first.literal(),
                                          r.witness->second.literal());
        return d;
    });

    // ── separability ─────────────────────────────────────────────────────
    m.def("check", [](const std::string& structure, const std::string& mode,
                      const std::vector<std::string>& a, const std::vector<std::string>& b,
                      const std::string& z) {
        SeparabilityQuery q = query_(structure, mode, a, b, z);
        Verdict v = q.mode == SepMode::T0 ? criterion_t0(q) : criterion_t2(q);
        return json_to_py(verdict_to_json(v));
    }, py::arg("structure"), py::arg("mode"), py::arg("a"), py::arg("b"),
       py::arg("z") = "empty");

    m.def("saturated_pair", [](const std::string& structure,
                               const std::vector<std::string>& a,
                               const std::vector<std::string>& b) {
        const auto& S = S_(structure);
        return json_to_py(verdict_to_json(saturated_pair_separability(S, pts_(S, a), pts_(S, b))));
    });

    m.def("qo_report", [](const std::string& structure, const std::string& a,
                          const std::string& b, const std::string& z) {
        const auto& S = S_(structure);
        return json_to_py(qo_report_to_json(
            qo_equivalence_report(S, S.parse_point(a), S.parse_point(b), ZSpec::parse(S, z))));
    }, py::arg("structure"), py::arg("a"), py::arg("b"), py::arg("z") = "empty");

    m.def("finite_sets", [](const std::string& structure, const std::vector<std::string>& a,
                            const std::vector<std::string>& b, const std::string& z) {
        const auto& S = S_(structure);
        return json_to_py(finite_sets_to_json(
            qo_finite_sets(S, pts_(S, a), pts_(S, b), ZSpec::parse(S, z))));
    }, py::arg("structure"), py::arg("a"), py::arg("b"), py::arg("z") = "empty");

    // ── model builder ────────────────────────────────────────────────────
    m.def("build", [](const std::string& structure, const std::string& mode,
                      const std::vector<std::string>& a, const std::vector<std::string>& b,
                      const std::string& z, int budget) {
        const auto& S = S_(structure);
        try {
            if (mode == "t2") {
                auto [da, db] = build_t2_separators(S, pts_(S, a), pts_(S, b),
                                                    ZSpec::parse(S, z), budget);
                Json j{{"mode", "t2"},
                       {"a_side", description_to_json(da)},
                       {"b_side", description_to_json(db)}};
                return json_to_py(j);
            }
            SubmodelDescription d =
                build_t0_separator(S, pts_(S, a), pts_(S, b), ZSpec::parse(S, z), budget);
            return json_to_py(Json{{"mode", "t0"}, {"description", description_to_json(d)}});
        } catch (const BuildRefusal& r) {
            return json_to_py(Json{{"refusal", verdict_to_json(r.verdict)}});
        }
    }, py::arg("structure"), py::arg("mode"), py::arg("a"), py::arg("b"),
       py::arg("z") = "empty", py::arg("budget") = kDefaultBudget);

    m.def("verify", [](const py::dict& description, int depth, int samples,
                       std::uint64_t seed) {
        Json dj = py_to_json(description);
        const Json& inner = dj.contains("description") ? dj.at("description") : dj;
        TvReport rep = tarski_vaught_verify(description_from_json(inner), depth, samples, seed);
        return json_to_py(tv_report_to_json(rep));
    }, py::arg("description"), py::arg("depth") = kDefaultTvDepth,
       py::arg("samples") = kDefaultTvSamples, py::arg("seed") = 0);

    m.def("member", [](const py::dict& description, const std::string& point) {
        Json dj = py_to_json(description);
        const Json& inner = dj.contains("description") ? dj.at("description") : dj;
        SubmodelDescription d = description_from_json(inner);
        return d.member(StructureHandle::get(d.structure).parse_point(point));
    });

    // ── finite hypergraphs ───────────────────────────────────────────────
    m.def("hypergraph_t0", [](const std::vector<Atom>& X,
                              const std::vector<std::vector<Atom>>& Y, Atom x1, Atom x2,
                              const std::vector<Atom>& Z) {
        Hypergraph H = Hypergraph::make(X, Y);
        auto r = t0_separable(H, x1, x2, Z);
        py::dict d;
        d["verdict"] = r.verdict;
        if (r.witness) d["witness"] = H.Y[*r.witness];
        return d;
    }, py::arg("X"), py::arg("Y"), py::arg("x1"), py::arg("x2"),
       py::arg("Z") = std::vector<Atom>{});

    m.def("hypergraph_t2", [](const std::vector<Atom>& X,
                              const std::vector<std::vector<Atom>>& Y, Atom x1, Atom x2,
                              const std::vector<Atom>& Z) {
        Hypergraph H = Hypergraph::make(X, Y);
        auto r = t2_separable(H, x1, x2, Z);
        py::dict d;
        d["verdict"] = r.verdict;
        if (r.witnesses)
            d["witnesses"] = py::make_tuple(H.Y[r.witnesses->first], H.Y[r.witnesses->second]);
        return d;
    }, py::arg("X"), py::arg("Y"), py::arg("x1"), py::arg("x2"),
       py::arg("Z") = std::vector<Atom>{});

    m.def("hypergraph_set_t0", [](const std::vector<Atom>& X,
                                  const std::vector<std::vector<Atom>>& Y,
                                  const std::vector<Atom>& X1, const std::vector<Atom>& X2,
                                  const std::vector<Atom>& Z) {
        Hypergraph H = Hypergraph::make(X, Y);
        auto r = set_t0_separable(H, X1, X2, Z);
        py::dict d;
        d["verdict"] = r.verdict;
        if (r.witness) d["witness"] = H.Y[*r.witness];
        return d;
    }, py::arg("X"), py::arg("Y"), py::arg("X1"), py::arg("X2"),
       py::arg("Z") = std::vector<Atom>{});

    m.def("hypergraph_set_t2", [](const std::vector<Atom>& X,
                                  const std::vector<std::vector<Atom>>& Y,
                                  const std::vector<Atom>& X1, const std::vector<Atom>& X2,
                                  const std::vector<Atom>& Z) {
        Hypergraph H = Hypergraph::make(X, Y);
        auto r = set_t2_separable(H, X1, X2, Z);
        py::dict d;
        d["verdict"] = r.verdict;
        if (r.witnesses)
            d["witnesses"] = py::make_tuple(H.Y[r.witnesses->first], H.Y[r.witnesses->second]);
        return d;
    }, py::arg("X"), py::arg("Y"), py::arg("X1"), py::arg("X2"),
       py::arg("Z") = std::vector<Atom>{});

    // ── CLI passthrough ──────────────────────────────────────────────────
    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    });

    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<HypergraphPrecondition>(m, "HypergraphPrecondition",
                                                   PyExc_ValueError);
    py::register_exception<ParseError>(m, "FormulaParseError", PyExc_ValueError);
}

#include "sepmod/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <future>
#include <sstream>

#include "sepmod/jsonio.hpp"

namespace sepmod::cli {

namespace {

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIncomplete = 3;

// Splits a comma-separated point list, ignoring commas inside @{...}.
std::vector<std::string> split_points(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '{') ++depth;
        if (c == '}') --depth;
        if (c == ',' && depth == 0) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
            continue;
        }
        cur += c;
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::vector<Point> parse_points(const StructureHandle& S,
                                const std::vector<std::string>& raw) {
    std::vector<Point> out;
    for (auto& item : raw)
        for (auto& lit : split_points(item)) out.push_back(S.parse_point(lit));
    return out;
}

ZSpec parse_zspec(const StructureHandle& S, const std::string& z) {
    return ZSpec::parse(S, z);
}

const StructureHandle& structure_arg(const std::string& name) {
    auto sid = structure_from_name(name);
    if (!sid) throw CLI::ValidationError("--structure", "expected dlo | ehr | ex1");
    return StructureHandle::get(*sid);
}

void emit(const Json& j, const std::string& out_path, std::ostream& out) {
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        f << j.dump(2) << "\n";
    } else {
        out << j.dump(2) << "\n";
    }
}

std::string verdict_text(const Verdict& v) {
    std::ostringstream os;
    os << (v.answer ? "separable: yes" : "separable: no") << "\n"
       << "criterion: " << v.criterion << "\n";
    for (auto& e : v.certificate)
        os << "  offending " << e.point.literal() << " via " << e.via_a << " / " << e.via_b
           << "\n";
    if (v.certificate_all_constants) os << "  offending: the whole constant family\n";
    for (auto& n : v.notes) os << "note: " << n << "\n";
    return os.str();
}

struct CommonQueryArgs {
    std::string structure;
    std::string mode = "t0";
    std::vector<std::string> a, b;
    std::string z = "empty";
    std::string hclass = "H";
    std::string format = "json";
    std::string out_path;
};

void add_query_flags(CLI::App* cmd, CommonQueryArgs& args) {
    cmd->add_option("--structure", args.structure, "catalog structure: dlo | ehr | ex1")
        ->required();
    cmd->add_option("--mode", args.mode, "separation mode: t0 | t2")
        ->check(CLI::IsMember({"t0", "t2"}));
    cmd->add_option("--a", args.a, "side-A points (repeatable, comma separated)")->required();
    cmd->add_option("--b", args.b, "side-B points (repeatable, comma separated)")->required();
    cmd->add_option("--z", args.z, "relativizer: empty | acl-empty | dcl-empty | acl:<points>");
    cmd->add_option("--class", args.hclass, "hypergraph class echo: H | H_omega1 | H_p")
        ->check(CLI::IsMember({"H", "H_omega1", "H_p"}));
    cmd->add_option("--format", args.format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--out", args.out_path, "write output to this file");
}

Json config_echo(const CommonQueryArgs& args) {
    return Json{{"structure", args.structure}, {"mode", args.mode},
                {"a", args.a},                 {"b", args.b},
                {"z", args.z},                 {"class", args.hclass}};
}

int cmd_check(const CommonQueryArgs& args, std::ostream& out) {
    const StructureHandle& S = structure_arg(args.structure);
    SeparabilityQuery q{S.id(),
                        args.mode == "t0" ? SepMode::T0 : SepMode::T2,
                        parse_points(S, args.a),
                        parse_points(S, args.b),
                        parse_zspec(S, args.z),
                        args.hclass};
    Verdict v = q.mode == SepMode::T0 ? criterion_t0(q) : criterion_t2(q);
    Json j{{"command", "check"}, {"config", config_echo(args)}, {"verdict", verdict_to_json(v)}};
    if (args.format == "text")
        out << verdict_text(v);
    else
        emit(j, args.out_path, out);
    return v.answer ? kExitTrue : kExitFalse;
}

int cmd_build(const CommonQueryArgs& args, int budget, std::ostream& out) {
    const StructureHandle& S = structure_arg(args.structure);
    std::vector<Point> A = parse_points(S, args.a);
    std::vector<Point> B = parse_points(S, args.b);
    ZSpec z = parse_zspec(S, args.z);
    try {
        Json j{{"command", "build"}, {"config", config_echo(args)}, {"budget", budget}};
        if (args.mode == "t0") {
            SubmodelDescription d = build_t0_separator(S, A, B, z, budget);
            j["mode"] = "t0";
            j["description"] = description_to_json(d);
        } else {
            auto [da, db] = build_t2_separators(S, A, B, z, budget);
            j["mode"] = "t2";
            j["a_side"] = description_to_json(da);
            j["b_side"] = description_to_json(db);
        }
        emit(j, args.out_path, out);
        return kExitTrue;
    } catch (const BuildRefusal& r) {
        Json j{{"command", "build"},
               {"config", config_echo(args)},
               {"refusal", verdict_to_json(r.verdict)}};
        emit(j, args.out_path, out);
        return kExitFalse;
    }
}

int verify_payload(const Json& payload, int depth, int samples, std::uint64_t seed,
                   std::ostream& out) {
    std::vector<TvReport> reports;
    Json j{{"command", "verify"},
           {"depth", depth},
           {"samples", samples},
           {"seed", seed}};
    bool twins_ok = true;
    if (payload.contains("mode") && payload.at("mode") == "t2") {
        SubmodelDescription da = description_from_json(payload.at("a_side"));
        SubmodelDescription db = description_from_json(payload.at("b_side"));
        reports.push_back(tarski_vaught_verify(da, depth, samples, seed));
        reports.push_back(tarski_vaught_verify(db, depth, samples, seed));
        if (da.closed_form && db.closed_form)
            twins_ok = twins_disjoint_mod_z(da, db, 300, seed);
        j["a_report"] = tv_report_to_json(reports[0]);
        j["b_report"] = tv_report_to_json(reports[1]);
        j["twins_disjoint_mod_z"] = twins_ok;
    } else {
        const Json& dj =
            payload.contains("description") ? payload.at("description") : payload;
        SubmodelDescription d = description_from_json(dj);
        reports.push_back(tarski_vaught_verify(d, depth, samples, seed));
        j["report"] = tv_report_to_json(reports[0]);
    }
    emit(j, "", out);
    bool any_fail = !twins_ok;
    bool any_incomplete = false;
    for (auto& r : reports) {
        any_fail = any_fail || r.status == TvReport::Status::Fail;
        any_incomplete = any_incomplete || r.status == TvReport::Status::Incomplete;
    }
    if (any_fail) return kExitFalse;
    if (any_incomplete) return kExitIncomplete;
    return kExitTrue;
}

int cmd_hypergraph(const std::string& file, const std::string& mode, long x1, long x2,
                   bool element_query, const std::vector<std::string>& set_a,
                   const std::vector<std::string>& set_b, std::ostream& out) {
    std::ifstream f(file);
    if (!f) throw CLI::ValidationError("--file", "cannot open '" + file + "'");
    Json hj = Json::parse(f);
    Hypergraph H = hypergraph_from_json(hj);
    AtomSet Z;
    if (hj.contains("Z"))
        for (auto& a : hj.at("Z")) Z.push_back(a.get<Atom>());

    auto atoms_of = [](const std::vector<std::string>& raw) {
        AtomSet s;
        for (auto& item : raw)
            for (auto& tok : split_points(item)) s.push_back(std::stoll(tok));
        return s;
    };

    Json j{{"command", "hypergraph"}, {"mode", mode}, {"Z", Z}};
    bool verdict;
    if (element_query) {
        if (mode == "t0") {
            auto r = t0_separable(H, x1, x2, Z);
            verdict = r.verdict;
            if (r.witness) j["witness"] = H.Y[*r.witness];
        } else {
            auto r = t2_separable(H, x1, x2, Z);
            verdict = r.verdict;
            if (r.witnesses)
                j["witnesses"] = Json::array({H.Y[r.witnesses->first], H.Y[r.witnesses->second]});
        }
        j["x1"] = x1;
        j["x2"] = x2;
    } else {
        AtomSet X1 = atoms_of(set_a), X2 = atoms_of(set_b);
        if (mode == "t0") {
            auto r = set_t0_separable(H, X1, X2, Z);
            verdict = r.verdict;
            if (r.witness) j["witness"] = H.Y[*r.witness];
        } else {
            auto r = set_t2_separable(H, X1, X2, Z);
            verdict = r.verdict;
            if (r.witnesses)
                j["witnesses"] = Json::array({H.Y[r.witnesses->first], H.Y[r.witnesses->second]});
        }
        j["X1"] = X1;
        j["X2"] = X2;
    }
    j["verdict"] = verdict;
    emit(j, "", out);
    return verdict ? kExitTrue : kExitFalse;
}

// One grid case: check, build, verify, and report coherence.
Json run_grid_case(const Json& c, int depth, int samples, std::uint64_t seed, int budget) {
    const StructureHandle& S = structure_arg(c.at("structure").get<std::string>());
    std::string mode = c.value("mode", "t0");
    std::vector<Point> A, B;
    for (auto& lit : c.at("a")) A.push_back(S.parse_point(lit.get<std::string>()));
    for (auto& lit : c.at("b")) B.push_back(S.parse_point(lit.get<std::string>()));
    std::string zs = c.value("z", "empty");
    ZSpec z = parse_zspec(S, zs);

    Json r{{"structure", S.name()}, {"mode", mode}, {"z", zs}};
    SeparabilityQuery q{S.id(), mode == "t0" ? SepMode::T0 : SepMode::T2, A, B, z, "H"};
    Verdict v = q.mode == SepMode::T0 ? criterion_t0(q) : criterion_t2(q);
    r["check"] = v.answer;

    bool built = false, verified = false, twins_ok = true;
    try {
        if (mode == "t0") {
            SubmodelDescription d = build_t0_separator(S, A, B, z, budget);
            built = true;
            verified = tarski_vaught_verify(d, depth, samples, seed).status ==
                       TvReport::Status::Pass;
        } else {
            auto [da, db] = build_t2_separators(S, A, B, z, budget);
            built = true;
            verified =
                tarski_vaught_verify(da, depth, samples, seed).status ==
                    TvReport::Status::Pass &&
                tarski_vaught_verify(db, depth, samples, seed).status ==
                    TvReport::Status::Pass;
            twins_ok = twins_disjoint_mod_z(da, db, 300, seed);
        }
    } catch (const BuildRefusal&) {
        built = false;
    }
    r["build"] = built;
    if (built) {
        r["verify"] = verified && twins_ok;
    }
    r["coherent"] = (v.answer == built) && (!built || (verified && twins_ok));
    return r;
}

int cmd_grid(const std::string& file, int jobs, int depth, int samples, std::uint64_t seed,
             int budget, std::ostream& out) {
    std::ifstream f(file);
    if (!f) throw CLI::ValidationError("--file", "cannot open '" + file + "'");
    Json spec = Json::parse(f);
    const Json& cases = spec.is_array() ? spec : spec.at("cases");

    std::vector<Json> results(cases.size());
    if (jobs <= 1) {
        for (std::size_t i = 0; i < cases.size(); ++i)
            results[i] = run_grid_case(cases[i], depth, samples, seed, budget);
    } else {
        std::vector<std::future<void>> futs;
        std::atomic<std::size_t> next{0};
        for (int w = 0; w < jobs; ++w)
            futs.push_back(std::async(std::launch::async, [&] {
                for (std::size_t i = next++; i < cases.size(); i = next++)
                    results[i] = run_grid_case(cases[i], depth, samples, seed, budget);
            }));
        for (auto& fu : futs) fu.get();
    }

    int incoherent = 0;
    Json arr = Json::array();
    for (auto& r : results) {
        if (!r.value("coherent", false)) ++incoherent;
        arr.push_back(r);
    }
    Json j{{"command", "grid"},
           {"cases", arr},
           {"total", results.size()},
           {"incoherent", incoherent},
           {"depth", depth},
           {"samples", samples},
           {"seed", seed},
           {"budget", budget}};
    emit(j, "", out);
    return incoherent == 0 ? kExitTrue : kExitFalse;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"separability toolkit for hypergraphs of elementary submodels"};
    app.require_subcommand(1);

    CommonQueryArgs check_args;
    CLI::App* check = app.add_subcommand("check", "decide separability via the closure criterion");
    add_query_flags(check, check_args);

    CommonQueryArgs build_args;
    int budget = kDefaultBudget;
    CLI::App* build = app.add_subcommand("build", "construct a separating submodel description");
    add_query_flags(build, build_args);
    build->add_option("--budget", budget, "stage budget");

    std::string verify_file;
    int depth = kDefaultTvDepth, samples = kDefaultTvSamples;
    std::uint64_t seed = 0;
    CLI::App* verify = app.add_subcommand("verify", "Tarski-Vaught check a description file");
    verify->add_option("--file", verify_file, "description JSON file")->required();
    verify->add_option("--depth", depth, "quantifier depth of sampled formulas");
    verify->add_option("--samples", samples, "number of sampled formulas");
    verify->add_option("--seed", seed, "sampling seed");

    std::string hg_file, hg_mode = "t0";
    long hx1 = 0, hx2 = 0;
    std::vector<std::string> hset_a, hset_b;
    CLI::App* hyper = app.add_subcommand("hypergraph", "finite hypergraph separability from JSON");
    hyper->add_option("--file", hg_file, "hypergraph JSON: {\"X\": [...], \"Y\": [[...]], \"Z\": [...]}")
        ->required();
    hyper->add_option("--mode", hg_mode, "t0 | t2")->check(CLI::IsMember({"t0", "t2"}));
    auto* ox1 = hyper->add_option("--x1", hx1, "first element");
    auto* ox2 = hyper->add_option("--x2", hx2, "second element");
    hyper->add_option("--set-a", hset_a, "first set of atoms (comma separated)");
    hyper->add_option("--set-b", hset_b, "second set of atoms (comma separated)");

    std::string cl_structure, cl_kind = "acl";
    std::vector<std::string> cl_points;
    CLI::App* closure_cmd = app.add_subcommand("closure", "print dcl/acl of a finite point set");
    closure_cmd->add_option("--structure", cl_structure)->required();
    closure_cmd->add_option("--kind", cl_kind, "dcl | acl")->check(CLI::IsMember({"dcl", "acl"}));
    closure_cmd->add_option("--points", cl_points, "points (repeatable, comma separated)");

    std::string ty_structure;
    int ty_prefix = 4;
    CLI::App* types_cmd = app.add_subcommand("types", "list isolated 1-types over the empty set");
    types_cmd->add_option("--structure", ty_structure)->required();
    types_cmd->add_option("--prefix", ty_prefix, "ehr: constants/blocks to list");

    std::string grid_file;
    int jobs = 1, grid_budget = kDefaultBudget;
    int grid_depth = kDefaultTvDepth, grid_samples = kDefaultTvSamples;
    std::uint64_t grid_seed = 0;
    CLI::App* grid = app.add_subcommand("grid", "run a case file of check/build/verify queries");
    grid->add_option("--file", grid_file, "cases JSON")->required();
    grid->add_option("--jobs", jobs, "parallel workers");
    grid->add_option("--depth", grid_depth, "verification depth");
    grid->add_option("--samples", grid_samples, "verification samples");
    grid->add_option("--seed", grid_seed, "verification seed");
    grid->add_option("--budget", grid_budget, "stage budget");

    std::vector<const char*> argv;
    argv.push_back("sepmod");
    for (auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitTrue;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (check->parsed()) return cmd_check(check_args, out);
        if (build->parsed()) return cmd_build(build_args, budget, out);
        if (verify->parsed()) {
            std::ifstream f(verify_file);
            if (!f) {
                err << "cannot open '" << verify_file << "'\n";
                return kExitUsage;
            }
            Json payload;
            try {
                payload = Json::parse(f);
            } catch (const Json::exception& e) {
                err << "malformed description file: " << e.what() << "\n";
                return kExitUsage;
            }
            try {
                return verify_payload(payload, depth, samples, seed, out);
            } catch (const Json::exception& e) {
                err << "malformed description file: " << e.what() << "\n";
                return kExitUsage;
            }
        }
        if (hyper->parsed()) {
            bool element_query = ox1->count() > 0 && ox2->count() > 0;
            if (!element_query && (hset_a.empty() || hset_b.empty())) {
                err << "hypergraph: give either --x1/--x2 or --set-a/--set-b\n";
                return kExitUsage;
            }
            return cmd_hypergraph(hg_file, hg_mode, hx1, hx2, element_query, hset_a, hset_b,
                                  out);
        }
        if (closure_cmd->parsed()) {
            const StructureHandle& S = structure_arg(cl_structure);
            std::vector<Point> pts = parse_points(S, cl_points);
            ClosureSet c = cl_kind == "dcl" ? dcl(S, pts) : acl(S, pts);
            emit(Json{{"command", "closure"},
                      {"structure", S.name()},
                      {"closure", closure_to_json(c)}},
                 "", out);
            return kExitTrue;
        }
        if (types_cmd->parsed()) {
            const StructureHandle& S = structure_arg(ty_structure);
            Json arr = Json::array();
            for (auto& t : list_isolated_1types(S, ty_prefix)) arr.push_back(type_to_json(t));
            emit(Json{{"command", "types"}, {"structure", S.name()}, {"types", arr}}, "", out);
            return kExitTrue;
        }
        if (grid->parsed())
            return cmd_grid(grid_file, jobs, grid_depth, grid_samples, grid_seed, grid_budget,
                            out);
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const PreconditionError& e) {
        err << "precondition: " << e.what() << "\n";
        return kExitUsage;
    } catch (const HypergraphPrecondition& e) {
        err << "precondition: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "formula syntax: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Json::exception& e) {
        err << "malformed JSON: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "invalid input: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::overflow_error& e) {
        err << "arithmetic overflow: " << e.what() << "\n";
        return kExitUsage;
    }
    err << "no subcommand\n";
    return kExitUsage;
}

} // namespace sepmod::cli

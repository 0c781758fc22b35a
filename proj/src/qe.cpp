// Quantifier elimination by cell decomposition.
//
// The solution set of a formula in one free variable x changes truth value
// only at cuts derived from the points the formula mentions (parameter
// literals, constants, f-images, fiber edges, the sort split). So:
// solve atoms directly, combine with the exact boolean algebra on
// DefinableSet, and solve "exists y. body" by splitting the x-line into the
// cells of that cut closure and deciding each cell at a sample point.
// Everything stays exact; there is no approximation anywhere.

#include <set>

#include "sepmod/structure.hpp"

namespace sepmod {

namespace {

// Value category of a term relative to the solving variable x.
struct TVal {
    enum class Kind { Pt, Undef, X, FX } kind;
    std::optional<Point> p;

    static TVal pt(Point v) { return {Kind::Pt, std::move(v)}; }
    static TVal undef() { return {Kind::Undef, std::nullopt}; }
    static TVal x() { return {Kind::X, std::nullopt}; }
    static TVal fx() { return {Kind::FX, std::nullopt}; }
};

TVal eval_term(const StructureHandle& S, const Term& t, const std::string& x,
               const std::map<std::string, Point>& env) {
    switch (t.kind()) {
        case Term::Kind::Var: {
            if (t.var_name() == x) return TVal::x();
            auto it = env.find(t.var_name());
            if (it == env.end())
                throw std::invalid_argument("unbound variable '" + t.var_name() + "'");
            return TVal::pt(it->second);
        }
        case Term::Kind::Const:
            if (S.id() != StructureId::EHR)
                throw std::invalid_argument("constants only exist in ehr");
            return TVal::pt(Point::tier(Rational(t.const_index()), 0));
        case Term::Kind::Param:
            if (t.point().structure() != S.id())
                throw std::invalid_argument("parameter point " + t.point().literal() +
                                            " does not belong to " + S.name());
            return TVal::pt(t.point());
        default: {  // Apply — the ex1 fiber projection
            if (S.id() != StructureId::EX1 || t.fn_name() != "f")
                throw std::invalid_argument("unknown function symbol '" + t.fn_name() + "'");
            TVal arg = eval_term(S, t.arg(), x, env);
            switch (arg.kind) {
                case TVal::Kind::X: return TVal::fx();
                case TVal::Kind::Pt:
                    if (auto img = arg.p->ex1_f_image()) return TVal::pt(*img);
                    return TVal::undef();  // f is undefined on P2
                default:
                    return TVal::undef();  // f(f(x)) and friends are never defined
            }
        }
    }
}

DefinableSet p1_block(StructureId sid) {
    return DefinableSet::from_pieces(sid, {{Bound::neg_inf(), Bound::sort_split()}});
}
DefinableSet p2_block(StructureId sid) {
    return DefinableSet::from_pieces(sid, {{Bound::sort_split(), Bound::pos_inf()}});
}
DefinableSet truth(StructureId sid, bool b) {
    return b ? DefinableSet::universe(sid) : DefinableSet::empty_set(sid);
}

// Solution set of a single atom over the variable x.
DefinableSet solve_atom(const StructureHandle& S, const Formula& atom, const std::string& x,
                        const std::map<std::string, Point>& env) {
    StructureId sid = S.id();
    const std::string& rel = atom.rel();

    if (rel == "P1" || rel == "P2") {
        TVal v = eval_term(S, atom.terms()[0], x, env);
        bool want_p1 = rel == "P1";
        switch (v.kind) {
            case TVal::Kind::X: return want_p1 ? p1_block(sid) : p2_block(sid);
            case TVal::Kind::FX: return want_p1 ? truth(sid, false) : p1_block(sid);
            case TVal::Kind::Pt: return truth(sid, want_p1 ? v.p->in_p1() : v.p->in_p2());
            default: return truth(sid, false);
        }
    }

    bool eq = rel == "=";
    TVal lhs = eval_term(S, atom.terms()[0], x, env);
    TVal rhs = eval_term(S, atom.terms()[1], x, env);
    using K = TVal::Kind;
    if (lhs.kind == K::Undef || rhs.kind == K::Undef) return truth(sid, false);

    // Ground atom.
    if (lhs.kind == K::Pt && rhs.kind == K::Pt)
        return truth(sid, eq ? *lhs.p == *rhs.p : *lhs.p < *rhs.p);

    // x against a point.
    if (lhs.kind == K::X && rhs.kind == K::Pt) {
        if (eq) return DefinableSet::singleton(*rhs.p);
        return DefinableSet::from_pieces(sid, {{Bound::neg_inf(), Bound::before(*rhs.p)}});
    }
    if (lhs.kind == K::Pt && rhs.kind == K::X) {
        if (eq) return DefinableSet::singleton(*lhs.p);
        return DefinableSet::from_pieces(sid, {{Bound::after(*lhs.p), Bound::pos_inf()}});
    }

    // x against x.
    if (lhs.kind == K::X && rhs.kind == K::X) return truth(sid, eq);

    // f(x) against a point.
    if (lhs.kind == K::FX && rhs.kind == K::Pt) {
        const Point& p = *rhs.p;
        if (eq)
            return p.in_p2() ? DefinableSet::from_pieces(
                                   sid, {{Bound::fiber_start(p.x()), Bound::fiber_end(p.x())}})
                             : truth(sid, false);
        // f(x) < p
        if (p.in_p2())
            return DefinableSet::from_pieces(sid,
                                             {{Bound::neg_inf(), Bound::fiber_start(p.x())}});
        return truth(sid, false);  // f(x) lands in P2, above every P1 point
    }
    if (lhs.kind == K::Pt && rhs.kind == K::FX) {
        const Point& p = *lhs.p;
        if (eq)
            return p.in_p2() ? DefinableSet::from_pieces(
                                   sid, {{Bound::fiber_start(p.x()), Bound::fiber_end(p.x())}})
                             : truth(sid, false);
        // p < f(x)
        if (p.in_p2())
            return DefinableSet::from_pieces(sid,
                                             {{Bound::fiber_end(p.x()), Bound::sort_split()}});
        return p1_block(sid);  // any defined f(x) is in P2, above every P1 point
    }

    // x against f(x).
    if (lhs.kind == K::X && rhs.kind == K::FX) return eq ? truth(sid, false) : p1_block(sid);
    if (lhs.kind == K::FX && rhs.kind == K::X) return truth(sid, false);

    // f(x) against f(x).
    if (lhs.kind == K::FX && rhs.kind == K::FX) return eq ? p1_block(sid) : truth(sid, false);

    throw std::logic_error("unhandled atom shape");
}

void collect_mentioned(const Term& t, const std::map<std::string, Point>& env,
                       std::vector<Point>& points, std::set<long>& constants) {
    switch (t.kind()) {
        case Term::Kind::Param: points.push_back(t.point()); return;
        case Term::Kind::Const: constants.insert(t.const_index()); return;
        case Term::Kind::Apply: collect_mentioned(t.arg(), env, points, constants); return;
        default: {
            auto it = env.find(t.var_name());
            if (it != env.end()) points.push_back(it->second);
            return;
        }
    }
}

void collect_mentioned(const Formula& f, const std::map<std::string, Point>& env,
                       std::vector<Point>& points, std::set<long>& constants) {
    if (f.kind() == Formula::Kind::Atom) {
        for (auto& t : f.terms()) collect_mentioned(t, env, points, constants);
        return;
    }
    for (int i = 0; i < f.child_count(); ++i)
        collect_mentioned(f.child(i), env, points, constants);
}

DefinableSet solve(const StructureHandle& S, const Formula& f, const std::string& x,
                   std::map<std::string, Point> env);

// Decides "exists y. body" with all free variables bound by env.
bool exists_nonempty(const StructureHandle& S, const Formula& body, const std::string& y,
                     const std::map<std::string, Point>& env) {
    return !solve(S, body, y, env).empty();
}

DefinableSet solve_quantifier(const StructureHandle& S, const Formula& f, const std::string& x,
                              std::map<std::string, Point> env) {
    const std::string& y = f.bound_var();
    bool universal = f.kind() == Formula::Kind::Forall;
    const Formula& body = f.child();

    std::map<std::string, Point> inner_env = env;
    inner_env.erase(y);  // the quantifier shadows any outer binding of y

    if (y == x) {
        // x is shadowed: the subformula is a sentence over env.
        bool val = exists_nonempty(S, universal ? Formula::negate(body) : body, y, inner_env);
        return truth(S.id(), universal ? !val : val);
    }

    // Truth as a function of x is cellwise constant on the cut closure of
    // everything the subtree mentions.
    std::vector<Point> points;
    std::set<long> constants;
    collect_mentioned(body, inner_env, points, constants);
    std::vector<Bound> cuts =
        cut_closure(S.id(), points, std::vector<long>(constants.begin(), constants.end()));

    std::vector<ConvexPiece> cells;
    Bound prev = Bound::neg_inf();
    for (auto& c : cuts) {
        cells.push_back({prev, c});
        prev = c;
    }
    cells.push_back({prev, Bound::pos_inf()});

    std::vector<ConvexPiece> marked;
    for (auto& cell : cells) {
        auto sample = sample_between(S.id(), cell.lo, cell.hi);
        if (!sample) continue;
        auto cell_env = inner_env;
        cell_env.insert_or_assign(x, *sample);
        bool val = exists_nonempty(S, universal ? Formula::negate(body) : body, y, cell_env);
        if (universal) val = !val;
        if (val) marked.push_back(cell);
    }
    return DefinableSet::from_pieces(S.id(), std::move(marked));
}

DefinableSet solve(const StructureHandle& S, const Formula& f, const std::string& x,
                   std::map<std::string, Point> env) {
    switch (f.kind()) {
        case Formula::Kind::Atom:
            return solve_atom(S, f, x, env);
        case Formula::Kind::Not:
            return solve(S, f.child(), x, env).complement();
        case Formula::Kind::And:
            return solve(S, f.child(0), x, env).intersect(solve(S, f.child(1), x, env));
        case Formula::Kind::Or:
            return solve(S, f.child(0), x, env).unite(solve(S, f.child(1), x, env));
        case Formula::Kind::Implies:
            return solve(S, f.child(0), x, env)
                .complement()
                .unite(solve(S, f.child(1), x, env));
        default:
            return solve_quantifier(S, f, x, std::move(env));
    }
}

bool eval_ground(const StructureHandle& S, const Formula& f,
                 const std::map<std::string, Point>& env) {
    switch (f.kind()) {
        case Formula::Kind::Atom: {
            // A ground atom is solved against a throwaway variable name.
            DefinableSet d = solve_atom(S, f, "\x01unused", env);
            return d.is_universe();
        }
        case Formula::Kind::Not:
            return !eval_ground(S, f.child(), env);
        case Formula::Kind::And:
            return eval_ground(S, f.child(0), env) && eval_ground(S, f.child(1), env);
        case Formula::Kind::Or:
            return eval_ground(S, f.child(0), env) || eval_ground(S, f.child(1), env);
        case Formula::Kind::Implies:
            return !eval_ground(S, f.child(0), env) || eval_ground(S, f.child(1), env);
        case Formula::Kind::Exists:
            return exists_nonempty(S, f.child(), f.bound_var(), env);
        default:
            return !exists_nonempty(S, Formula::negate(f.child()), f.bound_var(), env);
    }
}

} // namespace

DefinableSet definable_set(const StructureHandle& S, const Formula& phi,
                           const std::map<std::string, Point>& params, int depth_budget) {
    if (phi.quantifier_depth() > depth_budget) throw BudgetExceeded(depth_budget);
    Formula inst = substitute(phi, params);
    auto fv = free_variables(inst);
    if (fv.size() != 1)
        throw std::invalid_argument(
            "definable_set needs exactly one free variable after substitution, got " +
            std::to_string(fv.size()));
    return solve(S, inst, fv[0], {});
}

bool eval_formula(const StructureHandle& S, const Formula& sentence,
                  const std::map<std::string, Point>& params, int depth_budget) {
    if (sentence.quantifier_depth() > depth_budget) throw BudgetExceeded(depth_budget);
    Formula inst = substitute(sentence, params);
    auto fv = free_variables(inst);
    if (!fv.empty())
        throw std::invalid_argument("eval_formula needs a sentence; '" + fv[0] +
                                    "' is still free");
    return eval_ground(S, inst, {});
}

} // namespace sepmod

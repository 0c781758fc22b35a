// Test-only slow evaluator, independent of the QE implementation.
//
// Quantifiers are decided by bounded witness search over a dense grid of
// candidate points built from the rationals the formula (and environment)
// mentions: the values themselves, midpoints of consecutive values, and
// points beyond both ends. The grid is rebuilt at every quantifier with the
// current environment included, so nested witnesses stay covered. Sound for
// the depth <= 2 formula family the suites sample.

#ifndef SEPMOD_TESTS_SLOW_ORACLE_HPP
#define SEPMOD_TESTS_SLOW_ORACLE_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "sepmod/logic.hpp"
#include "sepmod/structure.hpp"

namespace sepmod::testing {

inline void oracle_collect_rats(const Term& t, const std::map<std::string, Point>& env,
                                std::vector<Rational>& out) {
    switch (t.kind()) {
        case Term::Kind::Param: {
            out.push_back(t.point().x());
            if (t.point().in_p1()) out.push_back(t.point().y());
            return;
        }
        case Term::Kind::Const:
            out.push_back(Rational(t.const_index()));
            return;
        case Term::Kind::Apply:
            oracle_collect_rats(t.arg(), env, out);
            return;
        default: {
            auto it = env.find(t.var_name());
            if (it != env.end()) {
                out.push_back(it->second.x());
                if (it->second.in_p1()) out.push_back(it->second.y());
            }
            return;
        }
    }
}

inline void oracle_collect_rats(const Formula& f, const std::map<std::string, Point>& env,
                                std::vector<Rational>& out) {
    if (f.kind() == Formula::Kind::Atom) {
        for (auto& t : f.terms()) oracle_collect_rats(t, env, out);
        return;
    }
    for (int i = 0; i < f.child_count(); ++i) oracle_collect_rats(f.child(i), env, out);
}

inline std::vector<Point> oracle_grid(StructureId sid, const Formula& f,
                                      const std::map<std::string, Point>& env) {
    std::vector<Rational> rats;
    oracle_collect_rats(f, env, rats);
    rats.push_back(Rational(0));
    std::sort(rats.begin(), rats.end());
    rats.erase(std::unique(rats.begin(), rats.end()), rats.end());
    std::vector<Rational> grid;
    grid.push_back(rats.front() - Rational(1));
    for (std::size_t i = 0; i < rats.size(); ++i) {
        grid.push_back(rats[i]);
        if (i + 1 < rats.size()) grid.push_back(Rational::midpoint(rats[i], rats[i + 1]));
    }
    grid.push_back(rats.back() + Rational(1));

    std::vector<Point> pts;
    switch (sid) {
        case StructureId::DLO:
            for (auto& q : grid) pts.push_back(Point::rat(q));
            return pts;
        case StructureId::EHR:
            for (auto& q : grid) {
                pts.push_back(Point::tier(q, 0));
                pts.push_back(Point::tier(q, 1));
            }
            return pts;
        default:
            for (auto& q : grid) {
                pts.push_back(Point::single(q));
                for (auto& q2 : grid) pts.push_back(Point::pair(q, q2));
            }
            return pts;
    }
}

inline std::optional<Point> oracle_eval_term(const Term& t,
                                             const std::map<std::string, Point>& env) {
    switch (t.kind()) {
        case Term::Kind::Var: {
            auto it = env.find(t.var_name());
            if (it == env.end()) throw std::logic_error("oracle: unbound variable");
            return it->second;
        }
        case Term::Kind::Const:
            return Point::tier(Rational(t.const_index()), 0);
        case Term::Kind::Param:
            return t.point();
        default: {
            auto arg = oracle_eval_term(t.arg(), env);
            if (!arg || !arg->in_p1()) return std::nullopt;
            return arg->ex1_f_image();
        }
    }
}

inline bool slow_eval(const StructureHandle& S, const Formula& f,
                      std::map<std::string, Point> env) {
    switch (f.kind()) {
        case Formula::Kind::Atom: {
            if (f.terms().size() == 1) {
                auto v = oracle_eval_term(f.terms()[0], env);
                if (!v) return false;
                return f.rel() == "P1" ? v->in_p1() : v->in_p2();
            }
            auto a = oracle_eval_term(f.terms()[0], env);
            auto b = oracle_eval_term(f.terms()[1], env);
            if (!a || !b) return false;
            return f.rel() == "=" ? *a == *b : *a < *b;
        }
        case Formula::Kind::Not:
            return !slow_eval(S, f.child(), env);
        case Formula::Kind::And:
            return slow_eval(S, f.child(0), env) && slow_eval(S, f.child(1), env);
        case Formula::Kind::Or:
            return slow_eval(S, f.child(0), env) || slow_eval(S, f.child(1), env);
        case Formula::Kind::Implies:
            return !slow_eval(S, f.child(0), env) || slow_eval(S, f.child(1), env);
        case Formula::Kind::Exists: {
            for (auto& c : oracle_grid(S.id(), f.child(), env)) {
                auto e2 = env;
                e2.insert_or_assign(f.bound_var(), c);
                if (slow_eval(S, f.child(), e2)) return true;
            }
            return false;
        }
        default: {
            for (auto& c : oracle_grid(S.id(), f.child(), env)) {
                auto e2 = env;
                e2.insert_or_assign(f.bound_var(), c);
                if (!slow_eval(S, f.child(), e2)) return false;
            }
            return true;
        }
    }
}

} // namespace sepmod::testing

#endif

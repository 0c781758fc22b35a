#include "sepmod/enumerate.hpp"

#include <functional>

namespace sepmod {

Point sample_point(StructureId sid, SplitMix64& rng) {
    switch (sid) {
        case StructureId::DLO:
            return Point::rat(rng.rational());
        case StructureId::EHR:
            return Point::tier(rng.rational(), rng.below(4) == 0 ? 1 : 0);
        default:
            if (rng.below(3) == 0) return Point::single(rng.rational());
            return Point::pair(rng.rational(), rng.rational());
    }
}

namespace {

struct Template {
    int arity;  // number of parameter points
    std::function<bool(const std::vector<Point>&)> valid;
    std::function<Formula(const std::vector<Point>&)> build;
};

Term X() { return Term::var("x"); }
Term Y() { return Term::var("y"); }
Term Z_() { return Term::var("z"); }
Term P(const std::vector<Point>& ps, int i) { return Term::param(ps[i]); }

Formula lt(Term a, Term b) { return Formula::atom("<", {std::move(a), std::move(b)}); }
Formula eq(Term a, Term b) { return Formula::atom("=", {std::move(a), std::move(b)}); }

bool any(const std::vector<Point>&) { return true; }

std::vector<Template> template_table(const StructureHandle& S, int max_depth) {
    std::vector<Template> ts;
    auto add = [&](int depth, int arity, std::function<bool(const std::vector<Point>&)> valid,
                   std::function<Formula(const std::vector<Point>&)> build) {
        if (depth <= max_depth) ts.push_back({arity, std::move(valid), std::move(build)});
    };
    StructureId sid = S.id();

    // Quantifier-free.
    add(0, 1, any, [](auto& p) { return eq(X(), P(p, 0)); });
    add(0, 1, any, [](auto& p) { return lt(X(), P(p, 0)); });
    add(0, 1, any, [](auto& p) { return lt(P(p, 0), X()); });
    add(0, 2, [](auto& p) { return p[0] < p[1]; },
        [](auto& p) { return Formula::conj(lt(P(p, 0), X()), lt(X(), P(p, 1))); });
    add(0, 1, any, [](auto& p) { return Formula::negate(eq(X(), P(p, 0))); });
    add(0, 2, [](auto& p) { return p[0] < p[1]; },
        [](auto& p) { return Formula::disj(lt(X(), P(p, 0)), lt(P(p, 1), X())); });
    add(0, 0, any, [](auto&) { return eq(X(), X()); });

    if (sid == StructureId::EX1) {
        auto p2 = [](auto& p) { return p[0].in_p2(); };
        auto p1 = [](auto& p) { return p[0].in_p1(); };
        add(0, 0, any, [](auto&) { return Formula::atom("P1", {X()}); });
        add(0, 0, any, [](auto&) { return Formula::atom("P2", {X()}); });
        add(0, 1, p2, [](auto& p) { return eq(Term::apply("f", X()), P(p, 0)); });
        add(0, 1, p2, [](auto& p) { return lt(Term::apply("f", X()), P(p, 0)); });
        add(0, 1, p2, [](auto& p) { return lt(P(p, 0), Term::apply("f", X())); });
        add(0, 1, p1, [](auto& p) { return eq(Term::apply("f", P(p, 0)), X()); });
        add(0, 1, p1,
            [](auto& p) { return eq(Term::apply("f", X()), Term::apply("f", P(p, 0))); });
        add(0, 1, any,
            [](auto& p) { return Formula::conj(Formula::atom("P1", {X()}), lt(X(), P(p, 0))); });
    }
    if (sid == StructureId::EHR) {
        for (long k = 0; k <= 2; ++k) {
            add(0, 0, any, [k](auto&) { return eq(X(), Term::constant(k)); });
            add(0, 0, any, [k](auto&) { return lt(Term::constant(k), X()); });
            add(0, 0, any, [k](auto&) { return lt(X(), Term::constant(k)); });
        }
        for (long k = 0; k <= 1; ++k)
            add(0, 0, any, [k](auto&) {
                return Formula::conj(lt(Term::constant(k), X()), lt(X(), Term::constant(k + 1)));
            });
    }

    // One quantifier.
    add(1, 0, any, [](auto&) { return Formula::exists("y", lt(Y(), X())); });
    add(1, 0, any, [](auto&) { return Formula::exists("y", lt(X(), Y())); });
    add(1, 1, any, [](auto& p) {
        return Formula::exists("y", Formula::conj(lt(X(), Y()), lt(Y(), P(p, 0))));
    });
    add(1, 1, any, [](auto& p) {
        return Formula::exists("y", Formula::conj(lt(P(p, 0), Y()), lt(Y(), X())));
    });
    add(1, 1, any, [](auto& p) {
        return Formula::forall(
            "y", Formula::disj(Formula::negate(lt(X(), Y())), Formula::negate(lt(Y(), P(p, 0)))));
    });
    if (sid == StructureId::EX1) {
        add(1, 0, any,
            [](auto&) { return Formula::exists("y", eq(Term::apply("f", Y()), X())); });
        add(1, 0, any, [](auto&) {
            return Formula::exists(
                "y", Formula::conj(eq(Term::apply("f", Y()), Term::apply("f", X())),
                                   Formula::negate(eq(Y(), X()))));
        });
        add(1, 0, any, [](auto&) {
            return Formula::exists("y", Formula::conj(Formula::atom("P1", {Y()}), lt(X(), Y())));
        });
        add(1, 1, [](auto& p) { return p[0].in_p1(); }, [](auto& p) {
            return Formula::exists(
                "y", Formula::conj(eq(Term::apply("f", Y()), X()), lt(P(p, 0), Y())));
        });
    }
    if (sid == StructureId::EHR) {
        add(1, 0, any, [](auto&) {
            return Formula::exists("y",
                                   Formula::conj(lt(Term::constant(0), Y()), lt(Y(), X())));
        });
    }

    // Two quantifiers.
    add(2, 1, any, [](auto& p) {
        return Formula::exists(
            "y", Formula::conj(lt(X(), Y()), Formula::exists("z", Formula::conj(lt(Y(), Z_()),
                                                                                lt(Z_(), P(p, 0))))));
    });
    add(2, 0, any, [](auto&) {
        return Formula::forall(
            "y", Formula::disj(Formula::negate(lt(X(), Y())),
                               Formula::exists("z", Formula::conj(lt(X(), Z_()), lt(Z_(), Y())))));
    });
    add(2, 0, any, [](auto&) {
        return Formula::exists(
            "y", Formula::conj(lt(Y(), X()),
                               Formula::forall("z", Formula::disj(Formula::negate(lt(Y(), Z_())),
                                                                  Formula::negate(lt(Z_(), X()))))));
    });
    return ts;
}

// Index tuple #rank for the given arity over a pool of size n, ordered so
// that small indices come first (diagonal by max coordinate, then lexicographic).
bool tuple_at(int arity, std::size_t rank, std::size_t n, std::vector<int>& out) {
    out.clear();
    if (arity == 0) return rank == 0;
    if (n == 0) return false;
    if (arity == 1) {
        if (rank >= n) return false;
        out.push_back(static_cast<int>(rank));
        return true;
    }
    // arity == 2: enumerate pairs ordered by max(i, j), then (i, j).
    std::size_t count = 0;
    for (std::size_t m = 0; m < n; ++m) {
        for (std::size_t i = 0; i <= m; ++i)
            for (std::size_t j = 0; j <= m; ++j) {
                if (i != m && j != m) continue;  // already listed at smaller m
                if (count == rank) {
                    out = {static_cast<int>(i), static_cast<int>(j)};
                    return true;
                }
                ++count;
            }
    }
    return false;
}

} // namespace

FormulaEnumerator::FormulaEnumerator(const StructureHandle& S, std::vector<Point> pool,
                                     int max_depth)
    : S_(S), pool_(std::move(pool)), max_depth_(max_depth) {}

std::vector<Formula> FormulaEnumerator::generate(std::size_t count, std::uint64_t seed) const {
    std::vector<Formula> out;
    auto ts = template_table(S_, max_depth_);
    std::size_t n = pool_.size();

    // Fair diagonal: tuple rank advances in the outer loop, so small
    // parameter indices are exercised across every template first.
    std::size_t max_rank = (n + 1) * (n + 1);
    std::vector<int> idx;
    std::vector<Point> args;
    for (std::size_t rank = 0; rank <= max_rank && out.size() < count; ++rank) {
        for (auto& t : ts) {
            if (out.size() >= count) break;
            if (!tuple_at(t.arity, rank, n, idx)) continue;
            args.clear();
            for (int i : idx) args.push_back(pool_[i]);
            if (!t.valid(args)) continue;
            out.push_back(t.build(args));
        }
    }

    // Seeded continuation once the diagonal is exhausted.
    SplitMix64 rng(seed ^ 0x5e90d5e90d5e90dULL);
    std::size_t guard = 0;
    while (out.size() < count && guard++ < count * 64) {
        auto& t = ts[rng.below(ts.size())];
        args.clear();
        bool ok = true;
        for (int i = 0; i < t.arity; ++i) {
            if (n == 0) { ok = false; break; }
            args.push_back(pool_[rng.below(n)]);
        }
        if (!ok || !t.valid(args)) continue;
        out.push_back(t.build(args));
    }
    return out;
}

} // namespace sepmod

// Seeded order automorphisms, assembled from piecewise-linear increasing
// rational maps. Used as the independent oracle for closure soundness: an
// automorphism fixing A pointwise must fix dcl(A) pointwise.

#include <algorithm>
#include <set>

#include "sepmod/enumerate.hpp"
#include "sepmod/structure.hpp"

namespace sepmod {

Rational Automorphism::PLMap::apply(const Rational& x) const {
    if (anchors.empty()) return x;
    if (x < anchors.front().first) return x + (anchors.front().second - anchors.front().first);
    if (anchors.back().first < x) return x + (anchors.back().second - anchors.back().first);
    for (std::size_t i = 0; i + 1 < anchors.size(); ++i) {
        if (x == anchors[i].first) return anchors[i].second;
        if (anchors[i].first < x && x < anchors[i + 1].first) {
            const auto& [x0, y0] = anchors[i];
            const auto& [x1, y1] = anchors[i + 1];
            return y0 + (x - x0) * (y1 - y0) / (x1 - x0);
        }
    }
    return anchors.back().second;
}

namespace {

using PLMap = Automorphism::PLMap;

// Increasing bijection of Q fixing `fixed` pointwise, with seeded anchors
// perturbing the gaps between (and around) the fixed values.
PLMap make_pl(SplitMix64& rng, std::vector<Rational> fixed) {
    std::sort(fixed.begin(), fixed.end());
    fixed.erase(std::unique(fixed.begin(), fixed.end()), fixed.end());
    PLMap pl;
    if (fixed.empty()) {
        // A couple of random anchors, strictly increasing in both coordinates.
        Rational x = rng.rational();
        Rational y = rng.rational();
        Rational dx = Rational(1 + static_cast<std::int64_t>(rng.below(3)));
        Rational dy = Rational(1 + static_cast<std::int64_t>(rng.below(3)));
        pl.anchors = {{x, y}, {x + dx, y + dy}};
        std::sort(pl.anchors.begin(), pl.anchors.end());
        return pl;
    }
    for (std::size_t i = 0; i < fixed.size(); ++i) {
        if (i == 0) {
            // Perturb below the least fixed value.
            Rational a = fixed[0];
            Rational t1 = Rational(1 + static_cast<std::int64_t>(rng.below(3)));
            Rational t2 = Rational(1 + static_cast<std::int64_t>(rng.below(3)));
            pl.anchors.push_back({a - t1 - Rational(1), a - t2 - Rational(1, 2)});
        }
        pl.anchors.push_back({fixed[i], fixed[i]});
        if (i + 1 < fixed.size()) {
            const Rational& a = fixed[i];
            const Rational& b = fixed[i + 1];
            // Move a dyadic interior landmark of (a, b) to another one.
            Rational t1(1 + static_cast<std::int64_t>(rng.below(3)), 4);
            Rational t2(1 + static_cast<std::int64_t>(rng.below(3)), 4);
            if (!(t1 == t2))
                pl.anchors.push_back({a + (b - a) * t1, a + (b - a) * t2});
        } else {
            Rational a = fixed[i];
            Rational t1 = Rational(1 + static_cast<std::int64_t>(rng.below(3)));
            Rational t2 = Rational(1 + static_cast<std::int64_t>(rng.below(3)));
            pl.anchors.push_back({a + t1 + Rational(1), a + t2 + Rational(1, 2)});
        }
    }
    std::sort(pl.anchors.begin(), pl.anchors.end());
    return pl;
}

// Increasing bijection of an open block (a, b) onto itself, fixing the
// endpoints and the given interior values.
PLMap make_block_pl(SplitMix64& rng, const Rational& a, const Rational& b,
                    std::vector<Rational> fixed_inside) {
    PLMap pl;
    std::sort(fixed_inside.begin(), fixed_inside.end());
    fixed_inside.erase(std::unique(fixed_inside.begin(), fixed_inside.end()),
                       fixed_inside.end());
    std::vector<Rational> knots = {a};
    knots.insert(knots.end(), fixed_inside.begin(), fixed_inside.end());
    knots.push_back(b);
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        pl.anchors.push_back({knots[i], knots[i]});
        Rational t1(1 + static_cast<std::int64_t>(rng.below(3)), 4);
        Rational t2(1 + static_cast<std::int64_t>(rng.below(3)), 4);
        if (!(t1 == t2))
            pl.anchors.push_back(
                {knots[i] + (knots[i + 1] - knots[i]) * t1,
                 knots[i] + (knots[i + 1] - knots[i]) * t2});
    }
    pl.anchors.push_back({knots.back(), knots.back()});
    std::sort(pl.anchors.begin(), pl.anchors.end());
    return pl;
}

} // namespace

Point Automorphism::apply(const Point& p) const {
    if (p.structure() != sid_)
        throw std::invalid_argument("point does not belong to the automorphism's structure");
    switch (sid_) {
        case StructureId::DLO:
            return Point::rat(base.apply(p.x()));
        case StructureId::EHR: {
            if (p.tier_index() == 1) return Point::tier(base.apply(p.x()), 1);
            const Rational& q = p.x();
            if (q < Rational(0)) return Point::tier(low.apply(q), 0);
            if (q.is_integer()) return p;  // constants (and integer grid) fixed
            long block = q.floor();
            auto it = blocks.find(block);
            if (it == blocks.end()) return p;
            return Point::tier(it->second.apply(q), 0);
        }
        default: {
            if (p.in_p2()) return Point::single(base.apply(p.x()));
            Rational q1 = base.apply(p.x());
            auto it = fibers.find(p.x());
            Rational q2 = it == fibers.end() ? p.y() : it->second.apply(p.y());
            return Point::pair(q1, q2);
        }
    }
}

Automorphism sample_automorphism(const StructureHandle& S, std::uint64_t seed,
                                 const std::vector<Point>& fix) {
    SplitMix64 rng(seed * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL);
    Automorphism a;
    a.sid_ = S.id();
    for (auto& p : fix)
        if (p.structure() != S.id())
            throw std::invalid_argument("fixpoint does not belong to " + S.name());

    switch (S.id()) {
        case StructureId::DLO: {
            std::vector<Rational> fixed;
            for (auto& p : fix) fixed.push_back(p.x());
            a.base = make_pl(rng, std::move(fixed));
            return a;
        }
        case StructureId::EHR: {
            std::vector<Rational> tier1;
            std::vector<Rational> low_fixed = {Rational(0)};
            std::map<long, std::vector<Rational>> per_block;
            std::set<long> block_keys;
            for (auto& p : fix) {
                if (p.tier_index() == 1) {
                    tier1.push_back(p.x());
                } else if (p.x() < Rational(0)) {
                    low_fixed.push_back(p.x());
                } else if (!p.x().is_integer()) {
                    long b = p.x().floor();
                    per_block[b].push_back(p.x());
                    block_keys.insert(b);
                }
                // Integer tier-0 fixpoints are constants, fixed by construction.
            }
            a.base = make_pl(rng, std::move(tier1));
            {
                // Map of (-inf, 0): anchor 0 -> 0 keeps the block below c_0 stable.
                PLMap lowmap = make_pl(rng, std::move(low_fixed));
                // Drop anchors above 0 so the map stays within (-inf, 0].
                PLMap trimmed;
                for (auto& an : lowmap.anchors)
                    if (!(Rational(0) < an.first)) trimmed.anchors.push_back(an);
                a.low = std::move(trimmed);
            }
            // Perturb a couple of seeded blocks in addition to those that
            // carry fixpoints.
            block_keys.insert(static_cast<long>(rng.below(4)));
            block_keys.insert(static_cast<long>(rng.below(4)));
            for (long b : block_keys) {
                auto fit = per_block.find(b);
                a.blocks[b] = make_block_pl(rng, Rational(b), Rational(b + 1),
                                            fit == per_block.end() ? std::vector<Rational>{}
                                                                   : fit->second);
            }
            return a;
        }
        default: {
            std::vector<Rational> base_fixed;
            std::map<Rational, std::vector<Rational>, std::less<>> fiber_fixed;
            for (auto& p : fix) {
                base_fixed.push_back(p.x());
                if (p.in_p1()) fiber_fixed[p.x()].push_back(p.y());
            }
            a.base = make_pl(rng, std::move(base_fixed));
            for (auto& [q1, q2s] : fiber_fixed) {
                SplitMix64 sub(rng.next());
                a.fibers[q1] = make_pl(sub, q2s);
            }
            // A seeded extra fiber twist; only fibers the base map fixes may
            // be twisted in place, so restrict to base fixpoints.
            if (!a.fibers.empty() || !fix.empty()) return a;
            Rational q = rng.rational();
            PLMap tw = make_pl(rng, {});
            // The base map must send this fiber to itself for the twist to
            // commute with f; force it by pinning q in the base map.
            a.base = make_pl(rng, {q});
            a.fibers[q] = std::move(tw);
            return a;
        }
    }
}

} // namespace sepmod

#include "sepmod/hypergraph.hpp"

#include <algorithm>

namespace sepmod {

namespace {

void normalize(AtomSet& s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
}

bool member(const AtomSet& s, Atom a) {
    return std::binary_search(s.begin(), s.end(), a);
}

bool subset(const AtomSet& a, const AtomSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// (a n b) \ z == empty
bool meet_within(const AtomSet& a, const AtomSet& b, const AtomSet& z) {
    for (Atom x : a)
        if (member(b, x) && !member(z, x)) return false;
    return true;
}

// a within b u z
bool covered(const AtomSet& a, const AtomSet& b, const AtomSet& z) {
    for (Atom x : a)
        if (!member(b, x) && !member(z, x)) return false;
    return true;
}

AtomSet sorted(AtomSet s) {
    normalize(s);
    return s;
}

} // namespace

Hypergraph Hypergraph::make(AtomSet X, std::vector<AtomSet> Y) {
    Hypergraph h;
    h.X = sorted(std::move(X));
    for (auto& y : Y) {
        AtomSet e = sorted(std::move(y));
        if (!subset(e, h.X))
            throw std::invalid_argument("edge contains an atom outside X");
        h.Y.push_back(std::move(e));
    }
    return h;
}

ElementSeparation t0_separable(const Hypergraph& H, Atom x1, Atom x2, const AtomSet& Z) {
    AtomSet z = sorted(Z);
    if (x1 == x2) throw HypergraphPrecondition("t0: x1 and x2 must be distinct");
    if (member(z, x2))
        throw HypergraphPrecondition(
            "t0: x2 in Z is a definitional exclusion, not a separability verdict");
    for (std::size_t i = 0; i < H.Y.size(); ++i) {
        const AtomSet& y = H.Y[i];
        if ((member(y, x1) || member(z, x1)) && !member(y, x2)) return {true, i};
    }
    return {false, std::nullopt};
}

ElementSeparation2 t2_separable(const Hypergraph& H, Atom x1, Atom x2, const AtomSet& Z) {
    AtomSet z = sorted(Z);
    if (x1 == x2) throw HypergraphPrecondition("t2: x1 and x2 must be distinct");
    if (member(z, x1) || member(z, x2))
        throw HypergraphPrecondition("t2: x1 and x2 must lie outside Z");
    for (std::size_t i = 0; i < H.Y.size(); ++i) {
        if (!member(H.Y[i], x1)) continue;
        for (std::size_t j = 0; j < H.Y.size(); ++j) {
            if (!member(H.Y[j], x2)) continue;
            if (meet_within(H.Y[i], H.Y[j], z)) return {true, std::make_pair(i, j)};
        }
    }
    return {false, std::nullopt};
}

ElementSeparation set_t0_separable(const Hypergraph& H, const AtomSet& X1, const AtomSet& X2,
                                   const AtomSet& Z) {
    AtomSet a = sorted(X1), b = sorted(X2), z = sorted(Z);
    if (a.empty() || b.empty())
        throw HypergraphPrecondition("set t0: X1 and X2 must be nonempty");
    if (!meet_within(a, b, z))
        throw HypergraphPrecondition("set t0: (X1 n X2) \\ Z must be empty");
    if (subset(b, z))
        throw HypergraphPrecondition(
            "set t0: X2 within Z is a definitional exclusion, not a separability verdict");
    for (std::size_t i = 0; i < H.Y.size(); ++i)
        if (covered(a, H.Y[i], z) && meet_within(b, H.Y[i], z)) return {true, i};
    return {false, std::nullopt};
}

ElementSeparation2 set_t2_separable(const Hypergraph& H, const AtomSet& X1, const AtomSet& X2,
                                    const AtomSet& Z) {
    AtomSet a = sorted(X1), b = sorted(X2), z = sorted(Z);
    if (a.empty() || b.empty())
        throw HypergraphPrecondition("set t2: X1 and X2 must be nonempty");
    if (!meet_within(a, b, z))
        throw HypergraphPrecondition("set t2: (X1 n X2) \\ Z must be empty");
    if (subset(a, z) || subset(b, z))
        throw HypergraphPrecondition(
            "set t2: a side within Z is a definitional exclusion, not a separability verdict");
    for (std::size_t i = 0; i < H.Y.size(); ++i) {
        if (!covered(a, H.Y[i], z)) continue;
        for (std::size_t j = 0; j < H.Y.size(); ++j) {
            if (!covered(b, H.Y[j], z)) continue;
            if (meet_within(H.Y[i], H.Y[j], z)) return {true, std::make_pair(i, j)};
        }
    }
    return {false, std::nullopt};
}

} // namespace sepmod

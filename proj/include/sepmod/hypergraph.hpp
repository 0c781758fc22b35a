// Separability predicates on explicit finite hypergraphs, plain and
// Z-relative. Verdicts are decided by exhaustive search over the edge list;
// definitional preconditions are reported as distinct diagnostics rather
// than false verdicts.

#ifndef SEPMOD_HYPERGRAPH_HPP
#define SEPMOD_HYPERGRAPH_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sepmod {

using Atom = std::int64_t;
using AtomSet = std::vector<Atom>;  // kept sorted and unique

struct Hypergraph {
    AtomSet X;
    std::vector<AtomSet> Y;

    // Normalizes (sorts, dedupes) and checks every edge against X.
    static Hypergraph make(AtomSet X, std::vector<AtomSet> Y);
};

struct HypergraphPrecondition : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ElementSeparation {
    bool verdict;
    std::optional<std::size_t> witness;  // index into Y
};

struct ElementSeparation2 {
    bool verdict;
    std::optional<std::pair<std::size_t, std::size_t>> witnesses;
};

// x1 is Z-separated from x2: some edge y has x1 in y u Z and x2 not in y.
// Preconditions: x1 != x2, x2 not in Z.
ElementSeparation t0_separable(const Hypergraph& H, Atom x1, Atom x2, const AtomSet& Z = {});

// x1, x2 are Hausdorff Z-separable: edges y1, y2 with (y1 n y2) \ Z empty,
// x1 in y1, x2 in y2. Preconditions: x1 != x2, x1 not in Z, x2 not in Z.
ElementSeparation2 t2_separable(const Hypergraph& H, Atom x1, Atom x2, const AtomSet& Z = {});

// X1 is Z-separated from X2: some edge y has X1 within y u Z and
// (X2 n y) \ Z empty. Preconditions: X1, X2 nonempty, (X1 n X2) \ Z empty,
// X2 not within Z.
ElementSeparation set_t0_separable(const Hypergraph& H, const AtomSet& X1, const AtomSet& X2,
                                   const AtomSet& Z = {});

// X1, X2 are Hausdorff Z-separable: edges y1, y2 with (y1 n y2) \ Z empty,
// X1 within y1 u Z, X2 within y2 u Z. Preconditions also require X1 not
// within Z.
ElementSeparation2 set_t2_separable(const Hypergraph& H, const AtomSet& X1, const AtomSet& X2,
                                    const AtomSet& Z = {});

} // namespace sepmod

#endif

// Deterministic randomness and fair formula enumeration.
//
// Everything downstream (automorphism sampling, Tarski–Vaught verification,
// staged submodel construction, fuzz suites) must be a pure function of its
// seed, so randomness comes from a fixed splitmix64 engine rather than
// std:: distributions.

#ifndef SEPMOD_ENUMERATE_HPP
#define SEPMOD_ENUMERATE_HPP

#include <cstdint>
#include <vector>

#include "sepmod/logic.hpp"
#include "sepmod/point.hpp"
#include "sepmod/structure.hpp"

namespace sepmod {

struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }
    std::int64_t int_in(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
    bool coin() { return next() & 1; }

    // Small exact rational in roughly [-span, span].
    Rational rational(std::int64_t span = 8) {
        std::int64_t d = std::int64_t(1) << below(4);  // 1, 2, 4, 8
        return Rational(int_in(-span * d, span * d), d);
    }
};

// Seeded point of the structure's universe.
Point sample_point(StructureId sid, SplitMix64& rng);

// Deterministic stream of one-free-variable formulas ("x") over a pool of
// parameter points. The first part of the stream is a fair diagonal over
// (template, parameter tuple) in increasing quantifier depth and size; once
// the diagonal is exhausted the stream continues with seeded instantiations.
class FormulaEnumerator {
public:
    FormulaEnumerator(const StructureHandle& S, std::vector<Point> pool, int max_depth);

    // Generates the first `count` formulas of the stream.
    std::vector<Formula> generate(std::size_t count, std::uint64_t seed = 0) const;

private:
    const StructureHandle& S_;
    std::vector<Point> pool_;
    int max_depth_;
};

} // namespace sepmod

#endif

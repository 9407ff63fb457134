#ifndef HOMALG_GENERATORS_HPP
#define HOMALG_GENERATORS_HPP

#include <cstdint>

#include "homalg/chain.hpp"
#include "homalg/filtered.hpp"

namespace homalg {

// Deterministic seed expansion; a single 64-bit seed fixes every generated
// instance across runs and platforms.
struct SplitMix64 {
    uint64_t state;

    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    long range(long lo, long hi) {  // inclusive bounds
        return lo + static_cast<long>(next() % static_cast<uint64_t>(hi - lo + 1));
    }
};

Mat random_matrix(SplitMix64& rng, Index rows, Index cols, long max_abs);

// Random bounded complex with ranks ≤ max_rank on [lo_deg, hi_deg], built
// degree by degree inside the kernel of the previous differential.
ChainComplex random_complex(SplitMix64& rng, const Coefficients& k, int lo_deg, int hi_deg,
                            long max_rank, long max_abs = 3);

// Random chain map: integer combination of a basis of the chain-map space.
ChainMap random_chain_map(SplitMix64& rng, const ChainComplex& a, const ChainComplex& b,
                          long max_abs = 2);

FgModule random_module(SplitMix64& rng, const Coefficients& k, long max_rank = 2,
                       long max_factor = 12);

// Random filtration built by iterated cones: each step includes into the cone
// of a random map out of a fresh complex, keeping inclusions saturated.
FilteredComplex random_filtration(SplitMix64& rng, const Coefficients& k, int steps,
                                  int lo_deg, int hi_deg, long max_rank);

// Tensor double complex A⊗B filtered by the left (column) degree.
FilteredComplex column_filtration(const ChainComplex& a, const ChainComplex& b);

}  // namespace homalg

#endif

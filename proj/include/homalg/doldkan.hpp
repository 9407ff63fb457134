#ifndef HOMALG_DOLDKAN_HPP
#define HOMALG_DOLDKAN_HPP

#include "homalg/filtered.hpp"

namespace homalg {

// Simplicial object in free modules, truncated at level `bound`.  Faces
// d_i: level n -> n-1 and degeneracies s_i: level n -> n+1 act on the left.
struct SimplicialModule {
    Coefficients coeff;
    std::map<int, long> levels;  // nonzero ranks only, n >= 0
    std::map<std::pair<int, int>, Mat> faces;         // key (n, i), 0 <= i <= n
    std::map<std::pair<int, int>, Mat> degeneracies;  // key (n, i), 0 <= i <= n
    int bound = 0;

    long level(int n) const;
    Mat face(int n, int i) const;        // level(n-1) x level(n)
    Mat degeneracy(int n, int i) const;  // level(n+1) x level(n)
};

// Checks the five simplicial identities at matrix level;
// SimplicialIdentityViolation otherwise.
void validate(const SimplicialModule& m);

// N(M)_n = ker d_1 ∩ ... ∩ ker d_n with differential d_0 restricted.
ChainComplex normalized_chains(const SimplicialModule& m);

// C_n = M_n with differential sum (-1)^i d_i.
ChainComplex unnormalized_chains(const SimplicialModule& m);

// Quotient of the unnormalized chains by the latching images sum_i im(s_i);
// proj is the quotient map, and proj restricted to N(M) is an isomorphism.
struct LatchingResult {
    ChainComplex complex;
    ChainMap proj;  // from unnormalized_chains(m)
};
LatchingResult latching_complex(const SimplicialModule& m);

// Dold-Kan inverse: gamma(C)_n = direct sum over surjections [n] ->> [k] of
// C_k, blocks ordered by k then lexicographically by the surjection's value
// sequence.  Levels run up to C.hi() + margin.  NegativeSupport if C has
// terms below degree 0.
SimplicialModule gamma(const ChainComplex& c, int margin = 2);

// Brutal truncations of N(M) by degree, assembled as a filtration.
FilteredComplex skeletal_filtration(const SimplicialModule& m);

// Pages 1 .. P+2 of the spectral sequence of the skeletal filtration.
std::vector<SpectralSequencePage> simplicial_ss(const SimplicialModule& m);

// Reverse of skeletal_filtration: recover the complex from any filtration
// whose gaps X(p-1,p) are concentrated in degree p; GapNotConcentrated
// otherwise.
ChainComplex complex_from_filtration(const FilteredComplex& f);

}  // namespace homalg

#endif

#ifndef HOMALG_ORACLE_HPP
#define HOMALG_ORACLE_HPP

#include <map>
#include <vector>

#include "homalg/chain.hpp"

namespace homalg {

// Brute-force oracles for test certification.  Deliberately slow and simple,
// sharing only the public type definitions with the main code paths.

struct ElementTable {
    FgModule module;
    std::vector<std::vector<long>> elements;  // residue tuples, one per element
};

// Exhaustive enumeration; TooLarge for infinite modules or order > 10^4.
ElementTable element_table(const FgModule& m);

// Hom group by exhaustive generator-image search; TooLarge past 10^4 maps.
FgModule brute_hom(const FgModule& m, const FgModule& n);

// Homology dimensions over a prime field by naive row reduction on longs;
// TooLarge when total dimension > 12 or p > 7.
std::map<int, long> brute_homology(const ChainComplex& c);

// Ext^n_Z(Z/a, Z/b) and Tor_n^Z(Z/a, Z/b) from the 2-term resolution and
// residue enumeration; a, b in [1, 100].
FgModule brute_ext_cyclic(long a, long b, int n);
FgModule brute_tor_cyclic(long a, long b, int n);

}  // namespace homalg

#endif

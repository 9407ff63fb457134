#ifndef HOMALG_DERIVED_HPP
#define HOMALG_DERIVED_HPP

#include "homalg/chain.hpp"

namespace homalg {

// Free resolution of an invariant-factor module: degree 0 has one generator
// per free and torsion factor, degree 1 carries the diagonal relations.
struct Resolution {
    FgModule module;
    ChainComplex complex;
    Mat augmentation;  // degree-0 generators onto the module's canonical generators
};

Resolution free_resolution(const FgModule& m);

// Canonical free model of a bounded complex of frees with a quasi-isomorphism
// into it: the direct sum over n of the resolution of H_n, placed in degrees
// n, n+1, mapped by chosen cycle representatives and boundary lifts.
struct ResolvedComplex {
    ChainComplex complex;
    ChainMap to_original;
};

ResolvedComplex resolve_complex(const ChainComplex& c);

// Classical Ext^n / Tor_n via free resolutions; negative n yields 0.
FgModule ext(const FgModule& m, const FgModule& n, int deg);
FgModule tor(const FgModule& m, const FgModule& n, int deg);

// Good truncations.  truncate_geq keeps degrees > n and ker(d_n) at n;
// truncate_leq keeps degrees < n, C_n at n, and a basis of im(d_{n+1}) one
// degree up so every term stays free over Z.
struct TruncationGeq {
    ChainComplex complex;
    ChainMap incl;  // into the original
};
TruncationGeq truncate_geq(const ChainComplex& c, int n);

struct TruncationLeq {
    ChainComplex complex;
    ChainMap proj;  // from the original
};
TruncationLeq truncate_leq(const ChainComplex& c, int n);

// π_n of the t-structure heart; equals homology(c, n).
FgModule heart_pi(const ChainComplex& c, int n);

}  // namespace homalg

#endif

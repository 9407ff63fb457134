#ifndef HOMALG_TRIANGLES_HPP
#define HOMALG_TRIANGLES_HPP

#include <string>

#include "homalg/chain.hpp"

namespace homalg {

// Candidate distinguished triangle X --f--> Y --g--> Z --h--> X[1] with a
// homotopy witnessing g∘f ≃ 0.
struct Triangle {
    ChainComplex X, Y, Z;
    ChainMap f, g, h;
    ChainHomotopy null_witness;  // from g∘f to 0
};

void validate(const Triangle& t);

// Standard cone triangle X -> Y -> cone(f) -> X[1].
Triangle triangle_of(const ChainMap& f);

// (Y, Z, X[1], g, h, −f[1]); the rotated null witness is recomputed exactly.
Triangle rotate(const Triangle& t);

struct DistinguishedReport {
    bool ok = false;
    std::string diagnostic;
};

// True iff the comparison map cone(f) -> Z, (x,y) -> −s(x) + g(y), is a
// quasi-isomorphism and h composed with it is homotopic to the cone
// projection.
DistinguishedReport verify_distinguished(const Triangle& t);

struct Octahedron {
    Triangle t_f, t_g, t_gf;
    Triangle t_link;  // cone(f) -> cone(gf) -> cone(g) -> cone(f)[1]
};

Octahedron octahedron(const ChainMap& f, const ChainMap& g);

// Exactness of im(u_*) = ker(v_*) on H_n of the middle complex, decided by
// exact lattice comparison.
bool exact_at(const ChainMap& u, const ChainMap& v, int n);

// The long exact homology sequence of the standard cone triangle of f,
// checked at every node of every degree.
bool cone_les_exact(const ChainMap& f);

// Functoriality of the cone: given f' φ_X = φ_Y f strictly, the block map
// (φ_X[1], φ_Y) : cone(f) -> cone(f') is a chain map filling TR3 squares.
ChainMap cone_functor_map(const ChainMap& f, const ChainMap& fprime, const ChainMap& phiX,
                          const ChainMap& phiY);

}  // namespace homalg

#endif

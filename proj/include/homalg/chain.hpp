#ifndef HOMALG_CHAIN_HPP
#define HOMALG_CHAIN_HPP

#include <map>
#include <optional>
#include <vector>

#include "homalg/linalg.hpp"

namespace homalg {

// Bounded complex of free modules.  d_n : C_n -> C_{n-1}, d_{n-1}·d_n = 0.
class ChainComplex {
public:
    ChainComplex() : coeff_(Coefficients::integers()) {}
    ChainComplex(Coefficients coeff, std::map<int, long> ranks, std::map<int, Mat> diffs);

    const Coefficients& coefficients() const { return coeff_; }
    long rank(int n) const;
    Mat diff(int n) const;  // shape rank(n-1) × rank(n), zero-filled off support
    bool has_diff(int n) const { return diffs_.count(n) > 0; }

    // Support interval [lo, hi]; empty complex has lo() > hi().
    int lo() const { return ranks_.empty() ? 0 : ranks_.begin()->first; }
    int hi() const { return ranks_.empty() ? -1 : ranks_.rbegin()->first; }
    bool is_empty() const { return ranks_.empty(); }
    const std::map<int, long>& ranks() const { return ranks_; }

    bool operator==(const ChainComplex& o) const;
    bool operator!=(const ChainComplex& o) const { return !(*this == o); }

private:
    Coefficients coeff_;
    std::map<int, long> ranks_;  // nonzero ranks only
    std::map<int, Mat> diffs_;   // nonzero-shape differentials only
};

void validate(const ChainComplex& c);  // NotAComplex / ShapeError

struct ChainMap {
    ChainComplex source, target;
    std::map<int, Mat> comps;

    Mat comp(int n) const;  // target.rank(n) × source.rank(n)
};

void validate(const ChainMap& f);  // NotAChainMap on broken squares

ChainMap zero_map(const ChainComplex& src, const ChainComplex& tgt);
ChainMap identity_map(const ChainComplex& c);
ChainMap compose(const ChainMap& g, const ChainMap& f);  // g∘f
ChainMap add(const ChainMap& f, const ChainMap& g);
ChainMap negate(const ChainMap& f);
ChainMap shift_map(const ChainMap& f, int k);  // f[k] : src[k] -> tgt[k]

// h_n : from.source_n -> from.target_{n+1}, from − to = d·h + h·d.
struct ChainHomotopy {
    ChainMap from, to;
    std::map<int, Mat> comps;

    Mat comp(int n) const;
};

void validate(const ChainHomotopy& h);

FgModule homology(const ChainComplex& c, int n);

// Homology with its chosen presentation: `cycles` is the canonical basis of
// ker d_n, `module` = cycles/boundaries, and `gens` expresses the module's
// canonical generators (free ones first, then torsion) as cycle columns.
struct HomologyData {
    Mat cycles;       // rank(n) × k, basis of ker d_n
    Mat rels;         // k × rank(n+1): d_{n+1} in cycle coordinates
    FgModule module;
    Mat gens;         // rank(n) × (free + torsion): canonical generator cycles
    std::vector<Int> gen_orders;  // 0 for free generators
};
HomologyData homology_data(const ChainComplex& c, int n);

ChainComplex shift(const ChainComplex& c, int k);  // C[k]_n = C_{n-k}, d -> (−1)^k d

struct ConeResult {
    ChainComplex complex;  // cone(f)_n = src_{n-1} ⊕ tgt_n
    ChainMap incl;         // tgt -> cone
    ChainMap proj;         // cone -> src[1]
};
ConeResult cone(const ChainMap& f);

ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b);
ChainMap direct_sum_map(const ChainMap& f, const ChainMap& g);

// (A⊗B)_n = ⊕_{i+j=n} A_i⊗B_j ordered lexicographically by (i, left index,
// right index); d(a⊗b) = da⊗b + (−1)^i a⊗db.
ChainComplex tensor_complex(const ChainComplex& a, const ChainComplex& b);

// Mapping complex [A,B]_n = ⊕_m Hom(A_m, B_{m+n}); (df)_m = d_B f_m − (−1)^n f_{m−1} d_A.
ChainComplex hom_complex(const ChainComplex& a, const ChainComplex& b);

// Block layout of [A,B]_n: ascending m with rank(A_m), rank(B_{m+n}) > 0,
// matrices vectorized column-major.
std::vector<int> hom_blocks(const ChainComplex& a, const ChainComplex& b, int n);
Mat hom_diff(const ChainComplex& a, const ChainComplex& b, int n);
Vec hom_flatten(const ChainComplex& a, const ChainComplex& b, int n,
                const std::map<int, Mat>& comps);
std::map<int, Mat> hom_unflatten(const ChainComplex& a, const ChainComplex& b, int n,
                                 const Vec& v);

FgModule homotopy_classes(const ChainComplex& a, const ChainComplex& b, int n);

bool is_quasi_iso(const ChainMap& f);

// Basis of the space of chain maps A -> B (degree-0 cycles of [A,B]).
std::vector<ChainMap> chain_map_basis(const ChainComplex& a, const ChainComplex& b);

// Exact solve for a homotopy witnessing f ≃ g; nullopt when none exists.
std::optional<ChainHomotopy> find_homotopy(const ChainMap& f, const ChainMap& g);

bool is_nullhomotopic(const ChainMap& f);

}  // namespace homalg

#endif
